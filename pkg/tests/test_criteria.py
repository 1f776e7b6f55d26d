import pytest
from hypothesis import given, strategies as st

from hlirred.criteria import (
    CRITERIA, Conclusion, CriterionError, c11, c12, c13, c14, column_mark, dispatch, evaluate, verdict,
)
from hlirred.ksinv import onesum_2gen_knot_A4, onesum_2gen_link_A4, onesum_trivial
from hlirred.presentation import LinkRecord, RankAssertion, load_catalog
from conftest import DATA
from helpers import EXPECTED_MARKS, NA, OK, Q

@pytest.fixture(scope="module")
def table():
    return {r.name: r for r in load_catalog(DATA / "tables.json")}


def test_marks_for_every_table_row(table):
    assert set(table) == set(EXPECTED_MARKS)
    for name, rec in table.items():
        v = verdict(rec)
        assert (v.marks["A4"], v.marks["A5"]) == EXPECTED_MARKS[name], name


def test_only_two_rows_inconclusive(table):
    verdicts = {n: verdict(r) for n, r in table.items()}
    open_rows = sorted(n for n, v in verdicts.items() if v.conclusion is not Conclusion.IRREDUCIBLE)
    assert open_rows == ["HL6_12", "HL6_9"]
    for n in open_rows:
        assert verdicts[n].conclusion is Conclusion.INCONCLUSIVE
        assert verdicts[n].summary() == "Inconclusive (C11 satisfied k=—; C13 satisfied k=0,2)"


def test_summary_strings(table):
    assert verdict(table["HK4_1"]).summary() == "Irreducible (C11 failed: 56 mod 12 = 8; C14 failed: 379 mod 60 = 19)"
    assert verdict(table["HL5_1"]).summary() == (
        "Irreducible (C11 failed: 184 mod 12 = 4; C12 failed for k=0..1; C14 failed: 1605 mod 60 = 45)")


def test_no_summary_claims_reducibility(table):
    for rec in table.values():
        assert "reducible" not in verdict(rec).summary().replace("Irreducible", "")


def test_criterion_arithmetic():
    r = c11(30, 2)
    assert (r.trials[0].dividend, r.trials[0].modulus, r.satisfied) == (56, 12, False)
    assert c11(22, 2).satisfied  # trivial genus 2 knot = Z * Z
    assert [t.modulus for t in c12(0, 2).trials] == [12, 36]
    assert [t.modulus for t in c13(0, 3).trials] == [48, 72, 96, 120, 144]
    assert c14(77, 2).satisfied
    assert evaluate("C14", {"A5": 77}, 2) == c14(77, 2)


def test_c13_needs_genus_two():
    with pytest.raises(CriterionError):
        c13(14, 1)


# Each criterion is satisfied by the ks value of any link with the matching kind of factor.
@given(st.integers(1, 10**6), st.integers(2, 9))
def test_trivial_factor_always_satisfies_c11_and_c14(ks_factor, g):
    try:
        assert c11(onesum_trivial("A4", ks_factor, g), g).satisfied
        assert c14(onesum_trivial("A5", ks_factor, g), g).satisfied
    except ValueError:
        pass  # ks_factor too small to be an actual ks value


@given(st.integers(1, 10**6), st.integers(2, 9), st.integers(0, 1))
def test_knot_factor_satisfies_c12(ks_factor, g, k):
    try:
        ks = onesum_2gen_knot_A4(ks_factor, g, k)
    except ValueError:
        return
    assert k in c12(ks, g).witnesses


@given(st.integers(1, 10**6), st.integers(2, 9), st.integers(0, 4))
def test_link_factor_satisfies_c13(ks_factor, g, k):
    try:
        ks = onesum_2gen_link_A4(ks_factor, g, k)
    except ValueError:
        return
    assert k in c13(ks, g).witnesses


def test_dispatch_link_rules():
    r = dispatch([2, 1], RankAssertion(4))
    assert r.genus == 4 and r.available and r.criteria() == ["C11", "C13"]
    r = dispatch([1, 1], RankAssertion(4, exact=False))
    assert list(r.cases) == [3, 4] and r.criteria() == ["C11", "C12", "C14"]
    assert not dispatch([1, 1], RankAssertion(5, exact=False)).available
    assert not dispatch([3], 3).available
    assert dispatch([1, 1, 0, 0], 3).type_vector == (1, 1)


def test_dispatch_knot_rules():
    assert dispatch([0, 1], 2).criteria() == ["C11", "C14"]
    assert dispatch([0, 1], 3).cases[3] == (frozenset({"C11"}), frozenset({"C14"}))
    assert dispatch([0, 0, 1], 5).criteria() == ["C11", "C12"]
    assert not dispatch([0, 1], 5).available
    assert not dispatch([0, 0, 0, 1], 5).available


@pytest.mark.parametrize("tv, rank", [([], 1), ([0, 0], 1), ([0, 1], 1), ([-1, 1], 3)])
def test_dispatch_rejects(tv, rank):
    with pytest.raises(CriterionError):
        dispatch(tv, rank)


def test_rank_upper_bound_needs_every_case():
    rec = LinkRecord("x", (1, 1), RankAssertion(4, exact=False), ks={"A4": 100, "A5": 1000})
    v = verdict(rec)
    assert set(v.rule.cases) == {3, 4}
    assert v.marks["A5"] == NA  # rank 4 has no A5 criterion


def test_missing_ks_is_unavailable():
    rec = LinkRecord("x", (0, 1), RankAssertion(3), ks={"A4": 30})
    v = verdict(rec)
    assert v.conclusion is Conclusion.UNAVAILABLE
    assert v.explanation == "missing ks value for A5"
    assert verdict(rec, {"A4": 30, "A5": 60}).conclusion is Conclusion.IRREDUCIBLE


def test_unavailable_rule_explains():
    v = verdict(LinkRecord("c", (3,), RankAssertion(3), ks={"A4": 56}))
    assert v.conclusion is Conclusion.UNAVAILABLE
    assert v.summary() == "RuleUnavailable (no rule for type [3] at rank 3)"
    assert v.marks == {"A4": NA, "A5": NA}


def test_column_mark():
    rule = dispatch([0, 1], 3)
    assert column_mark(rule, "A4", {"C11"}) == OK
    assert column_mark(rule, "A4", set()) == Q
    assert column_mark(dispatch([2, 1], 4), "A5", {"C11", "C13"}) == NA


def test_verdict_json(table):
    j = verdict(table["HL5_1"]).to_json()
    assert j["conclusion"] == "Irreducible" and j["rank"] == {"max": 4}
    assert set(j["criteria"]) <= set(CRITERIA)
    assert j["marks"] == {"A4": OK, "A5": NA}
