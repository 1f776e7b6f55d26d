"""Divisibility criteria for reducibility and the irreducibility verdict.

Each criterion is a necessary condition for a particular kind of factor to
exist.  A handlebody link is certified irreducible when, for every rank it
might have, the criteria covering all possible factor kinds for that rank
fail.  A satisfied criterion proves nothing: the verdict is then
*Inconclusive*, never "reducible".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .presentation import LinkRecord, RankAssertion

CRITERIA = ("C11", "C12", "C13", "C14")
GROUP_OF = {"C11": "A4", "C12": "A4", "C13": "A4", "C14": "A5"}


class CriterionError(ValueError):
    pass


@dataclass(frozen=True)
class Trial:
    k: int
    dividend: int
    modulus: int

    @property
    def divides(self) -> bool:
        return self.dividend % self.modulus == 0


@dataclass(frozen=True)
class CriterionResult:
    id: str
    satisfied: bool
    witnesses: tuple[int, ...]
    trials: tuple[Trial, ...]

    def describe(self) -> str:
        if self.satisfied:
            ks = ",".join(map(str, self.witnesses)) if len(self.trials) > 1 else "—"
            return f"{self.id} satisfied k={ks}"
        if len(self.trials) == 1:
            t = self.trials[0]
            return f"{self.id} failed: {t.dividend} mod {t.modulus} = {t.dividend % t.modulus}"
        return f"{self.id} failed for k=0..{len(self.trials) - 1}"


def _result(cid: str, trials: list[Trial]) -> CriterionResult:
    wit = tuple(t.k for t in trials if t.divides)
    return CriterionResult(cid, bool(wit), wit, tuple(trials))


def _need_genus(g: int, least: int):
    if g < least:
        raise CriterionError(f"genus {g} is below {least}")


def c11(ks_a4: int, g: int) -> CriterionResult:
    _need_genus(g, 1)
    return _result("C11", [Trial(0, ks_a4 + 6 * 3 ** (g - 1) + 2 * 4 ** (g - 1), 12)])


def c12(ks_a4: int, g: int) -> CriterionResult:
    _need_genus(g, 1)
    return _result("C12", [
        Trial(k, ks_a4 + (6 + 16 * k) * 3 ** (g - 1) + (2 + 6 * k) * 4 ** (g - 1), 12 + 24 * k) for k in (0, 1)
    ])


def c13(ks_a4: int, g: int) -> CriterionResult:
    # the 2-generator link factor carries genus 2, hence the g-2 exponents
    _need_genus(g, 2)
    return _result("C13", [
        Trial(k, ks_a4 + (26 + 16 * k) * 3 ** (g - 2) + (8 + 6 * k) * 4 ** (g - 2), 48 + 24 * k) for k in range(5)
    ])


def c14(ks_a5: int, g: int) -> CriterionResult:
    _need_genus(g, 1)
    return _result("C14", [Trial(0, ks_a5 + 14 * 4 ** (g - 1) + 19 * 3 ** (g - 1) + 22 * 5 ** (g - 1), 60)])


CHECKS = {"C11": c11, "C12": c12, "C13": c13, "C14": c14}


def evaluate(cid: str, ks: Mapping[str, int], g: int) -> CriterionResult:
    return CHECKS[cid](ks[GROUP_OF[cid]], g)


# --- dispatch --------------------------------------------------------------------

# An alternative is a set of criteria that must *all* fail; a rank case lists
# alternatives of which any one suffices.
Alternatives = tuple[frozenset[str], ...]

_OR = (frozenset({"C11"}), frozenset({"C14"}))
_C11_C12 = (frozenset({"C11", "C12"}),)
_C11_C13 = (frozenset({"C11", "C13"}),)
_ALL_A4 = (frozenset({"C11", "C12", "C13"}),)

# type vector -> {rank - genus: alternatives}; missing offsets are not covered
LINK_TABLE: dict[tuple[int, ...], dict[int, Alternatives]] = {
    (1, 1): {0: _OR, 1: _C11_C12},
    (0, 2): {0: _OR, 1: _C11_C12},
    (1, 0, 1): {0: _OR, 1: _ALL_A4},
    (0, 1, 1): {0: _OR},
    (2, 1): {0: _C11_C13, 1: _ALL_A4},
    (1, 2): {0: _C11_C13},
    (2, 0, 1): {0: _C11_C13},
    (3, 1): {0: _C11_C13},
}

KNOT_TABLE: dict[int, Alternatives] = {
    # a g-generator genus-g handlebody knot is trivial; both trivial-factor tests apply
    0: (frozenset({"C11", "C14"}),),
    1: _OR,
    2: _C11_C12,
}


@dataclass(frozen=True)
class Rule:
    type_vector: tuple[int, ...]
    rank: RankAssertion
    genus: int
    cases: dict[int, Alternatives | None]  # possible rank -> alternatives (None: no rule)

    @property
    def available(self) -> bool:
        return all(v is not None for v in self.cases.values())

    def criteria(self) -> list[str]:
        used = {c for alts in self.cases.values() if alts for alt in alts for c in alt}
        return [c for c in CRITERIA if c in used]

    def describe(self) -> str:
        parts = []
        for r, alts in self.cases.items():
            if alts is None:
                parts.append(f"r={r}: no rule")
            else:
                body = " or ".join("fail(" + " & ".join(c for c in CRITERIA if c in a) + ")" for a in alts)
                parts.append(f"r={r}: {body}")
        return "; ".join(parts)


def _trim(tv: Sequence[int]) -> tuple[int, ...]:
    tv = list(tv)
    while tv and tv[-1] == 0:
        tv.pop()
    return tuple(tv)


def dispatch(type_vector: Sequence[int], rank: RankAssertion | int) -> Rule:
    if isinstance(rank, int):
        rank = RankAssertion(rank)
    tv = _trim(type_vector)
    if not tv or any(not isinstance(n, int) or n < 0 for n in tv):
        raise CriterionError(f"malformed type vector {list(type_vector)}")
    genus = sum((i + 1) * n for i, n in enumerate(tv))
    if rank.value < genus:
        raise CriterionError(f"rank {rank} is below the genus {genus}")
    knot = sum(tv) == 1
    cases: dict[int, Alternatives | None] = {}
    for r in rank.possible(genus):
        offset = r - genus
        if knot:
            cases[r] = KNOT_TABLE.get(offset) if genus in (2, 3) else None
        else:
            cases[r] = LINK_TABLE.get(tv, {}).get(offset)
    return Rule(tv, rank, genus, cases)


# --- verdicts --------------------------------------------------------------------


class Conclusion(enum.Enum):
    IRREDUCIBLE = "Irreducible"
    INCONCLUSIVE = "Inconclusive"
    UNAVAILABLE = "RuleUnavailable"


@dataclass
class Verdict:
    name: str
    conclusion: Conclusion
    rule: Rule
    results: dict[str, CriterionResult] = field(default_factory=dict)
    marks: dict[str, str] = field(default_factory=dict)  # group -> "✓" | "?" | "n.a."
    explanation: str = ""

    def summary(self) -> str:
        if self.conclusion is Conclusion.UNAVAILABLE:
            return f"{self.conclusion.value} ({self.explanation})"
        detail = "; ".join(self.results[c].describe() for c in self.rule.criteria())
        return f"{self.conclusion.value} ({detail})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "conclusion": self.conclusion.value,
            "type": list(self.rule.type_vector),
            "rank": self.rule.rank.to_json(),
            "genus": self.rule.genus,
            "rule": self.rule.describe(),
            "marks": dict(self.marks),
            "criteria": {
                cid: {
                    "satisfied": res.satisfied,
                    "witnesses": list(res.witnesses),
                    "trials": [{"k": t.k, "dividend": t.dividend, "modulus": t.modulus} for t in res.trials],
                }
                for cid, res in self.results.items()
            },
            "explanation": self.explanation,
        }


def _certifies(cases: Mapping[int, Alternatives], failed: set[str]) -> bool:
    return all(any(alt <= failed for alt in alts) for alts in cases.values())


def column_mark(rule: Rule, group: str, failed: set[str]) -> str:
    """Table mark for one target group: can its criteria alone certify irreducibility?"""
    if not rule.available:
        return "n.a."
    restricted = {}
    for r, alts in rule.cases.items():
        own = tuple(a for a in alts if all(GROUP_OF[c] == group for c in a))
        if not own:
            return "n.a."
        restricted[r] = own
    return "✓" if _certifies(restricted, failed) else "?"


def verdict(record: LinkRecord, ks: Mapping[str, int] | None = None) -> Verdict:
    """Apply the dispatch rule for ``record`` to its ks values (``ks`` overrides the record's)."""
    ks = dict(record.ks if ks is None else ks)
    rule = dispatch(record.type_vector, record.rank)
    out = Verdict(record.name, Conclusion.UNAVAILABLE, rule)
    if not rule.available:
        missing = [r for r, alts in rule.cases.items() if alts is None]
        out.explanation = f"no rule for type {list(rule.type_vector)} at rank {', '.join(map(str, missing))}"
        out.marks = {"A4": "n.a.", "A5": "n.a."}
        return out
    needed = rule.criteria()
    lacking = sorted({GROUP_OF[c] for c in needed if GROUP_OF[c] not in ks})
    if lacking:
        out.explanation = "missing ks value for " + ", ".join(lacking)
        return out
    out.results = {c: evaluate(c, ks, rule.genus) for c in needed}
    failed = {c for c, res in out.results.items() if not res.satisfied}
    out.conclusion = Conclusion.IRREDUCIBLE if _certifies(rule.cases, failed) else Conclusion.INCONCLUSIVE
    out.marks = {grp: column_mark(rule, grp, failed) for grp in ("A4", "A5")}
    return out
