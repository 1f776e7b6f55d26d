import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hlirred.permgroup import (
    GroupError, Perm, abelian_census, builtin_group, check_counting_hypothesis, make_group,
    maximal_abelian_subgroups, read_group_file, two_generated_subgroups,
)


def test_perm_parse_and_print():
    p = Perm.parse("(0 1 2)(3 4)")
    assert p.images == (1, 2, 0, 4, 3)
    assert str(p) == "(0 1 2)(3 4)"
    assert Perm.parse("(0,2)", degree=4).images == (2, 1, 0, 3)
    assert str(Perm.parse("()", degree=3)) == "()"


@pytest.mark.parametrize("text", ["0 1 2", "(0 1)(1 2)", "(a b)", "(0 0)"])
def test_perm_parse_rejects(text):
    with pytest.raises(GroupError):
        Perm.parse(text)


def test_products_compose_right_to_left():
    a, b = Perm.parse("(0 1)", 3), Perm.parse("(1 2)", 3)
    # (a*b)(x) = a(b(x)): 0 -> 0 -> 1
    assert (a * b).images[0] == 1
    assert (a * b) * (a * b).inverse() == Perm.identity(3)


@given(st.permutations(range(6)), st.permutations(range(6)), st.permutations(range(6)))
def test_perm_associative(x, y, z):
    p, q, r = Perm(tuple(x)), Perm(tuple(y)), Perm(tuple(z))
    assert (p * q) * r == p * (q * r)
    assert Perm.parse(str(p), degree=6) == p


@pytest.mark.parametrize("name, order, classes", [
    ("A4", 12, 4), ("A5", 60, 5), ("S3", 6, 3), ("S4", 24, 5), ("V4", 4, 4),
    ("Z6", 6, 6), ("Zn:7", 7, 7), ("Sn:4", 24, 5), ("An:4", 12, 4), ("Z1", 1, 1),
])
def test_builtin_orders(name, order, classes):
    G = builtin_group(name)
    assert G.order == order
    assert len(G.classes) == classes


@pytest.mark.parametrize("name", ["B4", "A", "Zn:", "S-3", "Z0"])
def test_builtin_rejects(name):
    with pytest.raises(GroupError):
        builtin_group(name)


def test_table_is_a_group(A5):
    n = A5.order
    mul = A5.mul
    assert A5.elements[0] == Perm.identity(5)
    for row in mul:
        assert sorted(row) == list(range(n))  # Latin square rows
    for col in mul.T:
        assert sorted(col) == list(range(n))
    assert np.all(mul[np.arange(n), A5.inv] == 0)
    idx = np.arange(n)
    for a in range(0, n, 7):
        assert np.array_equal(mul[mul[a], :][:, idx], mul[a][mul])  # (a x) y == a (x y)


def test_table_matches_permutation_products(A4):
    for i, j in itertools.product(range(A4.order), repeat=2):
        assert A4.elements[A4.mul[i, j]] == A4.elements[i] * A4.elements[j]


def test_conjugation_and_classes(A5):
    sizes = sorted(len(c) for c in A5.classes)
    assert sizes == [1, 12, 12, 15, 20]
    for cls in A5.classes:
        # orbit-stabilizer
        assert len(cls) * len(A5.centralizer_of[cls[0]]) == A5.order
    g, x = 5, 17
    assert A5.conj[g, x] == A5.mul[A5.mul[g, x], A5.inv[g]]


def test_element_orders(A5):
    orders = sorted(A5.element_order(i) for i in range(A5.order))
    assert orders.count(1) == 1 and orders.count(2) == 15 and orders.count(3) == 20 and orders.count(5) == 24


def test_index_by_perm_or_text(A4):
    i = A4.index("(0 1 2)")
    assert A4.elements[i] == Perm.parse("(0 1 2)", 4)
    assert A4.index(Perm.parse("(0 1)(2 3)")) == A4.index("(0 1)(2 3)")
    with pytest.raises(GroupError):
        A4.index("(0 1)")


def test_make_group_is_deterministic():
    gens = [Perm.parse("(0 1 2 3 4)"), Perm.parse("(0 1 2)", 5)]
    G1, G2 = make_group(gens), make_group(list(gens))
    assert G1.elements == G2.elements and np.array_equal(G1.mul, G2.mul)


def test_make_group_cap():
    with pytest.raises(GroupError):
        make_group([Perm.parse("(0 1 2 3 4 5 6)"), Perm.parse("(0 1)", 7)], cap=1000)


def test_read_group_file_pads_degrees(tmp_path):
    f = tmp_path / "d5.txt"
    f.write_text("# dihedral of order 10\n(0 1 2 3 4)\n(1 4)(2 3)\n")
    assert read_group_file(f).order == 10
    f.write_text("(0 1)\n(2 3 4)\n")
    assert read_group_file(f).order == 6
    f.write_text("# nothing\n")
    with pytest.raises(GroupError):
        read_group_file(f)


def test_abelian_invariants(A4):
    V = A4.subgroup([A4.index("(0 1)(2 3)"), A4.index("(0 2)(1 3)")])
    assert A4.abelian_invariants(V) == [2, 2]
    Z6 = builtin_group("Z6")
    assert Z6.abelian_invariants(frozenset(range(6))) == [6]
    S4 = builtin_group("S4")
    Z4 = S4.subgroup([S4.index("(0 1 2 3)")])
    assert S4.abelian_invariants(Z4) == [4]


def test_census_A4(A4):
    c = abelian_census(A4)
    assert [(e.iso_type, e.multiplicity, e.n_H) for e in c.entries] == [((3,), 4, 3), ((2, 2), 1, 2)]


def test_census_A5(A5):
    c = abelian_census(A5)
    assert [(e.iso_type, e.multiplicity, e.n_H) for e in c.entries] == [
        ((3,), 10, 2), ((2, 2), 5, 2), ((5,), 6, 3)]
    assert c[(5,)].size == 5
    # maximal abelian subgroups partition the nonidentity elements
    covered = [x for H in c.all_subgroups() for x in H if x != 0]
    assert sorted(covered) == list(range(1, 60))


@pytest.mark.parametrize("name", ["A4", "A5", "S3", "S4", "V4", "Z6"])
def test_maximal_abelian_brute_force(name):
    G = builtin_group(name)
    subs = two_generated_subgroups(G)  # every abelian subgroup of these groups is 2-generated
    abelian = [H for H in subs if G.is_abelian_set(H)]
    maximal = {H for H in abelian if not any(H < K for K in abelian)}
    assert set(maximal_abelian_subgroups(G)) == maximal


@pytest.mark.parametrize("name, holds", [("A4", True), ("A5", True), ("Z6", True), ("S3", True), ("S4", False)])
def test_counting_hypothesis(name, holds):
    report = check_counting_hypothesis(builtin_group(name))
    assert report.holds is holds
    if not holds:
        assert report.centralized or report.overlapping


@pytest.mark.parametrize("name", ["A4", "A5"])
def test_census_members_are_self_centralizing(name):
    G = builtin_group(name)
    for H in abelian_census(G).all_subgroups():
        for h in H:
            if h != G.identity:
                assert frozenset(G.centralizer_of[h]) == H
