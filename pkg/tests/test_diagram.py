import pytest

from hlirred import standard as S
from hlirred.diagram import (
    Crossing, DiagramCode, DiagramError, Vertex, format_diagram, genus_and_type, parse_diagram,
    read_diagram, spine_graph, wirtinger,
)
from hlirred.homcount import count_homs
from hlirred.presentation import abelianization
from conftest import EXAMPLES

DIAGRAMS = {
    "unknot": S.unknot_diagram(),
    "unlink2": S.unlink_diagram(2),
    "trefoil": S.trefoil_diagram(),
    "figure8": S.figure_eight_diagram(),
    "hopf": S.hopf_diagram(),
    "T(2,4)": S.torus_2_diagram(4),
    "T(2,5)": S.torus_2_diagram(5),
    "theta": S.theta_diagram(),
    "handcuff": S.handcuff_diagram(),
    "chain3": S.chain_diagram(3),
    "chain4": S.chain_diagram(4),
    "theta_clasp": S.theta_with_clasp_diagram(),
}


@pytest.mark.parametrize("name", sorted(DIAGRAMS))
def test_format_parse_round_trip(name):
    D = DIAGRAMS[name]
    assert parse_diagram(format_diagram(D)) == D


@pytest.mark.parametrize("name, genus, tv", [
    ("unknot", 1, [1]), ("unlink2", 2, [2]), ("trefoil", 1, [1]), ("figure8", 1, [1]),
    ("hopf", 2, [2]), ("T(2,4)", 2, [2]), ("T(2,5)", 1, [1]), ("theta", 2, [0, 1]),
    ("handcuff", 2, [0, 1]), ("chain3", 3, [3]), ("chain4", 4, [4]), ("theta_clasp", 2, [0, 1]),
])
def test_genus_and_type(name, genus, tv):
    assert genus_and_type(DIAGRAMS[name]) == (genus, tv)


@pytest.mark.parametrize("name", sorted(DIAGRAMS))
def test_wirtinger_abelianization_is_free_of_genus_rank(name):
    D = DIAGRAMS[name]
    g, _ = genus_and_type(D)
    assert abelianization(wirtinger(D)) == (g, [])


# Wirtinger output against an independent 2-generator presentation of the same group
REFERENCE = {
    "trefoil": S.TREFOIL,
    "figure8": S.FIGURE_EIGHT,
    "hopf": S.HOPF,
    "T(2,4)": S.torus_link_2(2),
    "T(2,5)": S.torus_knot(2, 5),
    "theta": S.free(2),
    "handcuff": S.free(2),
    "unlink2": S.free(2),
    "theta_clasp": S.free(2),
}


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_wirtinger_counts_match_reference(name, S3, A4, A5, D5):
    W, R = wirtinger(DIAGRAMS[name]), REFERENCE[name]
    for G in (S3, A4, A5, D5):
        assert count_homs(W, G) == count_homs(R, G), G.name


def test_known_counts(S3, A4, A5, D5):
    counts = {n: [count_homs(wirtinger(DIAGRAMS[n]), G) for G in (S3, A4, A5, D5)] for n in ("trefoil", "figure8", "chain3")}
    assert counts == {
        "trefoil": [12, 36, 360, 10],
        "figure8": [6, 36, 300, 30],
        "chain3": [66, 264, 4620, 220],
    }


def test_wirtinger_relators():
    W = wirtinger(S.theta_diagram())
    assert W.rank == 3 and len(W.relators) == 2
    assert all(len(r) == 3 for r in W.relators)
    T = wirtinger(S.trefoil_diagram())
    assert all(len(r) == 4 for r in T.relators)


def test_spine_graph_components():
    G = spine_graph(S.chain_diagram(3))
    assert G.number_of_nodes() == 3
    assert spine_graph(S.theta_diagram()).number_of_edges() == 3


@pytest.mark.parametrize("text", [
    "arcs 3\nx + 1 2 3\n",              # arc 1 ends but never starts
    "arcs 2\nx + 1 2 1\nx + 1 2 1\n",   # arc 1 used twice
    "arcs 2\nv 1:in 2:out\n",            # degree 2 vertex
    "arcs 1\nx + 1 5 1\n",              # over arc out of range
    "x + 1 1 1\n",                      # no arcs line
    "arcs 1\nx * 1 1 1\n",              # bad sign
    "arcs 1\nv 1:up 1:in 1:out\n",
    "arcs 1\narcs 1\n",
    "arcs 1\ny 1\n",
])
def test_invalid_diagrams(text):
    with pytest.raises(DiagramError):
        parse_diagram(text)


def test_dangling_example_file_is_rejected():
    with pytest.raises(DiagramError, match="dangling"):
        read_diagram(EXAMPLES / "dangling.diag")


def test_direct_construction_validates():
    with pytest.raises(DiagramError):
        DiagramCode(1, (Crossing(1, 0, 0, 1),))
    with pytest.raises(DiagramError):
        DiagramCode(2, (), (Vertex(((0, True), (1, False))),))


def test_comments_and_blank_lines():
    D = parse_diagram("# theta\n\narcs 3   # three edges\nv 1:out 2:out 3:out\nv 1:in 3:in 2:in\n")
    assert D == S.theta_diagram()


def test_torus_diagram_needs_crossings():
    with pytest.raises(ValueError):
        S.torus_2_diagram(1)
