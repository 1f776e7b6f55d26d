"""Presentations and spine diagrams of standard knots, links and handlebody links."""

from __future__ import annotations

from .diagram import Crossing, DiagramCode, Vertex
from .presentation import Presentation, inverse_word, parse_presentation


def free(n: int) -> Presentation:
    """Knot group of the trivial handlebody link of genus ``n``."""
    return Presentation.free(n, label=f"free{n}")


def two_bridge(p: int, q: int) -> Presentation:
    """Two-generator presentation of the 2-bridge knot or link ``b(p, q)``.

    ``a w = w b`` for knots (``p`` odd) and ``a w = w a`` for links (``p``
    even), with ``w = b^e1 a^e2 b^e3 ...`` of length ``p - 1`` and
    ``e_i = (-1)^floor(i q / p)``.
    """
    if p < 2 or not 0 < q < p:
        raise ValueError("need 0 < q < p")
    if p % 2 and q % 2 == 0:
        q = p - q  # mirror image; same group
    w = tuple(((1 if i % 2 else 0), (-1) ** ((i * q) // p)) for i in range(1, p))
    last = 1 if p % 2 else 0
    rel = ((0, 1),) + w + inverse_word(((last, 1),)) + inverse_word(w)
    return Presentation(("a", "b"), (rel,), f"b({p},{q})")


def torus_knot(p: int, q: int) -> Presentation:
    """``<x, y | x^p = y^q>``; a knot group when ``gcd(p, q) == 1``."""
    return parse_presentation(f"gens x y\nrel x^{p} = y^{q}", label=f"T({p},{q})")


def torus_link_2(n: int) -> Presentation:
    """The 2-component torus link ``T(2, 2n)``: ``<a, b | (ab)^n = (ba)^n>``."""
    return parse_presentation(f"gens a b\nrel {'a b ' * n}= {'b a ' * n}", label=f"T(2,{2 * n})")


TREFOIL = two_bridge(3, 1)
FIGURE_EIGHT = two_bridge(5, 3)
HOPF = two_bridge(2, 1)
WHITEHEAD = two_bridge(8, 3)

TWO_GEN_KNOTS = {
    "trefoil": TREFOIL,
    "figure-eight": FIGURE_EIGHT,
    "5_1": two_bridge(5, 1),
    "5_2": two_bridge(7, 3),
    "6_1": two_bridge(9, 7),
    "6_2": two_bridge(11, 3),
    "7_1": two_bridge(7, 1),
    "T(3,4)": torus_knot(3, 4),
    "T(3,5)": torus_knot(3, 5),
    "T(2,9)": torus_knot(2, 9),
}

TWO_GEN_LINKS = {
    "Hopf": HOPF,
    "T(2,4)": torus_link_2(2),
    "T(2,6)": torus_link_2(3),
    "T(2,8)": torus_link_2(4),
    "Whitehead": WHITEHEAD,
    "b(10,3)": two_bridge(10, 3),
    "b(12,5)": two_bridge(12, 5),
}


# --- diagrams ----------------------------------------------------------------------


def unknot_diagram() -> DiagramCode:
    return DiagramCode(1)


def unlink_diagram(n: int) -> DiagramCode:
    return DiagramCode(n)


def torus_2_diagram(n: int) -> DiagramCode:
    """Closure of the 2-braid ``sigma^n``: a knot for odd ``n``, a 2-component link for even ``n``."""
    if n < 2:
        raise ValueError("need at least 2 crossings")
    cr = [Crossing(1, (j - 2) % n, (j - 1) % n, j) for j in range(n)]
    return DiagramCode(n, tuple(cr))


def trefoil_diagram() -> DiagramCode:
    return torus_2_diagram(3)


def hopf_diagram() -> DiagramCode:
    return DiagramCode(2, (Crossing(1, 0, 1, 0), Crossing(1, 1, 0, 1)))


def figure_eight_diagram() -> DiagramCode:
    return DiagramCode(4, (
        Crossing(1, 0, 2, 1),
        Crossing(-1, 1, 3, 2),
        Crossing(1, 2, 0, 3),
        Crossing(-1, 3, 1, 0),
    ))


def theta_diagram() -> DiagramCode:
    """Planar theta graph: three arcs from one vertex to the other (trivial genus 2 handlebody knot)."""
    return DiagramCode(3, (), (
        Vertex(((0, False), (1, False), (2, False))),
        Vertex(((0, True), (2, True), (1, True))),
    ))


def handcuff_diagram() -> DiagramCode:
    """Planar handcuff graph: two loops joined by an edge (trivial genus 2 handlebody knot)."""
    return DiagramCode(3, (), (
        Vertex(((0, False), (0, True), (2, False))),
        Vertex(((2, True), (1, False), (1, True))),
    ))


def chain_diagram(n: int) -> DiagramCode:
    """A linear chain of ``n`` round rings, each clasped with the next."""
    if n < 1:
        raise ValueError("need at least one ring")
    if n == 1:
        return unknot_diagram()
    # ring 0 and ring n-1 are single arcs; inner rings are cut into two arcs
    arcs = {}
    count = 0

    def new():
        nonlocal count
        count += 1
        return count - 1

    for i in range(n):
        arcs[i] = (new(),) if i in (0, n - 1) else (new(), new())
    cr = []
    for i in range(n - 1):
        left, right = arcs[i], arcs[i + 1]
        # left ring passes under the right one and back over it
        l_in, l_out = (left[0], left[0]) if len(left) == 1 else (left[1], left[0])
        r_in, r_out = (right[0], right[0]) if len(right) == 1 else (right[0], right[1])
        cr.append(Crossing(1, l_in, r_in, l_out))
        cr.append(Crossing(1, r_in, l_out, r_out))
    return DiagramCode(count, tuple(cr))


def theta_with_clasp_diagram() -> DiagramCode:
    """Theta graph whose two outer edges are clasped like a Hopf band (genus 2)."""
    # edges 1,2,3 run vertex A -> vertex B; edge 1 passes under edge 2 and back
    return DiagramCode(5, (
        Crossing(1, 0, 1, 3),
        Crossing(1, 1, 3, 4),
    ), (
        Vertex(((0, False), (1, False), (2, False))),
        Vertex(((3, True), (2, True), (4, True))),
    ))
