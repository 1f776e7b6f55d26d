"""Spine diagrams of handlebody links and their Wirtinger presentations.

Text format (arcs are numbered 1..N)::

    arcs 3
    # x <sign> <under_in> <over> <under_out>
    x + 1 3 2
    # v <arc>:<in|out> x3, in the cyclic order of the diagram
    v 1:in 2:out 3:out

Each arc is oriented.  A crossing ends its ``under_in`` arc and starts its
``under_out`` arc; the over arc passes through unbroken.  At a vertex an
``in`` arc ends and an ``out`` arc starts.  An arc with no ends at all is a
closed circle.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

import networkx as nx

from .presentation import Presentation, _default_names


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    sign: int
    under_in: int
    over: int
    under_out: int


@dataclass(frozen=True)
class Vertex:
    ends: tuple[tuple[int, bool], ...]  # (arc, incoming)


@dataclass(frozen=True)
class DiagramCode:
    arc_count: int
    crossings: tuple[Crossing, ...] = ()
    vertices: tuple[Vertex, ...] = ()

    def __post_init__(self):
        validate(self)


def validate(D: DiagramCode) -> None:
    n = D.arc_count
    if n < 1:
        raise DiagramError("a diagram needs at least one arc")
    heads: Counter[int] = Counter()
    tails: Counter[int] = Counter()
    for k, c in enumerate(D.crossings, 1):
        if c.sign not in (1, -1):
            raise DiagramError(f"crossing {k}: sign must be + or -")
        for a in (c.under_in, c.over, c.under_out):
            if not 0 <= a < n:
                raise DiagramError(f"crossing {k}: arc {a + 1} out of range 1..{n}")
        heads[c.under_in] += 1
        tails[c.under_out] += 1
    for k, v in enumerate(D.vertices, 1):
        if len(v.ends) != 3:
            raise DiagramError(f"vertex {k}: expected 3 incidences, got {len(v.ends)}")
        for a, incoming in v.ends:
            if not 0 <= a < n:
                raise DiagramError(f"vertex {k}: arc {a + 1} out of range 1..{n}")
            (heads if incoming else tails)[a] += 1
    for a in range(n):
        h, t = heads[a], tails[a]
        if (h, t) not in ((0, 0), (1, 1)):
            raise DiagramError(f"arc {a + 1}: dangling or over-used ({h} incoming ends, {t} outgoing ends)")


def parse_diagram(text: str) -> DiagramCode:
    arc_count = None
    crossings, vertices = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        kw, args = line[0], line[1:]
        try:
            if kw == "arcs":
                if arc_count is not None or len(args) != 1:
                    raise DiagramError("expected a single 'arcs N' line")
                arc_count = int(args[0])
            elif kw == "x":
                if len(args) != 4 or args[0] not in "+-" or len(args[0]) != 1:
                    raise DiagramError("expected 'x <+|-> <under_in> <over> <under_out>'")
                a, o, c = (int(t) - 1 for t in args[1:])
                crossings.append(Crossing(1 if args[0] == "+" else -1, a, o, c))
            elif kw == "v":
                ends = []
                for tok in args:
                    m = re.fullmatch(r"(\d+):(in|out)", tok)
                    if not m:
                        raise DiagramError(f"bad vertex incidence {tok!r}")
                    ends.append((int(m.group(1)) - 1, m.group(2) == "in"))
                vertices.append(Vertex(tuple(ends)))
            else:
                raise DiagramError(f"unknown directive {kw!r}")
        except ValueError as exc:
            raise DiagramError(f"line {lineno}: {exc}") from None
    if arc_count is None:
        raise DiagramError("missing 'arcs N' line")
    try:
        return DiagramCode(arc_count, tuple(crossings), tuple(vertices))
    except DiagramError as exc:
        raise DiagramError(f"invalid diagram: {exc}") from None


def format_diagram(D: DiagramCode) -> str:
    lines = [f"arcs {D.arc_count}"]
    for c in D.crossings:
        lines.append(f"x {'+' if c.sign > 0 else '-'} {c.under_in + 1} {c.over + 1} {c.under_out + 1}")
    for v in D.vertices:
        lines.append("v " + " ".join(f"{a + 1}:{'in' if inc else 'out'}" for a, inc in v.ends))
    return "\n".join(lines) + "\n"


def read_diagram(path) -> DiagramCode:
    with open(path) as fh:
        return parse_diagram(fh.read())


def wirtinger(D: DiagramCode, label: str | None = None) -> Presentation:
    """One generator per arc; a conjugation relator per crossing and a product relator per vertex.

    Crossing ``(s, a, o, c)`` gives ``m_c (m_o^s m_a m_o^-s)^-1``; a vertex gives
    the product of its arcs' generators in the listed order, inverted for
    outgoing arcs.
    """
    rels = []
    for x in D.crossings:
        s = x.sign
        rels.append(((x.under_out, 1), (x.over, s), (x.under_in, -1), (x.over, -s)))
    for v in D.vertices:
        rels.append(tuple((a, 1 if inc else -1) for a, inc in v.ends))
    return Presentation(tuple(_default_names(D.arc_count)), tuple(rels), label)


def spine_graph(D: DiagramCode) -> nx.MultiGraph:
    """The abstract spine: arcs merged through crossings, trivalent vertices as nodes.

    A closed strand that meets no vertex becomes a node with a self-loop.
    """
    strands = nx.utils.UnionFind(range(D.arc_count))
    for x in D.crossings:
        strands.union(x.under_in, x.under_out)
    ends: dict[int, list[int]] = {}
    for k, v in enumerate(D.vertices):
        for a, _ in v.ends:
            ends.setdefault(strands[a], []).append(("v", k))
    G = nx.MultiGraph()
    G.add_nodes_from(("v", k) for k in range(len(D.vertices)))
    for root in sorted({strands[a] for a in range(D.arc_count)}):
        nodes = ends.get(root, [])
        if not nodes:
            G.add_edge(("loop", root), ("loop", root))
        else:
            u, w = nodes  # validation guarantees both ends of a strand
            G.add_edge(u, w)
    return G


def genus_and_type(D: DiagramCode) -> tuple[int, list[int]]:
    G = spine_graph(D)
    genera = []
    for comp in nx.connected_components(G):
        sub = G.subgraph(comp)
        genera.append(sub.number_of_edges() - sub.number_of_nodes() + 1)
    if min(genera) < 1:
        raise DiagramError("spine has a component of genus 0")
    tv = [0] * max(genera)
    for g in genera:
        tv[g - 1] += 1
    return sum(genera), tv
