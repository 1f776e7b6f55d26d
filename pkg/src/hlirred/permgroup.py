"""Small finite permutation groups, fully materialized.

Elements are indexed 0..|G|-1 in breadth-first order from the identity, and
all arithmetic goes through a dense multiplication table.  Products compose
right-to-left: ``(p * q)(i) == p(q(i))``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 20160


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise GroupError(f"not a bijection on 0..{len(imgs) - 1}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int | None = None) -> Perm:
        cycles = [tuple(c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=-1)
        degree = top + 1 if degree is None else degree
        if top >= degree:
            raise GroupError(f"point {top} out of range for degree {degree}")
        images = list(range(degree))
        seen: set[int] = set()
        for c in cycles:
            if seen.intersection(c) or len(set(c)) != len(c):
                raise GroupError(f"cycles are not disjoint: {cycles}")
            seen.update(c)
            for a, b in zip(c, c[1:] + c[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Perm:
        """Parse cycle notation such as ``(0 1 2)(3 4)`` or ``(0,1,2)``; ``()`` is the identity."""
        body = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\)\s*)+", body):
            raise GroupError(f"bad cycle notation: {text!r}")
        cycles = [[int(x) for x in re.split(r"[\s,]+", c.strip()) if x]
                  for c in re.findall(r"\(([^)]*)\)", body)]
        return cls.from_cycles([c for c in cycles if c], degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Perm) -> Perm:
        if other.degree != self.degree:
            raise GroupError("degree mismatch")
        return Perm(tuple(self.images[i] for i in other.images))

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        out, seen = [], set()
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


class FiniteGroup:
    """A finite permutation group with its multiplication table.

    ``mul[i, j]`` is the index of ``elements[i] * elements[j]``.  Build
    instances with :func:`make_group` or :func:`builtin_group`.
    """

    def __init__(self, elements: list[Perm], mul: np.ndarray, name: str = ""):
        self.elements = elements
        self.mul = mul
        self.name = name
        self.identity = 0
        self.degree = elements[0].degree
        n = len(elements)
        hit = np.argwhere(mul == 0)
        self.inv = np.empty(n, dtype=mul.dtype)
        self.inv[hit[:, 0]] = hit[:, 1]
        # conj[g, x] = g x g^-1
        self.conj = mul[mul, self.inv[:, None]]
        self.classes = _partition_classes(self.conj)
        self.class_of = np.empty(n, dtype=np.int64)
        for c, members in enumerate(self.classes):
            self.class_of[list(members)] = c
        self.centralizer_of = [
            tuple(int(h) for h in np.flatnonzero(mul[:, g] == mul[g, :])) for g in range(n)
        ]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<FiniteGroup {self.name or '?'} of order {self.order}>"

    @cached_property
    def index_of(self) -> dict[tuple[int, ...], int]:
        return {p.images: i for i, p in enumerate(self.elements)}

    def index(self, p: Perm | str) -> int:
        if isinstance(p, str):
            p = Perm.parse(p, self.degree)
        try:
            return self.index_of[p.images]
        except KeyError:
            raise GroupError(f"{p} is not an element of {self.name or 'the group'}") from None

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        """Closure of ``gens`` under multiplication, as an index set."""
        gens = [int(g) for g in gens]
        members = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.mul[x, s])
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def centralizer(self, g: int) -> frozenset[int]:
        return frozenset(self.centralizer_of[g])

    def subgroup_centralizer(self, members: Iterable[int]) -> frozenset[int]:
        out = set(range(self.order))
        for h in members:
            out.intersection_update(self.centralizer_of[h])
        return frozenset(out)

    def is_abelian_set(self, members: Iterable[int]) -> bool:
        idx = np.fromiter(members, dtype=np.int64)
        sub = self.mul[np.ix_(idx, idx)]
        return bool(np.array_equal(sub, sub.T))

    def abelian_invariants(self, members: Iterable[int]) -> list[int]:
        """Invariant factors ``[d1, d2, ...]`` (``d1 | d2 | ...``) of an abelian subgroup."""
        members = list(members)
        exps: dict[int, list[int]] = {}
        # prime-power elementary divisors from counts of elements killed by p^k
        n = len(members)
        for p in _prime_factors(n):
            pk, prev, parts = p, 1, []
            while True:
                killed = sum(1 for h in members if self._power(h, pk) == self.identity)
                if killed == prev:
                    break
                parts.append(round(math.log(killed // prev, p)))
                prev, pk = killed, pk * p
            # parts[k] = number of cyclic p-factors of order >= p^(k+1)
            sizes = []
            for k, cnt in enumerate(parts):
                nxt = parts[k + 1] if k + 1 < len(parts) else 0
                sizes.extend([p ** (k + 1)] * (cnt - nxt))
            exps[p] = sorted(sizes, reverse=True)
        width = max((len(v) for v in exps.values()), default=0)
        factors = [1] * width
        for sizes in exps.values():
            for i, s in enumerate(sizes):
                factors[i] *= s
        return sorted(f for f in factors if f > 1)

    def _power(self, g: int, k: int) -> int:
        out, base = self.identity, g
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _partition_classes(conj: np.ndarray) -> list[tuple[int, ...]]:
    n = conj.shape[0]
    seen = np.zeros(n, dtype=bool)
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        members = np.unique(conj[:, x])
        seen[members] = True
        classes.append(tuple(int(m) for m in members))
    return classes


def make_group(generators: Sequence[Perm], cap: int = DEFAULT_ORDER_CAP, name: str = "") -> FiniteGroup:
    """Close ``generators`` under multiplication.

    Elements are ordered breadth-first from the identity, right-multiplying by
    the generators in the order given, so equal inputs give equal tables.
    """
    if not generators:
        raise GroupError("need at least one generator")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise GroupError("generators have different degrees")
    gen_arr = [np.array(g.images) for g in generators]
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    parent, via = [-1], [-1]
    right = [[] for _ in generators]  # right[s][x] = index of x * s
    head = 0
    while head < len(elements):
        x = np.array(elements[head])
        for s, g in enumerate(gen_arr):
            y = tuple(x[g].tolist())
            j = index.get(y)
            if j is None:
                if len(elements) >= cap:
                    raise GroupError(f"group order exceeds cap {cap}")
                j = len(elements)
                index[y] = j
                elements.append(y)
                parent.append(head)
                via.append(s)
            right[s].append(j)
        head += 1
    n = len(elements)
    dtype = np.int16 if n < 2**15 else np.int32
    rmul = np.array(right, dtype=dtype)
    mul = np.empty((n, n), dtype=dtype)
    mul[:, 0] = np.arange(n)
    for j in range(1, n):
        mul[:, j] = rmul[via[j]][mul[:, parent[j]]]
    return FiniteGroup([Perm(e) for e in elements], mul, name=name)


def _symmetric_gens(n: int) -> list[Perm]:
    if n <= 1:
        return [Perm.identity(max(n, 1))]
    if n == 2:
        return [Perm.from_cycles([(0, 1)], 2)]
    return [Perm.from_cycles([tuple(range(n))], n), Perm.from_cycles([(0, 1)], n)]


def _alternating_gens(n: int) -> list[Perm]:
    if n <= 2:
        return [Perm.identity(max(n, 1))]
    # 3-cycles (0 1 k) generate A_n
    return [Perm.from_cycles([(0, 1, k)], n) for k in range(2, n)]


def builtin_group(name: str) -> FiniteGroup:
    """Named groups: ``A4``, ``A5``, ``V4``, ``Z<n>``/``Zn:<n>``, ``S<n>``/``Sn:<n>``, ``A<n>``/``An:<n>``."""
    key = name.strip()
    m = re.fullmatch(r"([ASZ])n?[:(]?(\d+)\)?", key)
    if key == "V4":
        gens = [Perm.from_cycles([(0, 1), (2, 3)], 4), Perm.from_cycles([(0, 2), (1, 3)], 4)]
        label = "V4"
    elif m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise GroupError(f"bad group size in {name!r}")
        label = f"{kind}{n}"
        if kind == "Z":
            gens = [Perm.from_cycles([tuple(range(n))], n) if n > 1 else Perm.identity(1)]
        elif kind == "S":
            gens = _symmetric_gens(n)
        else:
            gens = _alternating_gens(n)
    else:
        raise GroupError(f"unknown group {name!r}")
    return make_group(gens, cap=max(DEFAULT_ORDER_CAP, 1), name=label)


def read_group_file(path) -> FiniteGroup:
    """Generators in cycle notation, one per line; ``#`` starts a comment."""
    with open(path) as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    perms = [Perm.parse(ln) for ln in lines if ln]
    if not perms:
        raise GroupError(f"{path}: no generators")
    degree = max(p.degree for p in perms)
    perms = [Perm(p.images + tuple(range(p.degree, degree))) for p in perms]
    return make_group(perms, name=str(path))


# --- abelian subgroups -------------------------------------------------------


@dataclass
class CensusEntry:
    iso_type: tuple[int, ...]
    subgroups: list[frozenset[int]]
    n_H: int

    @property
    def multiplicity(self) -> int:
        return len(self.subgroups)

    @property
    def size(self) -> int:
        return math.prod(self.iso_type) if self.iso_type else 1


@dataclass
class AbelianSubgroupCensus:
    entries: list[CensusEntry] = field(default_factory=list)

    def __getitem__(self, iso_type) -> CensusEntry:
        for e in self.entries:
            if e.iso_type == tuple(iso_type):
                return e
        raise KeyError(iso_type)

    def types(self) -> list[tuple[int, ...]]:
        return [e.iso_type for e in self.entries]

    def all_subgroups(self) -> list[frozenset[int]]:
        return [s for e in self.entries for s in e.subgroups]


def maximal_abelian_subgroups(G: FiniteGroup) -> list[frozenset[int]]:
    """All maximal abelian subgroups, i.e. abelian ``H`` with ``C_G(H) == H``.

    Grown from cyclic subgroups by adjoining centralizing elements, so
    subgroups needing more than two generators are found as well.
    """
    found: set[frozenset[int]] = set()
    seen: set[frozenset[int]] = set()
    stack = list({G.subgroup([g]) for g in range(G.order)})
    while stack:
        H = stack.pop()
        if H in seen:
            continue
        seen.add(H)
        cent = G.subgroup_centralizer(H)
        if cent == H:
            found.add(H)
            continue
        for x in sorted(cent - H):
            stack.append(G.subgroup(list(H) + [x]))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def abelian_census(G: FiniteGroup) -> AbelianSubgroupCensus:
    by_type: dict[tuple[int, ...], list[frozenset[int]]] = {}
    for H in maximal_abelian_subgroups(G):
        by_type.setdefault(tuple(G.abelian_invariants(H)), []).append(H)
    entries = []
    for iso, subs in sorted(by_type.items(), key=lambda kv: (math.prod(kv[0]), kv[0])):
        n_H = len({int(G.class_of[h]) for h in subs[0]})
        entries.append(CensusEntry(iso, subs, n_H))
    return AbelianSubgroupCensus(entries)


@dataclass
class HypothesisReport:
    holds: bool
    # nonabelian subgroups whose centralizer is nontrivial
    centralized: list[frozenset[int]] = field(default_factory=list)
    # pairs of maximal abelian subgroups meeting beyond the identity
    overlapping: list[tuple[frozenset[int], frozenset[int]]] = field(default_factory=list)


def two_generated_subgroups(G: FiniteGroup) -> set[frozenset[int]]:
    subs: set[frozenset[int]] = set()
    for a in range(G.order):
        for b in range(a, G.order):
            subs.add(G.subgroup([a, b]))
    return subs


def check_counting_hypothesis(G: FiniteGroup) -> HypothesisReport:
    """Check that every subgroup is abelian or has trivial centralizer, and that
    distinct maximal abelian subgroups meet only in the identity.

    Checking 2-generated subgroups suffices for the first clause: a nonabelian
    subgroup contains a nonabelian 2-generated one with a larger centralizer.
    """
    centralized = []
    for H in sorted(two_generated_subgroups(G), key=lambda s: (len(s), sorted(s))):
        if not G.is_abelian_set(H) and len(G.subgroup_centralizer(H)) > 1:
            centralized.append(H)
    maxab = maximal_abelian_subgroups(G)
    overlapping = [
        (A, B)
        for i, A in enumerate(maxab)
        for B in maxab[i + 1:]
        if len(A & B) > 1
    ]
    return HypothesisReport(not centralized and not overlapping, centralized, overlapping)
