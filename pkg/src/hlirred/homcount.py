"""Counting homomorphisms from finitely presented groups into finite groups.

The search assigns generator images one at a time, in an order that lets each
relator be checked as soon as all of its generators have images.  When the
last unassigned generator of a relator occurs in it exactly once, its image is
solved for instead of enumerated.  Partial assignments are kept as numpy
column arrays and extended breadth-first in bounded chunks, so memory stays
flat while the inner loop is a table lookup.

Generators that share no relator are independent, so the presentation is split
into blocks whose counts multiply.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .permgroup import FiniteGroup
from .presentation import Presentation, Word

DEFAULT_ORBIT_CAP = 10**7
CHUNK_ROWS = 1 << 20

Hom = tuple[int, ...]


class CapExceeded(RuntimeError):
    pass


class EngineError(RuntimeError):
    pass


@dataclass
class Step:
    gen: int
    # relator rotated to x^e W; the image of x is solved from W
    solve: tuple[int, Word] | None = None
    checks: list[Word] = field(default_factory=list)


@dataclass
class Block:
    gens: list[int]
    steps: list[Step]


def split_blocks(P: Presentation) -> tuple[list[list[int]], list[int]]:
    """Generator blocks linked by shared relators, and the generators in no relator."""
    parent = list(range(P.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    used = set()
    for r in P.relators:
        sup = sorted({g for g, _ in r})
        used.update(sup)
        for g in sup[1:]:
            parent[find(g)] = find(sup[0])
    groups: dict[int, list[int]] = {}
    for g in sorted(used):
        groups.setdefault(find(g), []).append(g)
    free = [g for g in range(P.rank) if g not in used]
    return sorted(groups.values()), free


def plan_block(P: Presentation, gens: Sequence[int]) -> Block:
    """Order the generators of one block and schedule relator checks.

    Greedy: repeatedly take the unfinished relator with the fewest unassigned
    generators, preferring one that can solve for its last generator.
    """
    gens_set = set(gens)
    rels = [r for r in P.relators if r and {g for g, _ in r} <= gens_set]
    assigned: list[int] = []
    done = [False] * len(rels)
    steps: list[Step] = []

    def finish_checks(step: Step, skip: int | None):
        have = set(assigned)
        for i, r in enumerate(rels):
            if not done[i] and {g for g, _ in r} <= have:
                done[i] = True
                if i != skip:
                    step.checks.append(r)

    while len(assigned) < len(gens_set):
        best = None
        for i, r in enumerate(rels):
            if done[i]:
                continue
            counts: dict[int, int] = {}
            for g, _ in r:
                if g not in assigned:
                    counts[g] = counts.get(g, 0) + 1
            singles = sorted(g for g, c in counts.items() if c == 1)
            key = (len(counts), 0 if singles else 1, i)
            if best is None or key < best[0]:
                best = (key, i, sorted(counts), singles)
        if best is None:  # leftover generators with no unfinished relator
            for g in sorted(gens_set - set(assigned)):
                assigned.append(g)
                step = Step(g)
                finish_checks(step, None)
                steps.append(step)
            break
        _, ri, todo, singles = best
        target = singles[-1] if singles else None
        for g in todo:
            if g == target:
                continue
            assigned.append(g)
            step = Step(g)
            finish_checks(step, None)
            steps.append(step)
        if target is not None:
            r = rels[ri]
            pos = next(k for k, (g, _) in enumerate(r) if g == target)
            rot = r[pos:] + r[:pos]
            assigned.append(target)
            step = Step(target, solve=(rot[0][1], rot[1:]))
            finish_checks(step, ri)
            steps.append(step)
    # relabel words in column coordinates
    col = {g: k for k, g in enumerate(assigned)}
    for st in steps:
        st.checks = [tuple((col[g], e) for g, e in r) for r in st.checks]
        if st.solve is not None:
            st.solve = (st.solve[0], tuple((col[g], e) for g, e in st.solve[1]))
    return Block(assigned, steps)


class _Search:
    """Chunked breadth-first extension of partial assignments for one block."""

    def __init__(self, G: FiniteGroup, block: Block, domain: np.ndarray):
        self.mul = G.mul
        self.inv = G.inv
        self.n = G.order
        self.block = block
        self.domain = domain.astype(G.mul.dtype)
        self.allowed = np.zeros(G.order, dtype=bool)
        self.allowed[domain] = True
        self.identity = G.identity

    def _word(self, cols: list[np.ndarray], word: Word, rows: int) -> np.ndarray:
        if not word:
            return np.full(rows, self.identity, dtype=self.mul.dtype)
        acc = None
        for c, e in word:
            x = cols[c] if e > 0 else self.inv[cols[c]]
            acc = x if acc is None else self.mul[acc, x]
        return acc

    def walk(self, cols: list[np.ndarray], rows: int, depth: int) -> Iterator[tuple[list[np.ndarray], int]]:
        steps = self.block.steps
        if rows == 0:
            return
        if depth == len(steps):
            yield cols, rows
            return
        step = steps[depth]
        if step.solve is None:
            width = len(self.domain)
            if rows * width > CHUNK_ROWS and rows > 1:
                per = max(1, CHUNK_ROWS // width)
                for lo in range(0, rows, per):
                    part = [c[lo:lo + per] for c in cols]
                    yield from self.walk(part, min(per, rows - lo), depth)
                return
            new_cols = [np.repeat(c, width) for c in cols]
            new_cols.append(np.tile(self.domain, rows))
            rows *= width
            keep = None
        else:
            sign, rest = step.solve
            w = self._word(cols, rest, rows)
            x = self.inv[w] if sign > 0 else w
            new_cols = cols + [x]
            keep = self.allowed[x]
        for r in step.checks:
            ok = self._word(new_cols, r, rows) == self.identity
            keep = ok if keep is None else keep & ok
        if keep is not None:
            if not keep.all():
                new_cols = [c[keep] for c in new_cols]
                rows = int(np.count_nonzero(keep))
        yield from self.walk(new_cols, rows, depth + 1)

    def start(self, first: int | None = None) -> Iterator[tuple[list[np.ndarray], int]]:
        if first is None:
            yield from self.walk([], 1, 0)
            return
        # subtree with the first (enumerated) generator fixed
        cols = [np.array([first], dtype=self.mul.dtype)]
        keep = np.ones(1, dtype=bool)
        for r in self.block.steps[0].checks:
            keep &= self._word(cols, r, 1) == self.identity
        if keep[0]:
            yield from self.walk(cols, 1, 1)


def _subtree_count(args) -> int:
    G, block, domain, first = args
    return sum(rows for _, rows in _Search(G, block, domain).start(first))


def _resolve_domain(G: FiniteGroup, restrict_to: Iterable[int] | None) -> np.ndarray:
    if restrict_to is None:
        return np.arange(G.order)
    dom = np.array(sorted(set(int(x) for x in restrict_to)), dtype=np.int64)
    if len(dom) and (dom[0] < 0 or dom[-1] >= G.order):
        raise ValueError("restrict_to holds indices outside the group")
    return dom


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("HLIRRED_JOBS", "1")))
    except ValueError:
        return 1


def _block_count(G: FiniteGroup, block: Block, domain: np.ndarray, jobs: int) -> int:
    search = _Search(G, block, domain)
    if jobs > 1 and block.steps and block.steps[0].solve is None and len(domain) > 1:
        tasks = [(G, block, domain, int(d)) for d in domain]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return sum(pool.map(_subtree_count, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return sum(rows for _, rows in search.start())


def count_homs(P: Presentation, G: FiniteGroup, restrict_to: Iterable[int] | None = None, jobs: int = 1) -> int:
    """Number of homomorphisms from ``P`` into ``G`` (or into the subset ``restrict_to``).

    ``restrict_to`` should be a subgroup; every generator image is drawn from it.
    """
    domain = _resolve_domain(G, restrict_to)
    blocks, free = split_blocks(P)
    total = len(domain) ** len(free)
    for gens in blocks:
        if total == 0:
            break
        total *= _block_count(G, plan_block(P, gens), domain, jobs)
    return total


def enumerate_homs(
    P: Presentation, G: FiniteGroup, restrict_to: Iterable[int] | None = None, cap: int | None = DEFAULT_ORBIT_CAP
) -> np.ndarray:
    """All homomorphisms as an ``(N, rank)`` array of image indices, rows in lexicographic order."""
    domain = _resolve_domain(G, restrict_to)
    blocks, free = split_blocks(P)
    parts: list[tuple[list[int], np.ndarray]] = []
    expected = 1
    for g in free:
        parts.append(([g], domain.reshape(-1, 1)))
        expected *= len(domain)
    for gens in blocks:
        block = plan_block(P, gens)
        chunks, rows_seen = [], 0
        for cols, rows in _Search(G, block, domain).start():
            rows_seen += rows
            if cap is not None and rows_seen * expected > cap:
                raise CapExceeded(f"more than {cap} homomorphisms")
            chunks.append(np.stack(cols, axis=1) if cols else np.zeros((rows, 0), dtype=G.mul.dtype))
        arr = np.concatenate(chunks) if chunks else np.zeros((0, len(block.gens)), dtype=G.mul.dtype)
        parts.append((block.gens, arr))
        expected *= len(arr)
    if cap is not None and expected > cap:
        raise CapExceeded(f"more than {cap} homomorphisms")
    out = np.zeros((expected, P.rank), dtype=G.mul.dtype)
    reps = expected
    tile = 1
    for gens, arr in parts:
        reps //= max(len(arr), 1)
        if len(arr) == 0:
            return np.zeros((0, P.rank), dtype=G.mul.dtype)
        block_rows = np.tile(np.repeat(arr, reps, axis=0), (tile, 1))
        out[:, gens] = block_rows
        tile *= len(arr)
    order = np.lexsort(out.T[::-1]) if len(out) else np.arange(0)
    return out[order]


def is_hom(P: Presentation, G: FiniteGroup, images: Sequence[int]) -> bool:
    for r in P.relators:
        acc = G.identity
        for g, e in r:
            x = images[g] if e > 0 else int(G.inv[images[g]])
            acc = int(G.mul[acc, x])
        if acc != G.identity:
            return False
    return True


# --- conjugation orbits --------------------------------------------------------


def _code_layout(n: int, width: int) -> list[range]:
    per = max(1, int(62 // max(1.0, math.log2(max(n, 2)))))
    return [range(lo, min(lo + per, width)) for lo in range(0, max(width, 1), per)]


def orbit_codes(homs: np.ndarray, G: FiniteGroup, block_rows: int = 1 << 18) -> np.ndarray:
    """Canonical code per row: the lexicographically least encoding over all conjugates.

    Returns an ``(N, k)`` int64 array; equal rows mean equal conjugation orbits.
    """
    n = G.order
    layout = _code_layout(n, homs.shape[1])
    powers = [n ** np.arange(len(cols) - 1, -1, -1, dtype=np.int64) for cols in layout]
    out = np.empty((len(homs), len(layout)), dtype=np.int64)
    for lo in range(0, len(homs), block_rows):
        part = homs[lo:lo + block_rows].astype(np.intp)
        best = None
        for g in range(n):
            conj = G.conj[g][part]
            codes = [conj[:, list(cols)] @ pw for cols, pw in zip(layout, powers)] if part.shape[1] else [
                np.zeros(len(part), dtype=np.int64)]
            if best is None:
                best = codes
                continue
            lt = np.zeros(len(part), dtype=bool)
            eq = np.ones(len(part), dtype=bool)
            for new, old in zip(codes, best):
                lt |= eq & (new < old)
                eq &= new == old
            best = [np.where(lt, new, old) for new, old in zip(codes, best)]
        out[lo:lo + len(part)] = np.stack(best, axis=1)
    return out


@dataclass
class Orbits:
    count: int
    representatives: np.ndarray  # (count, rank) rows, one per orbit
    sizes: np.ndarray


def conjugacy_orbits(homs: np.ndarray, G: FiniteGroup) -> Orbits:
    """Orbits of conjugation on a conjugation-closed set of homomorphisms."""
    if len(homs) == 0:
        return Orbits(0, homs, np.zeros(0, dtype=np.int64))
    codes = orbit_codes(homs, G)
    _, first, sizes = np.unique(codes, axis=0, return_index=True, return_counts=True)
    order = np.argsort(first)
    return Orbits(len(first), homs[first[order]], sizes[order])


def ks_orbits(P: Presentation, G: FiniteGroup, cap: int = DEFAULT_ORBIT_CAP, with_representatives: bool = False):
    """Number of conjugacy classes of homomorphisms, by materializing the hom set."""
    orbits = conjugacy_orbits(enumerate_homs(P, G, cap=cap), G)
    if with_representatives:
        return orbits.count, orbits.representatives
    return orbits.count


def ks_burnside(P: Presentation, G: FiniteGroup, jobs: int = 1) -> int:
    """Orbit count as the average number of fixed points.

    A homomorphism is fixed by conjugation with ``g`` exactly when it lands in
    the centralizer of ``g``; centralizers of conjugate elements give equal
    counts, so one representative per class is weighted by the class size.
    """
    total = 0
    for cls in G.classes:
        total += len(cls) * count_homs(P, G, restrict_to=G.centralizer_of[cls[0]], jobs=jobs)
    q, rem = divmod(total, G.order)
    if rem:
        raise EngineError(f"fixed-point total {total} is not divisible by |G| = {G.order}")
    return q


def ks_in_subgroups(P: Presentation, G: FiniteGroup, subgroups: Iterable[Iterable[int]], cap: int = DEFAULT_ORBIT_CAP) -> int:
    """Conjugacy classes of homomorphisms landing in one of ``subgroups``.

    The subgroup list must be closed under conjugation.
    """
    arrays = [enumerate_homs(P, G, restrict_to=H, cap=cap) for H in subgroups]
    homs = np.unique(np.concatenate(arrays), axis=0) if arrays else np.zeros((0, P.rank), dtype=G.mul.dtype)
    return conjugacy_orbits(homs, G).count


# --- image census --------------------------------------------------------------

IMAGE_TYPES = ("trivial", "Z2", "Z3", "Z5", "V4", "full", "other")


def image_type(G: FiniteGroup, members: frozenset[int]) -> str:
    if len(members) == 1:
        return "trivial"
    if len(members) == G.order:
        return "full"
    if G.is_abelian_set(members):
        inv = G.abelian_invariants(members)
        if inv == [2, 2]:
            return "V4"
        if len(inv) == 1:
            return f"Z{inv[0]}"
        return "x".join(f"Z{d}" for d in inv)
    return "other"


@dataclass
class HomCensus:
    total: int
    by_image_type: dict[str, int]
    orbits_by_image_type: dict[str, int]
    conjugacy_orbit_count: int
    surjective_orbits: int
    representatives: list[tuple[Hom, str]] = field(default_factory=list)


def classify_homs(P: Presentation, G: FiniteGroup, cap: int = DEFAULT_ORBIT_CAP) -> HomCensus:
    homs = enumerate_homs(P, G, cap=cap)
    orbits = conjugacy_orbits(homs, G)
    by_type: dict[str, int] = {}
    orbit_types: dict[str, int] = {}
    reps = []
    cache: dict[frozenset[int], str] = {}
    for row, size in zip(orbits.representatives, orbits.sizes):
        gens = frozenset(int(x) for x in row)
        label = cache.get(gens)
        if label is None:
            label = cache[gens] = image_type(G, G.subgroup(gens))
        by_type[label] = by_type.get(label, 0) + int(size)
        orbit_types[label] = orbit_types.get(label, 0) + 1
        reps.append((tuple(int(x) for x in row), label))
    return HomCensus(
        total=len(homs),
        by_image_type=by_type,
        orbits_by_image_type=orbit_types,
        conjugacy_orbit_count=orbits.count,
        surjective_orbits=orbit_types.get("full", 0),
        representatives=reps,
    )
