"""Finitely presented groups, their text format, and the link catalog.

Word syntax: a lowercase generator name stands for the generator, the same
name in uppercase for its inverse; ``^k`` raises the preceding letter to an
integer power and ``1`` is the empty word.  A presentation file looks like::

    # trefoil
    gens a b
    rel a b a = b a b
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

Letter = tuple[int, int]  # (generator index, exponent +1/-1)
Word = tuple[Letter, ...]

_NAME = re.compile(r"[a-z][a-z0-9_]*")


class PresentationError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)
        self.line, self.col = line, col


class CatalogError(ValueError):
    pass


def inverse_word(w: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def reduce_word(w: Iterable[Letter]) -> Word:
    """Freely reduce (cancel adjacent ``x x^-1`` pairs)."""
    out: list[Letter] = []
    for g, e in w:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    gen_names: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    label: str | None = None

    def __post_init__(self):
        names = tuple(self.gen_names)
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate generator names: {names}")
        for nm in names:
            if not _NAME.fullmatch(nm):
                raise PresentationError(f"bad generator name {nm!r}")
        rels = tuple(tuple((int(g), int(e)) for g, e in r) for r in self.relators)
        for r in rels:
            for g, e in r:
                if not 0 <= g < len(names) or e not in (1, -1):
                    raise PresentationError(f"relator letter {(g, e)} out of range")
        object.__setattr__(self, "gen_names", names)
        object.__setattr__(self, "relators", rels)

    @property
    def rank(self) -> int:
        """Number of generators (an upper bound for the rank of the group)."""
        return len(self.gen_names)

    @classmethod
    def free(cls, n: int, label: str | None = None) -> Presentation:
        return cls(tuple(_default_names(n)), (), label)

    def word(self, text: str) -> Word:
        return parse_word(text, self.gen_names)

    def format_word(self, w: Sequence[Letter]) -> str:
        if not w:
            return "1"
        return " ".join(self.gen_names[g] if e > 0 else self.gen_names[g].upper() for g, e in w)

    def support(self, w: Sequence[Letter]) -> set[int]:
        return {g for g, _ in w}

    def relabel(self, perm: Sequence[int]) -> Presentation:
        """Generator ``i`` becomes generator ``perm[i]`` (names move with it)."""
        names = [""] * self.rank
        for i, j in enumerate(perm):
            names[j] = self.gen_names[i]
        rels = tuple(tuple((perm[g], e) for g, e in r) for r in self.relators)
        return Presentation(tuple(names), rels, self.label)

    def __str__(self):
        return format_presentation(self)


def _default_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"x{i + 1}" for i in range(n)]


def parse_word(text: str, gen_names: Sequence[str], line: int | None = None, col0: int = 0) -> Word:
    lookup = {nm: (i, 1) for i, nm in enumerate(gen_names)}
    lookup.update({nm.upper(): (i, -1) for i, nm in enumerate(gen_names)})
    keys = sorted(lookup, key=len, reverse=True)
    out: list[Letter] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "1":
            pos += 1
            continue
        if ch == "^":
            if not out:
                raise PresentationError("exponent without a letter", line, col0 + pos + 1)
            m = re.match(r"\^\s*(-?\d+)", text[pos:])
            if not m:
                raise PresentationError("bad exponent", line, col0 + pos + 1)
            k = int(m.group(1))
            g, e = out.pop()
            out.extend([(g, e if k > 0 else -e)] * abs(k))
            pos += m.end()
            continue
        for key in keys:
            if text.startswith(key, pos):
                out.append(lookup[key])
                pos += len(key)
                break
        else:
            raise PresentationError(f"unknown generator at {text[pos:pos + 8]!r}", line, col0 + pos + 1)
    return tuple(out)


def parse_presentation(text: str, label: str | None = None) -> Presentation:
    """Parse the ``gens``/``rel`` text format; ``u = v`` becomes the relator ``u v^-1``."""
    names: list[str] | None = None
    rels: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = re.match(r"\s*(\w+)\b", line)
        if not m:
            raise PresentationError("expected a directive", lineno, 1)
        kw, rest, col = m.group(1), line[m.end():], m.end()
        if kw == "gens":
            if names is not None:
                raise PresentationError("second 'gens' line", lineno, 1)
            names = rest.split()
            for nm in names:
                if not _NAME.fullmatch(nm):
                    raise PresentationError(f"bad generator name {nm!r}", lineno)
            if len(set(names)) != len(names):
                raise PresentationError("duplicate generator", lineno)
        elif kw == "rel":
            if names is None:
                raise PresentationError("'rel' before 'gens'", lineno, 1)
            sides = rest.split("=")
            if len(sides) > 2:
                raise PresentationError("more than one '='", lineno)
            lhs = parse_word(sides[0], names, lineno, col)
            if len(sides) == 2:
                rhs = parse_word(sides[1], names, lineno, col + len(sides[0]) + 1)
                lhs = lhs + inverse_word(rhs)
            rels.append(lhs)
        elif kw == "name":
            label = rest.strip() or None
        else:
            raise PresentationError(f"unknown directive {kw!r}", lineno, 1)
    if names is None:
        raise PresentationError("missing 'gens' line")
    return Presentation(tuple(names), tuple(rels), label)


def format_presentation(P: Presentation, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    if P.label:
        lines.append(f"name {P.label}")
    lines.append(("gens " + " ".join(P.gen_names)).rstrip())
    lines.extend(f"rel {P.format_word(r)}" for r in P.relators)
    return "\n".join(lines) + "\n"


def read_presentation(path) -> Presentation:
    return parse_presentation(Path(path).read_text())


def free_product(P1: Presentation, P2: Presentation) -> Presentation:
    """Disjoint union of generators and relators; clashing names in ``P2`` get a ``_2`` style suffix."""
    names = list(P1.gen_names)
    taken = set(names)
    for nm in P2.gen_names:
        new, k = nm, 2
        while new in taken:
            new = f"{nm}_{k}"
            k += 1
        taken.add(new)
        names.append(new)
    shift = P1.rank
    rels = P1.relators + tuple(tuple((g + shift, e) for g, e in r) for r in P2.relators)
    label = None
    if P1.label or P2.label:
        label = f"{P1.label or '?'} * {P2.label or '?'}"
    return Presentation(tuple(names), rels, label)


def exponent_matrix(P: Presentation) -> list[list[int]]:
    rows = []
    for r in P.relators:
        row = [0] * P.rank
        for g, e in r:
            row[g] += e
        rows.append(row)
    return rows


def abelianization(P: Presentation) -> tuple[int, list[int]]:
    """``(free_rank, torsion)`` of the abelianized group, via Smith normal form."""
    rows = [r for r in exponent_matrix(P) if any(r)]
    if not rows or P.rank == 0:
        return P.rank, []
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    diag = [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [d for d in diag if d != 0]
    return P.rank - len(nonzero), sorted(d for d in nonzero if d > 1)


# --- catalog -----------------------------------------------------------------


@dataclass(frozen=True)
class RankAssertion:
    value: int
    exact: bool = True

    def possible(self, genus: int) -> range:
        return range(self.value, self.value + 1) if self.exact else range(genus, self.value + 1)

    def to_json(self) -> dict:
        return {"exact" if self.exact else "max": self.value}

    def __str__(self):
        return str(self.value) if self.exact else f"<={self.value}"


@dataclass
class LinkRecord:
    name: str
    type_vector: tuple[int, ...]
    rank: RankAssertion
    presentation: Presentation | None = None
    diagram: object | None = None  # diagram.DiagramCode
    ks: dict[str, int] = field(default_factory=dict)
    notes: str | None = None

    @property
    def genus(self) -> int:
        return sum((i + 1) * n for i, n in enumerate(self.type_vector))

    @property
    def components(self) -> int:
        return sum(self.type_vector)

    def source_presentation(self) -> Presentation | None:
        if self.presentation is not None:
            return self.presentation
        if self.diagram is not None:
            from .diagram import wirtinger
            return wirtinger(self.diagram)
        return None

    def validate(self) -> None:
        tv = self.type_vector
        if not tv or any(n < 0 for n in tv) or self.genus < 1:
            raise CatalogError(f"{self.name}: bad type vector {list(tv)}")
        if self.rank.value < self.genus:
            raise CatalogError(f"{self.name}: rank {self.rank} below genus {self.genus}")
        if self.presentation is not None and self.rank.exact and self.rank.value > self.presentation.rank:
            raise CatalogError(
                f"{self.name}: rank {self.rank.value} exceeds the {self.presentation.rank} generators supplied"
            )
        if self.presentation is not None:
            free_rank, torsion = abelianization(self.presentation)
            if torsion or free_rank != self.genus:
                tors = "".join(f" + Z/{t}" for t in torsion)
                raise CatalogError(f"{self.name}: abelianization Z^{free_rank}{tors} does not match genus {self.genus}")
        if self.diagram is not None:
            from .diagram import genus_and_type
            _, dtype = genus_and_type(self.diagram)
            if tuple(dtype) != tuple(_trim(tv)):
                raise CatalogError(f"{self.name}: diagram has type {list(dtype)}, record says {list(tv)}")
        for key, val in self.ks.items():
            if not isinstance(val, int) or val < 1:
                raise CatalogError(f"{self.name}: ks value {key}={val!r} must be a positive integer")

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "type": list(self.type_vector), "rank": self.rank.to_json()}
        if self.presentation is not None:
            out["presentation"] = format_presentation(self.presentation)
        if self.diagram is not None:
            from .diagram import format_diagram
            out["diagram"] = format_diagram(self.diagram)
        if self.ks:
            out["ks"] = dict(self.ks)
        if self.notes is not None:
            out["notes"] = self.notes
        return out


def _trim(tv: Sequence[int]) -> list[int]:
    tv = list(tv)
    while tv and tv[-1] == 0:
        tv.pop()
    return tv


_RECORD_KEYS = {"name", "type", "rank", "presentation", "diagram", "ks", "notes"}


def _load_text(value: str, base: Path) -> str:
    """Inline text, or a path relative to the catalog file when it names one."""
    if "\n" not in value and (base / value).is_file():
        return (base / value).read_text()
    return value


def record_from_json(obj: dict, base: Path = Path(".")) -> LinkRecord:
    if not isinstance(obj, dict):
        raise CatalogError(f"record must be an object, got {type(obj).__name__}")
    unknown = set(obj) - _RECORD_KEYS
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise CatalogError("record without a name")
    if unknown:
        raise CatalogError(f"{name}: unknown keys {sorted(unknown)}")
    tv = obj.get("type")
    if not isinstance(tv, list) or not all(isinstance(n, int) for n in tv):
        raise CatalogError(f"{name}: 'type' must be a list of integers")
    rank = obj.get("rank")
    if isinstance(rank, int):
        rank = {"exact": rank}
    if not isinstance(rank, dict) or len(rank) != 1 or not set(rank) <= {"exact", "max"}:
        raise CatalogError(f"{name}: 'rank' must be {{exact: n}} or {{max: n}}")
    (kind, value), = rank.items()
    if not isinstance(value, int):
        raise CatalogError(f"{name}: rank must be an integer")
    pres = diag = None
    try:
        if "presentation" in obj:
            pres = parse_presentation(_load_text(obj["presentation"], base))
        if "diagram" in obj:
            from .diagram import parse_diagram
            diag = parse_diagram(_load_text(obj["diagram"], base))
    except ValueError as exc:
        raise CatalogError(f"{name}: {exc}") from exc
    ks = obj.get("ks", {})
    if not isinstance(ks, dict):
        raise CatalogError(f"{name}: 'ks' must be an object")
    rec = LinkRecord(name, tuple(tv), RankAssertion(value, kind == "exact"), pres, diag, dict(ks), obj.get("notes"))
    rec.validate()
    return rec


def load_catalog(path) -> list[LinkRecord]:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path}: {exc}") from exc
    if not isinstance(data, list):
        raise CatalogError(f"{path}: catalog must be a JSON array")
    records = [record_from_json(obj, path.parent) for obj in data]
    names = [r.name for r in records]
    if len(set(names)) != len(names):
        raise CatalogError(f"{path}: duplicate record names")
    return records


def save_catalog(path, records: Sequence[LinkRecord]) -> None:
    for r in records:
        r.validate()
    Path(path).write_text(json.dumps([r.to_json() for r in records], indent=2) + "\n")
