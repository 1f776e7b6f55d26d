"""Closed-form ks identities and one-sum composition formulas.

Every function here is exact integer arithmetic.  The enumeration engine in
:mod:`hlirred.homcount` is the independent check on all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .homcount import DEFAULT_ORBIT_CAP, classify_homs, count_homs, ks_burnside, ks_in_subgroups
from .permgroup import FiniteGroup, abelian_census, check_counting_hypothesis
from .presentation import Presentation, abelianization


class FormulaError(ValueError):
    pass


def _group_name(G) -> str:
    name = G if isinstance(G, str) else G.name
    if name not in ("A4", "A5"):
        raise FormulaError(f"formula is only available for A4 and A5, not {name!r}")
    return name


def ksw_abelian(iso_type: Sequence[int], g: int) -> int:
    """Homomorphisms into an abelian group with the given invariant factors: ``|H|^g``."""
    if g < 1:
        raise FormulaError("genus must be at least 1")
    return math.prod(iso_type) ** g


def ks_H_G(n_H: int, order: int, g: int) -> int:
    """Conjugacy classes of homomorphisms into copies of a self-centralizing abelian ``H``."""
    if g < 1 or n_H < 1 or order < 2:
        raise FormulaError("need g >= 1, n_H >= 1 and |H| >= 2")
    num = (n_H - 1) * (order**g - order)
    q, rem = divmod(num, order - 1)
    assert rem == 0
    return q + n_H


def ks_H_G_recursive(n_H: int, order: int, g: int) -> int:
    value = n_H
    for k in range(2, g + 1):
        value += (n_H - 1) * order ** (k - 1)
    return value


@dataclass(frozen=True)
class SubgroupParts:
    ks_w: int  # homomorphisms into one copy of H
    ks_G: int  # conjugacy classes of homomorphisms into some copy of H


def ks_from_parts(G: FiniteGroup, ks_w: int, parts: Mapping[tuple[int, ...], SubgroupParts]) -> int:
    """Orbit count from the raw count and the per-abelian-subgroup counts.

    Valid for groups in which every nonabelian subgroup has trivial centralizer
    and maximal abelian subgroups meet trivially; other groups are refused.
    """
    if not check_counting_hypothesis(G).holds:
        raise FormulaError(f"{G.name or 'group'} fails the centralizer/intersection hypothesis")
    census = abelian_census(G)
    if set(parts) != set(census.types()):
        raise FormulaError(f"parts given for {sorted(parts)}, census has {census.types()}")
    num = ks_w - 1
    small = 1 - len(census.entries)
    for entry in census.entries:
        p = parts[entry.iso_type]
        num -= entry.multiplicity * (p.ks_w - 1)
        small += p.ks_G
    q, rem = divmod(num, G.order)
    if rem:
        raise FormulaError(f"{num} is not divisible by |G| = {G.order}; inconsistent inputs")
    return small + q


def closed_form_parts(G: FiniteGroup, g: int) -> dict[tuple[int, ...], SubgroupParts]:
    return {
        e.iso_type: SubgroupParts(ksw_abelian(e.iso_type, g), ks_H_G(e.n_H, e.size, g))
        for e in abelian_census(G).entries
    }


def enumerated_parts(P: Presentation, G: FiniteGroup, cap: int = DEFAULT_ORBIT_CAP) -> dict[tuple[int, ...], SubgroupParts]:
    out = {}
    for e in abelian_census(G).entries:
        out[e.iso_type] = SubgroupParts(
            count_homs(P, G, restrict_to=e.subgroups[0]),
            ks_in_subgroups(P, G, e.subgroups, cap=cap),
        )
    return out


def ksw_from_ks(G, ks: int, g: int) -> int:
    name = _group_name(G)
    if name == "A4":
        value = 12 * ks - 8 * 3**g - 3 * 4**g
    else:
        value = 60 * ks - 20 * 3**g - 15 * 4**g - 24 * 5**g
    if value < 0:
        raise FormulaError(f"ks={ks} is too small for a genus {g} handlebody link")
    return value


def ks_trivial(G, g: int) -> int:
    """ks of the trivial handlebody link of genus ``g`` (free knot group)."""
    name = _group_name(G)
    if name == "A4":
        return (12**g + 8 * 3**g + 3 * 4**g) // 12
    return (60**g + 20 * 3**g + 15 * 4**g + 24 * 5**g) // 60


def _check_nonneg(value: int) -> int:
    if value < 0:
        raise FormulaError(f"formula gives a negative value ({value})")
    return value


def onesum_trivial(G, ks_factor: int, g: int) -> int:
    """ks of a genus ``g`` link with a trivial knot factor, from ks of the other factor."""
    name = _group_name(G)
    if g < 2:
        raise FormulaError("a one-sum with a trivial knot has genus at least 2")
    if name == "A4":
        return _check_nonneg(12 * ks_factor - 6 * 3 ** (g - 1) - 2 * 4 ** (g - 1))
    return _check_nonneg(60 * ks_factor - 19 * 3 ** (g - 1) - 14 * 4 ** (g - 1) - 22 * 5 ** (g - 1))


def onesum_trivial_cases(G, ks_factor: int, g: int) -> int:
    """Same value as :func:`onesum_trivial`, summed case by case over the image of the trivial knot's meridian."""
    name = _group_name(G)
    h = g - 1
    ksw = ksw_from_ks(name, ks_factor, h)

    def case(order: int) -> int:
        q, rem = divmod(ksw - order**h, order)
        if rem:
            raise FormulaError("non-integral case count")
        return q + order**h

    if name == "A4":
        return ks_factor + case(4) + 2 * case(3)
    return ks_factor + case(4) + case(3) + 2 * case(5)


def onesum_2gen_knot_A4(ks_factor: int, g: int, k: int) -> int:
    if k not in (0, 1):
        raise FormulaError("k must be 0 or 1 for a 2-generator knot factor")
    if g < 2:
        raise FormulaError("genus must be at least 2")
    return _check_nonneg((12 + 24 * k) * ks_factor - (6 + 16 * k) * 3 ** (g - 1) - (2 + 6 * k) * 4 ** (g - 1))


def onesum_2gen_link_A4(ks_factor: int, g: int, k: int) -> int:
    if k not in range(5):
        raise FormulaError("k must be in 0..4 for a 2-generator link factor")
    if g < 2:
        raise FormulaError("genus must be at least 2")
    return _check_nonneg((48 + 24 * k) * ks_factor - (26 + 16 * k) * 3 ** (g - 2) - (8 + 6 * k) * 4 ** (g - 2))


def surjection_pairs(P: Presentation, G: FiniteGroup) -> int:
    """The parameter k: half the number of conjugacy classes of surjections."""
    surj = classify_homs(P, G).surjective_orbits
    if surj % 2:
        raise FormulaError(f"odd number ({surj}) of surjective classes")
    return surj // 2


def genus_of(P: Presentation) -> int:
    """Genus read off the abelianization, which must be free abelian."""
    rank, torsion = abelianization(P)
    if torsion:
        raise FormulaError(f"abelianization has torsion {torsion}")
    return rank


@dataclass
class KsReport:
    group: str
    genus: int
    ks_w: int
    ks: int
    parts: dict[tuple[int, ...], SubgroupParts] = field(default_factory=dict)
    surjective_orbits: int | None = None


def ks_report(P: Presentation, G: FiniteGroup, jobs: int = 1, cap: int = DEFAULT_ORBIT_CAP, census: bool = True) -> KsReport:
    rank, _ = abelianization(P)
    report = KsReport(G.name, rank, count_homs(P, G, jobs=jobs), ks_burnside(P, G, jobs=jobs))
    if census:
        report.parts = enumerated_parts(P, G, cap=cap)
        report.surjective_orbits = classify_homs(P, G, cap=cap).surjective_orbits
    return report
