"""ks-invariants of handlebody links and divisibility tests for irreducibility."""

from .criteria import Conclusion, Verdict, dispatch, verdict
from .diagram import DiagramCode, genus_and_type, parse_diagram, wirtinger
from .homcount import count_homs, enumerate_homs, ks_burnside, ks_orbits
from .ksinv import ks_report, ks_trivial
from .permgroup import FiniteGroup, Perm, builtin_group, make_group
from .presentation import LinkRecord, Presentation, RankAssertion, load_catalog, parse_presentation

__version__ = "0.1.0"

__all__ = [
    "Conclusion", "DiagramCode", "FiniteGroup", "LinkRecord", "Perm", "Presentation", "RankAssertion", "Verdict",
    "builtin_group", "count_homs", "dispatch", "enumerate_homs", "genus_and_type", "ks_burnside", "ks_orbits",
    "ks_report", "ks_trivial", "load_catalog", "make_group", "parse_diagram", "parse_presentation", "verdict",
    "wirtinger",
]
