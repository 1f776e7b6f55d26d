"""Shared hypothesis strategies and brute-force oracles."""

import itertools

from hypothesis import strategies as st

from hlirred.homcount import is_hom
from hlirred.presentation import Presentation


@st.composite
def presentations(draw, max_gens=3, max_rels=2, max_len=6):
    n = draw(st.integers(1, max_gens))
    letter = st.tuples(st.integers(0, n - 1), st.sampled_from([1, -1]))
    rels = draw(st.lists(st.lists(letter, min_size=1, max_size=max_len).map(tuple), max_size=max_rels))
    return Presentation(tuple("abcdefgh"[:n]), tuple(rels))


def brute_force_count(P, G):
    return sum(is_hom(P, G, imgs) for imgs in itertools.product(range(G.order), repeat=P.rank))


# A4 and A5 column marks of the published tables
OK, Q, NA = "✓", "?", "n.a."
EXPECTED_MARKS = {
    **{n: (OK, OK) for n in ["HK4_1", "HK5_2", "HK5_3", "HK6_1", "HK6_2", "HK6_7", "HK6_9", "HK6_12", "HK6_13"]},
    **{n: (Q, OK) for n in ["HK5_1", "HK5_4", "HK6_3", "HK6_4", "HK6_5", "HK6_6", "HK6_8", "HK6_10", "HK6_11",
                            "HK6_14", "HK6_15", "HK6_16"]},
    **{n: (OK, OK) for n in ["HL4_1", "HL6_1", "HL6_3", "HL6_8"]},
    **{n: (OK, NA) for n in ["HL5_1", "HL6_5", "HL6_7", "HL6_10", "HL6_11", "HL6_13", "HL6_14", "HL6_15"]},
    **{n: (Q, OK) for n in ["HL6_2", "HL6_4", "HL6_6"]},
    **{n: (Q, NA) for n in ["HL6_9", "HL6_12"]},
}

# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE: list[str] = []


def report(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE.append(line)
    print(line)
