"""Small named instances used by the tests, the CLI and the docs.

FIX_A  Z2 acting trivially on one point.
FIX_B  Z2 swapping two points (global).
FIX_C  Z2 swapping x1, x2 partially, with a fixed block {x3}.
FIX_D  pair groupoid on two objects moving a to b.
"""

from __future__ import annotations

from .action import FinitePartialAction
from .groupoid import Groupoid, from_group, pair_groupoid


def z2() -> Groupoid:
    return from_group(["e", "g"], [["e", "g"], ["g", "e"]])


def fix_a() -> FinitePartialAction:
    return FinitePartialAction(
        z2(), {"x1": "e"}, {"g": ["x1"]}, {"g": {"x1": "x1"}}
    )


def fix_b() -> FinitePartialAction:
    return FinitePartialAction(
        z2(),
        {"x1": "e", "x2": "e"},
        {"g": ["x1", "x2"]},
        {"g": {"x1": "x2", "x2": "x1"}},
    )


def fix_c() -> FinitePartialAction:
    return FinitePartialAction(
        z2(),
        {"x1": "e", "x2": "e", "x3": "e"},
        {"g": ["x1", "x2"]},
        {"g": {"x1": "x2", "x2": "x1"}},
    )


def fix_d() -> FinitePartialAction:
    G = pair_groupoid(2)
    # (1,0): object 0 -> object 1
    return FinitePartialAction(
        G,
        {"a": "0", "b": "1"},
        {"(1,0)": ["b"], "(0,1)": ["a"]},
        {"(1,0)": {"a": "b"}, "(0,1)": {"b": "a"}},
    )


ACTIONS = {"FIX-A": fix_a, "FIX-B": fix_b, "FIX-C": fix_c, "FIX-D": fix_d}
