"""Named sweep presets for the standard region maps (fig2a..fig8c)."""
from __future__ import annotations

import math
from functools import partial

from .gaussian import Bipartition
from .measures import QuadScale
from .scan import Axis, GenuineMap, MultiPresence, PairClass, SweepPlan

PI = math.pi
FIGURE_RES = 200
TEST_RES = 50

# panel -> (mode_a, mode_b, theta); A is the signal mode, t = 0.5.
FIG2_PANELS = {
    "a": (2, 4, PI / 8),
    "b": (2, 3, 11 * PI / 32),
    "c": (1, 3, PI / 16),
    "d": (2, 5, 3 * PI / 8),
    "e": (1, 4, 3 * PI / 8),
    "f": (1, 5, 5 * PI / 16),
}

# panel -> (mode_a, mode_b, theta, fixed knob, fixed value, swept knob)
FIG3_SLICES = {
    "a": (2, 4, PI / 8, "b", 0.8, "c"),
    "b": (2, 3, 11 * PI / 32, "c", 0.87, "b"),
    "c": (1, 3, PI / 16, "b", 0.5, "c"),
    "d": (2, 5, 3 * PI / 8, "c", 0.5, "b"),
    "e": (1, 4, 3 * PI / 8, "b", 0.5, "c"),
    "f": (1, 5, 5 * PI / 16, "c", 0.85, "b"),
}


def _bc_axes(num: int):
    return Axis("b", 0.0, 1.0, num), Axis("c", 0.0, 1.0, num)


def fig2(panel: str, num: int = FIGURE_RES, tol: float | None = None) -> SweepPlan:
    a, b, theta = FIG2_PANELS[panel]
    task = PairClass(a, b) if tol is None else PairClass(a, b, tol)
    return SweepPlan(*_bc_axes(num), {"theta": theta, "t": 0.5}, task)


def one_plus_two() -> tuple[Bipartition, ...]:
    """Single idler steering the joint signal pair {1, 2}."""
    return tuple(Bipartition((k,), (1, 2)) for k in (3, 4, 5))


def two_plus_one(steered: int) -> tuple[Bipartition, ...]:
    return tuple(Bipartition(pair, (steered,)) for pair in ((3, 4), (3, 5), (4, 5)))


def three_plus_one_idler(steered: int) -> tuple[Bipartition, ...]:
    """Other two idlers plus a1 or a2 steering one idler."""
    others = tuple(k for k in (3, 4, 5) if k != steered)
    return (Bipartition((1,) + others, (steered,)), Bipartition((2,) + others, (steered,)))


def three_plus_one_signal(signal: int) -> tuple[Bipartition, ...]:
    """One signal mode plus two idlers steering the remaining idler."""
    return tuple(
        Bipartition((signal,) + tuple(k for k in (3, 4, 5) if k != steered), (steered,)) for steered in (3, 4, 5)
    )


def multi(bipartitions, theta: float, num: int = FIGURE_RES, t: float = 0.5) -> SweepPlan:
    return SweepPlan(*_bc_axes(num), {"theta": theta, "t": t}, MultiPresence(tuple(bipartitions)))


def fig4(num: int = FIGURE_RES) -> SweepPlan:
    return multi(one_plus_two(), PI / 4, num)


def fig5(panel: str, num: int = FIGURE_RES) -> SweepPlan:
    return multi(two_plus_one({"a": 1, "b": 2}[panel]), PI / 4, num)


def fig6(panel: str, num: int = FIGURE_RES) -> SweepPlan:
    return multi(three_plus_one_idler({"a": 3, "b": 4, "c": 5}[panel]), PI / 4, num)


def fig7(panel: str, num: int = FIGURE_RES) -> SweepPlan:
    return multi(three_plus_one_signal({"a": 1, "b": 2}[panel]), 11.3 * PI / 16, num)


def fig8(panel: str, num: int = FIGURE_RES, quad_scale: QuadScale = QuadScale.UNIT) -> SweepPlan:
    task = GenuineMap(quad_scale)
    theta_axis = Axis("theta", 0.0, PI / 2, num)
    if panel == "a":
        return SweepPlan(*_bc_axes(num), {"theta": PI / 4, "t": 0.2}, task)
    if panel == "b":
        return SweepPlan(theta_axis, Axis("b", 0.0, 1.0, num), {"c": 0.7, "t": 0.2}, task)
    if panel == "c":
        return SweepPlan(theta_axis, Axis("c", 0.0, 1.0, num), {"b": 0.7, "t": 0.2}, task)
    raise KeyError(panel)


PRESETS = {
    **{f"fig2{p}": partial(fig2, p) for p in FIG2_PANELS},
    "fig4": fig4,
    **{f"fig5{p}": partial(fig5, p) for p in "ab"},
    **{f"fig6{p}": partial(fig6, p) for p in "abc"},
    **{f"fig7{p}": partial(fig7, p) for p in "ab"},
    **{f"fig8{p}": partial(fig8, p) for p in "abc"},
}
