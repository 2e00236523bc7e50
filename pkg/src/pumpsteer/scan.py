"""Parameter sweeps over the pump knobs and region statistics.

A sweep evaluates one task on every node of a two-axis grid (endpoints
included).  Cells are independent; results are stored by cell index so
the grid does not depend on evaluation order or worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .coupling import PumpSetting, coupling_matrix
from .errors import PumpSteerError
from .gaussian import Bipartition, CovarianceMatrix, mean_photons, reduce, state
from .hg import calibrated_overlap_table
from .measures import (
    DEFAULT_TOL,
    PRESENCE_THRESHOLD,
    QuadScale,
    SteeringClass,
    classify_pair,
    genuine_pentapartite,
    steer_multi,
)

KNOBS = ("b", "c", "theta")
ERROR_CODE = -1
ERROR_LEGEND = ("error", (0, 0, 0))

PAIR_COLORS = {
    SteeringClass.NO_WAY: (128, 128, 128),
    SteeringClass.ONE_WAY_AB: (250, 220, 40),
    SteeringClass.ONE_WAY_BA: (40, 90, 220),
    SteeringClass.TWO_WAY_SYMMETRIC: (40, 170, 60),
    SteeringClass.TWO_WAY_A_DOMINANT: (255, 200, 215),
    SteeringClass.TWO_WAY_B_DOMINANT: (235, 100, 160),
}

# Distinct colors for presence bitmasks; code 0 (nothing present) is white.
_PALETTE = [
    (255, 255, 255), (245, 150, 40), (250, 220, 40), (40, 170, 60),
    (40, 90, 220), (160, 80, 200), (235, 100, 160), (120, 200, 220),
    (140, 90, 50), (190, 190, 60), (80, 80, 160), (200, 60, 60),
    (100, 160, 120), (220, 170, 120), (60, 60, 60), (170, 130, 230),
]


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    num: int

    def __post_init__(self):
        if self.name not in KNOBS:
            raise ValueError(f"axis must be one of {KNOBS}, got {self.name!r}")
        if self.num < 2:
            raise ValueError("axis resolution must be at least 2")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("axis range must be finite")
        if self.name in ("b", "c") and not (0.0 <= min(self.start, self.stop) and max(self.start, self.stop) <= 1.0):
            raise ValueError(f"{self.name} range must lie within [0, 1]")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.num)


@dataclass(frozen=True)
class PairClass:
    mode_a: int
    mode_b: int
    tol: float = DEFAULT_TOL


@dataclass(frozen=True)
class MultiPresence:
    """Presence of steering for each bipartition, read as a_modes steering b_modes."""

    bipartitions: tuple[Bipartition, ...]


@dataclass(frozen=True)
class GenuineMap:
    quad_scale: QuadScale = QuadScale.UNIT


Task = Union[PairClass, MultiPresence, GenuineMap]


@dataclass(frozen=True)
class SweepPlan:
    axis1: Axis
    axis2: Axis
    fixed: Mapping[str, float]
    task: Task

    def __post_init__(self):
        if self.axis1.name == self.axis2.name:
            raise ValueError("the two sweep axes must differ")
        missing = [k for k in KNOBS if k not in (self.axis1.name, self.axis2.name) and k not in self.fixed]
        if missing or "t" not in self.fixed:
            raise ValueError(f"fixed values missing for {missing + ([] if 't' in self.fixed else ['t'])}")
        object.__setattr__(self, "fixed", dict(self.fixed))

    def setting(self, v1: float, v2: float) -> tuple[PumpSetting, float]:
        knobs = {k: self.fixed.get(k) for k in KNOBS}
        knobs[self.axis1.name] = v1
        knobs[self.axis2.name] = v2
        # Endpoint nodes from linspace can overshoot [0, 1] by one ulp.
        for k in ("b", "c"):
            knobs[k] = min(1.0, max(0.0, float(knobs[k])))
        setting = PumpSetting(knobs["b"], knobs["c"], float(knobs["theta"]), float(self.fixed.get("chi", 1.0)))
        return setting, float(self.fixed["t"])


@dataclass
class RegionGrid:
    """Codes and values on an axis1 x axis2 grid; ``codes[i, j]`` sits at (axis1[i], axis2[j])."""

    axis1: Axis
    axis2: Axis
    codes: np.ndarray
    values: np.ndarray
    value_names: tuple[str, ...]
    legend: dict[int, tuple[str, tuple[int, int, int]]]
    plan: SweepPlan | None = field(default=None, repr=False)

    def __post_init__(self):
        shape = (self.axis1.num, self.axis2.num)
        if self.codes.shape != shape:
            raise ValueError(f"codes shape {self.codes.shape} != {shape}")
        missing = set(np.unique(self.codes).tolist()) - set(self.legend)
        if missing:
            raise ValueError(f"legend lacks codes {sorted(missing)}")

    def records(self):
        """Row-major (axis1 value, axis2 value, code, *values) tuples."""
        xs, ys = self.axis1.values(), self.axis2.values()
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                yield (float(x), float(y), int(self.codes[i, j]), *map(float, self.values[i, j]))


def presence_pattern(cm: CovarianceMatrix, bipartitions: Sequence[Bipartition]) -> int:
    """Bitmask with bit j set when bipartition j shows steering from A to B."""
    mask = 0
    for j, part in enumerate(bipartitions):
        if steer_multi(cm, part, "AB") > PRESENCE_THRESHOLD:
            mask |= 1 << j
    return mask


def region_area(grid: RegionGrid, codes: Iterable[int]) -> float:
    codes = list(codes)
    if not codes:
        return 0.0
    return float(np.isin(grid.codes, codes).mean())


def _value_names(task: Task) -> tuple[str, ...]:
    if isinstance(task, PairClass):
        return ("g_a_to_b", "g_b_to_a")
    if isinstance(task, MultiPresence):
        return tuple(f"g_{p.label().replace('|', '_to_')}" for p in task.bipartitions)
    return ("total",)


def legend_for(task: Task) -> dict[int, tuple[str, tuple[int, int, int]]]:
    if isinstance(task, PairClass):
        legend = {cls.code: (cls.value, PAIR_COLORS[cls]) for cls in SteeringClass}
    elif isinstance(task, MultiPresence):
        legend = {}
        for code in range(2 ** len(task.bipartitions)):
            names = [
                "G" + "".join(map(str, p.a_modes)) + "->" + "".join(map(str, p.b_modes))
                for j, p in enumerate(task.bipartitions)
                if code >> j & 1
            ]
            legend[code] = (" + ".join(names) or "none", _PALETTE[code % len(_PALETTE)])
    else:
        legend = {0: ("not violated", (200, 200, 200)), 1: ("violated", (235, 100, 160))}
    legend[ERROR_CODE] = ERROR_LEGEND
    return legend


def evaluate_cell(plan: SweepPlan, v1: float, v2: float) -> tuple[int, tuple[float, ...]]:
    task = plan.task
    setting, t = plan.setting(v1, v2)
    cm = state(setting, t)
    if isinstance(task, PairClass):
        rep = classify_pair(reduce(cm, (task.mode_a, task.mode_b)), task.tol, with_entanglement=False)
        return rep.steering_class.code, (rep.g_a_to_b, rep.g_b_to_a)
    if isinstance(task, MultiPresence):
        gs = tuple(steer_multi(cm, p, "AB") for p in task.bipartitions)
        code = sum(1 << j for j, g in enumerate(gs) if g > PRESENCE_THRESHOLD)
        return code, gs
    res = genuine_pentapartite(cm, task.quad_scale)
    return int(res.violated), (res.total,)


def _evaluate_row(args):
    plan, v1, v2s = args
    out = []
    for v2 in v2s:
        try:
            out.append(evaluate_cell(plan, v1, v2))
        except (PumpSteerError, ValueError, np.linalg.LinAlgError):
            out.append(None)
    return out


def sweep(plan: SweepPlan, workers: int = 1) -> RegionGrid:
    """Evaluate the plan's task at every grid node.

    Per-cell numeric failures are recorded as ``ERROR_CODE`` with NaN
    values instead of aborting the sweep.
    """
    calibrated_overlap_table()  # fail early on a broken mode convention
    xs, ys = plan.axis1.values(), plan.axis2.values()
    names = _value_names(plan.task)
    codes = np.full((len(xs), len(ys)), ERROR_CODE, dtype=np.int64)
    values = np.full((len(xs), len(ys), len(names)), np.nan)
    jobs = [(plan, float(x), [float(y) for y in ys]) for x in xs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_evaluate_row(job) for job in jobs]
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            if cell is not None:
                codes[i, j] = cell[0]
                values[i, j] = cell[1]
    return RegionGrid(plan.axis1, plan.axis2, codes, values, names, legend_for(plan.task), plan)


def find_transitions(axis_values: Sequence[float], codes: Sequence[int]) -> list[tuple[float, int, int]]:
    """Midpoints where the code changes along a 1D line: (position, code_before, code_after)."""
    out = []
    for k in range(1, len(codes)):
        if codes[k] != codes[k - 1]:
            out.append((0.5 * (axis_values[k - 1] + axis_values[k]), int(codes[k - 1]), int(codes[k])))
    return out


def convention_report(mode_a: int, mode_b: int, setting: PumpSetting, t: float) -> dict:
    """Model internals at one setting, for auditing a mismatched boundary."""
    table = calibrated_overlap_table()
    g = coupling_matrix(setting, table)
    cm = state(setting, t, table)
    pair = reduce(cm, (mode_a, mode_b))
    rep = classify_pair(pair)
    return {
        "setting": {"b": setting.b, "c": setting.c, "theta": setting.theta, "chi": setting.chi, "t": t},
        "pair": [mode_a, mode_b],
        "overlap_table": [
            {"pump": str(p), "signal": str(s), "idler": str(i), "lambda": v} for p, s, i, v in table.rows()
        ],
        "calibration_factor": table.calibration_factor,
        "coupling_matrix": g.tolist(),
        "covariance_matrix": cm.sigma.tolist(),
        "mean_photons": mean_photons(cm).tolist(),
        "report": rep.as_dict(),
    }
