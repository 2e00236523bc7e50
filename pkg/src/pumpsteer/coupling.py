"""Pump settings, the six-process table and the 5x5 coupling matrix G.

Down-converted modes are numbered 1..5 as a1=HG10, a2=HG01, a3=HG20,
a4=HG02, a5=HG11 (a1, a2 signal; a3, a4, a5 idler).  Arrays are 0-based,
so mode k lives at row/column k-1.
"""
from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .hg import HGLabel, OverlapTable, calibrated_overlap_table

N_MODES = 5
MODE_LABELS = {
    1: HGLabel(1, 0),
    2: HGLabel(0, 1),
    3: HGLabel(2, 0),
    4: HGLabel(0, 2),
    5: HGLabel(1, 1),
}
SIGNAL_MODES = (1, 2)
IDLER_MODES = (3, 4, 5)

PUMPS = (HGLabel(3, 0), HGLabel(0, 3), HGLabel(2, 1), HGLabel(1, 2))


@dataclass(frozen=True)
class PumpSetting:
    """Pump proportions (b, c, theta) and the nonlinearity scale chi."""

    b: float
    c: float
    theta: float
    chi: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.b <= 1.0 and 0.0 <= self.c <= 1.0):
            raise ValueError(f"b and c must lie in [0, 1], got b={self.b}, c={self.c}")
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")
        if not self.chi > 0:
            raise ValueError("chi must be positive")
        if not (0.0 <= self.theta <= math.pi / 2):
            warnings.warn(
                f"theta={self.theta:.6g} outside [0, pi/2]; cos/sin weights may turn negative",
                stacklevel=2,
            )


def pump_weights(p: PumpSetting) -> tuple[float, float, float, float]:
    """Amplitudes of HG30, HG03, HG21, HG12 in the pump field."""
    ct, st = math.cos(p.theta), math.sin(p.theta)
    return (
        p.b * ct,
        math.sqrt(1.0 - p.b * p.b) * ct,
        p.c * st,
        math.sqrt(1.0 - p.c * p.c) * st,
    )


class Process(NamedTuple):
    pump: HGLabel
    signal: int
    idler: int
    selector: str  # which pump weight drives this process
    lam: float


# pump, signal mode, idler mode, weight selector (index into pump_weights)
_PROCESS_LAYOUT = (
    (HGLabel(3, 0), 1, 3, "b*cos(theta)"),
    (HGLabel(1, 2), 1, 4, "sqrt(1-c^2)*sin(theta)"),
    (HGLabel(2, 1), 2, 3, "c*sin(theta)"),
    (HGLabel(0, 3), 2, 4, "sqrt(1-b^2)*cos(theta)"),
    (HGLabel(1, 2), 2, 5, "sqrt(1-c^2)*sin(theta)"),
    (HGLabel(2, 1), 1, 5, "c*sin(theta)"),
)
_SELECTOR_INDEX = {
    "b*cos(theta)": 0,
    "sqrt(1-b^2)*cos(theta)": 1,
    "c*sin(theta)": 2,
    "sqrt(1-c^2)*sin(theta)": 3,
}


def process_table(table: OverlapTable | None = None) -> tuple[Process, ...]:
    if table is None:
        return _default_process_table()
    return tuple(
        Process(pump, s, i, sel, table[(pump, MODE_LABELS[s], MODE_LABELS[i])])
        for pump, s, i, sel in _PROCESS_LAYOUT
    )


@functools.lru_cache(maxsize=1)
def _default_process_table() -> tuple[Process, ...]:
    return process_table(calibrated_overlap_table())


def coupling_matrix(p: PumpSetting, table: OverlapTable | None = None) -> np.ndarray:
    """Symmetric coupling matrix G with G[m-1, n-1] = chi * weight * Lambda.

    Only the six signal-idler pairs of the process table can be non-zero,
    so the coupling graph is bipartite between {1, 2} and {3, 4, 5}.
    """
    weights = pump_weights(p)
    g = np.zeros((N_MODES, N_MODES))
    for proc in process_table(table):
        v = p.chi * weights[_SELECTOR_INDEX[proc.selector]] * proc.lam
        g[proc.signal - 1, proc.idler - 1] += v
        g[proc.idler - 1, proc.signal - 1] += v
    return g


# Process whose overlap enters the strength integral of each pump mode.
_INTEGRAL_PROCESS = {
    HGLabel(0, 3): (HGLabel(0, 3), HGLabel(0, 1), HGLabel(0, 2)),
    HGLabel(3, 0): (HGLabel(3, 0), HGLabel(1, 0), HGLabel(2, 0)),
    HGLabel(1, 2): (HGLabel(1, 2), HGLabel(0, 1), HGLabel(1, 1)),
    HGLabel(2, 1): (HGLabel(2, 1), HGLabel(0, 1), HGLabel(2, 0)),
}

_WEIGHT_FUNCS = {
    "b*cos(theta)": lambda th, b, c: b * math.cos(th),
    "sqrt(1-b^2)*cos(theta)": lambda th, b, c: math.sqrt(max(0.0, 1.0 - b * b)) * math.cos(th),
    "c*sin(theta)": lambda th, b, c: c * math.sin(th),
    "sqrt(1-c^2)*sin(theta)": lambda th, b, c: math.sqrt(max(0.0, 1.0 - c * c)) * math.sin(th),
}
_PUMP_SELECTOR = {
    HGLabel(3, 0): "b*cos(theta)",
    HGLabel(0, 3): "sqrt(1-b^2)*cos(theta)",
    HGLabel(2, 1): "c*sin(theta)",
    HGLabel(1, 2): "sqrt(1-c^2)*sin(theta)",
}


def involved_pump_integral(
    pump: HGLabel,
    power: int = 1,
    table: OverlapTable | None = None,
    selector: str | None = None,
) -> float:
    """Integrate (Lambda * weight)^power over theta in [0, pi/2], b and c in [0, 1].

    ``selector`` overrides the pump's own weight expression, e.g. to get the
    HG12 integral with weight ``c*sin(theta)`` instead of ``sqrt(1-c^2)*sin(theta)``.
    """
    pump = HGLabel(*pump)
    if pump not in _INTEGRAL_PROCESS:
        raise ValueError(f"{pump} is not a pump mode")
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    table = table or calibrated_overlap_table()
    lam = table[_INTEGRAL_PROCESS[pump]]
    weight = _WEIGHT_FUNCS[selector or _PUMP_SELECTOR[pump]]

    # tplquad integrates func(z, y, x) with x outermost.
    def integrand(c, b, th):
        return (lam * weight(th, b, c)) ** power

    value, _ = integrate.tplquad(
        integrand, 0.0, math.pi / 2, 0.0, 1.0, 0.0, 1.0, epsabs=1e-8, epsrel=1e-8
    )
    return value


def involved_pump_integrals(power: int = 1, table: OverlapTable | None = None) -> dict[str, float]:
    """All four strength integrals, plus the alternative HG12 reading under key ``"12c"``."""
    out = {str(p): involved_pump_integral(p, power, table) for p in PUMPS}
    out["12c"] = involved_pump_integral(HGLabel(1, 2), power, table, selector="c*sin(theta)")
    return out
