"""Hermite-Gaussian mode functions and three-mode spatial overlaps.

The overlap of a pump mode with a signal/idler pair weights each
down-conversion process.  Every mode factorizes into an x and a y part,
so the 2D overlap is the product of two 1D integrals, each evaluated by
Gauss-Hermite quadrature on the combined Gaussian envelope.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, NamedTuple

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .errors import CalibrationMismatch, QuadratureUnconverged

CALIBRATION_TARGET = 0.534  # Lambda_{03,01,02}
SECONDARY_TARGET = 0.523  # Lambda_{12,01,11}
CALIBRATION_LIMIT = 0.005


class HGLabel(NamedTuple):
    """Transverse mode index pair HG_mn (m along x, n along y)."""

    m: int
    n: int

    def __str__(self) -> str:
        return f"{self.m}{self.n}"

    def swapped(self) -> "HGLabel":
        return HGLabel(self.n, self.m)

    @classmethod
    def parse(cls, text: str) -> "HGLabel":
        text = text.strip()
        if len(text) != 2 or not text.isdigit():
            raise ValueError(f"HG label must be two digits, got {text!r}")
        return cls(int(text[0]), int(text[1]))


Triple = tuple[HGLabel, HGLabel, HGLabel]

# (pump, signal, idler) for the six down-conversion processes.
PROCESS_TRIPLES: tuple[Triple, ...] = (
    (HGLabel(3, 0), HGLabel(1, 0), HGLabel(2, 0)),
    (HGLabel(1, 2), HGLabel(1, 0), HGLabel(0, 2)),
    (HGLabel(2, 1), HGLabel(0, 1), HGLabel(2, 0)),
    (HGLabel(0, 3), HGLabel(0, 1), HGLabel(0, 2)),
    (HGLabel(1, 2), HGLabel(0, 1), HGLabel(1, 1)),
    (HGLabel(2, 1), HGLabel(1, 0), HGLabel(1, 1)),
)


@dataclass(frozen=True)
class WaistConfig:
    signal_waist: float = 1.0
    pump_waist: float = 1.0
    quadrature_points: int = 40

    def __post_init__(self):
        if not (self.signal_waist > 0 and self.pump_waist > 0):
            raise ValueError("waists must be positive")
        if self.quadrature_points < 40:
            raise ValueError("quadrature_points must be >= 40")

    def doubled(self) -> "WaistConfig":
        return WaistConfig(self.signal_waist, self.pump_waist, 2 * self.quadrature_points)


def hermite_polynomial(order: int, x):
    """Physicists' Hermite polynomial H_order(x) by the three-term recurrence."""
    if order < 0:
        raise ValueError("order must be non-negative")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if order == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, order):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def _norm(order: int, waist: float) -> float:
    return (2.0 / math.pi) ** 0.25 / math.sqrt(2.0**order * math.factorial(order) * waist)


def mode_1d(order: int, x, waist: float = 1.0):
    """Unit-L2-norm 1D Hermite-Gaussian mode of the given order and waist."""
    x = np.asarray(x, dtype=float)
    u = _norm(order, waist) * hermite_polynomial(order, math.sqrt(2.0) * x / waist)
    out = u * np.exp(-(x**2) / waist**2)
    return out if np.ndim(out) else float(out)


def _overlap_1d(orders: tuple[int, int, int], cfg: WaistConfig, points: int) -> float:
    if sum(orders) % 2:
        return 0.0
    waists = (cfg.pump_waist, cfg.signal_waist, cfg.signal_waist)
    # Product of the three envelopes is exp(-alpha x^2); absorb it into the weight.
    alpha = sum(1.0 / w**2 for w in waists)
    nodes, weights = hermgauss(points)
    x = nodes / math.sqrt(alpha)
    poly = np.ones_like(x)
    for n, w in zip(orders, waists):
        poly = poly * _norm(n, w) * hermite_polynomial(n, math.sqrt(2.0) * x / w)
    return float(weights @ poly) / math.sqrt(alpha)


def _overlap_at(pump: HGLabel, signal: HGLabel, idler: HGLabel, cfg: WaistConfig, points: int) -> float:
    ox = _overlap_1d((pump.m, signal.m, idler.m), cfg, points)
    if ox == 0.0:
        return 0.0
    return ox * _overlap_1d((pump.n, signal.n, idler.n), cfg, points)


def overlap(pump: HGLabel, signal: HGLabel, idler: HGLabel, cfg: WaistConfig | None = None) -> float:
    """Raw (uncalibrated) overlap of pump, signal and idler mode functions.

    Vanishes identically when the x-order sum or y-order sum is odd.

    Raises
    ------
    QuadratureUnconverged
        If doubling the number of quadrature points moves the result by
        more than 1e-9.
    """
    cfg = cfg or WaistConfig()
    value = _overlap_at(pump, signal, idler, cfg, cfg.quadrature_points)
    check = _overlap_at(pump, signal, idler, cfg, 2 * cfg.quadrature_points)
    if abs(value - check) > 1e-9:
        raise QuadratureUnconverged(
            f"overlap {pump},{signal},{idler}: {value!r} vs {check!r} at doubled points"
        )
    return value


def _key(triple) -> Triple:
    return tuple(HGLabel(*lab) if not isinstance(lab, HGLabel) else lab for lab in triple)


@dataclass(frozen=True)
class OverlapTable:
    """Calibrated overlaps for the six down-conversion processes."""

    entries: Mapping[Triple, float]
    calibration_factor: float
    raw: Mapping[Triple, float] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))
        object.__setattr__(self, "raw", MappingProxyType(dict(self.raw)))

    def __getitem__(self, triple) -> float:
        return self.entries[_key(triple)]

    def lookup(self, pump: str, signal: str, idler: str) -> float:
        """Entry by two-digit labels, e.g. ``lookup("03", "01", "02")``."""
        return self[(HGLabel.parse(pump), HGLabel.parse(signal), HGLabel.parse(idler))]

    def rows(self):
        """(pump, signal, idler, lambda) tuples in process order."""
        return [(p, s, i, self.entries[(p, s, i)]) for p, s, i in PROCESS_TRIPLES]


@functools.lru_cache(maxsize=16)
def calibrated_overlap_table(cfg: WaistConfig | None = None) -> OverlapTable:
    """Overlap table rescaled so that Lambda_{03,01,02} = 0.534.

    A global scale on the overlaps is equivalent to a rescaling of the
    interaction time, so only the ratios between processes carry physics.
    The calibrated Lambda_{12,01,11} must land near 0.523; otherwise the
    mode-function convention is wrong and ``CalibrationMismatch`` is raised.
    """
    cfg = cfg or WaistConfig()
    raw = {triple: overlap(*triple, cfg) for triple in PROCESS_TRIPLES}
    anchor = raw[(HGLabel(0, 3), HGLabel(0, 1), HGLabel(0, 2))]
    factor = CALIBRATION_TARGET / anchor
    entries = {k: v * factor for k, v in raw.items()}
    check = entries[(HGLabel(1, 2), HGLabel(0, 1), HGLabel(1, 1))]
    if abs(check - SECONDARY_TARGET) > CALIBRATION_LIMIT:
        raise CalibrationMismatch(
            f"calibrated Lambda_12,01,11 = {check:.4f}, expected {SECONDARY_TARGET} "
            f"+/- {CALIBRATION_LIMIT} (pump_waist={cfg.pump_waist}, signal_waist={cfg.signal_waist})"
        )
    return OverlapTable(entries=entries, calibration_factor=factor, raw=raw)
