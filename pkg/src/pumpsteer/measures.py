"""Entanglement and EPR-steering quantifiers on Gaussian covariance matrices.

All formulas assume the vacuum-1/2 convention of :mod:`pumpsteer.gaussian`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalDomain
from .gaussian import ALL_MODES, Bipartition, CovarianceMatrix, schur_complement, symplectic_eigenvalues

PRESENCE_THRESHOLD = 1e-9
DEFAULT_TOL = 1e-3


class SteeringClass(enum.Enum):
    NO_WAY = "NoWay"
    ONE_WAY_AB = "OneWayAB"
    ONE_WAY_BA = "OneWayBA"
    TWO_WAY_SYMMETRIC = "TwoWaySymmetric"
    TWO_WAY_A_DOMINANT = "TwoWayADominant"
    TWO_WAY_B_DOMINANT = "TwoWayBDominant"

    @property
    def code(self) -> int:
        return _CLASS_CODES[self]


_CLASS_CODES = {cls: i for i, cls in enumerate(SteeringClass)}


class QuadScale(enum.Enum):
    """Quadrature normalization used by the genuine multipartite test."""

    HALF = "half"  # X = (a + a^dag)/sqrt(2), vacuum variance 1/2
    UNIT = "unit"  # X = a + a^dag, vacuum variance 1

    @property
    def factor(self) -> float:
        return 1.0 if self is QuadScale.HALF else 2.0


@dataclass(frozen=True)
class SteeringReport:
    g_a_to_b: float
    g_b_to_a: float
    e_n: float | None
    steering_class: SteeringClass

    def as_dict(self) -> dict:
        return {
            "g_a_to_b": self.g_a_to_b,
            "g_b_to_a": self.g_b_to_a,
            "e_n": self.e_n,
            "class": self.steering_class.value,
        }


@dataclass(frozen=True)
class GenuineResult:
    s_values: tuple[float, float, float, float, float]
    total: float
    violated: bool
    quad_scale: QuadScale

    def as_dict(self) -> dict:
        return {
            "s_values": list(self.s_values),
            "total": self.total,
            "violated": self.violated,
            "quad_scale": self.quad_scale.value,
        }


def _two_mode_dets(cm: CovarianceMatrix):
    """R = det(sigma), R1 = det(A), R2 = det(B), R3 = det(C) for a 2-mode matrix."""
    if cm.k != 2:
        raise ValueError(f"expected a two-mode covariance matrix, got {cm.k} modes")
    s = cm.sigma
    # rows are (X_a, X_b, Y_a, Y_b); per-mode blocks pair X with Y
    r1 = s[0, 0] * s[2, 2] - s[0, 2] * s[2, 0]
    r2 = s[1, 1] * s[3, 3] - s[1, 3] * s[3, 1]
    r3 = s[0, 1] * s[2, 3] - s[0, 3] * s[2, 1]
    return float(np.linalg.det(s)), float(r1), float(r2), float(r3)


def log_negativity(cm: CovarianceMatrix) -> float:
    """Logarithmic negativity from the two-mode symplectic invariants."""
    r, r1, r2, r3 = _two_mode_dets(cm)
    eps = r1 + r2 - 2.0 * r3
    disc = eps * eps - 4.0 * r
    if disc < -1e-10:
        raise NumericalDomain(f"negative discriminant {disc:.3g}: not a physical state")
    eta_sq = 0.5 * (eps - math.sqrt(max(disc, 0.0)))
    if eta_sq <= 0:
        raise NumericalDomain("partially transposed invariant is not positive")
    return max(0.0, -math.log(2.0 * math.sqrt(eta_sq)))


def _check_direction(direction: str) -> str:
    if direction not in ("AB", "BA"):
        raise ValueError("direction must be 'AB' (A steers B) or 'BA'")
    return direction


def steer_1p1(cm: CovarianceMatrix, direction: str = "AB") -> float:
    """Steerability between the two modes of ``cm``; mode order is (A, B)."""
    r, r1, r2, _ = _two_mode_dets(cm)
    if r <= 0 or r1 <= 0 or r2 <= 0:
        raise NumericalDomain("non-positive determinant in two-mode covariance matrix")
    steering_det = r1 if _check_direction(direction) == "AB" else r2
    return max(0.0, 0.5 * math.log(steering_det / (4.0 * r)))


def steer_multi(cm: CovarianceMatrix, part: Bipartition, direction: str = "AB") -> float:
    """Gaussian steerability of one party by the other for arbitrary mode counts.

    Sums -ln(2 nu) over the symplectic eigenvalues nu < 1/2 of the steered
    party's conditional covariance matrix.
    """
    cond = "A" if _check_direction(direction) == "AB" else "B"
    nu = symplectic_eigenvalues(schur_complement(cm, part, cond).sigma)
    scaled = 2.0 * nu
    return max(0.0, -float(np.sum(np.log(scaled[scaled < 1.0]))))


def classify(g_ab: float, g_ba: float, tol: float = DEFAULT_TOL, eps: float = PRESENCE_THRESHOLD) -> SteeringClass:
    if tol <= 0:
        raise ValueError("tol must be positive")
    ab, ba = g_ab > eps, g_ba > eps
    if not (ab or ba):
        return SteeringClass.NO_WAY
    if ab and not ba:
        return SteeringClass.ONE_WAY_AB
    if ba and not ab:
        return SteeringClass.ONE_WAY_BA
    if abs(g_ab - g_ba) <= tol * max(g_ab, g_ba):
        return SteeringClass.TWO_WAY_SYMMETRIC
    return SteeringClass.TWO_WAY_A_DOMINANT if g_ab > g_ba else SteeringClass.TWO_WAY_B_DOMINANT


def classify_pair(cm: CovarianceMatrix, tol: float = DEFAULT_TOL, with_entanglement: bool = True) -> SteeringReport:
    g_ab = steer_1p1(cm, "AB")
    g_ba = steer_1p1(cm, "BA")
    e_n = log_negativity(cm) if with_entanglement else None
    return SteeringReport(g_ab, g_ba, e_n, classify(g_ab, g_ba, tol))


# X-difference pairs (i, j) meaning X_i - X_j, one per inequality.
GENUINE_PAIRS = ((3, 1), (1, 5), (5, 2), (2, 4), (4, 3))
GENUINE_BOUND = 2.0


def genuine_pentapartite(cm: CovarianceMatrix, quad_scale: QuadScale = QuadScale.UNIT) -> GenuineResult:
    """Products Delta(X_i - X_j) * Delta(sum of Y) and their sum against the bound 2."""
    quad_scale = QuadScale(quad_scale)
    if sorted(cm.modes) != list(ALL_MODES):
        raise ValueError("genuine test needs the full five-mode covariance matrix")
    k = cm.k
    sigma = quad_scale.factor * cm.sigma
    pos = {m: i for i, m in enumerate(cm.modes)}
    y_sum = np.zeros(2 * k)
    y_sum[k:] = 1.0
    sd_y = math.sqrt(y_sum @ sigma @ y_sum)
    s_values = []
    for i, j in GENUINE_PAIRS:
        u = np.zeros(2 * k)
        u[pos[i]] = 1.0
        u[pos[j]] = -1.0
        s_values.append(math.sqrt(u @ sigma @ u) * sd_y)
    total = math.fsum(s_values)
    return GenuineResult(tuple(s_values), total, total < GENUINE_BOUND, quad_scale)
