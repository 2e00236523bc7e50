"""Covariance-matrix algebra for the five-mode Gaussian state.

Quadratures are ordered (X_1..X_k, Y_1..Y_k) with X = (a + a^dag)/sqrt(2),
so the vacuum covariance matrix is I/2.  The symplectic form in this
ordering is Omega = [[0, I], [-I, 0]].
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import linalg

from .coupling import N_MODES, PumpSetting, coupling_matrix
from .errors import EigenNotConverged, IllConditioned, PairingFailure, UnknownMode
from .hg import OverlapTable

VACUUM_VARIANCE = 0.5
ALL_MODES = tuple(range(1, N_MODES + 1))


def symplectic_form(k: int) -> np.ndarray:
    eye = np.eye(k)
    zero = np.zeros((k, k))
    return np.block([[zero, eye], [-eye, zero]])


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _eigh(m: np.ndarray):
    try:
        return np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise EigenNotConverged(str(exc)) from exc


@dataclass(frozen=True, eq=False)
class Propagator:
    """Symplectic map S = diag(e^{Gt}, e^{-Gt}) acting on (X, Y)."""

    s: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "s", _frozen(self.s))


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Symmetric 2k x 2k covariance matrix over the listed global modes."""

    sigma: np.ndarray
    modes: tuple[int, ...]

    def __post_init__(self):
        sigma = _frozen(self.sigma)
        modes = tuple(int(m) for m in self.modes)
        if sigma.shape != (2 * len(modes), 2 * len(modes)):
            raise ValueError(f"sigma shape {sigma.shape} does not match {len(modes)} modes")
        if len(set(modes)) != len(modes):
            raise ValueError(f"duplicate modes in {modes}")
        if sigma.size and np.abs(sigma - sigma.T).max() > 1e-10:
            raise ValueError("covariance matrix is not symmetric")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "modes", modes)

    @property
    def k(self) -> int:
        return len(self.modes)

    def indices(self, modes: Iterable[int]) -> list[int]:
        """Row indices (X block then Y block) of ``modes`` within this matrix."""
        pos = {m: i for i, m in enumerate(self.modes)}
        try:
            local = [pos[m] for m in modes]
        except KeyError as exc:
            raise UnknownMode(f"mode {exc.args[0]} not in {self.modes}") from None
        return local + [i + self.k for i in local]

    def mode_block(self, mode: int) -> np.ndarray:
        """2x2 block [[XX, XY], [YX, YY]] of one mode."""
        idx = self.indices([mode])
        return self.sigma[idx][:, idx]


def vacuum(modes: Sequence[int] = ALL_MODES) -> CovarianceMatrix:
    return CovarianceMatrix(VACUUM_VARIANCE * np.eye(2 * len(modes)), tuple(modes))


def propagate(g: np.ndarray, t: float) -> Propagator:
    """Solve dX/dt = G X, dY/dt = -G Y by orthogonal diagonalization of G."""
    g = np.asarray(g, dtype=float)
    if np.abs(g - g.T).max() > 1e-12:
        raise ValueError("coupling matrix must be symmetric")
    if t < 0:
        raise ValueError("interaction time must be non-negative")
    d, q = _eigh(g)
    grow = (q * np.exp(d * t)) @ q.T
    shrink = (q * np.exp(-d * t)) @ q.T
    k = g.shape[0]
    s = np.zeros((2 * k, 2 * k))
    s[:k, :k] = grow
    s[k:, k:] = shrink
    return Propagator(s, float(t))


def covariance(prop: Propagator, modes: Sequence[int] = ALL_MODES) -> CovarianceMatrix:
    """Covariance S (I/2) S^T of the vacuum-seeded output."""
    s = prop.s
    sigma = VACUUM_VARIANCE * (s @ s.T)
    return CovarianceMatrix(0.5 * (sigma + sigma.T), tuple(modes))


def state(setting: PumpSetting, t: float, table: OverlapTable | None = None) -> CovarianceMatrix:
    """Five-mode covariance matrix for a pump setting and interaction time."""
    return covariance(propagate(coupling_matrix(setting, table), t))


def reduce(cm: CovarianceMatrix, modes: Iterable[int]) -> CovarianceMatrix:
    """Partial trace: keep the X and Y rows/columns of ``modes``."""
    modes = tuple(modes)
    if not modes:
        raise ValueError("cannot reduce to an empty mode set")
    idx = cm.indices(modes)
    return CovarianceMatrix(cm.sigma[idx][:, idx], modes)


@dataclass(frozen=True)
class Bipartition:
    a_modes: tuple[int, ...]
    b_modes: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(m) for m in self.a_modes)
        b = tuple(int(m) for m in self.b_modes)
        if not a or not b:
            raise ValueError("both parties need at least one mode")
        if set(a) & set(b):
            raise ValueError(f"parties overlap: {a} / {b}")
        object.__setattr__(self, "a_modes", a)
        object.__setattr__(self, "b_modes", b)

    def label(self) -> str:
        return "".join(map(str, self.a_modes)) + "|" + "".join(map(str, self.b_modes))


def _blocks(cm: CovarianceMatrix, part: Bipartition):
    ia = cm.indices(part.a_modes)
    ib = cm.indices(part.b_modes)
    s = cm.sigma
    return s[np.ix_(ia, ia)], s[np.ix_(ib, ib)], s[np.ix_(ia, ib)]


MAX_CONDITION = 1e12


def schur_complement(cm: CovarianceMatrix, part: Bipartition, conditioned_on: str = "A") -> CovarianceMatrix:
    """Conditional covariance of one party given Gaussian measurements on the other.

    ``conditioned_on="A"`` returns B - C^T A^{-1} C over the B modes;
    ``"B"`` returns A - C B^{-1} C^T over the A modes.
    """
    a, b, c = _blocks(cm, part)
    if conditioned_on == "A":
        cond, keep, cross, modes = a, b, c, part.b_modes
    elif conditioned_on == "B":
        cond, keep, cross, modes = b, a, c.T, part.a_modes
    else:
        raise ValueError("conditioned_on must be 'A' or 'B'")
    ev = np.linalg.eigvalsh(cond)
    if ev[0] <= 0 or ev[-1] / ev[0] > MAX_CONDITION:
        raise IllConditioned(f"conditioning block has eigenvalues in [{ev[0]:.3g}, {ev[-1]:.3g}]")
    factor = linalg.cho_factor(cond)
    out = keep - cross.T @ linalg.cho_solve(factor, cross)
    return CovarianceMatrix(0.5 * (out + out.T), modes)


def symplectic_eigenvalues(sigma, k: int | None = None) -> np.ndarray:
    """Symplectic spectrum (ascending, one value per mode) of a 2k x 2k SPD matrix.

    Uses the eigenvalues of -(r Omega r)^2 with r = sigma^{1/2}; these are
    the squared symplectic eigenvalues, each appearing twice.
    """
    if isinstance(sigma, CovarianceMatrix):
        sigma = sigma.sigma
    sigma = np.asarray(sigma, dtype=float)
    if k is None:
        k = sigma.shape[0] // 2
    if sigma.shape != (2 * k, 2 * k):
        raise ValueError(f"expected a {2 * k}x{2 * k} matrix, got {sigma.shape}")
    lam, v = _eigh(0.5 * (sigma + sigma.T))
    if lam[0] <= 0:
        raise ValueError("matrix is not positive definite")
    root = (v * np.sqrt(lam)) @ v.T
    a = root @ symplectic_form(k) @ root
    m = -(a @ a)
    sq, _ = _eigh(0.5 * (m + m.T))
    sq = np.clip(sq, 0.0, None)
    lo, hi = sq[0::2], sq[1::2]
    if np.any(np.abs(hi - lo) > 1e-8 * np.maximum(1.0, hi)):
        raise PairingFailure(f"unpaired symplectic spectrum {sq}")
    return np.sqrt(0.5 * (lo + hi))


def is_bona_fide(cm: CovarianceMatrix, tol: float = 1e-9) -> bool:
    try:
        nu = symplectic_eigenvalues(cm.sigma)
    except ValueError:
        return False
    return bool(nu[0] >= VACUUM_VARIANCE - tol)


def mean_photons(cm: CovarianceMatrix) -> np.ndarray:
    """Mean photon number per mode, (V_X + V_Y - 1)/2."""
    k = cm.k
    d = np.diag(cm.sigma)
    return 0.5 * (d[:k] + d[k:] - 2 * VACUUM_VARIANCE)
