"""Structured-pump five-mode OPO model and Gaussian EPR-steering measures."""

__version__ = "0.1.0"

from .coupling import PumpSetting, coupling_matrix, involved_pump_integral, pump_weights
from .gaussian import (
    Bipartition,
    CovarianceMatrix,
    covariance,
    mean_photons,
    propagate,
    reduce,
    schur_complement,
    state,
    symplectic_eigenvalues,
)
from .hg import HGLabel, WaistConfig, calibrated_overlap_table, overlap
from .measures import (
    QuadScale,
    SteeringClass,
    classify_pair,
    genuine_pentapartite,
    log_negativity,
    steer_1p1,
    steer_multi,
)

__all__ = [
    "Bipartition",
    "CovarianceMatrix",
    "HGLabel",
    "PumpSetting",
    "QuadScale",
    "SteeringClass",
    "WaistConfig",
    "calibrated_overlap_table",
    "classify_pair",
    "coupling_matrix",
    "covariance",
    "genuine_pentapartite",
    "involved_pump_integral",
    "log_negativity",
    "mean_photons",
    "overlap",
    "propagate",
    "pump_weights",
    "reduce",
    "schur_complement",
    "state",
    "steer_1p1",
    "steer_multi",
    "symplectic_eigenvalues",
]
