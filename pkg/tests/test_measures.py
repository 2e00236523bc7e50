import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pumpsteer.coupling import PumpSetting, coupling_matrix
from pumpsteer.errors import NumericalDomain
from pumpsteer.gaussian import ALL_MODES, Bipartition, CovarianceMatrix, propagate, reduce, state, vacuum
from pumpsteer.measures import (
    GENUINE_PAIRS,
    QuadScale,
    SteeringClass,
    classify,
    classify_pair,
    genuine_pentapartite,
    log_negativity,
    steer_1p1,
    steer_multi,
)

from .conftest import tmsv_sigma

BALANCED = 1 / math.sqrt(2)


@pytest.mark.parametrize("r", [0.0, 0.05, 0.267, 0.8, 1.5])
def test_tmsv_closed_forms(r):
    cm = CovarianceMatrix(tmsv_sigma(r), (1, 3))
    assert log_negativity(cm) == pytest.approx(2 * r, abs=1e-10)
    expected = math.log(math.cosh(2 * r))
    assert steer_1p1(cm, "AB") == pytest.approx(expected, abs=1e-10)
    assert steer_1p1(cm, "BA") == pytest.approx(expected, abs=1e-10)


def test_thermal_noise_kills_steering_before_entanglement():
    # add symmetric noise to a TMSV: E_N survives longer than steering
    sigma = tmsv_sigma(0.3) + 0.2 * np.eye(4)
    cm = CovarianceMatrix(sigma, (1, 2))
    assert steer_1p1(cm, "AB") == 0.0
    assert log_negativity(cm) > 0


def test_asymmetric_noise_gives_one_way():
    sigma = tmsv_sigma(0.5)
    sigma[1, 1] += 0.2
    sigma[3, 3] += 0.2
    cm = CovarianceMatrix(sigma, (1, 2))
    # noise on B raises det(sigma) but not det(A), so A loses the ability to steer B
    assert classify_pair(cm).steering_class is SteeringClass.ONE_WAY_BA


def test_log_negativity_domain_error():
    indefinite = np.array([
        [-0.2, -0.1, -0.55, 0.35],
        [-0.1, -0.1, 1.15, 0.6],
        [-0.55, 1.15, 1.3, 1.15],
        [0.35, 0.6, 1.15, 2.0],
    ])
    with pytest.raises(NumericalDomain):
        log_negativity(CovarianceMatrix(indefinite, (1, 2)))
    with pytest.raises(NumericalDomain):
        steer_1p1(CovarianceMatrix(indefinite, (1, 2)))


def test_two_mode_only():
    with pytest.raises(ValueError):
        log_negativity(vacuum((1, 2, 3)))
    with pytest.raises(ValueError):
        steer_1p1(vacuum((1, 2)), "XY")


def test_vacuum_pair_is_no_way():
    rep = classify_pair(vacuum((2, 3)))
    assert rep.steering_class is SteeringClass.NO_WAY
    assert rep.e_n == 0.0
    assert rep.as_dict()["class"] == "NoWay"


def test_multi_equals_1p1(random_settings, rng):
    for p, t in random_settings(50):
        cm = state(p, t)
        a, b = (int(m) for m in rng.choice(ALL_MODES, 2, replace=False))
        sub = reduce(cm, (a, b))
        part = Bipartition((a,), (b,))
        assert steer_multi(sub, part, "AB") == pytest.approx(steer_1p1(sub, "AB"), abs=1e-9)
        assert steer_multi(sub, part, "BA") == pytest.approx(steer_1p1(sub, "BA"), abs=1e-9)


def test_steering_grows_with_steering_party(random_settings):
    for p, t in random_settings(30):
        cm = state(p, t)
        small = steer_multi(cm, Bipartition((3,), (1, 2)))
        large = steer_multi(cm, Bipartition((3, 4), (1, 2)))
        assert large >= small - 1e-10


def test_pure_state_full_bipartition_is_symmetric(random_settings):
    # for a pure global state both directions reduce to the same Schmidt spectrum
    for p, t in random_settings(30):
        cm = state(p, t)
        for part in (Bipartition((1,), (2, 3, 4, 5)), Bipartition((1, 2), (3, 4, 5)), Bipartition((3, 5), (1, 2, 4))):
            assert steer_multi(cm, part, "AB") == pytest.approx(steer_multi(cm, part, "BA"), abs=1e-8)


unit = st.floats(0, 10, allow_nan=False)


@given(unit, unit, st.floats(1e-6, 0.5))
def test_classifier_exhaustive(g_ab, g_ba, tol):
    cls = classify(g_ab, g_ba, tol)
    ab, ba = g_ab > 1e-9, g_ba > 1e-9
    expected = {
        (False, False): {SteeringClass.NO_WAY},
        (True, False): {SteeringClass.ONE_WAY_AB},
        (False, True): {SteeringClass.ONE_WAY_BA},
        (True, True): {
            SteeringClass.TWO_WAY_SYMMETRIC,
            SteeringClass.TWO_WAY_A_DOMINANT,
            SteeringClass.TWO_WAY_B_DOMINANT,
        },
    }[(ab, ba)]
    assert cls in expected
    if cls is SteeringClass.TWO_WAY_A_DOMINANT:
        assert g_ab > g_ba
    if cls is SteeringClass.TWO_WAY_B_DOMINANT:
        assert g_ba > g_ab
    # swapping arguments mirrors the class
    swap = {
        SteeringClass.ONE_WAY_AB: SteeringClass.ONE_WAY_BA,
        SteeringClass.ONE_WAY_BA: SteeringClass.ONE_WAY_AB,
        SteeringClass.TWO_WAY_A_DOMINANT: SteeringClass.TWO_WAY_B_DOMINANT,
        SteeringClass.TWO_WAY_B_DOMINANT: SteeringClass.TWO_WAY_A_DOMINANT,
    }
    assert classify(g_ba, g_ab, tol) is swap.get(cls, cls)


def test_classifier_tolerance_band():
    assert classify(1.0, 1.0005) is SteeringClass.TWO_WAY_SYMMETRIC
    assert classify(1.0, 1.01) is SteeringClass.TWO_WAY_B_DOMINANT
    assert classify(1.0, 1.01, tol=0.05) is SteeringClass.TWO_WAY_SYMMETRIC
    with pytest.raises(ValueError):
        classify(1.0, 1.0, tol=0)
    assert [c.code for c in SteeringClass] == list(range(6))


def test_genuine_vacuum_values():
    half = genuine_pentapartite(vacuum(), QuadScale.HALF)
    unit_ = genuine_pentapartite(vacuum(), QuadScale.UNIT)
    assert half.total == pytest.approx(5 * math.sqrt(2.5), abs=1e-12)
    assert unit_.total == pytest.approx(5 * math.sqrt(10), abs=1e-12)
    assert not half.violated and not unit_.violated
    assert genuine_pentapartite(vacuum()).quad_scale is QuadScale.UNIT


def test_genuine_against_symplectic_oracle(random_settings):
    # Var(u.xi) = |S^T u|^2 / 2 straight from the propagator
    for p, t in random_settings(10):
        s = propagate(coupling_matrix(p), t).s
        res = genuine_pentapartite(state(p, t), QuadScale.HALF)
        y = np.r_[np.zeros(5), np.ones(5)]
        sd_y = math.sqrt(0.5 * np.sum((s.T @ y) ** 2))
        for (i, j), got in zip(GENUINE_PAIRS, res.s_values):
            u = np.zeros(10)
            u[i - 1], u[j - 1] = 1, -1
            assert got == pytest.approx(math.sqrt(0.5 * np.sum((s.T @ u) ** 2)) * sd_y, rel=1e-10)


def test_genuine_scale_relation(random_settings):
    for p, t in random_settings(5):
        cm = state(p, t)
        assert genuine_pentapartite(cm, "unit").total == pytest.approx(2 * genuine_pentapartite(cm, "half").total, rel=1e-12)


def test_genuine_needs_five_modes():
    with pytest.raises(ValueError):
        genuine_pentapartite(vacuum((1, 2, 3)))


def test_genuine_regression_balanced_point():
    cm = state(PumpSetting(BALANCED, BALANCED, math.pi / 4), 0.2)
    res = genuine_pentapartite(cm)
    assert res.total == pytest.approx(13.382577189742415, rel=1e-12)
    assert res.as_dict()["quad_scale"] == "unit"
