import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pumpsteer.coupling import (
    HGLabel,
    PumpSetting,
    coupling_matrix,
    involved_pump_integral,
    involved_pump_integrals,
    process_table,
    pump_weights,
)
from pumpsteer.hg import calibrated_overlap_table

from .conftest import MIRROR, mirror_setting

unit = st.floats(0, 1)
angle = st.floats(0, math.pi / 2)
LAM = calibrated_overlap_table()


def test_weights_at_balanced_point():
    w = pump_weights(PumpSetting(1 / math.sqrt(2), 1 / math.sqrt(2), math.pi / 4))
    assert w == pytest.approx((0.5, 0.5, 0.5, 0.5))


@given(unit, unit, angle)
def test_weights_unit_power(b, c, theta):
    w = np.array(pump_weights(PumpSetting(b, c, theta)))
    assert float(w @ w) == pytest.approx(1.0, abs=1e-12)


@given(unit, unit, angle, st.floats(0.1, 5))
def test_coupling_structure(b, c, theta, chi):
    g = coupling_matrix(PumpSetting(b, c, theta, chi))
    assert np.array_equal(g, g.T)
    # bipartite: no signal-signal or idler-idler terms
    assert not g[:2, :2].any() and not g[2:, 2:].any()
    g1 = coupling_matrix(PumpSetting(b, c, theta))
    np.testing.assert_allclose(g, chi * g1, rtol=1e-14, atol=1e-300)


@given(unit, unit, angle)
def test_coupling_mirror(b, c, theta):
    p = PumpSetting(b, c, theta)
    g, gm = coupling_matrix(p), coupling_matrix(mirror_setting(p))
    perm = [MIRROR[m] - 1 for m in range(1, 6)]
    # sqrt(1 - (sqrt(1 - c^2))^2) loses ~8 digits near c = 0
    np.testing.assert_allclose(gm, g[np.ix_(perm, perm)], atol=1e-7)


def test_explicit_entries():
    p = PumpSetting(0.3, 0.8, 0.4, 2.0)
    g = coupling_matrix(p)
    ct, s = math.cos(0.4), math.sin(0.4)
    assert g[0, 2] == pytest.approx(2 * 0.3 * ct * LAM.lookup("30", "10", "20"))
    assert g[1, 3] == pytest.approx(2 * math.sqrt(1 - 0.09) * ct * LAM.lookup("03", "01", "02"))
    assert g[1, 2] == pytest.approx(2 * 0.8 * s * LAM.lookup("21", "01", "20"))
    assert g[0, 3] == pytest.approx(2 * 0.6 * s * LAM.lookup("12", "10", "02"))
    assert g[1, 4] == pytest.approx(2 * 0.6 * s * LAM.lookup("12", "01", "11"))
    assert g[0, 4] == pytest.approx(2 * 0.8 * s * LAM.lookup("21", "10", "11"))


def test_theta_zero_switches_off_hg21_hg12():
    g = coupling_matrix(PumpSetting(0.4, 0.9, 0.0))
    assert g[0, 4] == g[1, 4] == g[0, 3] == g[1, 2] == 0.0


def test_process_table_order():
    procs = process_table()
    assert [(p.signal, p.idler) for p in procs] == [(1, 3), (1, 4), (2, 3), (2, 4), (2, 5), (1, 5)]
    assert process_table(LAM) == procs


def test_setting_validation():
    with pytest.raises(ValueError):
        PumpSetting(1.2, 0.5, 0.1)
    with pytest.raises(ValueError):
        PumpSetting(0.5, 0.5, math.nan)
    with pytest.raises(ValueError):
        PumpSetting(0.5, 0.5, 0.1, chi=0)
    with pytest.warns(UserWarning):
        PumpSetting(0.5, 0.5, 2.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        PumpSetting(0.5, 0.5, math.pi / 2)


def test_integrals_closed_forms():
    # integral of cos over [0, pi/2] is 1, of b is 1/2, of sqrt(1-b^2) is pi/4
    vals = involved_pump_integrals()
    assert vals["03"] == pytest.approx(0.534 * math.pi / 4, abs=1e-7)
    assert vals["30"] == pytest.approx(0.534 / 2, abs=1e-7)
    assert vals["12"] == pytest.approx(LAM.lookup("12", "01", "11") * math.pi / 4, abs=1e-7)
    assert vals["12c"] == pytest.approx(LAM.lookup("12", "01", "11") / 2, abs=1e-7)
    assert vals["21"] == pytest.approx(LAM.lookup("21", "01", "20") / 2, abs=1e-7)


def test_integral_power_two():
    # cos^2 -> pi/4, (1-b^2) -> 2/3
    assert involved_pump_integral(HGLabel(0, 3), power=2) == pytest.approx(0.534**2 * math.pi / 4 * 2 / 3, abs=1e-7)


def test_integral_rejects_bad_input():
    with pytest.raises(ValueError):
        involved_pump_integral(HGLabel(1, 1))
    with pytest.raises(ValueError):
        involved_pump_integral(HGLabel(0, 3), power=3)
