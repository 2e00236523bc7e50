import math

import numpy as np
import pytest

from pumpsteer.coupling import PumpSetting


def tmsv_sigma(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum in (X1, X2, Y1, Y2) order, vacuum variance 1/2."""
    ch, sh = 0.5 * math.cosh(2 * r), 0.5 * math.sinh(2 * r)
    return np.array([
        [ch, sh, 0, 0],
        [sh, ch, 0, 0],
        [0, 0, ch, -sh],
        [0, 0, -sh, ch],
    ])


def mirror_setting(p: PumpSetting) -> PumpSetting:
    """x <-> y mirror image: HG30 <-> HG03 and HG21 <-> HG12."""
    return PumpSetting(math.sqrt(max(0.0, 1 - p.b ** 2)), math.sqrt(max(0.0, 1 - p.c ** 2)), p.theta, p.chi)


# 1<->2, 3<->4, 5 fixed
MIRROR = {1: 2, 2: 1, 3: 4, 4: 3, 5: 5}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_settings(rng):
    def make(n, t_max=0.6):
        out = []
        for _ in range(n):
            b, c = rng.uniform(0, 1, 2)
            theta = rng.uniform(0, math.pi / 2)
            t = rng.uniform(0, t_max)
            out.append((PumpSetting(float(b), float(c), float(theta)), float(t)))
        return out

    return make
