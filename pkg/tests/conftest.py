import math

import numpy as np
import pytest

from elastic_splines import compute_constants


@pytest.fixture(scope="session")
def consts():
    return compute_constants()


@pytest.fixture()
def rng():
    return np.random.default_rng(20250809)


def gentle_polyline(rng, m=6, max_turn=None, seg_lo=0.5, seg_hi=2.0):
    """Random open polyline whose stencil angles stay below ``max_turn``."""
    if max_turn is None:
        max_turn = compute_constants().psi - 0.05
    pts = [(0.0, 0.0)]
    ang = rng.uniform(0.0, 2.0 * math.pi)
    pts.append((math.cos(ang), math.sin(ang)))
    for _ in range(m - 2):
        ang += rng.uniform(-max_turn, max_turn)
        step = rng.uniform(seg_lo, seg_hi)
        x, y = pts[-1]
        pts.append((x + step * math.cos(ang), y + step * math.sin(ang)))
    return tuple(pts)
