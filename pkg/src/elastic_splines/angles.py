"""Shared angle arithmetic.

Every module reduces angles through :func:`normalize_angle` so that chord
angles, tangent directions and stencil angles agree bit-for-bit no matter
where they were computed.
"""

import math

TWO_PI = 2.0 * math.pi


def normalize_angle(a: float) -> float:
    """Reduce ``a`` to the principal range (-pi, pi]."""
    r = math.remainder(a, TWO_PI)
    return r if r > -math.pi else r + TWO_PI


def degrees(a: float) -> float:
    return math.degrees(a)


def radians(a: float) -> float:
    return math.radians(a)
