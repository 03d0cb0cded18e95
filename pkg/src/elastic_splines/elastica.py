"""The rectangular elastica and the scalar functions built on it.

The curve is parametrized as R(t) = (sin t, xi(t)) where the height
function xi solves

    dxi/dt = sin^2(t) / sqrt(1 + sin^2(t)),    xi(0) = 0.

xi is odd and quasi-periodic, xi(t + pi) = d + xi(t) with d := xi(pi).
Closed forms used throughout:

    |R'(t)|          = 1 / sqrt(1 + sin^2 t)         (speed, in [1/sqrt2, 1])
    R'(t)/|R'(t)|    = (cos t sqrt(1 + sin^2 t), sin^2 t)
    curvature(t)     = 2 sin t
    bending energy of R over [a, b] = xi(b) - xi(a)

A segment R[t1, t2] has chord angles (alpha, beta): the signed angles from
the chord R(t2) - R(t1) to the end tangents.  The map Q : (t1, t2) ->
(alpha, beta) is the workhorse of the whole package; this module supplies
its exact Jacobian, the sign factor W controlling det DQ, the gamma-form
functions used as an independent energy cross-check, and the global
constants (d, t_star, t_bar, Psi).

Everything here is a pure function of its inputs plus the immutable
constants, so concurrent use is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .angles import normalize_angle
from .errors import DomainError, NoConvergence

PI = math.pi
TWO_PI = 2.0 * math.pi

# Composite Gauss-Legendre rule: order 20 per panel, panel count chosen by
# interval length (cap 8 covers the full period at sub-1e-14 accuracy).
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)
_MAX_PANELS = 8
_PANEL_WIDTH = 0.45


def _unit_rule(panels: int):
    """Nodes/weights integrating over [0, 1] with `panels` GL-20 panels."""
    xs = np.concatenate([(i + (_GL_NODES + 1.0) / 2.0) / panels for i in range(panels)])
    ws = np.concatenate([_GL_WEIGHTS / (2.0 * panels) for _ in range(panels)])
    return xs, ws


_UNIT_RULES = [_unit_rule(p) for p in range(1, _MAX_PANELS + 1)]

# Single GL-40 panel for the sqrt-sin integrals after the smoothing substitution.
_GL40_NODES, _GL40_WEIGHTS = np.polynomial.legendre.leggauss(40)


def _delta_xi(t1: float, t2: float) -> float:
    """xi(t2) - xi(t1), integrated directly over [t1, t2].

    Integrating the gap (instead of subtracting two point values) keeps full
    relative accuracy even for gaps near rounding level, which the Newton
    solver for Q^-1 depends on.
    """
    gap = t2 - t1
    if gap == 0.0:
        return 0.0
    panels = min(_MAX_PANELS, max(1, int(abs(gap) / _PANEL_WIDTH) + 1))
    xs, ws = _UNIT_RULES[panels - 1]
    t = t1 + gap * xs
    s2 = np.sin(t)
    s2 *= s2
    return gap * float(ws @ (s2 / np.sqrt(1.0 + s2)))


@lru_cache(maxsize=1)
def _d() -> float:
    return _delta_xi(0.0, PI)


def xi(t: float) -> float:
    """Height of the rectangular elastica at parameter ``t``.

    Range-reduces to [0, pi) using xi(t + pi) = d + xi(t), then evaluates by
    fixed-order Gauss-Legendre quadrature; absolute accuracy ~1e-15.
    """
    n = math.floor(t / PI)
    r = t - n * PI
    return n * _d() + _delta_xi(0.0, r)


def _xi_prime(t: float) -> float:
    s2 = math.sin(t) ** 2
    return s2 / math.sqrt(1.0 + s2)


def _speed(t: float) -> float:
    return 1.0 / math.sqrt(1.0 + math.sin(t) ** 2)


def _tangent_angle(t: float) -> float:
    s2 = math.sin(t) ** 2
    return math.atan2(s2, math.cos(t) * math.sqrt(1.0 + s2))


def elastica_point(t: float) -> tuple[float, float]:
    """Point (sin t, xi(t)) on the curve."""
    return math.sin(t), xi(t)


def elastica_tangent(t: float) -> tuple[float, float]:
    """(direction, speed) of R'(t); direction in (-pi, pi], speed in [1/sqrt2, 1]."""
    return _tangent_angle(t), _speed(t)


def elastica_curvature(t: float) -> float:
    """Signed curvature 2 sin t."""
    return 2.0 * math.sin(t)


# ---------------------------------------------------------------------------
# segments


@dataclass(frozen=True)
class ParamInterval:
    """A parameter interval (t1, t2) identifying the segment R[t1, t2].

    Intervals live on the cylinder obtained by identifying (t1, t2) with
    (t1 + 2 pi, t2 + 2 pi); a full period t2 - t1 >= 2 pi is rejected.
    """

    t1: float
    t2: float

    def __post_init__(self):
        if not (self.t1 < self.t2):
            raise DomainError(f"degenerate interval: t1={self.t1} must be < t2={self.t2}")
        if self.t2 - self.t1 >= TWO_PI:
            raise DomainError(f"interval spans a full period: t2-t1={self.t2 - self.t1}")


@dataclass(frozen=True)
class ChordAngles:
    """Signed chord angles (alpha, beta) of an s-curve, each in (-pi, pi]."""

    alpha: float
    beta: float


def _segment_geometry(t1: float, t2: float) -> tuple[float, float, float]:
    """(dx, dxi, chord length) of R[t1, t2], cancellation-free in the gap."""
    half = 0.5 * (t2 - t1)
    dx = 2.0 * math.cos(0.5 * (t1 + t2)) * math.sin(half)
    dxi = _delta_xi(t1, t2)
    return dx, dxi, math.hypot(dx, dxi)


def _chord_angles_raw(t1: float, t2: float) -> tuple[float, float]:
    dx, dxi, _ = _segment_geometry(t1, t2)
    chord_dir = math.atan2(dxi, dx)
    return (normalize_angle(_tangent_angle(t1) - chord_dir),
            normalize_angle(_tangent_angle(t2) - chord_dir))


def chord_angles(iv: ParamInterval) -> ChordAngles:
    """Chord angles of R[t1, t2].

    Both angles lie strictly inside (-pi, pi): the chord always gains height
    (dxi > 0), so the branch cut at pi is never reached.
    """
    a, b = _chord_angles_raw(iv.t1, iv.t2)
    return ChordAngles(a, b)


def chord_length(iv: ParamInterval) -> float:
    """Distance |R(t2) - R(t1)|."""
    return _segment_geometry(iv.t1, iv.t2)[2]


def segment_energy(iv: ParamInterval) -> float:
    """Bending energy of R[t1, t2], equal to xi(t2) - xi(t1) > 0."""
    return _delta_xi(iv.t1, iv.t2)


def normalized_energy(iv: ParamInterval) -> float:
    """Chord length times bending energy: the energy after rescaling the
    segment to unit breadth."""
    dx, dxi, length = _segment_geometry(iv.t1, iv.t2)
    return length * dxi


# ---------------------------------------------------------------------------
# Jacobian of Q and the factor W


@dataclass(frozen=True)
class JacobianDQ:
    """Entries of the 2x2 Jacobian of (t1, t2) -> (alpha, beta)."""

    d_alpha_dt1: float
    d_alpha_dt2: float
    d_beta_dt1: float
    d_beta_dt2: float

    @property
    def det(self) -> float:
        return self.d_alpha_dt1 * self.d_beta_dt2 - self.d_alpha_dt2 * self.d_beta_dt1


def _jacobian_raw(t1: float, t2: float) -> tuple[float, float, float, float]:
    """(da/dt1, da/dt2, db/dt1, db/dt2) via the cross-product identities

        l |R'(t1)| sin(alpha) = -cos(t1) dxi + xi'(t1) dx

    and the analogue at t2, avoiding any evaluation of the angles themselves.
    """
    dx, dxi, length = _segment_geometry(t1, t2)
    l2 = length * length
    c1 = (-math.cos(t1) * dxi + _xi_prime(t1) * dx) / l2  # |R'(t1)| sin(alpha) / l
    c2 = (-math.cos(t2) * dxi + _xi_prime(t2) * dx) / l2
    return (c1 + 2.0 * math.sin(t1) * _speed(t1),
            -c2,
            c1,
            -c2 + 2.0 * math.sin(t2) * _speed(t2))


def jacobian_q(iv: ParamInterval) -> JacobianDQ:
    """Exact Jacobian of the chord-angle map at (t1, t2)."""
    j11, j12, j21, j22 = _jacobian_raw(iv.t1, iv.t2)
    return JacobianDQ(j11, j12, j21, j22)


def w_function(iv: ParamInterval) -> float:
    """The factor W(t1, t2) whose sign, times sign(sin t1 sin t2), gives the
    sign of det DQ:

        W = 2 dxi + dx^2/dxi + cot-like(t2) - cot-like(t1),
        cot-like(t) = cos t sqrt(1 + sin^2 t) / sin t.

    Undefined when sin t1 sin t2 = 0 (use the Jacobian determinant directly
    on that boundary).
    """
    s1, s2 = math.sin(iv.t1), math.sin(iv.t2)
    if abs(s1) < 1e-12 or abs(s2) < 1e-12:
        raise DomainError("W is undefined where sin t1 sin t2 = 0")
    dx, dxi, _ = _segment_geometry(iv.t1, iv.t2)
    return (2.0 * dxi + dx * dx / dxi
            + math.cos(iv.t2) * math.sqrt(1.0 + s2 * s2) / s2
            - math.cos(iv.t1) * math.sqrt(1.0 + s1 * s1) / s1)


# ---------------------------------------------------------------------------
# global constants


@dataclass(frozen=True)
class ElasticaConstants:
    """Derived constants of the rectangular elastica.

    d        rise over a half period, xi(pi)
    t_star   unique root of W(-t, t) in (pi/2, pi); det DQ vanishes at
             (-t_star, t_star)
    t_bar    unique parameter in (0, t_star) with beta(0, t_bar) = pi/2
    psi      stencil-angle threshold pi/2 - |alpha(0, t_bar)| certifying G2
    psi_bar  |alpha(0, t_bar)| = pi/2 - psi
    """

    d: float
    t_star: float
    t_bar: float
    psi: float
    psi_bar: float


def _bisect(f, lo: float, hi: float, tol: float = 1e-12, label: str = "") -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0.0) == (fhi < 0.0):
        raise NoConvergence(f"no sign change bracketing {label}: f({lo})={flo}, f({hi})={fhi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


@lru_cache(maxsize=1)
def compute_constants() -> ElasticaConstants:
    """Compute (and cache) the global constants to 1e-12 in parameter.

    t_star: W(-t, t) is positive at pi/2 and decreases to -inf towards pi.
    t_bar: beta(0, t) increases through pi/2 on (0, t_star].
    A missing sign change means the quadrature is broken, and raises.
    """
    d = _d()

    def w_diag(t):
        return w_function(ParamInterval(-t, t))

    t_star = _bisect(w_diag, PI / 2.0, PI - 1e-9, label="t_star")

    def beta_excess(t):
        return _chord_angles_raw(0.0, t)[1] - PI / 2.0

    t_bar = _bisect(beta_excess, 1e-9, t_star, label="t_bar")
    psi_bar = abs(_chord_angles_raw(0.0, t_bar)[0])
    return ElasticaConstants(d=d, t_star=t_star, t_bar=t_bar,
                             psi=PI / 2.0 - psi_bar, psi_bar=psi_bar)


# ---------------------------------------------------------------------------
# gamma-form functions


@dataclass(frozen=True)
class GammaForm:
    """The gamma-form quantities attached to chord angles (alpha, beta).

    For gamma in [alpha - pi, beta] intersected with (-inf, 0):

        y1 = 1/2 integral of sqrt(sin) over [0, alpha - gamma]
        y2 = 1/2 integral of sqrt(sin) over [0, beta - gamma]
        G  = (y1 + y2)^2 / (-sin gamma)       (energy lower bound; its
                                               minimum equals E1(alpha, beta))
        sigma = cos gamma + sin gamma (sqrt(sin(alpha-gamma))
                 + sqrt(sin(beta-gamma))) / (y1 + y2)
        q  = -sin gamma / (y1 + y2)           (dilation factor)

    dG/dgamma = sigma / q^2, so G is minimized where sigma vanishes.
    """

    gamma: float
    y1: float
    y2: float
    G: float
    sigma: float
    q: float


def _sqrt_sin_integral(x: float) -> float:
    """Integral of sqrt(sin) over [0, x] for x in [0, pi].

    The substitution tau = u^2 (and tau = pi - v^2 at the upper end) turns
    the square-root endpoint singularities into analytic integrands, so a
    single GL-40 panel reaches ~1e-14.
    """
    if x < -1e-12 or x > PI + 1e-12:
        raise DomainError(f"sqrt-sin integral needs x in [0, pi], got {x}")
    x = min(max(x, 0.0), PI)

    def piece(a, b):
        mid, half = 0.5 * (b + a), 0.5 * (b - a)
        v = mid + half * _GL40_NODES
        return half * float(_GL40_WEIGHTS @ (2.0 * v * np.sqrt(np.maximum(np.sin(v * v), 0.0))))

    if x <= PI / 2.0:
        return piece(0.0, math.sqrt(x))
    return piece(0.0, math.sqrt(PI / 2.0)) + piece(math.sqrt(PI - x), math.sqrt(PI / 2.0))


def gamma_form(alpha: float, beta: float, gamma: float) -> GammaForm:
    """Evaluate the gamma-form functions at ``gamma``.

    Requires the canonical orientation alpha in (0, pi), |beta| <= alpha,
    beta > alpha - pi, and gamma in [alpha - pi, beta] with gamma < 0.
    """
    if not (0.0 < alpha < PI):
        raise DomainError(f"canonical form needs alpha in (0, pi), got {alpha}")
    if abs(beta) > alpha or beta <= alpha - PI:
        raise DomainError(f"canonical form needs |beta| <= alpha and beta > alpha - pi, got {(alpha, beta)}")
    if gamma >= 0.0 or gamma < alpha - PI - 1e-12 or gamma > beta:
        raise DomainError(f"gamma={gamma} outside [alpha-pi, beta] and (-inf, 0)")
    y1 = 0.5 * _sqrt_sin_integral(alpha - gamma)
    y2 = 0.5 * _sqrt_sin_integral(beta - gamma)
    ys = y1 + y2
    sg = math.sin(gamma)
    g_val = ys * ys / (-sg)
    sigma = math.cos(gamma) + sg * (math.sqrt(max(math.sin(alpha - gamma), 0.0))
                                    + math.sqrt(max(math.sin(beta - gamma), 0.0))) / ys
    q = -sg / ys
    return GammaForm(gamma=gamma, y1=y1, y2=y2, G=g_val, sigma=sigma, q=q)


# ---------------------------------------------------------------------------
# batched forward evaluation (grid building / verification sweeps)


def chord_angles_batch(t1: np.ndarray, t2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized chord angles for arrays of parameter pairs (t1 < t2)."""
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    gap = t2 - t1
    xs, ws = _UNIT_RULES[_MAX_PANELS - 1]
    t = t1[..., None] + gap[..., None] * xs
    s2 = np.sin(t)
    s2 *= s2
    dxi = gap * ((s2 / np.sqrt(1.0 + s2)) @ ws)
    dx = 2.0 * np.cos(0.5 * (t1 + t2)) * np.sin(0.5 * gap)
    chord_dir = np.arctan2(dxi, dx)

    def tang(t):
        s2 = np.sin(t) ** 2
        return np.arctan2(s2, np.cos(t) * np.sqrt(1.0 + s2))

    def wrap(a):
        return a - TWO_PI * np.floor((a + PI) / TWO_PI)

    return wrap(tang(t1) - chord_dir), wrap(tang(t2) - chord_dir)
