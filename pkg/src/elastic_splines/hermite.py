"""Two-point geometric Hermite interpolation by optimal s-curves.

Given unit tangents u, v with distinct base points and chord angles
(alpha, beta) in [-pi/2, pi/2]^2, the minimal bending-energy s-curve
connecting them is

  * the straight segment when (alpha, beta) = (0, 0),
  * a half-period u-turn of rectangular elastica when (alpha, beta) is
    (pi/2, -pi/2) or (-pi/2, pi/2),
  * otherwise a similarity image of a unique elastica segment R[t1, t2].

The parameters (t1, t2) are recovered by inverting the chord-angle map Q
with a damped Newton iteration seeded from a precomputed forward grid.
The unit-breadth energy is E1(alpha, beta) = l * dxi with l the chord
length and dxi the bending energy of R[t1, t2]; its exact gradient is

    grad E1 = (-l sin t1, l sin t2),

i.e. half the endpoint curvatures (negated at the start).  A segment of
breadth L carries energy E1/L and endpoint curvatures 2 l sin(t) / L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .angles import normalize_angle
from .elastica import (PI, TWO_PI, ChordAngles, ParamInterval, _d,
                       _segment_geometry, _speed, _tangent_angle, _xi_prime,
                       chord_angles_batch, compute_constants, gamma_form, xi)
from .errors import CoincidentPoints, DomainError, NoConvergence, NotApplicable

ORIGIN_RADIUS = 1e-12    # |alpha| + |beta| below this is the line-segment case
CORNER_RADIUS = 1e-9     # distance to a u-turn corner below this is the u-turn case
NEWTON_TOL = 1e-12
_MAX_NEWTON = 60
_MAX_RESEEDS = 8

LINE_SEGMENT = "line_segment"
ELASTICA_ARC = "elastica_arc"
U_TURN_ARC = "u_turn_arc"


@dataclass(frozen=True)
class UnitTangent:
    """A base point with a unit tangent direction (radians, in (-pi, pi])."""

    base: tuple[float, float]
    direction: float


@dataclass(frozen=True)
class SCurve:
    """A concrete planar curve piece produced by the Hermite solver.

    Arcs are the image of R[t1, t2] under z -> scale * e^{i rotation} z +
    translation; breadth is the endpoint distance, energy the bending energy
    in absolute units, kappa_* the signed endpoint curvatures (1/length).
    """

    kind: str
    params: ParamInterval | None
    scale: float
    rotation: float
    translation: tuple[float, float]
    breadth: float
    energy: float
    kappa_start: float
    kappa_end: float

    def apply(self, x: float, y: float) -> tuple[float, float]:
        """Map a point from elastica coordinates to the plane."""
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return (self.translation[0] + self.scale * (c * x - s * y),
                self.translation[1] + self.scale * (s * x + c * y))


# ---------------------------------------------------------------------------
# inversion of the chord-angle map


@lru_cache(maxsize=1)
def _seed_grid():
    """Forward-evaluated (t1, t2, alpha, beta) over the bijectivity domain.

    Covers the two triangles of pure c-curves, and the two rectangles of
    s-curves bounded by t_bar.  Gap fractions are biased geometrically
    toward zero so that nearly-straight targets still find a nearby seed.
    """
    n = 64
    t_bar = compute_constants().t_bar
    t1s, t2s = [], []

    frac = np.concatenate([np.geomspace(2e-3, 0.3, n // 3),
                           np.linspace(0.3, 1.0, n - n // 3)])
    for a in np.linspace(0.0, 1.0, n, endpoint=False):
        t1 = -PI + a * PI
        for b in frac:
            t2 = t1 * (1.0 - b)
            if t2 - t1 > 1e-6:
                t1s.extend((t1, t1 + PI))
                t2s.extend((t2, t2 + PI))
    for a in np.geomspace(1e-3, 1.0, n):
        for b in np.geomspace(1e-3, 1.0, n):
            t1, t2 = -t_bar * a, t_bar * b
            t1s.extend((t1, t1 + PI))
            t2s.extend((t2, t2 + PI))

    t1a = np.asarray(t1s)
    t2a = np.asarray(t2s)
    alpha, beta = chord_angles_batch(t1a, t2a)
    return t1a, t2a, alpha, beta


def _q_with_jacobian(t1, t2):
    """(alpha, beta, j11, j12, j21, j22) sharing one geometry evaluation."""
    dx, dxi, length = _segment_geometry(t1, t2)
    chord_dir = math.atan2(dxi, dx)
    a = normalize_angle(_tangent_angle(t1) - chord_dir)
    b = normalize_angle(_tangent_angle(t2) - chord_dir)
    l2 = length * length
    c1 = (-math.cos(t1) * dxi + _xi_prime(t1) * dx) / l2
    c2 = (-math.cos(t2) * dxi + _xi_prime(t2) * dx) / l2
    return a, b, (c1 + 2.0 * math.sin(t1) * _speed(t1), -c2,
                  c1, -c2 + 2.0 * math.sin(t2) * _speed(t2))


def _newton(alpha, beta, t1, t2, tol):
    """Damped Newton for Q(t1, t2) = (alpha, beta); None if it stalls."""
    a, b, jac = _q_with_jacobian(t1, t2)
    r1, r2 = normalize_angle(a - alpha), normalize_angle(b - beta)
    rnorm = math.hypot(r1, r2)
    iters = 0
    while rnorm > tol:
        if iters >= _MAX_NEWTON:
            return None
        j11, j12, j21, j22 = jac
        det = j11 * j22 - j12 * j21
        if det == 0.0:
            return None
        dt1 = -(j22 * r1 - j12 * r2) / det
        dt2 = -(-j21 * r1 + j11 * r2) / det
        lam = 1.0
        accepted = False
        while lam >= 1e-14:
            n1, n2 = t1 + lam * dt1, t2 + lam * dt2
            if not (1e-13 < n2 - n1 < TWO_PI - 1e-13):
                lam *= 0.5
                continue
            na, nb, njac = _q_with_jacobian(n1, n2)
            nr1, nr2 = normalize_angle(na - alpha), normalize_angle(nb - beta)
            nrnorm = math.hypot(nr1, nr2)
            if nrnorm < rnorm:
                t1, t2, r1, r2, rnorm, jac = n1, n2, nr1, nr2, nrnorm, njac
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            return None
        iters += 1
    return t1, t2, iters


def _to_fundamental(t1, t2):
    k = math.floor((t1 + PI) / TWO_PI)
    t1, t2 = float(t1 - TWO_PI * k), float(t2 - TWO_PI * k)
    if t1 > PI - 1e-11:
        # seam of the fundamental domain: prefer the t1 ~ -pi representative
        t1, t2 = t1 - TWO_PI, t2 - TWO_PI
    return t1, t2


def _in_domain(t1, t2, tol=1e-9):
    """Membership in the bijectivity domain (fundamental coordinates).

    Newton can occasionally run off to a segment that reproduces in-square
    angles without being an s-curve (three curvature sign changes); those
    impostors lie outside the domain and must be rejected so the caller
    reseeds toward the genuine solution.
    """
    t_bar = compute_constants().t_bar
    if -PI - tol <= t1 and t2 <= tol:                      # right c-curves
        return True
    if -t_bar - tol <= t1 <= tol and -tol <= t2 <= t_bar + tol:   # s-curves at 0
        return True
    if -tol <= t1 and t2 <= PI + tol:                      # left c-curves
        return True
    if PI - t_bar - tol <= t1 and PI - tol <= t2 <= PI + t_bar + tol:  # s-curves at pi
        return True
    return False


def _invert_raw(alpha, beta, seed=None, tol=NEWTON_TOL):
    """Solve Q(t1, t2) = (alpha, beta); returns (t1, t2, newton_iterations).

    Tries the caller's seed, then the best grid cells, then a ray
    continuation from a larger multiple of the target (needed for targets
    very close to the straight-line case, where the solution hugs the
    degenerate diagonal t1 = t2).
    """
    if seed is not None:
        got = _newton(alpha, beta, seed[0], seed[1], tol)
        if got is not None:
            t1, t2 = _to_fundamental(got[0], got[1])
            if _in_domain(t1, t2):
                return t1, t2, got[2]

    t1a, t2a, ga, gb = _seed_grid()
    d2 = (ga - alpha) ** 2 + (gb - beta) ** 2
    best = np.argpartition(d2, _MAX_RESEEDS)[:_MAX_RESEEDS]
    best = best[np.argsort(d2[best])]
    for i in best:
        got = _newton(alpha, beta, t1a[i], t2a[i], tol)
        if got is not None:
            t1, t2 = _to_fundamental(got[0], got[1])
            if _in_domain(t1, t2):
                return t1, t2, got[2]

    # ray continuation: solve at a comfortably scaled-up target, then walk
    # the scale factor down with warm starts
    norm = max(abs(alpha), abs(beta))
    if norm > 0.0:
        lam = min(0.05 / norm, PI / 2 / norm)
        if lam > 1.0:
            cur = None
            sa, sb = alpha * lam, beta * lam
            d2 = (ga - sa) ** 2 + (gb - sb) ** 2
            best = np.argpartition(d2, _MAX_RESEEDS)[:_MAX_RESEEDS]
            for i in best[np.argsort(d2[best])]:
                cur = _newton(sa, sb, t1a[i], t2a[i], tol)
                if cur is not None:
                    break
            total_iters = cur[2] if cur is not None else 0
            while cur is not None and lam > 1.0:
                lam = max(1.0, lam / 2.0)
                cur = _newton(alpha * lam, beta * lam, cur[0], cur[1], tol)
                if cur is not None:
                    total_iters += cur[2]
            if cur is not None:
                t1, t2 = _to_fundamental(cur[0], cur[1])
                if _in_domain(t1, t2):
                    return t1, t2, total_iters

    raise NoConvergence(
        f"chord-angle inversion failed for ({alpha}, {beta}) after grid reseeds "
        "and continuation; a solution exists, so this indicates a tolerance "
        "misconfiguration")


def _near_corner(alpha, beta):
    if math.hypot(alpha - PI / 2, beta + PI / 2) <= CORNER_RADIUS:
        return 1
    if math.hypot(alpha + PI / 2, beta - PI / 2) <= CORNER_RADIUS:
        return -1
    return 0


def _check_square(alpha, beta):
    if abs(alpha) > PI / 2 + 1e-12 or abs(beta) > PI / 2 + 1e-12:
        raise DomainError(
            f"chord angles ({alpha}, {beta}) outside the closed square [-pi/2, pi/2]^2")


def invert_q(angles: ChordAngles) -> ParamInterval:
    """Parameters (t1, t2) of the unique elastica segment with the given
    chord angles, represented with t1 in [-pi, pi).

    The origin and the two u-turn corners are excluded: the former has no
    elastica representative, the latter are handled in closed form by
    :func:`optimal_scurve`.
    """
    alpha, beta = angles.alpha, angles.beta
    _check_square(alpha, beta)
    if abs(alpha) + abs(beta) <= ORIGIN_RADIUS:
        raise DomainError("(0, 0) is the line-segment case; no elastica parameters exist")
    if _near_corner(alpha, beta):
        raise DomainError("u-turn corner: parameters degenerate, use optimal_scurve")
    t1, t2, _ = _invert_raw(alpha, beta)
    return ParamInterval(t1, t2)


def region_of(iv: ParamInterval, tol: float = 1e-9) -> str:
    """Which component of the bijectivity domain holds (t1, t2)."""
    t_bar = compute_constants().t_bar
    t1, t2 = _to_fundamental(iv.t1, iv.t2)
    if t2 <= tol and t1 >= -PI - tol:
        return "U0"
    if -t_bar - tol <= t1 <= 0.0 and 0.0 < t2 <= t_bar + tol:
        return "U1"
    if -tol <= t1 and t2 <= PI + tol:
        return "U2"
    return "U3"


# ---------------------------------------------------------------------------
# energy and gradient


def _energy_from_interval(t1, t2):
    dx, dxi, length = _segment_geometry(t1, t2)
    return length * dxi


def energy_e1(angles: ChordAngles) -> float:
    """Unit-breadth bending energy E1(alpha, beta) on the closed square.

    Zero at the origin, d^2 at the u-turn corners, l * dxi elsewhere;
    continuous across all three special points.
    """
    alpha, beta = angles.alpha, angles.beta
    _check_square(alpha, beta)
    if abs(alpha) + abs(beta) <= ORIGIN_RADIUS:
        return 0.0
    if _near_corner(alpha, beta):
        d = _d()
        return d * d
    t1, t2, _ = _invert_raw(alpha, beta)
    return _energy_from_interval(t1, t2)


def grad_e1(angles: ChordAngles) -> tuple[float, float]:
    """Exact gradient of E1: (-l sin t1, l sin t2), and (0, 0) at the origin.

    The u-turn corners are excluded (E1 is not differentiable there).
    """
    alpha, beta = angles.alpha, angles.beta
    _check_square(alpha, beta)
    if abs(alpha) + abs(beta) <= ORIGIN_RADIUS:
        return 0.0, 0.0
    if _near_corner(alpha, beta):
        raise DomainError("gradient undefined at the u-turn corners")
    t1, t2, _ = _invert_raw(alpha, beta)
    _, _, length = _segment_geometry(t1, t2)
    return -length * math.sin(t1), length * math.sin(t2)


def _energy_grad_seeded(alpha, beta, seed):
    """(E1, dE1/dalpha, dE1/dbeta, interval-or-None) with a warm start.

    Fast path shared by the spline optimizer; the returned interval feeds the
    next call's seed.  Inputs are assumed inside the closed square.
    """
    if abs(alpha) + abs(beta) <= ORIGIN_RADIUS:
        return 0.0, 0.0, 0.0, None
    t1, t2, _ = _invert_raw(alpha, beta, seed=seed)
    dx, dxi, length = _segment_geometry(t1, t2)
    return (length * dxi, -length * math.sin(t1), length * math.sin(t2), (t1, t2))


def beta_star(alpha: float) -> float:
    """The unique zero of beta -> dE1/dbeta(alpha, beta).

    Located by bisection; satisfies |beta_star| <= pi/2 - Psi, is negative
    for alpha > 0, zero at alpha = 0, and odd in alpha.
    """
    if abs(alpha) > PI / 2 + 1e-12:
        raise DomainError(f"alpha={alpha} outside [-pi/2, pi/2]")
    if abs(alpha) <= ORIGIN_RADIUS:
        return 0.0
    if alpha < 0.0:
        return -beta_star(-alpha)
    lo, hi = -PI / 2 + 1e-6, min(alpha, PI / 2)
    glo = grad_e1(ChordAngles(alpha, lo))[1]
    ghi = grad_e1(ChordAngles(alpha, hi))[1]
    if glo >= 0.0 or ghi <= 0.0:
        raise NoConvergence(f"dE1/dbeta does not change sign on [{lo}, {hi}] for alpha={alpha}")
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if grad_e1(ChordAngles(alpha, mid))[1] < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# the basic curve method


def optimal_scurve(u: UnitTangent, v: UnitTangent) -> SCurve:
    """The minimal bending-energy s-curve connecting ``u`` to ``v``.

    Chord angles must lie in the closed square [-pi/2, pi/2]^2.  Returns the
    straight segment for aligned data, the canonical smooth u-turn at the two
    corner angle pairs, and the unique elastica arc otherwise.
    """
    ux, uy = u.base
    vx, vy = v.base
    cx, cy = vx - ux, vy - uy
    breadth = math.hypot(cx, cy)
    if breadth == 0.0:
        raise CoincidentPoints("configuration base points coincide")
    phi = math.atan2(cy, cx)
    alpha = normalize_angle(u.direction - phi)
    beta = normalize_angle(v.direction - phi)
    _check_square(alpha, beta)

    if abs(alpha) + abs(beta) <= ORIGIN_RADIUS:
        return SCurve(kind=LINE_SEGMENT, params=None, scale=breadth, rotation=phi,
                      translation=u.base, breadth=breadth, energy=0.0,
                      kappa_start=0.0, kappa_end=0.0)

    corner = _near_corner(alpha, beta)
    if corner:
        iv = ParamInterval(-PI, 0.0) if corner > 0 else ParamInterval(0.0, PI)
        kind = U_TURN_ARC
    else:
        iv = invert_q(ChordAngles(alpha, beta))
        kind = ELASTICA_ARC

    dx, dxi, length = _segment_geometry(iv.t1, iv.t2)
    scale = breadth / length
    rotation = normalize_angle(phi - math.atan2(dxi, dx))
    c, s = math.cos(rotation), math.sin(rotation)
    x1, y1 = math.sin(iv.t1), xi(iv.t1)
    translation = (ux - scale * (c * x1 - s * y1), uy - scale * (s * x1 + c * y1))
    return SCurve(kind=kind, params=iv, scale=scale, rotation=rotation,
                  translation=translation, breadth=breadth,
                  energy=length * dxi / breadth,
                  kappa_start=2.0 * length * math.sin(iv.t1) / breadth,
                  kappa_end=2.0 * length * math.sin(iv.t2) / breadth)


# ---------------------------------------------------------------------------
# gamma-form cross-check


@dataclass(frozen=True)
class HermiteDiagnostics:
    """Residuals of the gamma-form identities at a solved configuration."""

    gamma_hat: float
    sigma_residual: float
    g_gamma_value: float
    newton_iterations: int
    region: str


def reduce_to_canonical(angles: ChordAngles) -> tuple[ChordAngles, str]:
    """Map (alpha, beta) by reversal/reflection symmetries to alpha >= |beta|,
    alpha > 0.  Returns the reduced angles and the symmetry applied, one of
    'identity', 'negate', 'swap', 'swap_negate'."""
    a, b = angles.alpha, angles.beta
    if a == 0.0 and b == 0.0:
        raise DomainError("the origin has no canonical form")
    if abs(a) >= abs(b):
        return (ChordAngles(a, b), "identity") if a > 0.0 else (ChordAngles(-a, -b), "negate")
    return (ChordAngles(b, a), "swap") if b > 0.0 else (ChordAngles(-b, -a), "swap_negate")


def cross_check_gamma(angles: ChordAngles, iv: ParamInterval,
                      newton_iterations: int = 0) -> HermiteDiagnostics:
    """Check the gamma-form stationarity against an inversion result.

    ``angles`` must already be in canonical orientation (alpha >= |beta|,
    alpha > 0) and ``iv`` its chord-angle inversion.  With gamma_hat =
    alpha - arg R'(t1), the identities sigma(gamma_hat) = 0 and
    G(gamma_hat) = E1(alpha, beta) hold whenever the optimal curve is a
    genuine s-curve (t2 > 0); the pure c-curve case is reported as
    NotApplicable.
    """
    alpha, beta = angles.alpha, angles.beta
    if not (0.0 < alpha and abs(beta) <= alpha and beta > alpha - PI):
        raise NotApplicable(
            f"({alpha}, {beta}) is not in canonical orientation; apply reduce_to_canonical first")
    t1, t2 = _to_fundamental(iv.t1, iv.t2)
    if not (-PI < t1 < 0.0 < t2 < PI):
        raise NotApplicable(
            "the optimal curve here is a c-curve; the gamma-form stationarity "
            "characterizes s-curve optima only")
    gamma_hat = alpha - _tangent_angle(t1)
    form = gamma_form(alpha, beta, gamma_hat)
    return HermiteDiagnostics(gamma_hat=gamma_hat,
                              sigma_residual=form.sigma,
                              g_gamma_value=form.G,
                              newton_iterations=newton_iterations,
                              region=region_of(iv))
