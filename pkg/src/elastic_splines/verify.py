"""Invariant sweeps behind the `verify` CLI subcommand.

Each sweep exercises one of the identities the solver is built on and
returns its worst-case margin or error; the CLI prints one line per sweep.
Randomized sweeps use a fixed seed so output is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import normalize_angle
from .elastica import (PI, ChordAngles, ParamInterval, _chord_angles_raw,
                       _jacobian_raw, compute_constants, jacobian_q,
                       w_function, xi)
from .hermite import _invert_raw, energy_e1, grad_e1

TWO_PI = 2.0 * PI


@dataclass(frozen=True)
class SweepResult:
    name: str
    value: float      # margin (must be > 0) or error (must be <= threshold)
    threshold: float
    ok: bool
    detail: str


def _random_intervals(rng, n, lo=-PI, hi=PI, min_gap=1e-3, max_gap=None):
    out = []
    limit = TWO_PI - 1e-6 if max_gap is None else max_gap
    while len(out) < n:
        t1 = rng.uniform(lo, hi)
        gap = rng.uniform(min_gap, limit)
        out.append((t1, t1 + gap))
    return out


def sweep_xi_identities(samples: int = 1000, seed: int = 0) -> SweepResult:
    """Oddness, half-period shift and monotonicity of the height function."""
    rng = np.random.default_rng(seed)
    d = compute_constants().d
    worst = 0.0
    for t in rng.uniform(-10.0, 10.0, samples):
        worst = max(worst, abs(xi(-t) + xi(t)))
        worst = max(worst, abs(xi(t + PI) - xi(t) - d))
    ts = np.sort(rng.uniform(-5.0, 5.0, samples))
    mono = min(xi(b) - xi(a) for a, b in zip(ts[:-1], ts[1:]) if b - a > 1e-9)
    ok = worst <= 1e-11 and mono >= 0.0
    return SweepResult("xi identities (odd, half-period shift, monotone)",
                       worst, 1e-11, ok, f"monotone margin {mono:.3e}")


def sweep_reflection_law(samples: int = 1000, seed: int = 1) -> SweepResult:
    """Shifting both parameters by a half period negates both chord angles."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for t1, t2 in _random_intervals(rng, samples):
        a, b = _chord_angles_raw(t1, t2)
        a2, b2 = _chord_angles_raw(t1 + PI, t2 + PI)
        worst = max(worst, abs(normalize_angle(a2 + a)), abs(normalize_angle(b2 + b)))
    return SweepResult("chord-angle reflection law under half-period shift",
                       worst, 1e-10, worst <= 1e-10, "")


def sweep_turning_bound(samples: int = 1000, seed: int = 2) -> SweepResult:
    """|alpha| + |beta| never exceeds the absolute turning 2 (t2 - t1)."""
    rng = np.random.default_rng(seed)
    margin = math.inf
    for t1, t2 in _random_intervals(rng, samples):
        a, b = _chord_angles_raw(t1, t2)
        margin = min(margin, 2.0 * (t2 - t1) - abs(a) - abs(b))
    return SweepResult("turning bound |alpha|+|beta| <= 2(t2-t1)",
                       margin, 0.0, margin >= -1e-12, "")


def _det_grid_sets(n: int):
    """Lattices over the four negativity sets of det DQ, minus the corner
    exceptions at (-pi, 0) and (0, pi)."""
    c = compute_constants()
    ts = c.t_star
    sets = {}
    g = np.linspace(-PI, 0.0, n)
    sets["right c-curves"] = [(t1, t2) for t1 in g for t2 in g
                             if t1 < t2 and not (t1 == -PI and t2 == 0.0)]
    g1 = np.linspace(-ts, 0.0, n + 2)[1:-1]
    g2 = np.linspace(0.0, ts, n + 2)[1:-1]
    sets["s-curves through the ascent"] = [(t1, t2) for t1 in g1 for t2 in g2]
    g = np.linspace(0.0, PI, n)
    sets["left c-curves"] = [(t1, t2) for t1 in g for t2 in g
                            if t1 < t2 and not (t1 == 0.0 and t2 == PI)]
    g1 = np.linspace(PI - ts, PI, n + 2)[1:-1]
    g2 = np.linspace(PI, PI + ts, n + 2)[1:-1]
    sets["s-curves through the descent"] = [(t1, t2) for t1 in g1 for t2 in g2]
    return sets


def sweep_det_negativity(n: int = 100) -> list[SweepResult]:
    """det DQ < 0 on all four sets; reports the margin -max(det) per set."""
    results = []
    for name, pairs in _det_grid_sets(n).items():
        margin = math.inf
        for t1, t2 in pairs:
            margin = min(margin, -_jacobian_det(t1, t2))
        results.append(SweepResult(f"det DQ < 0 on {name} ({len(pairs)} pts)",
                                   margin, 0.0, margin > 0.0, ""))
    return results


def _jacobian_det(t1, t2):
    j11, j12, j21, j22 = _jacobian_raw(t1, t2)
    return j11 * j22 - j12 * j21


def sweep_w_monotonicity(n: int = 40) -> SweepResult:
    """W increases in t1 and decreases in t2 on the s-curve strip."""
    h = 1e-6
    worst = math.inf
    for t1 in np.linspace(-PI + 0.05, -0.05, n):
        for t2 in np.linspace(0.05, PI - 0.05, n):
            w_t1 = (w_function(ParamInterval(t1 + h, t2)) - w_function(ParamInterval(t1 - h, t2))) / (2 * h)
            w_t2 = (w_function(ParamInterval(t1, t2 + h)) - w_function(ParamInterval(t1, t2 - h))) / (2 * h)
            worst = min(worst, w_t1, -w_t2)
    return SweepResult("W monotone (increasing in t1, decreasing in t2)",
                       worst, -1e-8, worst >= -1e-8, "")


def sweep_jacobian_vs_fd(samples: int = 1000, seed: int = 3) -> SweepResult:
    """Analytic Jacobian against central differences of the chord angles."""
    rng = np.random.default_rng(seed)
    h = 1e-6
    worst = 0.0
    for t1, t2 in _random_intervals(rng, samples, min_gap=5e-3, max_gap=TWO_PI - 0.5):
        jac = jacobian_q(ParamInterval(t1, t2))
        fd = []
        for dt1, dt2 in ((h, 0.0), (0.0, h)):
            ap, bp = _chord_angles_raw(t1 + dt1, t2 + dt2)
            am, bm = _chord_angles_raw(t1 - dt1, t2 - dt2)
            fd.append((normalize_angle(ap - am) / (2 * h), normalize_angle(bp - bm) / (2 * h)))
        analytic = ((jac.d_alpha_dt1, jac.d_beta_dt1), (jac.d_alpha_dt2, jac.d_beta_dt2))
        scale = max(abs(v) for col in analytic for v in col)
        err = max(abs(a - f) for acol, fcol in zip(analytic, fd) for a, f in zip(acol, fcol))
        worst = max(worst, err / max(scale, 1e-12))
    return SweepResult("Jacobian vs central differences (relative)",
                       worst, 1e-6, worst <= 1e-6, "")


def sweep_roundtrip(n: int = 21) -> SweepResult:
    """Q(invert(alpha, beta)) returns the target angles on a square grid."""
    worst = 0.0
    grid = np.linspace(-PI / 2, PI / 2, n)
    for alpha in grid:
        for beta in grid:
            if abs(alpha) + abs(beta) <= 1e-12:
                continue
            if (alpha, beta) in ((PI / 2, -PI / 2), (-PI / 2, PI / 2)):
                continue
            t1, t2, _ = _invert_raw(alpha, beta)
            a, b = _chord_angles_raw(t1, t2)
            worst = max(worst, abs(normalize_angle(a - alpha)), abs(normalize_angle(b - beta)))
    return SweepResult(f"round-trip inversion on {n}x{n} grid", worst, 1e-10,
                       worst <= 1e-10, "")


def sweep_gradient_law(n: int = 15) -> SweepResult:
    """Analytic energy gradient against central differences."""
    h = 1e-5
    worst = 0.0
    grid = np.linspace(-PI / 2, PI / 2, n + 2)[1:-1]
    for alpha in grid:
        for beta in grid:
            if math.hypot(alpha, beta) < 0.05:
                continue
            ga, gb = grad_e1(ChordAngles(alpha, beta))
            fda = (energy_e1(ChordAngles(alpha + h, beta)) - energy_e1(ChordAngles(alpha - h, beta))) / (2 * h)
            fdb = (energy_e1(ChordAngles(alpha, beta + h)) - energy_e1(ChordAngles(alpha, beta - h))) / (2 * h)
            scale = max(abs(fda), abs(fdb), 1e-12)
            worst = max(worst, max(abs(ga - fda), abs(gb - fdb)) / scale)
    return SweepResult("energy gradient vs central differences (relative)",
                       worst, 1e-5, worst <= 1e-5, "")


def run_all(grid: int = 100) -> list[SweepResult]:
    results = [
        sweep_xi_identities(),
        sweep_reflection_law(),
        sweep_turning_bound(),
        sweep_w_monotonicity(),
        sweep_jacobian_vs_fd(),
        sweep_roundtrip(),
        sweep_gradient_law(),
    ]
    results.extend(sweep_det_negativity(grid))
    return results
