import math

import numpy as np
import pytest

from elastic_splines import (ChordAngles, DomainError, NotApplicable,
                             ParamInterval, UnitTangent, beta_star,
                             chord_angles, cross_check_gamma, energy_e1,
                             grad_e1, invert_q, optimal_scurve,
                             reduce_to_canonical)
from elastic_splines.angles import normalize_angle
from elastic_splines.elastica import _chord_angles_raw, xi
from elastic_splines.hermite import (ELASTICA_ARC, LINE_SEGMENT, U_TURN_ARC,
                                     region_of)

from oracles import RISE_D

PI = math.pi


def beta_star_oracle(alpha, t_bar):
    """Locate beta* through the turning construction: find the parameter t
    with alpha(-t, 0) = alpha (monotone in t), then read off beta(-t, 0).
    Uses only the forward chord-angle map."""
    lo, hi = 1e-9, t_bar
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _chord_angles_raw(-mid, 0.0)[0] < alpha:
            lo = mid
        else:
            hi = mid
    return _chord_angles_raw(-0.5 * (lo + hi), 0.0)[1]


class TestInvertQ:
    def test_round_trip_grid(self):
        grid = np.linspace(-PI / 2, PI / 2, 21)
        for alpha in grid:
            for beta in grid:
                if abs(alpha) + abs(beta) <= 1e-12:
                    continue
                if (alpha, beta) in ((PI / 2, -PI / 2), (-PI / 2, PI / 2)):
                    continue
                iv = invert_q(ChordAngles(float(alpha), float(beta)))
                back = chord_angles(iv)
                assert abs(normalize_angle(back.alpha - alpha)) <= 1e-10
                assert abs(normalize_angle(back.beta - beta)) <= 1e-10

    def test_forward_backward(self):
        iv0 = ParamInterval(-0.9, 0.4)
        a = chord_angles(iv0)
        iv = invert_q(a)
        assert iv.t1 == pytest.approx(-0.9, abs=1e-9)
        assert iv.t2 == pytest.approx(0.4, abs=1e-9)

    def test_fundamental_domain(self, rng):
        for _ in range(100):
            alpha = rng.uniform(-PI / 2, PI / 2)
            beta = rng.uniform(-PI / 2, PI / 2)
            if abs(alpha) + abs(beta) <= 1e-6:
                continue
            iv = invert_q(ChordAngles(alpha, beta))
            assert -PI - 1e-9 <= iv.t1 < PI

    def test_tiny_targets(self):
        for eps in (1e-4, 1e-6, 1e-8):
            for alpha, beta in ((eps, eps), (eps, -eps), (-eps, 0.4 * eps)):
                iv = invert_q(ChordAngles(alpha, beta))
                back = chord_angles(iv)
                assert abs(back.alpha - alpha) <= 1e-10
                assert abs(back.beta - beta) <= 1e-10

    def test_origin_rejected(self):
        with pytest.raises(DomainError):
            invert_q(ChordAngles(0.0, 0.0))

    def test_corners_rejected(self):
        with pytest.raises(DomainError):
            invert_q(ChordAngles(PI / 2, -PI / 2))
        with pytest.raises(DomainError):
            invert_q(ChordAngles(-PI / 2, PI / 2))

    def test_outside_square_rejected(self):
        with pytest.raises(DomainError):
            invert_q(ChordAngles(1.8, 0.0))

    def test_randomized_stress_with_hard_targets(self, rng):
        # mixes square-interior, boundary-hugging, origin-hugging and
        # corner-hugging targets; all must converge to 1e-10
        worst = 0.0
        done = 0
        while done < 2000:
            mode = rng.integers(0, 4)
            if mode == 0:
                a, b = rng.uniform(-PI / 2, PI / 2, 2)
            elif mode == 1:
                a = rng.choice([-1, 1]) * (PI / 2 - 10.0 ** rng.uniform(-9, -1))
                b = rng.uniform(-PI / 2, PI / 2)
                if rng.integers(0, 2):
                    a, b = b, a
            elif mode == 2:
                s = 10.0 ** rng.uniform(-9, -1)
                a, b = s * rng.uniform(-1, 1), s * rng.uniform(-1, 1)
            else:
                a = PI / 2 - 10.0 ** rng.uniform(-8, -1)
                b = -PI / 2 + 10.0 ** rng.uniform(-8, -1)
                if rng.integers(0, 2):
                    a, b = -a, -b
            if abs(a) + abs(b) <= 1e-12:
                continue
            if (math.hypot(a - PI / 2, b + PI / 2) <= 1e-9
                    or math.hypot(a + PI / 2, b - PI / 2) <= 1e-9):
                continue
            back = chord_angles(invert_q(ChordAngles(float(a), float(b))))
            worst = max(worst, abs(normalize_angle(back.alpha - a)),
                        abs(normalize_angle(back.beta - b)))
            done += 1
        assert worst <= 1e-10

    def test_empirical_injectivity(self):
        # forward-evaluate a dense grid over the domain; distinct parameter
        # cells must not collide in angle space.  Cells hugging the diagonal
        # are excluded: the whole diagonal maps to the origin, so the map is
        # quadratically compressed there and any finite collision threshold
        # would flag far-apart near-diagonal cells that genuinely map close.
        from elastic_splines.elastica import chord_angles_batch, compute_constants
        t_bar = compute_constants().t_bar
        n = 100
        min_gap = 0.35
        t1s, t2s = [], []
        for a in np.linspace(0.0, 1.0, n, endpoint=False):
            t1 = -PI + a * PI
            for b in np.linspace(1e-3, 1.0, n):
                t2 = t1 * (1.0 - b)
                if t2 - t1 > min_gap:
                    t1s.extend((t1, t1 + PI))
                    t2s.extend((t2, t2 + PI))
        for a in np.linspace(1e-3, 1.0, n):
            for b in np.linspace(1e-3, 1.0, n):
                if t_bar * (a + b) > min_gap:
                    t1s.extend((-t_bar * a, -t_bar * a + PI))
                    t2s.extend((t_bar * b, t_bar * b + PI))
        t1a, t2a = np.asarray(t1s), np.asarray(t2s)
        aa, bb = chord_angles_batch(t1a, t2a)
        # hash angle space into 1e-3 cells and compare only nearby pairs
        buckets = {}
        for i in range(len(t1a)):
            key = (round(aa[i] * 1000.0), round(bb[i] * 1000.0))
            buckets.setdefault(key, []).append(i)
        two_pi = 2.0 * PI

        def param_dist(i, j):
            best = math.inf
            for k in (-two_pi, 0.0, two_pi):
                best = min(best, math.hypot(t1a[i] - t1a[j] + k, t2a[i] - t2a[j] + k))
            return best

        for (ka, kb), idxs in buckets.items():
            cand = list(idxs)
            for da in (-1, 0, 1):
                for db in (-1, 0, 1):
                    if (da, db) != (0, 0):
                        cand.extend(buckets.get((ka + da, kb + db), []))
            for i in idxs:
                for j in cand:
                    if j <= i:
                        continue
                    if (abs(aa[i] - aa[j]) <= 1e-3 and abs(bb[i] - bb[j]) <= 1e-3):
                        assert param_dist(i, j) <= 0.05, (
                            f"angle collision between distant parameters "
                            f"{(t1a[i], t2a[i])} and {(t1a[j], t2a[j])}")


class TestOptimalScurve:
    def test_collinear_gives_line(self):
        u = UnitTangent((0.0, 0.0), 0.0)
        v = UnitTangent((1.0, 0.0), 0.0)
        curve = optimal_scurve(u, v)
        assert curve.kind == LINE_SEGMENT
        assert curve.energy == 0.0
        assert curve.kappa_start == 0.0 and curve.kappa_end == 0.0

    def test_uturn(self):
        u = UnitTangent((0.0, 0.0), PI / 2)
        v = UnitTangent((1.0, 0.0), -PI / 2)
        curve = optimal_scurve(u, v)
        assert curve.kind == U_TURN_ARC
        assert (curve.params.t1, curve.params.t2) == (-PI, 0.0)
        assert curve.energy == pytest.approx(RISE_D ** 2, abs=1e-11)
        assert curve.kappa_start == pytest.approx(0.0, abs=1e-12)
        assert curve.kappa_end == pytest.approx(0.0, abs=1e-12)

    def test_mirrored_uturn(self):
        u = UnitTangent((0.0, 0.0), -PI / 2)
        v = UnitTangent((1.0, 0.0), PI / 2)
        curve = optimal_scurve(u, v)
        assert curve.kind == U_TURN_ARC
        assert (curve.params.t1, curve.params.t2) == (0.0, PI)

    def test_symmetric_configuration(self):
        phi = 0.0
        u = UnitTangent((0.0, 0.0), phi + 0.6)
        v = UnitTangent((2.0, 0.0), phi + 0.6)
        curve = optimal_scurve(u, v)
        assert curve.kind == ELASTICA_ARC
        assert curve.params.t1 == pytest.approx(-curve.params.t2, abs=1e-9)
        assert curve.kappa_start == pytest.approx(-curve.kappa_end, abs=1e-10)

    def test_coincident_points_rejected(self):
        with pytest.raises(DomainError):
            optimal_scurve(UnitTangent((1.0, 2.0), 0.0), UnitTangent((1.0, 2.0), 1.0))

    def test_angles_beyond_square_rejected(self):
        u = UnitTangent((0.0, 0.0), 2.0)
        v = UnitTangent((1.0, 0.0), 0.0)
        with pytest.raises(DomainError):
            optimal_scurve(u, v)

    def test_reconstruction_on_random_configurations(self, rng):
        for _ in range(1000):
            base_u = tuple(rng.uniform(-5.0, 5.0, 2))
            delta = rng.uniform(-5.0, 5.0, 2)
            if math.hypot(*delta) < 1e-3:
                continue
            base_v = (base_u[0] + delta[0], base_u[1] + delta[1])
            phi = math.atan2(delta[1], delta[0])
            alpha = rng.uniform(-PI / 2 + 1e-6, PI / 2 - 1e-6)
            beta = rng.uniform(-PI / 2 + 1e-6, PI / 2 - 1e-6)
            if abs(alpha) + abs(beta) < 1e-9:
                continue
            u = UnitTangent(base_u, normalize_angle(phi + alpha))
            v = UnitTangent(base_v, normalize_angle(phi + beta))
            curve = optimal_scurve(u, v)
            t1, t2 = curve.params.t1, curve.params.t2
            sx, sy = curve.apply(math.sin(t1), xi(t1))
            ex, ey = curve.apply(math.sin(t2), xi(t2))
            tol = 1e-9 * curve.breadth
            assert math.hypot(sx - base_u[0], sy - base_u[1]) <= tol
            assert math.hypot(ex - base_v[0], ey - base_v[1]) <= tol
            # end directions: tangent angle plus the similarity rotation
            from elastic_splines.elastica import _tangent_angle
            d_start = normalize_angle(_tangent_angle(t1) + curve.rotation)
            d_end = normalize_angle(_tangent_angle(t2) + curve.rotation)
            assert abs(normalize_angle(d_start - u.direction)) <= 1e-9
            assert abs(normalize_angle(d_end - v.direction)) <= 1e-9

    def test_scale_law(self, rng):
        for _ in range(200):
            alpha = rng.uniform(-PI / 2 + 1e-3, PI / 2 - 1e-3)
            beta = rng.uniform(-PI / 2 + 1e-3, PI / 2 - 1e-3)
            if abs(alpha) + abs(beta) < 1e-6:
                continue
            breadth = rng.uniform(0.1, 20.0)
            phi = rng.uniform(-PI, PI)
            base = tuple(rng.uniform(-3.0, 3.0, 2))
            u = UnitTangent(base, normalize_angle(phi + alpha))
            v = UnitTangent((base[0] + breadth * math.cos(phi),
                             base[1] + breadth * math.sin(phi)),
                            normalize_angle(phi + beta))
            curve = optimal_scurve(u, v)
            e1 = energy_e1(ChordAngles(alpha, beta))
            assert curve.energy == pytest.approx(e1 / breadth, rel=1e-10)


class TestEnergy:
    def test_zero_at_origin(self):
        assert energy_e1(ChordAngles(0.0, 0.0)) == 0.0

    def test_uturn_value(self):
        assert energy_e1(ChordAngles(PI / 2, -PI / 2)) == pytest.approx(
            RISE_D ** 2, abs=1e-10)

    def test_symmetries_at_example(self):
        e = energy_e1(ChordAngles(0.5, -0.2))
        assert energy_e1(ChordAngles(-0.2, 0.5)) == pytest.approx(e, abs=1e-10)
        assert energy_e1(ChordAngles(-0.5, 0.2)) == pytest.approx(e, abs=1e-10)

    def test_symmetries_on_grid(self):
        for alpha in np.linspace(-PI / 2, PI / 2, 9):
            for beta in np.linspace(-PI / 2, PI / 2, 9):
                if abs(alpha) + abs(beta) <= 1e-12:
                    continue
                e = energy_e1(ChordAngles(float(alpha), float(beta)))
                assert energy_e1(ChordAngles(float(beta), float(alpha))) == \
                    pytest.approx(e, abs=1e-10)
                assert energy_e1(ChordAngles(float(-alpha), float(-beta))) == \
                    pytest.approx(e, abs=1e-10)

    def test_corner_continuity(self):
        target = RISE_D ** 2
        for eps in (1e-2, 1e-3, 1e-4, 1e-5):
            e = energy_e1(ChordAngles(PI / 2 - eps, -PI / 2 + eps))
            assert e == pytest.approx(target, abs=1e-4 + 3.0 * eps)
        e = energy_e1(ChordAngles(PI / 2 - 1e-5, -PI / 2 + 1e-5))
        assert e == pytest.approx(target, abs=1e-4)

    def test_outside_square_rejected(self):
        with pytest.raises(DomainError):
            energy_e1(ChordAngles(PI / 2 + 0.1, 0.0))


class TestGradient:
    def test_zero_at_origin(self):
        assert grad_e1(ChordAngles(0.0, 0.0)) == (0.0, 0.0)

    def test_matches_finite_differences_at_example(self):
        alpha, beta = 0.7, 0.1
        ga, gb = grad_e1(ChordAngles(alpha, beta))
        h = 1e-5
        fda = (energy_e1(ChordAngles(alpha + h, beta))
               - energy_e1(ChordAngles(alpha - h, beta))) / (2 * h)
        fdb = (energy_e1(ChordAngles(alpha, beta + h))
               - energy_e1(ChordAngles(alpha, beta - h))) / (2 * h)
        assert ga == pytest.approx(fda, rel=1e-5)
        assert gb == pytest.approx(fdb, rel=1e-5)

    def test_corner_rejected(self):
        with pytest.raises(DomainError):
            grad_e1(ChordAngles(PI / 2, -PI / 2))

    def test_beta_derivative_vanishes_at_beta_star(self, consts):
        alpha = 0.9
        bs = beta_star_oracle(alpha, consts.t_bar)
        assert abs(grad_e1(ChordAngles(alpha, bs))[1]) <= 1e-9


class TestBetaStar:
    def test_matches_turning_oracle(self, consts):
        for alpha in (0.2, 0.7, 1.2, PI / 2):
            assert beta_star(alpha) == pytest.approx(
                beta_star_oracle(alpha, consts.t_bar), abs=1e-9)

    def test_odd_and_zero_at_zero(self):
        assert beta_star(0.0) == 0.0
        assert beta_star(-0.8) == pytest.approx(-beta_star(0.8), abs=1e-11)

    def test_bound(self, consts):
        for alpha in np.linspace(-PI / 2, PI / 2, 13):
            assert abs(beta_star(float(alpha))) <= PI / 2 - consts.psi + 1e-9

    def test_sign_pattern(self, consts):
        alpha = 0.9
        bs = beta_star(alpha)
        for beta in np.linspace(-PI / 2 + 1e-3, PI / 2, 21):
            if abs(beta - bs) < 1e-6:
                continue
            gb = grad_e1(ChordAngles(alpha, float(beta)))[1]
            assert (gb > 0.0) == (beta > bs)


class TestGammaCrossCheck:
    def test_example_residuals(self):
        angles = ChordAngles(1.2, 0.3)
        iv = invert_q(angles)
        diag = cross_check_gamma(angles, iv)
        assert abs(diag.sigma_residual) <= 1e-8
        e1 = energy_e1(angles)
        assert abs(diag.g_gamma_value - e1) <= 1e-8 * max(1.0, e1)

    def test_gamma_hat_range(self):
        angles = ChordAngles(0.5, 0.5)
        diag = cross_check_gamma(angles, invert_q(angles))
        assert -PI / 2 < diag.gamma_hat < 0.0

    def test_c_curve_not_applicable(self):
        # beta far below the derivative zero: the optimum is a pure c-curve
        angles = ChordAngles(0.9, -0.8)
        iv = invert_q(angles)
        assert iv.t2 <= 0.0
        with pytest.raises(NotApplicable):
            cross_check_gamma(angles, iv)

    def test_non_canonical_not_applicable(self):
        angles = ChordAngles(-1.2, 0.3)
        with pytest.raises(NotApplicable):
            cross_check_gamma(angles, ParamInterval(-1.0, 1.0))

    def test_random_canonical_pairs(self, rng):
        checked = 0
        while checked < 30:
            alpha = rng.uniform(0.05, PI / 2)
            beta = rng.uniform(-alpha, alpha)
            if beta <= alpha - PI + 1e-3:
                continue
            angles = ChordAngles(alpha, beta)
            iv = invert_q(angles)
            if not (-PI < iv.t1 < 0.0 < iv.t2 < PI):
                continue
            diag = cross_check_gamma(angles, iv)
            assert abs(diag.sigma_residual) <= 1e-8
            e1 = energy_e1(angles)
            assert abs(diag.g_gamma_value - e1) <= 1e-8 * max(1.0, e1)
            assert diag.region in ("U0", "U1")
            checked += 1

    def test_end_tangent_and_dilation_relations(self, rng):
        # gamma_hat is defined through the start tangent; the end tangent and
        # the dilation factor must then come out consistently:
        #   arg R'(t2) = beta - gamma_hat,   q(gamma_hat) = 1 / chord length
        from elastic_splines.elastica import (_segment_geometry, _tangent_angle,
                                              gamma_form)
        checked = 0
        while checked < 50:
            alpha = rng.uniform(0.05, PI / 2)
            beta = rng.uniform(-alpha, alpha)
            angles = ChordAngles(alpha, beta)
            iv = invert_q(angles)
            if not (-PI < iv.t1 < 0.0 < iv.t2 < PI):
                continue
            gamma_hat = alpha - _tangent_angle(iv.t1)
            assert _tangent_angle(iv.t2) == pytest.approx(beta - gamma_hat, abs=1e-9)
            form = gamma_form(alpha, beta, gamma_hat)
            length = _segment_geometry(iv.t1, iv.t2)[2]
            assert form.q == pytest.approx(1.0 / length, rel=1e-9)
            checked += 1


class TestReduceToCanonical:
    def test_identity(self):
        reduced, sym = reduce_to_canonical(ChordAngles(0.8, -0.3))
        assert sym == "identity"
        assert (reduced.alpha, reduced.beta) == (0.8, -0.3)

    def test_negate(self):
        reduced, sym = reduce_to_canonical(ChordAngles(-0.8, 0.3))
        assert sym == "negate"
        assert (reduced.alpha, reduced.beta) == (0.8, -0.3)

    def test_swap(self):
        reduced, sym = reduce_to_canonical(ChordAngles(0.2, 0.9))
        assert sym == "swap"
        assert (reduced.alpha, reduced.beta) == (0.9, 0.2)

    def test_swap_negate(self):
        reduced, sym = reduce_to_canonical(ChordAngles(0.2, -0.9))
        assert sym == "swap_negate"
        assert (reduced.alpha, reduced.beta) == (0.9, -0.2)

    def test_canonical_postcondition(self, rng):
        for _ in range(200):
            alpha = rng.uniform(-PI / 2, PI / 2)
            beta = rng.uniform(-PI / 2, PI / 2)
            if abs(alpha) + abs(beta) < 1e-9:
                continue
            reduced, _ = reduce_to_canonical(ChordAngles(alpha, beta))
            assert reduced.alpha > 0.0
            assert abs(reduced.beta) <= reduced.alpha + 1e-15

    def test_region_classification(self, consts):
        assert region_of(ParamInterval(-2.0, -0.5)) == "U0"
        assert region_of(ParamInterval(-0.5, 0.5)) == "U1"
        assert region_of(ParamInterval(0.5, 2.0)) == "U2"
        assert region_of(ParamInterval(PI - 0.5, PI + 0.5)) == "U3"
