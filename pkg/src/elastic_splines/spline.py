"""Restricted elastic splines through interpolation points.

A spline through P_1, ..., P_m is assembled from optimal s-curve pieces,
one per consecutive pair, sharing a unit tangent direction theta_j at each
node.  Total bending energy

    E(theta) = sum_j E1(alpha_j, beta_{j+1}) / L_j,
    alpha_j = theta_j - phi_j,   beta_{j+1} = theta_{j+1} - phi_j,

is minimized over the node angles subject to every chord angle staying in
[-pi/2, pi/2]; phi_j is the direction of the chord P_j -> P_{j+1} and L_j
its length.  The feasible set for theta_j is the intersection of the
half-circles around the adjacent chord directions, an arc of width
pi - |psi_j| where psi_j is the stencil angle at P_j.

Minimization is cyclic coordinate descent.  Each node update solves a 1-D
problem whose derivative is available exactly:

    dE/dtheta_j = dE1/dalpha(seg j)/L_j + dE1/dbeta(seg j-1)/L_{j-1}
                = (kappa_b(in) - kappa_a(out)) / 2  up to sign,

so a converged stationary point has matching curvatures across every node
whose chord angles are strictly interior - exactly the G2 property the
report certifies against the stencil threshold Psi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .angles import normalize_angle
from .elastica import PI, ChordAngles, compute_constants
from .errors import CoincidentPoints, DomainError, EmptyFeasible
from .hermite import UnitTangent, SCurve, _energy_grad_seeded, energy_e1, optimal_scurve

_FEASIBLE_GUARD = 1e-12


@dataclass(frozen=True)
class AngularInterval:
    """An arc {center + t : |t| <= half_width} on the circle."""

    center: float
    half_width: float

    @property
    def width(self) -> float:
        return 2.0 * self.half_width

    def clamp(self, angle: float, guard: float = 0.0) -> float:
        off = normalize_angle(angle - self.center)
        hw = self.half_width - guard
        return normalize_angle(self.center + min(max(off, -hw), hw))

    def contains(self, angle: float, tol: float = 1e-12) -> bool:
        return abs(normalize_angle(angle - self.center)) <= self.half_width + tol


@dataclass(frozen=True)
class SplineProblem:
    """Interpolation points with end conditions and optimizer tolerances.

    ``clamp`` fixes the end tangent directions (radians); None leaves both
    ends free.  Consecutive points must be distinct.
    """

    points: tuple[tuple[float, float], ...]
    clamp: tuple[float, float] | None = None
    angle_tol: float = 1e-10
    max_sweeps: int = 500

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise DomainError("a spline needs at least two points")
        for j in range(len(pts) - 1):
            if pts[j] == pts[j + 1]:
                raise CoincidentPoints(f"points {j} and {j + 1} coincide: {pts[j]}")


@dataclass
class NodeState:
    """Node tangent angles plus the fixed chord geometry they refer to."""

    theta: list[float]
    chord_dirs: list[float]
    chord_lengths: list[float]
    stencil: list[float]

    def alpha(self, j: int) -> float:
        """Chord angle at the start of segment j."""
        return normalize_angle(self.theta[j] - self.chord_dirs[j])

    def beta(self, j: int) -> float:
        """Chord angle at the end of segment j."""
        return normalize_angle(self.theta[j + 1] - self.chord_dirs[j])


@dataclass
class SplineSolution:
    segments: list[SCurve]
    node_states: NodeState
    total_energy: float
    sweeps_used: int
    converged: bool


@dataclass(frozen=True)
class G2NodeRecord:
    """Continuity diagnostics at one interior node."""

    node_index: int
    psi: float
    alpha_in: float      # incoming piece's end chord angle
    alpha_out: float     # outgoing piece's start chord angle
    kappa_in: float
    kappa_out: float
    kappa_jump: float
    certified_by_psi: bool
    g2_within_tol: bool


def chord_directions(points) -> tuple[list[float], list[float]]:
    """(directions, lengths) of the chords P_j -> P_{j+1}."""
    dirs, lens = [], []
    for j in range(len(points) - 1):
        dx = points[j + 1][0] - points[j][0]
        dy = points[j + 1][1] - points[j][1]
        length = math.hypot(dx, dy)
        if length == 0.0:
            raise CoincidentPoints(f"points {j} and {j + 1} coincide")
        dirs.append(math.atan2(dy, dx))
        lens.append(length)
    return dirs, lens


def stencil_angles(points) -> list[float]:
    """Turning angles of the control polygon at its interior nodes."""
    dirs, _ = chord_directions(points)
    return [normalize_angle(dirs[j] - dirs[j - 1]) for j in range(1, len(dirs))]


def feasible_tangent_interval(j: int, node_states: NodeState) -> AngularInterval:
    """Feasible arc for theta_j under the pi/2 chord-angle bounds.

    Endpoints see one chord only (width pi); an interior node sees both,
    leaving width pi - |psi_j|.  Anti-parallel chords leave nothing.
    """
    dirs = node_states.chord_dirs
    m = len(node_states.theta)
    if j == 0:
        return AngularInterval(dirs[0], PI / 2)
    if j == m - 1:
        return AngularInterval(dirs[-1], PI / 2)
    psi = node_states.stencil[j - 1]
    half = (PI - abs(psi)) / 2.0
    if half <= 0.0:
        raise EmptyFeasible(f"anti-parallel chords at node {j}: no feasible tangent")
    return AngularInterval(normalize_angle(dirs[j - 1] + 0.5 * psi), half)


def initialize_tangents(points, clamp=None) -> NodeState:
    """Starting tangents: chord-bisector directions at interior nodes,
    chord directions (or the given clamps) at the ends."""
    dirs, lens = chord_directions(points)
    m = len(points)
    stencil = [normalize_angle(dirs[j] - dirs[j - 1]) for j in range(1, len(dirs))]
    theta = [0.0] * m
    state = NodeState(theta=theta, chord_dirs=dirs, chord_lengths=lens, stencil=stencil)
    for j in range(1, m - 1):
        iv = feasible_tangent_interval(j, state)
        bx = math.cos(dirs[j]) + math.cos(dirs[j - 1])
        by = math.sin(dirs[j]) + math.sin(dirs[j - 1])
        theta[j] = iv.clamp(math.atan2(by, bx) if (bx, by) != (0.0, 0.0) else iv.center,
                            guard=_FEASIBLE_GUARD)
    if clamp is None:
        theta[0] = dirs[0]
        theta[-1] = dirs[-1]
    else:
        t0, tm = normalize_angle(clamp[0]), normalize_angle(clamp[1])
        if not feasible_tangent_interval(0, state).contains(t0):
            raise DomainError(f"clamped start tangent {t0} violates the pi/2 chord bound")
        if not feasible_tangent_interval(m - 1, state).contains(tm):
            raise DomainError(f"clamped end tangent {tm} violates the pi/2 chord bound")
        theta[0], theta[-1] = t0, tm
    return state


def total_energy(points, node_states: NodeState) -> float:
    """Total bending energy of the spline defined by ``node_states``."""
    total = 0.0
    for j in range(len(points) - 1):
        total += energy_e1(ChordAngles(node_states.alpha(j), node_states.beta(j))) \
            / node_states.chord_lengths[j]
    return total


# ---------------------------------------------------------------------------
# the optimizer


class _Workspace:
    """Mutable per-run state: node angles plus warm-start data."""

    def __init__(self, state: NodeState):
        self.state = state
        nseg = len(state.chord_dirs)
        self.seeds: list[tuple[float, float] | None] = [None] * nseg
        self.energy: list[float] = [0.0] * nseg
        self.grad_a: list[float] = [0.0] * nseg
        self.grad_b: list[float] = [0.0] * nseg
        for j in range(nseg):
            self.refresh_segment(j)

    def refresh_segment(self, j: int) -> None:
        st = self.state
        e, ga, gb, seed = _energy_grad_seeded(st.alpha(j), st.beta(j), self.seeds[j])
        if seed is not None:
            self.seeds[j] = seed
        length = st.chord_lengths[j]
        self.energy[j] = e / length
        self.grad_a[j] = ga / length
        self.grad_b[j] = gb / length

    def node_segments(self, j: int) -> tuple[int | None, int | None]:
        m = len(self.state.theta)
        return (j - 1 if j > 0 else None, j if j < m - 1 else None)

    def eval_node(self, j: int, theta_j: float) -> tuple[float, float]:
        """(energy, derivative) of the two segments touching node j at the
        trial angle; leaves the trial angle in place."""
        self.state.theta[j] = theta_j
        seg_in, seg_out = self.node_segments(j)
        energy = grad = 0.0
        if seg_in is not None:
            self.refresh_segment(seg_in)
            energy += self.energy[seg_in]
            grad += self.grad_b[seg_in]
        if seg_out is not None:
            self.refresh_segment(seg_out)
            energy += self.energy[seg_out]
            grad += self.grad_a[seg_out]
        return energy, grad

    def total_energy(self) -> float:
        return sum(self.energy)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_section(ws: _Workspace, j: int, lo: float, hi: float, tol: float) -> float:
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, _ = ws.eval_node(j, x1)
    f2, _ = ws.eval_node(j, x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1, _ = ws.eval_node(j, x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2, _ = ws.eval_node(j, x2)
    return 0.5 * (a + b)


def _derivative_root(ws: _Workspace, j: int, a: float, b: float,
                     ga: float, gb: float) -> float:
    """Zero of the node derivative inside a sign-changing bracket (Illinois)."""
    fa, fb = ga, gb
    for _ in range(100):
        if b - a <= 1e-13:
            break
        mid = b - fb * (b - a) / (fb - fa) if fb != fa else 0.5 * (a + b)
        if not (a < mid < b):
            mid = 0.5 * (a + b)
        _, fm = ws.eval_node(j, mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (fa < 0.0):
            a, fa = mid, fm
            fb *= 0.5
        else:
            b, fb = mid, fm
            fa *= 0.5
    return 0.5 * (a + b)


def _minimize_node(ws: _Workspace, j: int, interval: AngularInterval,
                   march_step: float, angle_tol: float) -> tuple[float, float]:
    """1-D energy minimization over theta_j within its feasible arc.

    Brackets a derivative sign change by marching from the current angle
    (derivative bisection), falling back to golden section whenever the
    candidate fails to decrease the energy.  Returns (move size, new step
    memory for the next sweep).
    """
    theta0 = ws.state.theta[j]
    # work in an unwrapped coordinate around the interval center
    off0 = normalize_angle(theta0 - interval.center)
    lo_off = -interval.half_width + _FEASIBLE_GUARD
    hi_off = interval.half_width - _FEASIBLE_GUARD
    off0 = min(max(off0, lo_off), hi_off)

    def at(off: float) -> float:
        return interval.center + off

    e0, g0 = ws.eval_node(j, at(off0))
    if g0 == 0.0:
        return 0.0, march_step
    # march in the descent direction, doubling the step, until the
    # derivative changes sign or the boundary is reached
    direction = -1.0 if g0 > 0.0 else 1.0
    step = min(max(march_step, 4.0 * angle_tol), interval.half_width)
    a_off, b_off = (None, off0) if g0 > 0.0 else (off0, None)
    ga, gb = (None, g0) if g0 > 0.0 else (g0, None)
    cur = off0
    while True:
        nxt = min(max(cur + direction * step, lo_off), hi_off)
        _, gnxt = ws.eval_node(j, at(nxt))
        if (gnxt < 0.0) != (g0 < 0.0) or gnxt == 0.0:
            if g0 > 0.0:
                a_off, ga = nxt, gnxt
            else:
                b_off, gb = nxt, gnxt
            break
        if nxt in (lo_off, hi_off):
            break
        cur = nxt
        if g0 > 0.0:
            b_off, gb = nxt, gnxt
        else:
            a_off, ga = nxt, gnxt
        step *= 2.0
    if a_off is None or b_off is None or ga is None or gb is None:
        cand = lo_off if g0 > 0.0 else hi_off
    elif ga == 0.0:
        cand = a_off
    elif gb == 0.0:
        cand = b_off
    else:
        cand = _derivative_root(ws, j, at(a_off), at(b_off), ga, gb) - interval.center
    # guard against a multi-modal slice handing back a non-descent point;
    # the slack sits well above the ~1e-12 noise of re-solved energies so
    # genuine tiny descent steps near convergence are never bounced
    descent_slack = 1e-9 * max(1.0, abs(e0))
    e1, _ = ws.eval_node(j, at(cand))
    if e1 > e0 + descent_slack:
        cand = _golden_section(ws, j, at(lo_off), at(hi_off), 1e-12) - interval.center
        e1, _ = ws.eval_node(j, at(cand))
        if e1 > e0 + descent_slack:
            ws.eval_node(j, at(off0))
            return 0.0, march_step
    move = abs(normalize_angle(at(cand) - theta0))
    return move, max(move, 1e-9)


def optimize(problem: SplineProblem) -> SplineSolution:
    """Fit the spline by cyclic coordinate descent over node tangents.

    Sweeps nodes in order, minimizing the two adjacent segment energies over
    each node angle (endpoints too, unless clamped), until the largest angle
    change in a sweep drops below ``angle_tol``.  The converged flag reports
    whether that happened within ``max_sweeps``; total energy never
    increases from sweep to sweep.
    """
    state = initialize_tangents(problem.points, problem.clamp)
    m = len(problem.points)
    intervals = [feasible_tangent_interval(j, state) for j in range(m)]
    ws = _Workspace(state)
    free_nodes = list(range(m)) if problem.clamp is None else list(range(1, m - 1))

    march = {j: 0.05 for j in free_nodes}
    prev_energy = ws.total_energy()
    sweeps = 0
    converged = len(free_nodes) == 0
    for _ in range(problem.max_sweeps):
        sweeps += 1
        biggest = 0.0
        for j in free_nodes:
            move, march[j] = _minimize_node(ws, j, intervals[j], march[j],
                                            problem.angle_tol)
            biggest = max(biggest, move)
        energy = ws.total_energy()
        if energy > prev_energy + 1e-11 * max(1.0, prev_energy):
            raise AssertionError(
                f"energy increased across a sweep: {prev_energy} -> {energy}")
        prev_energy = energy
        if biggest < problem.angle_tol:
            converged = True
            break

    segments = []
    for j in range(m - 1):
        u = UnitTangent(problem.points[j], normalize_angle(state.theta[j]))
        v = UnitTangent(problem.points[j + 1], normalize_angle(state.theta[j + 1]))
        segments.append(optimal_scurve(u, v))
    return SplineSolution(segments=segments, node_states=state,
                          total_energy=sum(s.energy for s in segments),
                          sweeps_used=sweeps, converged=converged)


def g2_report(solution: SplineSolution, rel_tol: float = 1e-6) -> list[G2NodeRecord]:
    """Per-interior-node curvature continuity report.

    ``kappa_jump`` is in absolute 1/length units; ``g2_within_tol`` compares
    it against ``rel_tol`` times the largest endpoint curvature magnitude of
    the whole solution.  ``certified_by_psi`` marks nodes whose stencil angle
    is below the threshold Psi.
    """
    psi_threshold = compute_constants().psi
    st = solution.node_states
    scale = 0.0
    for seg in solution.segments:
        scale = max(scale, abs(seg.kappa_start), abs(seg.kappa_end))
    records = []
    for j in range(1, len(st.theta) - 1):
        seg_in = solution.segments[j - 1]
        seg_out = solution.segments[j]
        jump = seg_out.kappa_start - seg_in.kappa_end
        within = abs(jump) <= rel_tol * scale if scale > 0.0 else jump == 0.0
        records.append(G2NodeRecord(
            node_index=j,
            psi=st.stencil[j - 1],
            alpha_in=st.beta(j - 1),
            alpha_out=st.alpha(j),
            kappa_in=seg_in.kappa_end,
            kappa_out=seg_out.kappa_start,
            kappa_jump=jump,
            certified_by_psi=abs(st.stencil[j - 1]) < psi_threshold,
            g2_within_tol=within,
        ))
    return records
