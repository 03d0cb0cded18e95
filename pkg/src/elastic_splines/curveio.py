"""Input documents, fit reports, sampling and SVG output.

All serialized output is deterministic: keys are emitted in sorted order
and every float is written with 12 significant digits, so identical inputs
produce byte-identical reports and re-serializing a parsed report
reproduces it exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .angles import normalize_angle
from .elastica import _UNIT_RULES, _MAX_PANELS, compute_constants, xi
from .errors import DomainError
from .hermite import LINE_SEGMENT, SCurve, UnitTangent, optimal_scurve
from .spline import (G2NodeRecord, SplineProblem, SplineSolution, g2_report,
                     optimize)

Polyline = list[tuple[float, float]]

DEFAULT_SPACING_FRACTION = 1.0 / 200.0


@dataclass(frozen=True)
class PointsDocument:
    """Interpolation points plus an optional endpoint clamp in degrees."""

    points: tuple[tuple[float, float], ...]
    clamp_deg: tuple[float, float] | None = None


# ---------------------------------------------------------------------------
# parsing


def parse_points_text(text: str) -> PointsDocument:
    """Parse a document: JSON (object with "points" or a bare array), or the
    x,y-per-line plain-text fallback.  Errors name the offending line."""
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DomainError(f"invalid JSON at line {e.lineno}: {e.msg}") from None
        return _document_from_json(data)
    return _document_from_lines(text)


def _document_from_json(data) -> PointsDocument:
    clamp = None
    if isinstance(data, dict):
        raw_points = data.get("points")
        if raw_points is None:
            raise DomainError('JSON document needs a "points" array')
        mode = data.get("endpoint_mode")
        if mode is not None:
            try:
                clamp = (float(mode["theta_first"]), float(mode["theta_last"]))
            except (KeyError, TypeError, ValueError):
                raise DomainError(
                    'endpoint_mode needs numeric "theta_first" and "theta_last" (degrees)') from None
    elif isinstance(data, list):
        raw_points = data
    else:
        raise DomainError("JSON document must be an object or an array of points")
    points = []
    for i, row in enumerate(raw_points):
        try:
            x, y = float(row[0]), float(row[1])
        except (TypeError, ValueError, IndexError):
            raise DomainError(f"point {i} is not an [x, y] pair: {row!r}") from None
        points.append((x, y))
    return _validated(points, clamp)


def _document_from_lines(text: str) -> PointsDocument:
    points = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.replace(",", " ").split()
        if len(parts) != 2:
            raise DomainError(f"line {lineno}: expected 'x,y', got {line.rstrip()!r}")
        try:
            points.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise DomainError(f"line {lineno}: non-numeric coordinate in {line.rstrip()!r}") from None
    return _validated(points, None)


def _validated(points, clamp) -> PointsDocument:
    if len(points) < 2:
        raise DomainError(f"need at least 2 points, got {len(points)}")
    for j in range(len(points) - 1):
        if points[j] == points[j + 1]:
            raise DomainError(f"points {j} and {j + 1} coincide: {points[j]}")
    return PointsDocument(points=tuple(points), clamp_deg=clamp)


# ---------------------------------------------------------------------------
# sampling


def _param_arclength(t1: float, t2: float) -> float:
    """Arclength of R over [t1, t2] (unit scale): integral of 1/sqrt(1+sin^2)."""
    gap = t2 - t1
    xs, ws = _UNIT_RULES[min(_MAX_PANELS, max(1, int(gap / 0.45) + 1)) - 1]
    t = t1 + gap * xs
    return gap * float(ws @ (1.0 / np.sqrt(1.0 + np.sin(t) ** 2)))


def sample_segment(s: SCurve, target_spacing: float) -> Polyline:
    """Vertices along the piece at approximately uniform arclength spacing.

    Parameter steps follow the inverse speed, dt = spacing * sqrt(1+sin^2 t)
    / scale, with a midpoint refinement; both endpoints are exact.
    """
    if target_spacing <= 0.0:
        raise DomainError("target_spacing must be positive")
    if s.kind == LINE_SEGMENT:
        n = max(1, round(s.breadth / target_spacing))
        c, sn = math.cos(s.rotation), math.sin(s.rotation)
        x0, y0 = s.translation
        return [(x0 + c * s.breadth * k / n, y0 + sn * s.breadth * k / n)
                for k in range(n + 1)]
    t1, t2 = s.params.t1, s.params.t2
    total = s.scale * _param_arclength(t1, t2)
    n = max(1, round(total / target_spacing))
    spacing = total / n
    verts = [s.apply(math.sin(t1), xi(t1))]
    t = t1
    for _ in range(n - 1):
        dt = spacing * math.sqrt(1.0 + math.sin(t) ** 2) / s.scale
        tm = t + 0.5 * dt
        t = min(t + spacing * math.sqrt(1.0 + math.sin(tm) ** 2) / s.scale, t2)
        verts.append(s.apply(math.sin(t), xi(t)))
    verts.append(s.apply(math.sin(t2), xi(t2)))
    return verts


# ---------------------------------------------------------------------------
# deterministic serialization


def _format_float(x: float) -> str:
    if x != x or x in (math.inf, -math.inf):
        raise ValueError(f"non-finite value in report: {x}")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(x, ".12g")


def _write_json(value, out: list[str], indent: int) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(value)
        for i, k in enumerate(keys):
            out.append(f'{pad}  {json.dumps(k)}: ')
            _write_json(value[k], out, indent + 1)
            out.append(",\n" if i < len(keys) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(pad + "  ")
            _write_json(item, out, indent + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif value is None:
        out.append("null")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(_format_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    else:
        raise TypeError(f"unsupported type in report: {type(value)}")


def dumps_deterministic(value) -> str:
    """JSON text with sorted keys and 12-significant-digit floats."""
    out: list[str] = []
    _write_json(value, out, 0)
    out.append("\n")
    return "".join(out)


# ---------------------------------------------------------------------------
# fit reports


def build_fit_report(solution: SplineSolution, records: list[G2NodeRecord]) -> dict:
    consts = compute_constants()
    per_segment = []
    for j, seg in enumerate(solution.segments):
        st = solution.node_states
        per_segment.append({
            "alpha_deg": math.degrees(st.alpha(j)),
            "beta_deg": math.degrees(st.beta(j)),
            "energy": seg.energy,
            "breadth": seg.breadth,
            "params_t1": None if seg.params is None else seg.params.t1,
            "params_t2": None if seg.params is None else seg.params.t2,
            "kind": seg.kind,
        })
    per_node = [{
        "node_index": r.node_index,
        "psi_deg": math.degrees(r.psi),
        "alpha_in_deg": math.degrees(r.alpha_in),
        "alpha_out_deg": math.degrees(r.alpha_out),
        "kappa_jump": r.kappa_jump,
        "certified_by_psi": r.certified_by_psi,
        "g2_within_tol": r.g2_within_tol,
    } for r in records]
    return {
        "total_energy": solution.total_energy,
        "per_segment": per_segment,
        "per_node": per_node,
        "constants": {
            "d": consts.d,
            "t_star": consts.t_star,
            "t_bar": consts.t_bar,
            "psi_deg": math.degrees(consts.psi),
        },
        "converged": solution.converged,
        "sweeps": solution.sweeps_used,
    }


def fit_document(doc: PointsDocument, angle_tol: float = 1e-10,
                 max_sweeps: int = 500) -> tuple[SplineSolution, dict]:
    clamp = None
    if doc.clamp_deg is not None:
        clamp = (math.radians(doc.clamp_deg[0]), math.radians(doc.clamp_deg[1]))
    problem = SplineProblem(points=doc.points, clamp=clamp,
                            angle_tol=angle_tol, max_sweeps=max_sweeps)
    solution = optimize(problem)
    report = build_fit_report(solution, g2_report(solution))
    return solution, report


def solution_polylines(solution: SplineSolution, spacing: float | None = None) -> list[Polyline]:
    polys = []
    for seg in solution.segments:
        step = spacing if spacing is not None else seg.breadth * DEFAULT_SPACING_FRACTION
        polys.append(sample_segment(seg, step))
    return polys


# ---------------------------------------------------------------------------
# SVG


def _fmt_svg(x: float) -> str:
    return format(x, ".4f")


def render_svg(solution: SplineSolution, records: list[G2NodeRecord],
               spacing: float | None = None, labels: bool = True,
               size: int = 800) -> str:
    """One path per segment, node markers colored by certification, and
    optional per-node stencil-angle labels.  The y axis is flipped to screen
    convention; mathematically y grows upward."""
    polys = solution_polylines(solution, spacing)
    points = [p for poly in polys for p in poly]
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    margin = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin
    scale = size / max(x1 - x0, y1 - y0)
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def to_screen(p):
        return (p[0] - x0) * scale, height - (p[1] - y0) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt_svg(width)} {_fmt_svg(height)}">']
    out.append("<!-- y axis flipped for screen display; mathematical y points up -->")
    for poly in polys:
        coords = " L ".join(f"{_fmt_svg(sx)} {_fmt_svg(sy)}" for sx, sy in map(to_screen, poly))
        out.append(f'<path d="M {coords}" fill="none" stroke="#1f4e9c" stroke-width="2"/>')
    node_flags = {r.node_index: r for r in records}
    for idx, seg in enumerate(solution.segments):
        sx, sy = to_screen(_segment_start(seg))
        out.append(_marker(sx, sy, node_flags.get(idx)))
    last = solution.segments[-1]
    ex, ey = to_screen(_segment_end(last))
    out.append(_marker(ex, ey, None))
    if labels:
        for r in records:
            seg = solution.segments[r.node_index]
            px, py = to_screen(_segment_start(seg))
            flag = "G2" if r.g2_within_tol else "jump"
            out.append(f'<text x="{_fmt_svg(px + 8)}" y="{_fmt_svg(py - 8)}" font-size="12">'
                       f'psi={math.degrees(r.psi):.1f}deg {flag}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _segment_start(seg: SCurve) -> tuple[float, float]:
    if seg.kind == LINE_SEGMENT:
        return seg.translation
    return seg.apply(math.sin(seg.params.t1), xi(seg.params.t1))


def _segment_end(seg: SCurve) -> tuple[float, float]:
    if seg.kind == LINE_SEGMENT:
        c, s = math.cos(seg.rotation), math.sin(seg.rotation)
        return (seg.translation[0] + c * seg.breadth, seg.translation[1] + s * seg.breadth)
    return seg.apply(math.sin(seg.params.t2), xi(seg.params.t2))


def _marker(sx: float, sy: float, record: G2NodeRecord | None) -> str:
    if record is None:
        color = "#444444"
    elif record.certified_by_psi and record.g2_within_tol:
        color = "#2e8b57"
    elif record.g2_within_tol:
        color = "#b8860b"
    else:
        color = "#c0392b"
    return f'<circle cx="{_fmt_svg(sx)}" cy="{_fmt_svg(sy)}" r="4" fill="{color}"/>'


def run_fit(doc: PointsDocument, spacing: float | None = None, labels: bool = True,
            angle_tol: float = 1e-10, max_sweeps: int = 500):
    """Fit a document and produce (solution, report dict, SVG text)."""
    solution, report = fit_document(doc, angle_tol=angle_tol, max_sweeps=max_sweeps)
    svg = render_svg(solution, g2_report(solution), spacing=spacing, labels=labels)
    return solution, report, svg


# ---------------------------------------------------------------------------
# single-piece records (CLI hermite and serve op)


def scurve_record(curve: SCurve, spacing: float | None = None) -> dict:
    step = spacing if spacing is not None else curve.breadth * DEFAULT_SPACING_FRACTION
    samples = sample_segment(curve, step)
    return {
        "kind": curve.kind,
        "params_t1": None if curve.params is None else curve.params.t1,
        "params_t2": None if curve.params is None else curve.params.t2,
        "breadth": curve.breadth,
        "energy": curve.energy,
        "kappa_start": curve.kappa_start,
        "kappa_end": curve.kappa_end,
        "samples": [[x, y] for x, y in samples],
    }


def hermite_curve(base_u, direction_u_rad, base_v, direction_v_rad) -> SCurve:
    u = UnitTangent((float(base_u[0]), float(base_u[1])), normalize_angle(direction_u_rad))
    v = UnitTangent((float(base_v[0]), float(base_v[1])), normalize_angle(direction_v_rad))
    return optimal_scurve(u, v)
