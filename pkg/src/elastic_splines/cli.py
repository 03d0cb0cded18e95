"""Command-line interface.

Exit codes: 0 success, 2 validation error, 3 fit did not converge,
4 internal assertion (a verify sweep failed).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .curveio import (_format_float, dumps_deterministic, parse_points_text,
                      run_fit, scurve_record, hermite_curve)
from .elastica import compute_constants
from .errors import DomainError, NoConvergence
from . import verify as verify_mod
from . import server as server_mod

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3
EXIT_ASSERTION = 4


def _print_kv(pairs) -> None:
    for key, value in pairs:
        if isinstance(value, float):
            value = _format_float(value)
        print(f"{key} {value}")


def _cmd_constants(_args) -> int:
    c = compute_constants()
    _print_kv([
        ("d", c.d),
        ("t_star", c.t_star),
        ("t_bar", c.t_bar),
        ("psi", c.psi),
        ("psi_deg", math.degrees(c.psi)),
        ("psi_bar", c.psi_bar),
        ("psi_bar_deg", math.degrees(c.psi_bar)),
    ])
    return EXIT_OK


def _cmd_fit(args) -> int:
    try:
        text = Path(args.points_file).read_text()
    except OSError as e:
        print(f"error: cannot read {args.points_file}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        doc = parse_points_text(text)
        if args.clamp is not None:
            parts = args.clamp.split(",")
            if len(parts) != 2:
                raise DomainError("--clamp expects two comma-separated angles in degrees")
            doc = type(doc)(points=doc.points,
                            clamp_deg=(float(parts[0]), float(parts[1])))
        solution, report, svg = run_fit(doc, spacing=args.spacing,
                                        labels=not args.no_labels,
                                        angle_tol=args.angle_tol,
                                        max_sweeps=args.max_sweeps)
    except (DomainError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except NoConvergence as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE

    if args.report:
        Path(args.report).write_text(dumps_deterministic(report))
    if args.svg:
        Path(args.svg).write_text(svg)
    _print_kv([
        ("total_energy", report["total_energy"]),
        ("converged", str(report["converged"]).lower()),
        ("sweeps", report["sweeps"]),
    ])
    for node in report["per_node"]:
        status = "G2" if node["g2_within_tol"] else "jump"
        cert = "certified" if node["certified_by_psi"] else "uncertified"
        print(f"node {node['node_index']} psi_deg {_format_float(node['psi_deg'])} "
              f"{cert} {status}")
    return EXIT_OK if solution.converged else EXIT_NO_CONVERGENCE


def _cmd_hermite(args) -> int:
    alpha, beta = args.alpha, args.beta
    if args.deg:
        alpha, beta = math.radians(alpha), math.radians(beta)
    try:
        curve = hermite_curve((0.0, 0.0), alpha, (1.0, 0.0), beta)
    except (DomainError, NoConvergence) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    record = scurve_record(curve)
    _print_kv([(k, record[k]) for k in
               ("kind", "params_t1", "params_t2", "breadth", "energy",
                "kappa_start", "kappa_end")
               if record[k] is not None])
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = verify_mod.run_all(grid=args.grid)
    failed = 0
    for r in results:
        status = "ok " if r.ok else "FAIL"
        detail = f"  {r.detail}" if r.detail else ""
        print(f"[{status}] {r.name}: {_format_float(r.value)} "
              f"(threshold {_format_float(r.threshold)}){detail}")
        failed += 0 if r.ok else 1
    if failed:
        print(f"{failed} sweep(s) failed", file=sys.stderr)
        return EXIT_ASSERTION
    return EXIT_OK


def _cmd_serve(args) -> int:
    static = args.static
    print(f"serving on http://127.0.0.1:{args.port}/api"
          + (f" (static: {static})" if static else ""))
    try:
        server_mod.serve(args.port, static)
    except KeyboardInterrupt:
        pass
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elastic-splines",
        description="Minimal bending-energy interpolation with elastica s-curves")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a spline through a points file")
    p_fit.add_argument("points_file")
    p_fit.add_argument("--svg", help="write an SVG rendering here")
    p_fit.add_argument("--report", help="write the JSON fit report here")
    p_fit.add_argument("--clamp", help="end tangent directions 'deg1,deg2'")
    p_fit.add_argument("--spacing", type=float, help="polyline sample spacing")
    p_fit.add_argument("--no-labels", action="store_true", help="omit SVG node labels")
    p_fit.add_argument("--angle-tol", type=float, default=1e-10,
                       help="per-sweep convergence tolerance on node angles")
    p_fit.add_argument("--max-sweeps", type=int, default=500,
                       help="optimizer sweep budget")
    p_fit.set_defaults(func=_cmd_fit)

    p_h = sub.add_parser("hermite", help="solve one two-point Hermite problem")
    p_h.add_argument("--alpha", type=float, required=True, help="start chord angle")
    p_h.add_argument("--beta", type=float, required=True, help="end chord angle")
    p_h.add_argument("--deg", action="store_true", help="angles are in degrees")
    p_h.set_defaults(func=_cmd_hermite)

    p_c = sub.add_parser("constants", help="print the elastica constants")
    p_c.set_defaults(func=_cmd_constants)

    p_v = sub.add_parser("verify", help="run the invariant sweeps and print margins")
    p_v.add_argument("--grid", type=int, default=100, help="lattice size per axis")
    p_v.set_defaults(func=_cmd_verify)

    p_s = sub.add_parser("serve", help="serve the JSON solver endpoint")
    p_s.add_argument("--port", type=int, required=True)
    p_s.add_argument("--static", help="directory with the editor bundle")
    p_s.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AssertionError as e:
        print(f"internal assertion: {e}", file=sys.stderr)
        return EXIT_ASSERTION


if __name__ == "__main__":
    sys.exit(main())
