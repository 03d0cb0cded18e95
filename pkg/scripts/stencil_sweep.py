"""Sweep a corner's stencil angle through the certification threshold.

Fits a three-point instance whose middle turn angle psi grows from 0 to
just short of pi/2 and tabulates the interior chord angles and curvature
jump, showing certified G² below Psi and the pinned-angle regime above it.

Usage: python scripts/stencil_sweep.py [steps]
"""

import math
import sys

from elastic_splines import SplineProblem, compute_constants, g2_report, optimize


def main():
    steps = int(sys.argv[1]) if len(sys.argv) > 1 else 24
    psi_threshold = compute_constants().psi
    print(f"threshold Psi = {math.degrees(psi_threshold):.4f} deg")
    print(f"{'psi_deg':>9} {'alpha_in':>10} {'alpha_out':>10} "
          f"{'rel_jump':>10}  certified")
    for k in range(steps):
        psi = (k / (steps - 1)) * (math.pi / 2 - 1e-3)
        points = ((0.0, 0.0), (1.0, 0.0),
                  (1.0 + math.cos(psi), math.sin(psi)))
        solution = optimize(SplineProblem(points=points))
        rec = g2_report(solution)[0]
        scale = max(max(abs(s.kappa_start), abs(s.kappa_end))
                    for s in solution.segments) or 1.0
        print(f"{math.degrees(rec.psi):9.3f} {rec.alpha_in:10.6f} "
              f"{rec.alpha_out:10.6f} {abs(rec.kappa_jump) / scale:10.2e}  "
              f"{'yes' if rec.certified_by_psi else 'no '}")


if __name__ == "__main__":
    main()
