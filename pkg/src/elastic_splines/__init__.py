"""Restricted elastic splines.

Interpolating curves of minimal bending energy whose pieces are s-curve
segments of rectangular elastica with chord angles bounded by pi/2, plus
G2 continuity certification against the stencil-angle threshold Psi.
"""

from .elastica import (ChordAngles, ElasticaConstants, GammaForm, JacobianDQ,
                       ParamInterval, chord_angles, chord_length,
                       compute_constants, elastica_curvature, elastica_point,
                       elastica_tangent, gamma_form, jacobian_q,
                       normalized_energy, segment_energy, w_function, xi)
from .errors import (CoincidentPoints, DomainError, EmptyFeasible,
                     NoConvergence, NotApplicable)
from .hermite import (HermiteDiagnostics, SCurve, UnitTangent, beta_star,
                      cross_check_gamma, energy_e1, grad_e1, invert_q,
                      optimal_scurve, reduce_to_canonical)
from .spline import (AngularInterval, G2NodeRecord, NodeState, SplineProblem,
                     SplineSolution, feasible_tangent_interval, g2_report,
                     initialize_tangents, optimize, stencil_angles,
                     total_energy)
from .curveio import (PointsDocument, parse_points_text, run_fit,
                      sample_segment, render_svg, dumps_deterministic)

__all__ = [
    "ChordAngles", "ElasticaConstants", "GammaForm", "JacobianDQ",
    "ParamInterval", "chord_angles", "chord_length", "compute_constants",
    "elastica_curvature", "elastica_point", "elastica_tangent", "gamma_form",
    "jacobian_q", "normalized_energy", "segment_energy", "w_function", "xi",
    "CoincidentPoints", "DomainError", "EmptyFeasible", "NoConvergence",
    "NotApplicable",
    "HermiteDiagnostics", "SCurve", "UnitTangent", "beta_star",
    "cross_check_gamma", "energy_e1", "grad_e1", "invert_q", "optimal_scurve",
    "reduce_to_canonical",
    "AngularInterval", "G2NodeRecord", "NodeState", "SplineProblem",
    "SplineSolution", "feasible_tangent_interval", "g2_report",
    "initialize_tangents", "optimize", "stencil_angles", "total_energy",
    "PointsDocument", "parse_points_text", "run_fit", "sample_segment",
    "render_svg", "dumps_deterministic",
]

__version__ = "0.1.0"
