"""Numerical laboratory for spacelike curves with null frame directions.

Synthesizes curves in Minkowski 4-space from curvature profiles by
integrating the frame equations, classifies their k-type slant-helix
structure through closed-form conditions with explicit axis vectors, and
cross-examines every verdict with a nullspace oracle that knows nothing
about the closed forms.
"""

from .axis import (AxisCandidate, AxisValidation, ambient_axis,
                    assemble_axis, validate_axis)
from .calculus import (antiderivative, cumulative_integral, derivative,
                       grid_derivative, make_cumulative, pointwise_derivative)
from .classifier import (ClassificationReport, CheckResult, FittedConstant,
                         OracleResult, Tolerances, Verdict, classify_profile,
                         oracle_detect, pn_implication_closure,
                         pn_type0_check, pn_type1_check, pn_type1_axis,
                         pn_type2_axis, pn_type3_check, pn_type0_axes,
                         psn_implication_closure, psn_type0_check,
                         psn_type1_axis, psn_type1_check, psn_type2_axis,
                         psn_type2_check, psn_type3_check)
from .errors import (ConfigError, DegenerateAxisError, EvaluationError,
                     ExpressionError, FrameError, GridMismatchError,
                     IntegrationError, LclError, OutOfDomainError,
                     ProfileError, QuadratureError)
from .expr import parse_expression
from .frames import (Frame, FrameKind, canonical_frame, frenet_matrix,
                     frenet_rhs, gram_matrix, gram_residual, gram_targets)
from .hyperbolic import (SphereFit, TauForm, closed_form_center,
                         fit_pseudohyperbolic, h3_membership, h3_ratio_check,
                         h3_type1_nonexistence, h3_type2_tau_form,
                         h3_type3_residual, make_h3_type2_profile)
from .integrator import (CurveTrace, integrate_frame, project_frame,
                         resample_curvatures, write_trace_csv)
from .minkowski import (CausalCharacter, Vec4, causal_character,
                        lorentz_norm, metric, nullspace_min_singular, pairing)
from .profiles import CurvatureProfile, SampleTable, load_profile, save_profile
from .suite import (DEFAULT_SEED, Fixture, default_suite, fixtures_from_json,
                    load_suite)
from .verifier import (FixtureResult, SuiteSummary, render_table,
                       run_theorem_suite)

__version__ = "0.1.0"

__all__ = [
    "AxisCandidate", "AxisValidation", "CausalCharacter", "CheckResult",
    "ClassificationReport", "ConfigError", "CurvatureProfile", "CurveTrace",
    "DEFAULT_SEED", "DegenerateAxisError", "EvaluationError",
    "ExpressionError", "Fixture", "FittedConstant", "Frame", "FrameError",
    "FrameKind", "GridMismatchError", "IntegrationError", "LclError",
    "OracleResult", "OutOfDomainError", "ProfileError", "QuadratureError",
    "SampleTable", "SphereFit", "SuiteSummary", "FixtureResult", "TauForm",
    "Tolerances", "Vec4", "Verdict", "ambient_axis", "antiderivative",
    "assemble_axis",
    "canonical_frame", "causal_character", "classify_profile",
    "closed_form_center", "cumulative_integral", "default_suite",
    "derivative", "fit_pseudohyperbolic", "fixtures_from_json",
    "frenet_matrix", "frenet_rhs", "gram_matrix", "gram_residual",
    "gram_targets", "grid_derivative", "h3_membership", "h3_ratio_check",
    "h3_type1_nonexistence", "h3_type2_tau_form", "h3_type3_residual",
    "integrate_frame", "load_profile", "load_suite", "lorentz_norm",
    "make_cumulative",
    "make_h3_type2_profile", "metric", "nullspace_min_singular",
    "oracle_detect", "pairing", "parse_expression", "pn_implication_closure",
    "pn_type0_axes", "pn_type0_check", "pn_type1_axis", "pn_type1_check",
    "pn_type2_axis", "pn_type3_check", "pointwise_derivative",
    "project_frame", "psn_implication_closure", "psn_type0_check",
    "psn_type1_axis", "psn_type1_check", "psn_type2_axis", "psn_type2_check",
    "psn_type3_check", "render_table", "resample_curvatures",
    "run_theorem_suite", "save_profile", "validate_axis", "write_trace_csv",
]
