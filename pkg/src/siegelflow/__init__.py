"""Chordal infinitesimal generators on the Siegel half-space and unit ball.

Numerical toolkit for the hyperbolic geometry of the Siegel upper half-space:
Bergman metric norms, vertical geodesics and slice decompositions, sampled
generator-class membership with capacity estimation, Loewner-type flow
integration, and a deterministic verification suite.
"""

from .analysis import (
    CAPACITY_DEFAULTS,
    INEQUALITY_SLACK,
    CapacityEstimate,
    InequalityReport,
    MembershipReport,
    SliceReport,
    capacity_additivity_check,
    check_pointwise_1d,
    estimate_capacity_1d,
    horosphere_inequality_check,
    membership_ball,
    membership_siegel,
    slice_membership,
)
from .domains import (
    INTERIOR_MARGIN,
    Domain,
    DomainPoint,
    MetricMatrix,
    TangentVector,
    ball_point,
    bergman_matrix,
    cayley_to_ball,
    cayley_to_siegel,
    disc_point,
    format_complex,
    half_plane_point,
    horosphere_radius,
    hyperbolic_norm,
    parse_complex,
    poisson,
    siegel_point,
)
from .errors import (
    ArityMismatchError,
    BoundViolation,
    CoverageGap,
    DomainViolation,
    ExpressionSyntaxError,
    FieldEvaluationError,
    HalfPlaneConditionWarning,
    MonotonicityViolation,
    SiegelflowError,
    StepSizeUnderflow,
    UnknownIdentifierError,
)
from .fields import (
    DiscreteMeasure,
    VectorField,
    berkson_porta,
    builtin,
    builtin_names,
    cauchy_transform,
    eval_field,
    parse_field,
    pushforward_to_ball,
    pushforward_to_halfspace,
    zero_field,
)
from .flows import (
    DEFAULT_TOL,
    DisplacementBoundReport,
    HerglotzField,
    HorosphereImageReport,
    IterationDiagnostic,
    MonotonicityReport,
    ResidualReport,
    Trajectory,
    displacement_bound_check,
    displacement_field,
    displacement_integral,
    extract_capacity,
    flow_field,
    flow_map,
    horosphere_image_check,
    integrate_autonomous,
    integrate_fixed_steps,
    integrate_loewner,
    iterate_map,
    julia_monotonicity,
    semigroup_check,
)
from .geodesics import (
    GeodesicParam,
    SliceDecomposition,
    decompose,
    geodesic_point,
    geodesic_through,
    orthogonal_norm,
    project,
    slice_field,
    slice_value,
    split_tangent,
    tangential_norm,
)
from .verify import RunReport, SUITE_NAMES, run, run_suite

__version__ = "0.1.0"

__all__ = [
    "ArityMismatchError",
    "BoundViolation",
    "CAPACITY_DEFAULTS",
    "CapacityEstimate",
    "CoverageGap",
    "DEFAULT_TOL",
    "DiscreteMeasure",
    "DisplacementBoundReport",
    "Domain",
    "DomainPoint",
    "DomainViolation",
    "ExpressionSyntaxError",
    "FieldEvaluationError",
    "GeodesicParam",
    "HalfPlaneConditionWarning",
    "HerglotzField",
    "HorosphereImageReport",
    "INEQUALITY_SLACK",
    "INTERIOR_MARGIN",
    "InequalityReport",
    "IterationDiagnostic",
    "MembershipReport",
    "MetricMatrix",
    "MonotonicityReport",
    "MonotonicityViolation",
    "ResidualReport",
    "RunReport",
    "SUITE_NAMES",
    "SiegelflowError",
    "SliceDecomposition",
    "SliceReport",
    "StepSizeUnderflow",
    "TangentVector",
    "Trajectory",
    "UnknownIdentifierError",
    "VectorField",
    "ball_point",
    "bergman_matrix",
    "berkson_porta",
    "builtin",
    "builtin_names",
    "capacity_additivity_check",
    "cauchy_transform",
    "cayley_to_ball",
    "cayley_to_siegel",
    "check_pointwise_1d",
    "decompose",
    "disc_point",
    "displacement_bound_check",
    "displacement_field",
    "displacement_integral",
    "estimate_capacity_1d",
    "eval_field",
    "extract_capacity",
    "flow_field",
    "flow_map",
    "format_complex",
    "geodesic_point",
    "geodesic_through",
    "half_plane_point",
    "horosphere_image_check",
    "horosphere_inequality_check",
    "horosphere_radius",
    "hyperbolic_norm",
    "integrate_autonomous",
    "integrate_fixed_steps",
    "integrate_loewner",
    "iterate_map",
    "julia_monotonicity",
    "membership_ball",
    "membership_siegel",
    "orthogonal_norm",
    "parse_complex",
    "parse_field",
    "poisson",
    "project",
    "pushforward_to_ball",
    "pushforward_to_halfspace",
    "run",
    "run_suite",
    "semigroup_check",
    "siegel_point",
    "slice_field",
    "slice_membership",
    "slice_value",
    "split_tangent",
    "tangential_norm",
    "zero_field",
]
