"""Numerical laboratory for the hyperbolic splitting of an analytically
perturbed cat map: extended-precision map evaluation, expansion/contraction
rates with their invariant directions, fixed-point manifold traces, and
finite-difference regularity scans.
"""

__version__ = "0.1.0"

from .blaschke import (
    ConeReport,
    MapParams,
    TorusPoint,
    apply,
    apply_inverse,
    deformation_f,
    deformation_f_prime,
    fixed_point,
    fixed_point_trace,
    jacobian,
    reference_params,
    torus_dist,
    verify_cone_condition,
)
from .extprec import (
    DEFAULT_PRECISION,
    DegenerateVectorError,
    DomainError,
    Mat2,
    ParameterError,
    PrecisionMixError,
    Real,
    Vec2,
    format_sci,
    get_precision,
    mod1,
    normalize,
    precision,
    real,
    set_precision,
    torus_delta,
    ulp_scale,
)
from .manifolds import (
    ManifoldCurve,
    NonHyperbolicError,
    SpacingUnreachableError,
    eigen_directions_at_fixed_point,
    eigen_rates_at_fixed_point,
    trace_manifold,
)
from .regularity import (
    DiffRecord,
    GridSpec,
    PointScan,
    PrecisionFloorError,
    ScanResult,
    decade_offsets,
    diff1,
    diff2,
    expansion_grid,
    grid_points,
    h_scan,
    highlight_points,
    min_offset,
    point_scan,
)
from .splitting import (
    SplittingSample,
    compute_sample,
    lyapunov_exponent_orbit,
    splitting_residual,
    stable_data,
    unstable_data,
)
from .verify import CheckResult, format_report, run_all

__all__ = [
    "__version__",
    "ConeReport",
    "MapParams",
    "TorusPoint",
    "apply",
    "apply_inverse",
    "deformation_f",
    "deformation_f_prime",
    "fixed_point",
    "fixed_point_trace",
    "jacobian",
    "reference_params",
    "torus_dist",
    "verify_cone_condition",
    "DEFAULT_PRECISION",
    "DegenerateVectorError",
    "DomainError",
    "Mat2",
    "ParameterError",
    "PrecisionMixError",
    "Real",
    "Vec2",
    "format_sci",
    "get_precision",
    "mod1",
    "normalize",
    "precision",
    "real",
    "set_precision",
    "torus_delta",
    "ulp_scale",
    "ManifoldCurve",
    "NonHyperbolicError",
    "SpacingUnreachableError",
    "eigen_directions_at_fixed_point",
    "eigen_rates_at_fixed_point",
    "trace_manifold",
    "DiffRecord",
    "GridSpec",
    "PointScan",
    "PrecisionFloorError",
    "ScanResult",
    "decade_offsets",
    "diff1",
    "diff2",
    "expansion_grid",
    "grid_points",
    "h_scan",
    "highlight_points",
    "min_offset",
    "point_scan",
    "SplittingSample",
    "compute_sample",
    "lyapunov_exponent_orbit",
    "splitting_residual",
    "stable_data",
    "unstable_data",
    "CheckResult",
    "format_report",
    "run_all",
]
