"""Pinched congruence surfaces: exact invariants, certified criterion sums,
and the trace-formula identity at desk scale."""

__version__ = "0.1.0"

from .certified import CertifiedValue
from .congruence import (
    CongruenceSurfaceData,
    IntegerMatrix2,
    index_d,
    is_in_gamma,
    min_hyperbolic_trace,
    search_size_estimate,
    surface_data,
    witness_matrix,
)
from .convergence import (
    CompactedSurface,
    GeodesicClass,
    PinchLadder,
    Schedule,
    ScheduleReport,
    ScheduleRow,
    bs_ratio,
    classify_schedule,
    compacted_surface,
    harmonic_sum,
    other_geodesic_floor,
    pinch_ladder,
    plancherel_normalized,
    plancherel_sum,
    sandwich_bounds,
    short_spectrum,
    validity_check,
)
from .errors import (
    DomainError,
    InternalInvariantViolation,
    NotHyperbolic,
    NumericsError,
    PinchlabError,
    ValidityError,
)
from .hyperbolic import (
    STANDARD_COLLAR_RADIUS,
    collar_width,
    collar_width_at_radius,
    crossing_length_bound,
    cylinder_volume,
    distortion_bound,
    injrad_from_collar,
    length_from_trace,
    thin_part_upper_bound,
)
from .quadrature import adaptive_integral
from .traceformula import (
    TestFunction,
    TransformProfile,
    VanishingRow,
    bump,
    g_transform,
    geometric_side,
    h_transform,
    plancherel_integral,
    transform_profile,
    vanishing_series,
)

__all__ = [
    "CertifiedValue",
    "CompactedSurface",
    "CongruenceSurfaceData",
    "DomainError",
    "GeodesicClass",
    "IntegerMatrix2",
    "InternalInvariantViolation",
    "NotHyperbolic",
    "NumericsError",
    "PinchLadder",
    "PinchlabError",
    "STANDARD_COLLAR_RADIUS",
    "Schedule",
    "ScheduleReport",
    "ScheduleRow",
    "TestFunction",
    "TransformProfile",
    "ValidityError",
    "VanishingRow",
    "adaptive_integral",
    "bs_ratio",
    "bump",
    "classify_schedule",
    "collar_width",
    "collar_width_at_radius",
    "compacted_surface",
    "crossing_length_bound",
    "cylinder_volume",
    "distortion_bound",
    "g_transform",
    "geometric_side",
    "h_transform",
    "harmonic_sum",
    "index_d",
    "injrad_from_collar",
    "is_in_gamma",
    "length_from_trace",
    "min_hyperbolic_trace",
    "other_geodesic_floor",
    "pinch_ladder",
    "plancherel_integral",
    "plancherel_normalized",
    "plancherel_sum",
    "sandwich_bounds",
    "search_size_estimate",
    "short_spectrum",
    "surface_data",
    "thin_part_upper_bound",
    "transform_profile",
    "validity_check",
    "vanishing_series",
    "witness_matrix",
]
