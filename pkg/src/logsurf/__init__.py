"""Exact Zariski decompositions, log resolutions and canonical-degree bounds."""

from .bmy import LogInvariants, curve_invariants, discriminant_inequality, main_quadratic
from .bounds import (
    BoundReport,
    NormalizedInvariants,
    degree_bound_d_rational,
    degree_bound_general,
    degree_bound_smooth,
    normalized_invariants,
    p2_corollary,
)
from .errors import (
    InconsistentDatumError,
    InputError,
    InvariantViolation,
    LogsurfError,
    ModelInconsistencyError,
    PreconditionError,
)
from .intervals import RationalInterval, sqrt_interval
from .lattice import Cycle, Divisor, SurfaceModel, intersect, is_negative_definite
from .resolution import (
    BlowupCenter,
    ResolutionDatum,
    Stage,
    build_resolved_lattice,
    check_adjunction,
    make_datum,
)
from .verdicts import Status, Verdict
from .zariski import ZariskiResult, zariski_absolute, zariski_oracle, zariski_support

__version__ = "0.1.0"

__all__ = [
    "BlowupCenter",
    "BoundReport",
    "Cycle",
    "Divisor",
    "InconsistentDatumError",
    "InputError",
    "InvariantViolation",
    "LogInvariants",
    "LogsurfError",
    "ModelInconsistencyError",
    "NormalizedInvariants",
    "PreconditionError",
    "RationalInterval",
    "ResolutionDatum",
    "Stage",
    "Status",
    "SurfaceModel",
    "Verdict",
    "ZariskiResult",
    "build_resolved_lattice",
    "check_adjunction",
    "curve_invariants",
    "degree_bound_d_rational",
    "degree_bound_general",
    "degree_bound_smooth",
    "discriminant_inequality",
    "intersect",
    "is_negative_definite",
    "main_quadratic",
    "make_datum",
    "normalized_invariants",
    "p2_corollary",
    "sqrt_interval",
    "zariski_absolute",
    "zariski_oracle",
    "zariski_support",
]
