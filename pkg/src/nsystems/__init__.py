"""Exact computations with n-systems from parametric geometry of numbers."""

from .errors import (
    BadParameters,
    DimensionMismatch,
    EmptyWindow,
    InfeasibleStep,
    InvalidSystem,
    NotAnNSystem,
    NotProper,
    NotSorted,
    NSystemError,
    OutOfDomain,
    ParseError,
    PreconditionViolated,
    ZeroSum,
)
from .paths import (
    EXACT,
    GENERALIZED,
    PLPath,
    SystemClass,
    ValidationReport,
    Violation,
    division_numbers,
    plpath_eval,
    switch_numbers,
    validate_exact_nsystem,
    validate_generalized,
    validate_rigid,
    validate_system,
)
from .rational import format_rational, parse_rational
from .spectrum import (
    LinearMap,
    SelfSimilarSystem,
    SimplexPoint,
    SpectrumPoint,
    coordinatewise_min,
    extreme_points,
    hull_contains,
    limit_set_vertices,
    mu_estimate,
    mu_exact,
    normalize,
    self_similar_eval,
    simplex_vertex,
)
from .serialize import emit_map, emit_system, parse_map, parse_system

__version__ = "0.1.0"
