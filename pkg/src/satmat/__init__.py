"""Exact computation and verification for saturation problems on forbidden 0-1 submatrices."""

from .matrix import (
    AllZeroPatternError,
    Matrix,
    MatrixFormatError,
    Occurrence,
    Pattern,
    HostMatrix,
    Position,
    contains,
    contains_using,
    enumerate_occurrences,
    find_occurrence,
    iter_occurrences,
    parse_matrix,
    serialize_matrix,
    transform,
)
from .saturation import (
    Budget,
    SearchResult,
    ex_exact,
    greedy_complete,
    is_avoiding,
    is_saturating,
    is_semisaturating,
    sat_exact,
    ssat_exact,
)

__version__ = "0.1.0"
