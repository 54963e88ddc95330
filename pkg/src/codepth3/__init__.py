"""Classification of local rings of codepth at most 3 by their Tor algebra class."""

from .classify import (
    PQR,
    RationalSeries,
    RingClass,
    bass_series,
    classify_from_invariants,
    compute_pqr,
    poincare_series,
    series_crosscheck,
)
from .invariants import InvariantBundle, ReductionConfig, ReductionFailure, UnsupportedInputError
from .parse import InputSpec, ParseError, parse_input
from .pipeline import KEYS, DataTable, data_for_spec, tor_alg_class, tor_alg_data
from .poly import GF, QQ, Polynomial, PolynomialRing

__all__ = [
    "DataTable", "GF", "InputSpec", "InvariantBundle", "KEYS", "PQR", "ParseError",
    "Polynomial", "PolynomialRing", "QQ", "RationalSeries", "ReductionConfig",
    "ReductionFailure", "RingClass", "UnsupportedInputError", "bass_series",
    "classify_from_invariants", "compute_pqr", "data_for_spec", "parse_input",
    "poincare_series", "series_crosscheck", "tor_alg_class", "tor_alg_data",
]
