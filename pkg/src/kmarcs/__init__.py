"""KM-arcs in PG(2, 2^h) and the F2-linear clubs behind them."""

from .arcs import KMArc, LineSpectrum, FamilyParams, verify_km, line_spectrum
from .errors import KmArcError, VerificationFailure
from .gf2field import Field, FieldSpec, field_for, find_modulus

__all__ = [
    "Field",
    "FieldSpec",
    "FamilyParams",
    "KMArc",
    "KmArcError",
    "LineSpectrum",
    "VerificationFailure",
    "field_for",
    "find_modulus",
    "line_spectrum",
    "verify_km",
]

__version__ = "0.1.0"
