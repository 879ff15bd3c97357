"""Segre zeta functions of homogeneous ideals, computed exactly from
Newton-Okounkov bodies."""

from .errors import SegreZetaError
from .exactnum import PolyT, RationalFunctionT, rf_normalize, rf_to_series
from .idealfile import parse_ideal
from .polyring import HomogeneousIdeal, MultiPoly
from .segre import (
    SegreDegrees,
    ZetaComputation,
    rational_index,
    segre_zeta,
    sigma_by_interpolation,
    zeta_extension_check,
)
from .valuation import ValuationConfig

__version__ = "0.1.0"

__all__ = [
    "HomogeneousIdeal",
    "MultiPoly",
    "PolyT",
    "RationalFunctionT",
    "SegreDegrees",
    "SegreZetaError",
    "ValuationConfig",
    "ZetaComputation",
    "parse_ideal",
    "rational_index",
    "rf_normalize",
    "rf_to_series",
    "segre_zeta",
    "sigma_by_interpolation",
    "zeta_extension_check",
]
