"""Frobenius complexes of affine monoids, their Betti numbers and Poincare series."""

from .complexes import GF2, QQ, BettiVector, Field, SimplicialComplex, euler_characteristic, order_complex, reduced_betti
from .errors import InvalidInputError
from .extension import ExtElement, ExtMonoid, adjoin, ext_leq, ext_open_interval, numerical_realization
from .frobenius import (
    betti_table,
    check_suspension_prop,
    frobenius_betti,
    predicted_ext_betti,
    tor_betti,
    verify_extension,
)
from .monoid import AffineMonoid, contains, ell_rho, elements_up_to, is_reducible, open_interval, scale, subtract
from .series import (
    GradedSeries,
    RationalSeriesExpr,
    closed_form,
    direct_series,
    expand_closed_form,
    extension_series,
    substitute_scale,
)

__version__ = "0.1.0"

__all__ = [
    "GF2",
    "QQ",
    "AffineMonoid",
    "BettiVector",
    "ExtElement",
    "ExtMonoid",
    "Field",
    "GradedSeries",
    "InvalidInputError",
    "RationalSeriesExpr",
    "SimplicialComplex",
    "adjoin",
    "betti_table",
    "check_suspension_prop",
    "closed_form",
    "contains",
    "direct_series",
    "ell_rho",
    "elements_up_to",
    "euler_characteristic",
    "expand_closed_form",
    "ext_leq",
    "ext_open_interval",
    "extension_series",
    "frobenius_betti",
    "is_reducible",
    "numerical_realization",
    "open_interval",
    "order_complex",
    "predicted_ext_betti",
    "reduced_betti",
    "scale",
    "substitute_scale",
    "subtract",
    "tor_betti",
    "verify_extension",
]
