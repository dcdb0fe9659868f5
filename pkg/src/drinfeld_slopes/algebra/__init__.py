"""Exact arithmetic over F_q, F_q[t], truncated series and polynomial matrices."""

from .field import FieldSpec
from .linalg import AtLeast, charpoly_reciprocal, determinant, elementary_divisors
from .matrix import PolyMatrix
from .newton import NewtonPolygon, newton_polygon, slope_multiplicity
from .poly import INF, Poly, gcd, is_irreducible, xgcd
from .resultant import DiffValuations, diff_valuations, resultant_x
from .series import TruncSeries
from .xpoly import XPoly


def t_valuation(f: Poly):
    """Index of the lowest nonzero coefficient; infinity for the zero polynomial."""
    return f.valuation()


__all__ = [
    "AtLeast", "DiffValuations", "FieldSpec", "INF", "NewtonPolygon", "Poly",
    "PolyMatrix", "TruncSeries", "XPoly", "charpoly_reciprocal", "determinant",
    "diff_valuations", "elementary_divisors", "gcd", "is_irreducible",
    "newton_polygon", "resultant_x", "slope_multiplicity", "t_valuation", "xgcd",
]
