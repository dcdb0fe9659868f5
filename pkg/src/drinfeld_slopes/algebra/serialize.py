"""JSON encoding of polynomials, X-polynomials and matrices."""

from __future__ import annotations

import json

from .field import FieldSpec
from .matrix import PolyMatrix
from .poly import Poly
from .xpoly import XPoly


def poly_to_json(f: Poly) -> list:
    F = f.F
    if F.e == 1:
        return list(f.coeffs)
    return [list(F.coords(c)) for c in f.coeffs]


def poly_from_json(F: FieldSpec, data) -> Poly:
    if F.e == 1:
        return Poly(F, [int(c) % F.p for c in data])
    return Poly(F, [F.from_coords(c) for c in data])


def xpoly_to_json(P: XPoly) -> list:
    return [poly_to_json(c) for c in P.coeffs]


def xpoly_from_json(F: FieldSpec, data) -> XPoly:
    return XPoly(F, [poly_from_json(F, c) for c in data])


def matrix_to_json(M: PolyMatrix) -> list:
    return [[poly_to_json(x) for x in row] for row in M.to_rows()]


def matrix_from_json(F: FieldSpec, data) -> PolyMatrix:
    rows = [[poly_from_json(F, x) for x in row] for row in data]
    if not rows:
        return PolyMatrix.zeros(F, 0, 0)
    return PolyMatrix.from_rows(F, rows)


def dumps_matrix(M: PolyMatrix) -> str:
    return json.dumps(matrix_to_json(M), separators=(",", ":"))
