"""Resultants over F_q[t] and valuations of root differences."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import determinant
from .matrix import PolyMatrix
from .newton import NewtonPolygon, newton_polygon
from .poly import Poly
from .xpoly import XPoly


def sylvester(P: XPoly, Q: XPoly) -> list:
    """Sylvester matrix rows (entries are whatever coefficient type P, Q carry)."""
    m, n = P.degree(), Q.degree()
    N = m + n
    zero = P.coeffs[0] * 0 if P.coeffs else None
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(reversed(P.coeffs)) + [zero] * (N - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(reversed(Q.coeffs)) + [zero] * (N - n - 1 - i))
    return rows


def _bivariate_shift(P: XPoly):
    """Coefficients of P(X + Z) as polynomials in Z over F_q[t] (list of XPoly in Z)."""
    F = P.F
    out = []
    deg = P.degree()
    for j in range(deg + 1):
        # coefficient of X^j: sum_i c_i * binom(i, j) Z^{i-j}
        acc = XPoly(F)
        for i in range(j, deg + 1):
            b = _binom_mod(i, j, F.p)
            if b and P.coeffs[i]:
                acc = acc + XPoly(F, [Poly.zero(F)] * (i - j) + [P.coeffs[i].scale(F.from_int(b))])
        out.append(acc)
    return out


def _binom_mod(n: int, k: int, p: int) -> int:
    # Lucas' theorem
    r = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        r = r * math.comb(a, b) % p
        n //= p
        k //= p
    return r


def resultant_x(P: XPoly, Q: XPoly) -> XPoly:
    """Res_X(P(X), Q(X + Z)) as a polynomial in Z over F_q[t].

    The Sylvester determinant has entries in F_q[t][Z]; it is evaluated
    division-free by the Kronecker substitution Z -> t^D, with D larger than
    the t-degree of every coefficient of the answer, and then unpacked.
    """
    if P.is_zero() or Q.is_zero():
        raise ValueError("resultant with a zero polynomial")
    F = P.F
    m, n = P.degree(), Q.degree()
    if m == 0 and n == 0:
        return XPoly(F, [Poly.one(F)])
    dP = max(c.degree() for c in P.coeffs if c)
    dQ = max(c.degree() for c in Q.coeffs if c)
    D = n * dP + m * dQ + 1
    tD = Poly.t(F, D)
    Pz = [XPoly(F, [c]) for c in P.coeffs]
    Qz = _bivariate_shift(Q)
    # substitute Z = t^D
    Pk = XPoly(F, [c(tD) for c in Pz])
    Qk = XPoly(F, [c(tD) for c in Qz])
    if m == 0:
        return XPoly(F, [P.coeffs[0] ** n]) if n else XPoly(F, [Poly.one(F)])
    rows = sylvester(Pk, Qk)
    rows = [[x if x is not None else Poly.zero(F) for x in r] for r in rows]
    det = determinant(PolyMatrix.from_rows(F, rows))
    # unpack base t^D
    cs = det.coeffs
    zc = [Poly(F, cs[i : i + D]) for i in range(0, len(cs), D)]
    return XPoly(F, zc)


@dataclass(frozen=True)
class DiffValuations:
    """Valuations v_t(beta - alpha) over root pairs; ``coincident`` counts exact equalities."""

    polygon: NewtonPolygon
    coincident: int

    def minimal(self):
        """Smallest valuation among distinct root pairs (inf if there are none)."""
        return self.polygon.segments[0][0] if self.polygon.segments else math.inf


def diff_valuations(P1: XPoly, P2: XPoly) -> DiffValuations:
    """Newton data of the root differences of P1 and P2.

    The roots are taken to be the zeros of P1 and P2 themselves (pass
    X - lambda, or a polynomial whose roots are eigenvalues).  The Z-polynomial
    Res_X(P1(X), P2(X + Z)) vanishes exactly at Z = beta - alpha; after removing
    the power of Z (exact coincidences) its reversal has Newton slopes equal to
    the valuations of the differences.
    """
    if P1.degree() == 1 and P1.lc() == Poly.one(P1.F):
        # Res_X(X - lam, P2(X + Z)) = P2(lam + Z)
        R = P2.translate(-P1.coeff(0))
    else:
        R = resultant_x(P1, P2)
    if R.is_zero():
        raise ArithmeticError("resultant vanishes identically")
    z = 0
    while R.coeffs[z].is_zero():
        z += 1
    trimmed = XPoly(R.F, R.coeffs[z:])
    return DiffValuations(newton_polygon(trimmed.reversed()), z)
