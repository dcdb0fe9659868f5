"""Polynomials in an outer variable X with coefficients in F_q[t]."""

from __future__ import annotations

from .field import FieldSpec
from .poly import Poly


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return tuple(cs)


class XPoly:
    """Element of F_q[t][X]; ``coeffs[i]`` is the coefficient of X^i."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F: FieldSpec, coeffs=()):
        self.F = F
        self.coeffs = _trim(coeffs)

    @classmethod
    def from_ints(cls, F, rows):
        """Build from nested integer lists (X-major, t ascending inside)."""
        return cls(F, [Poly.from_ints(F, r) for r in rows])

    @classmethod
    def linear_root(cls, lam: Poly) -> "XPoly":
        """The polynomial X - lam."""
        return cls(lam.F, [-lam, Poly.one(lam.F)])

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Poly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Poly.zero(self.F)

    def lc(self) -> Poly:
        return self.coeffs[-1] if self.coeffs else Poly.zero(self.F)

    def reversed(self, n: int | None = None) -> "XPoly":
        """X^n P(1/X) with n = degree by default."""
        n = self.degree() if n is None else n
        return XPoly(self.F, [self.coeff(n - i) for i in range(n + 1)])

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly(self.F, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return XPoly(self.F, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return XPoly(self.F, [c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return XPoly(self.F)
        out = [Poly.zero(self.F)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return XPoly(self.F, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        r = XPoly(self.F, [Poly.one(self.F)])
        for _ in range(n):
            r = r * self
        return r

    def divmod_monic(self, other: "XPoly"):
        """Division by a divisor whose leading X-coefficient is a unit constant."""
        lc = other.lc()
        if lc.degree() != 0:
            raise ArithmeticError("divisor must have a constant unit leading coefficient")
        inv = Poly.const(self.F, self.F.inv(lc.coeffs[0]))
        rem = list(self.coeffs)
        db = other.degree()
        if len(rem) <= db:
            return XPoly(self.F), self
        quot = [Poly.zero(self.F)] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] * inv
            if c:
                quot[i - db] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - db + j] = rem[i - db + j] - c * b
        return XPoly(self.F, quot), XPoly(self.F, rem[:db])

    def divides(self, other: "XPoly") -> bool:
        """Exact divisibility in F_q[t][X] (self must have unit leading coefficient)."""
        return divmod_xpoly(other, self)[1].is_zero()

    def __call__(self, x):
        """Evaluate at X = x where x is a Poly or an XPoly (composition)."""
        if isinstance(x, XPoly):
            acc = XPoly(self.F)
            for c in reversed(self.coeffs):
                acc = acc * x + XPoly(self.F, [c])
            return acc
        acc = Poly.zero(self.F)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def translate(self, lam: Poly) -> "XPoly":
        """P(X + lam)."""
        return self(XPoly(self.F, [lam, Poly.one(self.F)]))

    def derivative(self) -> "XPoly":
        F = self.F
        return XPoly(F, [c.scale(F.from_int(i)) for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        return f"XPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
                parts.append(f"({c}){mon}" if mon else f"({c})")
        return " + ".join(parts)


def divmod_xpoly(a: XPoly, b: XPoly):
    return a.divmod_monic(b)
