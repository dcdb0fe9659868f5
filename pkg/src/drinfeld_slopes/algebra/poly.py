"""Polynomials over F_q, i.e. elements of A = F_q[t]."""

from __future__ import annotations

import itertools
import math
import re
from functools import total_ordering

from .field import FieldSpec

INF = math.inf


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@total_ordering
class Poly:
    """Immutable polynomial in t with coefficients coded as field elements.

    ``coeffs`` is ascending in t; the zero polynomial has no coefficients.
    """

    __slots__ = ("F", "coeffs", "_hash")

    def __init__(self, F: FieldSpec, coeffs=()):
        self.F = F
        self.coeffs = _trim(coeffs)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, F):
        return cls(F, ())

    @classmethod
    def one(cls, F):
        return cls(F, (1,))

    @classmethod
    def const(cls, F, c: int):
        return cls(F, (c,))

    @classmethod
    def t(cls, F, power: int = 1):
        return cls(F, (0,) * power + (1,))

    @classmethod
    def from_ints(cls, F, ints):
        """Coefficients given as integers, reduced into the prime field."""
        return cls(F, [F.from_int(int(c)) for c in ints])

    @classmethod
    def parse(cls, F: FieldSpec, text: str) -> "Poly":
        """Parse strings such as ``"t^2 + 2t - 1"`` (prime-field coefficients)."""
        s = text.replace(" ", "").replace("**", "^").replace("*", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        acc = cls.zero(F)
        for term in terms:
            sign, body = term[0], term[1:]
            m = re.fullmatch(r"(\d*)(t(?:\^(\d+))?)?", body)
            if not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"cannot parse term {term!r} in {text!r}")
            coef = int(m.group(1)) if m.group(1) else 1
            deg = 0
            if m.group(2):
                deg = int(m.group(3)) if m.group(3) else 1
            if sign == "-":
                coef = -coef
            acc = acc + cls(F, (0,) * deg + (F.from_int(coef),))
        return acc

    # -- basic data ---------------------------------------------------------

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -INF

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly(self.F, (self.F.from_int(other),))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __lt__(self, other):
        return (len(self.coeffs), self.coeffs[::-1]) < (len(other.coeffs), other.coeffs[::-1])

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly(self.F, (self.F.from_int(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.F
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.F, [self.F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.F
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        if F.e == 1:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly(F, [c % p for c in out])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        F = self.F
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def shift(self, n: int) -> "Poly":
        """Multiply by t^n (n >= 0) or drop the n lowest coefficients (n < 0)."""
        if n >= 0:
            return Poly(self.F, (0,) * n + self.coeffs) if self.coeffs else self
        return Poly(self.F, self.coeffs[-n:])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        r, a = Poly.one(self.F), self
        while n:
            if n & 1:
                r = r * a
            a = a * a
            n >>= 1
        return r

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lc = F.inv(other.lc())
        if len(rem) <= db:
            return Poly(F, ()), self
        quot = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                c = F.mul(c, inv_lc)
                quot[i - db] = c
                for j, bj in enumerate(other.coeffs):
                    rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, bj))
        return Poly(F, quot), Poly(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other) -> bool:
        return not (other % self)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.F.inv(self.lc()))

    def __call__(self, x):
        """Evaluate at a field element (int code) or a polynomial (composition)."""
        F = self.F
        if isinstance(x, Poly):
            acc = Poly(F, ())
            for c in reversed(self.coeffs):
                acc = acc * x + Poly(F, (c,))
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose(self, other: "Poly") -> "Poly":
        return self(other)

    def translate(self, c: int) -> "Poly":
        """Substitute t -> t + c."""
        return self(Poly(self.F, (c, 1)))

    def derivative(self) -> "Poly":
        F = self.F
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def truncate(self, n: int) -> "Poly":
        """Reduce modulo t^n."""
        return Poly(self.F, self.coeffs[:n])

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        F = self.F
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c) if F.e == 1 else "[" + ",".join(map(str, F.coords(c))) + "]"
            if i == 0:
                parts.append(cs)
            else:
                mon = "t" if i == 1 else f"t^{i}"
                parts.append(mon if c == 1 else f"{cs}{mon}")
        return " + ".join(parts)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs vanish)."""
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly):
    """Return (g, u, v) with u*a + v*b = g, g monic."""
    F = a.F
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while r1:
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    c = F.inv(r0.lc())
    return r0.scale(c), s0.scale(c), t0.scale(c)


def all_polys(F: FieldSpec, max_deg: int):
    """All polynomials of degree <= max_deg (including zero), in a fixed order."""
    for cs in itertools.product(range(F.q), repeat=max_deg + 1):
        yield Poly(F, cs)


def monic_polys(F: FieldSpec, deg: int):
    for cs in itertools.product(range(F.q), repeat=deg):
        yield Poly(F, cs + (1,))


def is_irreducible(f: Poly) -> bool:
    """Brute-force irreducibility test by trial division (desk-scale degrees)."""
    d = f.degree()
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for g in monic_polys(f.F, k):
            if not (f % g):
                return False
    return True
