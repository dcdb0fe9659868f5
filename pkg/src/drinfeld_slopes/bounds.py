"""Exact slope bounds: the rationals C_1, C_2, C and the quadratic surd D."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@dataclass(frozen=True)
class BoundParams:
    p: int
    n: int
    d0: int
    eps0: int

    def __post_init__(self):
        if self.n < 0 or self.d0 < 1 or self.eps0 < 0:
            raise ValueError(f"invalid bound parameters {self}")
        if self.eps0 > self.d0:
            raise ValueError(f"eps0 = {self.eps0} exceeds d0 = {self.d0}")


def bound_C1(bp: BoundParams) -> Fraction:
    pn = bp.p**bp.n
    return Fraction(pn * (4 + bp.d0 * pn - bp.d0), 4 + 2 * bp.d0 * pn - 2 * bp.eps0)


def _q_r(l: int, d0: int):
    if l == 1:
        return 0, 0
    q = (l - 2) // d0
    return q, l - 2 - d0 * q


def bound_C2(bp: BoundParams) -> Fraction:
    pn, d0, e0 = bp.p**bp.n, bp.d0, bp.eps0
    best = None
    for l in range(e0 + 1, 2 + d0 * pn):
        q, r = _q_r(l, d0)
        val = Fraction(2 * pn + d0 * q * (q - 1) + 2 * q * (r + 1), 2 * (l - e0))
        best = val if best is None or val < best else best
    return best


def bound_C(bp: BoundParams) -> Fraction:
    return min(bound_C1(bp), bound_C2(bp))


def _squarefree_part(n: int):
    """n = s^2 * r with r squarefree; returns (s, r)."""
    s, r, f = 1, 1, 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            s *= f
        if n % f == 0:
            n //= f
            r *= f
        f += 1
    return s, r * n


def _sign_single(a: Fraction, b: Fraction, R: int) -> int:
    """Sign of a + b sqrt(R) (R >= 0)."""
    if b == 0 or R == 0:
        return (a > 0) - (a < 0)
    sb = 1 if b > 0 else -1
    if a == 0 or (a > 0) == (b > 0):
        return sb if a == 0 else (1 if a > 0 else -1)
    # opposite signs: compare a^2 with b^2 R
    diff = a * a - b * b * R
    if diff == 0:
        return 0
    return (1 if a > 0 else -1) if diff > 0 else sb


@total_ordering
@dataclass(frozen=True)
class SqrtBound:
    """The real number a + b * sqrt(R) with a, b rational and R a squarefree natural."""

    a: Fraction
    b: Fraction = Fraction(0)
    R: int = 1

    @classmethod
    def make(cls, a, b=0, radicand=0) -> "SqrtBound":
        a, b = Fraction(a), Fraction(b)
        if radicand < 0:
            raise ValueError("negative radicand")
        s, r = _squarefree_part(radicand) if radicand else (0, 1)
        b = b * s
        if r == 1:
            return cls(a + b, Fraction(0), 1)
        return cls(a, b, r)

    @classmethod
    def rational(cls, x) -> "SqrtBound":
        return cls(Fraction(x))

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.R)

    def _sign_minus(self, other) -> int:
        if not isinstance(other, SqrtBound):
            other = SqrtBound.rational(other)
        A = self.a - other.a
        if other.b == 0 or other.R == self.R:
            B = self.b - (other.b if other.R == self.R else 0)
            return _sign_single(A, B, self.R)
        # A + b1 sqrt(R1) - b2 sqrt(R2)
        su = _sign_single(A, self.b, self.R)
        w = -other.b
        sw = (w > 0) - (w < 0)
        if su == 0:
            return sw
        if sw == 0 or su == sw:
            return su
        # compare squares: (A + b1 sqrt R1)^2 vs w^2 R2
        s = _sign_single(A * A + self.b * self.b * self.R - w * w * other.R, 2 * A * self.b, self.R)
        return su if s > 0 else (sw if s < 0 else 0)

    def __eq__(self, other):
        if not isinstance(other, (SqrtBound, int, Fraction)):
            return NotImplemented
        return self._sign_minus(other) == 0

    def __lt__(self, other):
        return self._sign_minus(other) < 0

    def __hash__(self):
        return hash((self.a, self.b, self.R))

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.R})"


def compare_a(a, bound) -> int:
    """-1, 0, 1 as a is below, equal to or above the bound (rational or SqrtBound)."""
    if not isinstance(bound, SqrtBound):
        diff = Fraction(a) - Fraction(bound)
        return (diff > 0) - (diff < 0)
    return -bound._sign_minus(Fraction(a))


def bound_D2(p: int, n: int, d: int, eps: int) -> SqrtBound:
    X = 2 * d * p**n + (d - eps + 1) * (2 * d - eps - 1)
    return SqrtBound.make(Fraction(-3 * d, 2 * d) + Fraction(eps, d), Fraction(1, d), X)


def bound_D(p: int, n: int, d: int, eps: int) -> SqrtBound:
    c1 = SqrtBound.rational(bound_C1(BoundParams(p, n, d, eps)))
    d2 = bound_D2(p, n, d, eps)
    return min(c1, d2)


def gm_condition(bp: BoundParams) -> bool:
    """The two side conditions under which slopes up to n are preserved."""
    p, n, d0, e0 = bp.p, bp.n, bp.d0, bp.eps0
    large = p != 2 or n >= 3 or d0 - e0 <= 1
    small = 2 * p**n > n * (d0 * n + 2 + d0 - 2 * e0)
    return large and small
