"""Finite fields F_q with q = p^e.

Elements are encoded as integers in ``range(q)``: the code of
``c_0 + c_1 y + ... + c_{e-1} y^{e-1}`` (residues mod p, ``y`` a root of the
defining modulus) is ``sum(c_i * p**i)``.  For prime fields the code is the
residue itself.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _fp_poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lc = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lc % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm]


def _is_irreducible_fp(m: tuple[int, ...], p: int) -> bool:
    """Brute-force irreducibility test over F_p (desk scale only)."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    # any factor has degree <= deg // 2; try all monic candidates
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = tuple(tail) + (1,)
            if not any(_fp_poly_mod(list(m), cand, p)):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree e over F_p."""
    if e == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        cand = tuple(reversed(tail)) + (1,)
        if cand[0] and _is_irreducible_fp(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q = F_p[y]/(modulus)."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.e < 1:
            raise ValueError("extension degree must be >= 1")
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.e))
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if self.e > 1 and not _is_irreducible_fp(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.e

    # -- element arithmetic -------------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coords(self, cs) -> int:
        code = 0
        for c in reversed(list(cs)):
            code = code * self.p + int(c) % self.p
        return code

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return _tables(self).add[a][b]

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        t = _tables(self)
        return t.add[a][t.neg[b]]

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return _tables(self).neg[a]

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        return _tables(self).mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return _tables(self).inv[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def mul_matrix(self, a: int) -> np.ndarray:
        """Matrix of x -> a*x on coordinate vectors (acts on the left)."""
        return _tables(self).mulmat[a]

    def __str__(self):
        return f"F_{self.q}"


@dataclass
class _Tables:
    add: list
    neg: list
    mul: list
    inv: list
    mulmat: np.ndarray


@functools.cache
def _tables(F: FieldSpec) -> _Tables:
    p, e, q = F.p, F.e, F.q
    coords = [F.coords(a) for a in range(q)]

    def mul_coords(x, y):
        prod = [0] * (2 * e - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] = (prod[i + j] + xi * yj) % p
        return _fp_poly_mod(prod, F.modulus, p) if e > 1 else prod[:1]

    add = [[F.from_coords((x + y) % p for x, y in zip(coords[a], coords[b])) for b in range(q)] for a in range(q)]
    neg = [F.from_coords(-x % p for x in coords[a]) for a in range(q)]
    mul = [[F.from_coords(mul_coords(coords[a], coords[b])) for b in range(q)] for a in range(q)]
    inv = [0] * q
    for a in range(1, q):
        for b in range(1, q):
            if mul[a][b] == 1:
                inv[a] = b
                break
    mulmat = np.zeros((q, e, e), dtype=np.int64)
    for a in range(q):
        for j in range(e):
            basis = [0] * e
            basis[j] = 1
            col = coords[mul[a][F.from_coords(basis)]]
            mulmat[a, :, j] = col
    return _Tables(add, neg, mul, inv, mulmat)
