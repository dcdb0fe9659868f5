"""Dense matrices over F_q[t], characteristic polynomials and Smith forms."""

from __future__ import annotations

import math

import numpy as np

from . import kernels as K
from .field import FieldSpec
from .poly import Poly


class PolyMatrix:
    """Immutable rows x cols matrix with entries in F_q[t].

    Entries live in ``data`` with shape (rows, cols, T, e), see ``kernels``.
    """

    __slots__ = ("F", "data")

    def __init__(self, F: FieldSpec, data: np.ndarray):
        self.F = F
        data = np.asarray(data, dtype=np.int64)
        if data.ndim != 4 or data.shape[-1] != F.e:
            raise ValueError(f"bad matrix array shape {data.shape}")
        self.data = K.trim(data % F.p)
        self.data.setflags(write=False)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, F: FieldSpec, rows) -> "PolyMatrix":
        rows = [[e if isinstance(e, Poly) else Poly.from_ints(F, [e]) for e in r] for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        flat = [e for r in rows for e in r]
        if not flat:
            return cls(F, np.zeros((nr, nc, 1, F.e), dtype=np.int64))
        return cls(F, K.from_polys(F, flat, (nr, nc)))

    @classmethod
    def zeros(cls, F: FieldSpec, rows: int, cols: int) -> "PolyMatrix":
        return cls(F, K.zeros(F, (rows, cols)))

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> "PolyMatrix":
        a = K.zeros(F, (n, n))
        a[np.arange(n), np.arange(n), 0, 0] = 1
        return cls(F, a)

    @classmethod
    def diagonal(cls, F: FieldSpec, entries) -> "PolyMatrix":
        entries = list(entries)
        n = len(entries)
        rows = [[entries[i] if i == j else Poly.zero(F) for j in range(n)] for i in range(n)]
        return cls.from_rows(F, rows)

    # -- access -------------------------------------------------------------

    @property
    def shape(self):
        return self.data.shape[:2]

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return K.to_poly(self.F, self.data[i, j])

    def to_rows(self) -> list:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def max_degree(self):
        nz = self.data.any(axis=-1)
        if not nz.any():
            return -math.inf
        return int(np.nonzero(nz.any(axis=(0, 1)))[0][-1])

    def valuations(self) -> np.ndarray:
        """Entrywise t-adic valuations; zero entries get a large sentinel."""
        return K.valuations(self.data, cap=np.iinfo(np.int32).max)

    def is_zero(self) -> bool:
        return not self.data.any()

    # -- arithmetic ---------------------------------------------------------

    def _same(self, other):
        if not isinstance(other, PolyMatrix) or other.shape != self.shape:
            raise ValueError("matrix shapes differ")

    def __add__(self, other):
        self._same(other)
        return PolyMatrix(self.F, K.add(self.F, self.data, other.data))

    def __sub__(self, other):
        self._same(other)
        return PolyMatrix(self.F, K.sub(self.F, self.data, other.data))

    def __neg__(self):
        return PolyMatrix(self.F, K.neg(self.F, self.data))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return PolyMatrix(self.F, K.matmul(self.F, self.data, other.data))

    def scale(self, f) -> "PolyMatrix":
        """Multiply every entry by a polynomial (or integer)."""
        if not isinstance(f, Poly):
            f = Poly.from_ints(self.F, [f])
        return PolyMatrix(self.F, K.mul(self.F, self.data, K.from_poly(self.F, f)))

    def shift(self, n: int) -> "PolyMatrix":
        return PolyMatrix(self.F, K.shift(self.data, n))

    def truncate(self, P: int) -> "PolyMatrix":
        """Reduce all entries modulo t^P."""
        return PolyMatrix(self.F, K.pad(self.data, max(P, 1)) if P > 0 else K.zeros(self.F, self.shape))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.F, self.data.transpose(1, 0, 2, 3))

    def submatrix(self, rows, cols) -> "PolyMatrix":
        return PolyMatrix(self.F, self.data[np.ix_(list(rows), list(cols))])

    def trace(self) -> Poly:
        n = min(self.shape)
        acc = self.data[np.arange(n), np.arange(n)].sum(axis=0) % self.F.p
        return K.to_poly(self.F, acc)

    def power(self, n: int) -> "PolyMatrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        r, a = PolyMatrix.identity(self.F, self.rows), self
        while n:
            if n & 1:
                r = r @ a
            a = a @ a
            n >>= 1
        return r

    def congruent(self, other: "PolyMatrix", P: int) -> bool:
        """Entrywise congruence modulo t^P."""
        self._same(other)
        return not (self - other).truncate(P).data.any()

    def divisible_by_t_power(self, P: int) -> bool:
        return not self.truncate(P).data.any()

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        T = max(self.data.shape[2], other.data.shape[2])
        return bool(np.array_equal(K.pad(self.data, T), K.pad(other.data, T)))

    def __hash__(self):
        return hash((self.shape, self.data.tobytes()))

    def __repr__(self):
        return "PolyMatrix(" + repr([[str(x) for x in r] for r in self.to_rows()]) + ")"
