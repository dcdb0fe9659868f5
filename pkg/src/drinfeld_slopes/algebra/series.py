"""Truncated power series F_q[[t]]/t^P."""

from __future__ import annotations

import numpy as np

from . import kernels as K
from .field import FieldSpec
from .poly import Poly


class TruncSeries:
    """A power series known modulo t^P, stored as a (P, e) coordinate array."""

    __slots__ = ("F", "P", "data")

    def __init__(self, F: FieldSpec, P: int, data: np.ndarray):
        self.F = F
        self.P = P
        self.data = K.pad(np.asarray(data, dtype=np.int64), P) % F.p

    @classmethod
    def from_poly(cls, f: Poly, P: int) -> "TruncSeries":
        return cls(f.F, P, K.from_poly(f.F, f.truncate(P), P))

    def to_poly(self) -> Poly:
        return K.to_poly(self.F, self.data)

    def valuation(self):
        """Return (v, exact): exact is False when the series vanishes mod t^P."""
        v = int(K.valuations(self.data))
        return (v, True) if v < self.P else (self.P, False)

    def is_unit(self) -> bool:
        return bool(self.data[0].any())

    def _check(self, other):
        if isinstance(other, Poly):
            other = TruncSeries.from_poly(other, self.P)
        P = min(self.P, other.P)
        return other, P

    def __add__(self, other):
        other, P = self._check(other)
        return TruncSeries(self.F, P, K.add(self.F, self.data[:P], other.data[:P]))

    def __sub__(self, other):
        other, P = self._check(other)
        return TruncSeries(self.F, P, K.sub(self.F, self.data[:P], other.data[:P]))

    def __neg__(self):
        return TruncSeries(self.F, self.P, K.neg(self.F, self.data))

    def __mul__(self, other):
        other, P = self._check(other)
        return TruncSeries(self.F, P, K.mul_trunc(self.F, self.data[:P], other.data[:P], P))

    def inverse(self) -> "TruncSeries":
        return TruncSeries(self.F, self.P, K.series_inverse(self.F, self.data, self.P))

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        P = min(self.P, other.P)
        return bool(np.array_equal(self.data[:P], other.data[:P]))

    def __hash__(self):
        return hash((self.P, self.data.tobytes()))

    def __repr__(self):
        return f"TruncSeries({self.to_poly()} + O(t^{self.P}))"
