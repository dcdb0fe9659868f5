"""Characteristic polynomials and t-adic elementary divisors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels as K
from .matrix import PolyMatrix
from .xpoly import XPoly


def _berkowitz(F, a: np.ndarray) -> np.ndarray:
    """Coefficients c_0..c_n (each a (T, e) array) with det(I - MX) = sum c_i X^i.

    Division-free: the Toeplitz form of the Samuelson-Berkowitz recursion.
    """
    n = a.shape[0]
    one = K.zeros(F, (1,))
    one[0, 0, 0] = 1
    C = one  # shape (len, T, e): coefficients of the current principal minor
    for m in range(n):
        # leading (m+1)x(m+1) block: A = a[:m,:m], S = a[:m,m], R = a[m,:m]
        col = [one[0], K.neg(F, a[m, m])]
        if m:
            A = a[:m, :m]
            v = a[:m, m : m + 1]
            R = a[m : m + 1, :m]
            vs = []
            for _ in range(m):
                vs.append(v)
                v = K.trim(K.matmul(F, A, v))
            T = max(x.shape[-2] for x in vs)
            V = np.concatenate([K.pad(x, T) for x in vs], axis=1)
            rv = K.matmul(F, R, V)[0]  # (m, T, e)
            col.extend(K.neg(F, rv))
        T = max(x.shape[-2] for x in col)
        colarr = np.stack([K.pad(x, T) for x in col])  # (m+2, T, e)
        # new[i] = sum_j col[i-j] * C[j], length m+2
        Tn = T + C.shape[-2] - 1
        new = K.zeros(F, (m + 2,), Tn)
        for j in range(C.shape[0]):
            if C[j].any():
                prod = K.mul(F, colarr[: m + 2 - j], C[j])
                new[j:] = (new[j:] + K.pad(prod, Tn)) % F.p
        C = K.trim(new)
    return C


def charpoly_reciprocal(M: PolyMatrix) -> XPoly:
    """det(I - M X) as an element of F_q[t][X]."""
    if M.rows != M.cols:
        raise ValueError(f"charpoly of non-square {M.shape} matrix")
    F = M.F
    if M.rows == 0:
        return XPoly.from_ints(F, [[1]])
    C = _berkowitz(F, np.asarray(M.data))
    return XPoly(F, K.to_polys(F, C))


def determinant(M: PolyMatrix):
    """Exact determinant (a Poly) via the reciprocal characteristic polynomial."""
    n = M.rows
    P = charpoly_reciprocal(M)
    c = P.coeff(n)
    return -c if n % 2 else c


# -- elementary divisors --------------------------------------------------------


@dataclass(frozen=True)
class AtLeast:
    """A saturated valuation: only known to be >= bound.

    Comparisons against integers are conservative: they hold only when the
    bound alone already decides them.
    """

    bound: int

    def __ge__(self, other):
        return self.bound >= (other.bound if isinstance(other, AtLeast) else other)

    def __gt__(self, other):
        return self.bound > (other.bound if isinstance(other, AtLeast) else other)

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return False

    def __repr__(self):
        return f">={self.bound}"


def _smith_valuations(F, a: np.ndarray, cap: int) -> list:
    """Valuations of Smith diagonal over F_q[[t]]/t^cap (unsaturated ones only)."""
    a = K.pad(a, cap).copy()
    out = []
    big = np.iinfo(np.int64).max
    while a.shape[0] and a.shape[1]:
        vals = K.valuations(a, cap=big)
        vmin = vals.min()
        if vmin >= cap:
            break
        flat = np.flatnonzero(vals == vmin)[0]  # row-major: lowest (row, col)
        pr, pc = divmod(int(flat), a.shape[1])
        v = int(vmin)
        out.append(v)
        pivot_unit = a[pr, pc, v:]
        inv = K.series_inverse(F, pivot_unit, cap - v)
        others = [i for i in range(a.shape[0]) if i != pr]
        if others:
            col = a[others, pc, v:]  # divided by t^v (entries have valuation >= v)
            factors = K.mul_trunc(F, col, inv, cap - v)  # (r-1, cap-v, e)
            upd = K.mul_trunc(F, factors[:, None], a[pr][None], cap)
            rest = (a[others] - upd) % F.p
        else:
            rest = a[others]
        keep = [j for j in range(a.shape[1]) if j != pc]
        a = rest[:, keep]
    return out


def elementary_divisors(M: PolyMatrix, cap: int | None = None) -> list:
    """Ascending t-adic elementary divisors of a square matrix.

    With an explicit ``cap`` the reduction runs over F_q[[t]]/t^cap and any
    divisor >= cap is reported as ``AtLeast(cap)``.  Without one the cap is
    1 + v_t(det M) (determinant computed first), so nothing saturates for a
    nonsingular matrix; a singular matrix is capped at its degree bound.
    """
    if M.rows != M.cols:
        raise ValueError("elementary divisors of a non-square matrix")
    n = M.rows
    if cap is None:
        det = determinant(M)
        if det.is_zero():
            cap = max(int(M.max_degree()) if n and not M.is_zero() else 0, 0) * n + 1
        else:
            cap = det.valuation() + 1
    vals = _smith_valuations(M.F, np.asarray(M.data), cap)
    vals.sort()
    return vals + [AtLeast(cap)] * (n - len(vals))
