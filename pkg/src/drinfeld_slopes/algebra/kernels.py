"""Vectorised arithmetic on arrays of polynomials over F_q.

An array of polynomials is an ``int64`` ndarray of shape ``(..., T, e)``:
axis ``-2`` runs over powers of t, axis ``-1`` over the F_p-coordinates of
each F_q coefficient.  All entries are kept reduced in ``[0, p)``.

Products go through a Kronecker substitution (t-degree and the y-coordinate
are packed into one axis) and a floating point FFT; the result is exact as
long as the accumulated integer coefficients stay below 2**50, which is
checked before every call.  Otherwise an exact integer path is used.
"""

from __future__ import annotations

import numpy as np
from scipy import fft as sfft

from .field import FieldSpec
from .poly import Poly

_EXACT_LIMIT = 2.0**50


def zeros(F: FieldSpec, shape, T: int = 1) -> np.ndarray:
    return np.zeros(tuple(shape) + (max(T, 1), F.e), dtype=np.int64)


def from_poly(F: FieldSpec, f: Poly, T: int | None = None) -> np.ndarray:
    n = max(len(f.coeffs), 1) if T is None else T
    out = np.zeros((n, F.e), dtype=np.int64)
    for i, c in enumerate(f.coeffs[:n]):
        if c:
            out[i] = F.coords(c)
    return out


def from_polys(F: FieldSpec, polys, shape) -> np.ndarray:
    polys = list(polys)
    T = max([len(f.coeffs) for f in polys] + [1])
    out = np.zeros((len(polys), T, F.e), dtype=np.int64)
    for k, f in enumerate(polys):
        for i, c in enumerate(f.coeffs):
            if c:
                out[k, i] = F.coords(c)
    return out.reshape(tuple(shape) + (T, F.e))


def to_poly(F: FieldSpec, a: np.ndarray) -> Poly:
    if F.e == 1:
        return Poly(F, a[:, 0].tolist())
    return Poly(F, [F.from_coords(row) for row in a.tolist()])


def to_polys(F: FieldSpec, a: np.ndarray) -> list:
    """Flatten the leading axes into a list of Poly."""
    flat = a.reshape((-1,) + a.shape[-2:])
    return [to_poly(F, x) for x in flat]


def pad(a: np.ndarray, T: int) -> np.ndarray:
    cur = a.shape[-2]
    if cur == T:
        return a
    if cur > T:
        return a[..., :T, :]
    widths = [(0, 0)] * a.ndim
    widths[-2] = (0, T - cur)
    return np.pad(a, widths)


def trim(a: np.ndarray) -> np.ndarray:
    """Drop t-powers that vanish in every entry (keeps at least one)."""
    nz = np.nonzero(a.reshape(-1, a.shape[-2], a.shape[-1]).any(axis=(0, 2)))[0]
    T = int(nz[-1]) + 1 if len(nz) else 1
    return a[..., :T, :]


def add(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    T = max(a.shape[-2], b.shape[-2])
    return (pad(a, T) + pad(b, T)) % F.p


def sub(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    T = max(a.shape[-2], b.shape[-2])
    return (pad(a, T) - pad(b, T)) % F.p


def neg(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    return (-a) % F.p


def scale(F: FieldSpec, a: np.ndarray, c: int) -> np.ndarray:
    """Multiply every coefficient by the field element c."""
    if F.e == 1:
        return a * c % F.p
    return np.einsum("ij,...j->...i", F.mul_matrix(c), a) % F.p


def shift(a: np.ndarray, n: int) -> np.ndarray:
    """Multiply by t^n (n >= 0)."""
    if n == 0:
        return a
    widths = [(0, 0)] * a.ndim
    widths[-2] = (n, 0)
    return np.pad(a, widths)


def valuations(a: np.ndarray, cap: int | None = None) -> np.ndarray:
    """t-adic valuation of each entry; vanishing entries get ``cap`` (or T)."""
    nz = a.any(axis=-1)
    T = a.shape[-2]
    first = np.where(nz.any(axis=-1), nz.argmax(axis=-1), T if cap is None else cap)
    return first


# -- products -----------------------------------------------------------------


def _pack(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    e = F.e
    if e == 1:
        return a[..., 0]
    s = 2 * e - 1
    out = np.zeros(a.shape[:-1] + (s,), dtype=np.int64)
    out[..., :e] = a
    return out.reshape(a.shape[:-2] + (a.shape[-2] * s,))


def _unpack(F: FieldSpec, c: np.ndarray, T: int) -> np.ndarray:
    e, p = F.e, F.p
    if e == 1:
        return pad(c[..., None], T)
    s = 2 * e - 1
    L = c.shape[-1]
    need = T * s
    if L < need:
        c = np.concatenate([c, np.zeros(c.shape[:-1] + (need - L,), dtype=np.int64)], axis=-1)
    c = c[..., :need].reshape(c.shape[:-1] + (T, s)) % p
    mod = F.modulus
    for j in range(s - 1, e - 1, -1):
        top = c[..., j]
        if top.any():
            for i in range(e):
                if mod[i]:
                    c[..., j - e + i] -= top * mod[i]
            c[..., j] = 0
            c %= p
    return c[..., :e] % p


def _conv_exact(F: FieldSpec, ap: np.ndarray, bp: np.ndarray) -> np.ndarray:
    p = F.p
    if ap.shape[-1] > bp.shape[-1]:
        ap, bp = bp, ap
    La, Lb = ap.shape[-1], bp.shape[-1]
    shape = np.broadcast_shapes(ap.shape[:-1], bp.shape[:-1]) + (La + Lb - 1,)
    out = np.zeros(shape, dtype=np.int64)
    for i in range(La):
        out[..., i : i + Lb] = (out[..., i : i + Lb] + ap[..., i : i + 1] * bp) % p
    return out


def mul(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise product with numpy broadcasting over the leading axes."""
    Ta, Tb = a.shape[-2], b.shape[-2]
    T = Ta + Tb - 1
    ap, bp = _pack(F, a), _pack(F, b)
    La, Lb = ap.shape[-1], bp.shape[-1]
    bound = min(La, Lb) * (F.p - 1) ** 2
    if bound >= _EXACT_LIMIT or min(La, Lb) <= 4:
        return _unpack(F, _conv_exact(F, ap, bp), T)
    n = sfft.next_fast_len(La + Lb - 1, real=True)
    fa = sfft.rfft(ap.astype(np.float64), n, axis=-1)
    fb = sfft.rfft(bp.astype(np.float64), n, axis=-1)
    c = sfft.irfft(fa * fb, n, axis=-1)[..., : La + Lb - 1]
    c = np.rint(c).astype(np.int64) % F.p
    return _unpack(F, c, T)


def matmul(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of (r, s, T, e) and (s, c, T', e) polynomial arrays."""
    r, s = a.shape[:2]
    s2, cc = b.shape[:2]
    if s != s2:
        raise ValueError(f"shape mismatch {a.shape[:2]} @ {b.shape[:2]}")
    Ta, Tb = a.shape[-2], b.shape[-2]
    T = Ta + Tb - 1
    ap, bp = _pack(F, a), _pack(F, b)
    La, Lb = ap.shape[-1], bp.shape[-1]
    bound = s * min(La, Lb) * (F.p - 1) ** 2
    if bound >= _EXACT_LIMIT:
        out = np.zeros((r, cc, La + Lb - 1), dtype=np.int64)
        for k in range(s):
            out = (out + _conv_exact(F, ap[:, k, None, :], bp[None, k, :, :])) % F.p
        return _unpack(F, out, T)
    n = sfft.next_fast_len(La + Lb - 1, real=True)
    fa = sfft.rfft(ap.astype(np.float64), n, axis=-1)
    fb = sfft.rfft(bp.astype(np.float64), n, axis=-1)
    fc = np.einsum("ikf,kjf->ijf", fa, fb)
    c = sfft.irfft(fc, n, axis=-1)[..., : La + Lb - 1]
    c = np.rint(c).astype(np.int64) % F.p
    return _unpack(F, c, T)


def mul_trunc(F: FieldSpec, a: np.ndarray, b: np.ndarray, P: int) -> np.ndarray:
    return pad(mul(F, pad(a, min(a.shape[-2], P)), pad(b, min(b.shape[-2], P))), P)


def matmul_trunc(F: FieldSpec, a: np.ndarray, b: np.ndarray, P: int) -> np.ndarray:
    return pad(matmul(F, pad(a, min(a.shape[-2], P)), pad(b, min(b.shape[-2], P))), P)


def series_inverse(F: FieldSpec, u: np.ndarray, P: int) -> np.ndarray:
    """Inverse of a unit power series (shape (T, e)) modulo t^P."""
    u = pad(u, P)
    c0 = F.from_coords(u[0])
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not a unit")
    x = zeros(F, (), 1)
    x[0] = F.coords(F.inv(c0))
    prec = 1
    two = zeros(F, (), 1)
    two[0] = F.coords(F.from_int(2))
    while prec < P:
        prec = min(2 * prec, P)
        ux = mul_trunc(F, u[:prec], x, prec)
        x = mul_trunc(F, x, sub(F, pad(two, prec), ux), prec)
    return pad(x, P)
