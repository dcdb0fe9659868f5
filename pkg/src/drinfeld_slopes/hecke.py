"""Harmonic cocycles with values in V_k and matrices of Hecke-type operators.

V_k is the A-dual of the homogeneous polynomials of degree k - 2 in X, Y;
coordinate j of an element omega is omega(X^j Y^(k-2-j)).  A matrix g acts by
(g o omega)(P) = omega(g^{-1} o P) where eta = (a b; c d) sends X to aX + cY
and Y to bX + dY.  All operators used here have g^{-1} with polynomial
entries, so no denominators appear.

A cocycle for Gamma is stored through its values omega_j on the basis edges
delta_j * w * e_0 (delta_j running over Gamma \\ Gamma_1(t)).  Coordinates are
ordered as v_(1,0), ..., v_(d,0), v_(1,1), ...: position j * d + i holds
monomial j of the value on basis edge i.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np

from .algebra import kernels as K
from .algebra.field import FieldSpec
from .algebra.matrix import PolyMatrix
from .algebra.poly import Poly
from .level import (
    LevelError,
    QuotientData,
    _class_of_level0,
    eta_lambda,
    hecke_cosets,
)
from .tree import GroupElem, OrientedEdge, act_vertex, reduce_edge

RECURSION_BUDGET = 200_000


class IntegralityError(ArithmeticError):
    pass


# -- the coefficient module V_k -------------------------------------------------


def substitution_array(eta: GroupElem, k: int) -> np.ndarray:
    """Array C (shape (k-1, k-1, T, e)) with C[l, j] the coefficient of
    X^l Y^(k-2-l) in (aX + cY)^j (bX + dY)^(k-2-j), for eta = (a b; c d)."""
    if not eta.is_integral():
        raise IntegralityError(f"{eta} has non-polynomial entries")
    F = eta.F
    a, b, c, d = (K.from_poly(F, x) for x in eta.entries())
    one = K.zeros(F, (1, 1))
    one[0, 0, 0, 0] = 1
    M = one  # N = 0
    for n in range(1, k - 1):
        T = M.shape[-2]
        # columns j < n: multiply by (bX + dY); column n: previous column n-1 times (aX + cY)
        up = np.concatenate([K.zeros(F, (1, n), T), M], axis=0)  # X-degree shift
        same = np.concatenate([M, K.zeros(F, (1, n), T)], axis=0)
        left = K.add(F, K.mul(F, up, b), K.mul(F, same, d))
        last_up = up[:, n - 1 : n]
        last_same = same[:, n - 1 : n]
        right = K.add(F, K.mul(F, last_up, a), K.mul(F, last_same, c))
        T2 = max(left.shape[-2], right.shape[-2])
        M = np.concatenate([K.pad(left, T2), K.pad(right, T2)], axis=1)
        M = K.trim(M)
    return M


def vk_matrix(g: GroupElem, k: int) -> PolyMatrix:
    """Matrix of omega -> g o omega on V_k (requires g^{-1} integral)."""
    eta = g.inverse()
    if not eta.is_integral():
        raise IntegralityError(f"inverse of {g} is not integral; action would have denominators")
    C = substitution_array(eta, k)
    return PolyMatrix(g.F, C.transpose(1, 0, 2, 3))


def vk_act(g: GroupElem, omega: list, k: int) -> list:
    """Apply g to a V_k element given as a list of k - 1 polynomials."""
    F = g.F
    M = vk_matrix(g, k)
    col = PolyMatrix.from_rows(F, [[x] for x in omega])
    out = M @ col
    return [out[i, 0] for i in range(k - 1)]


# -- expansion of edges into basis terms ----------------------------------------


def _h_step(F: FieldSpec, c: int, i: int) -> GroupElem:
    one, zero = Poly.one(F), Poly.zero(F)
    return GroupElem(one, Poly.t(F, i).scale(c) if c else zero, zero, one)


def _s_step(F: FieldSpec, c: int) -> GroupElem:
    one, zero = Poly.one(F), Poly.zero(F)
    return GroupElem(Poly.const(F, c) if c else zero, -one, one, zero)


def edge_terms(e: OrientedEdge, QD: QuotientData) -> dict:
    """Expand c(e) = sum coeff * (gamma o omega_j) valid for every cocycle.

    Returns {(gamma, j): coeff mod p}.  Unstable edges are resolved by
    harmonicity, moving down the half-line until only Gamma_1(t)-stable
    edges remain.
    """
    i, fwd, g = reduce_edge(e)
    return std_edge_terms(g.inverse(), i, 1 if fwd else -1, QD)


def std_edge_terms(h: GroupElem, i: int, sign: int, QD: QuotientData) -> dict:
    """Terms of sign * c(h * e_i) for h in SL_2(A)."""
    F = QD.F
    p = F.p
    out: dict = defaultdict(int)
    stack = [(h, i, sign)]
    steps = 0
    while stack:
        steps += 1
        if steps > RECURSION_BUDGET:
            raise RuntimeError("edge expansion budget exceeded")
        g, lvl, s = stack.pop()
        if lvl >= 1:
            for c in F.elements():
                stack.append((g * _h_step(F, c, lvl), lvl - 1, s))
            continue
        if g.c.coeff(0) != 0:
            cls = _class_of_level0(g, s, QD)
            key = (cls.gamma, cls.rep)
            out[key] = (out[key] + cls.sign) % p
            continue
        for c in F.elements():
            stack.append((g * _s_step(F, c), 0, -s))
    return {k: v for k, v in out.items() if v}


def extend_cocycle(values: list, e: OrientedEdge, QD: QuotientData, k: int) -> list:
    """Value c(e) of the cocycle with c(basis_edges[j]) = values[j]."""
    F = QD.F
    acc = [Poly.zero(F)] * (k - 1)
    for (gamma, j), coeff in edge_terms(e, QD).items():
        w = vk_act(gamma, values[j], k)
        acc = [x + y.scale(coeff) for x, y in zip(acc, w)]
    return acc


# -- operator matrices -----------------------------------------------------------


def _operator_matrix(QD: QuotientData, k: int, cosets: list) -> PolyMatrix:
    """Matrix of c -> sum_i xi_i^{-1} o c(xi_i e) in the ordered basis."""
    F = QD.F
    d = QD.d
    N = k - 1
    blocks: dict = {}
    for j0, edge in enumerate(QD.basis_edges):
        for xi in cosets:
            moved = OrientedEdge(*(act_vertex(xi, v) for v in (edge.origin, edge.terminus)))
            for (gamma, j1), coeff in edge_terms(moved, QD).items():
                eta = gamma.inverse() * xi
                if not eta.is_integral():
                    raise IntegralityError(f"operator term {eta} is not integral")
                C = substitution_array(eta, k)
                term = C.transpose(1, 0, 2, 3)
                if coeff != 1:
                    term = K.scale(F, term, coeff)
                key = (j0, j1)
                if key in blocks:
                    blocks[key] = K.add(F, blocks[key], term)
                else:
                    blocks[key] = term
    T = max([b.shape[-2] for b in blocks.values()] + [1])
    big = K.zeros(F, (N, d, N, d), T)
    for (j0, j1), blk in blocks.items():
        big[:, j0, :, j1] = K.pad(blk, T)
    return PolyMatrix(F, big.reshape(N * d, N * d, T, F.e))


def hecke_matrix(QD: QuotientData, k: int, Q: Poly) -> PolyMatrix:
    """Matrix of T_Q (U when Q = t) on cocycles of weight k."""
    if k < 2:
        raise ValueError("weight must be >= 2")
    key = ("T", k, Q.monic())
    if key not in QD.cache:
        QD.cache[key] = _operator_matrix(QD, k, hecke_cosets(QD.level, Q))
    return QD.cache[key]


def diamond_matrix(QD: QuotientData, k: int, lam: int) -> PolyMatrix:
    """Matrix of the diamond operator <lam>."""
    F = QD.F
    if lam % F.q == 0:
        raise LevelError("lambda must be nonzero")
    key = ("diamond", k, lam)
    if key not in QD.cache:
        QD.cache[key] = _operator_matrix(QD, k, [eta_lambda(QD.level, lam)])
    return QD.cache[key]


def chi_projector(QD: QuotientData, k: int, c: int) -> PolyMatrix:
    """epsilon_chi = -sum_lam chi(lam)^{-1} <lam> for chi(lam) = lam^c."""
    F = QD.F
    acc = None
    for lam in F.units():
        coeff = F.neg(F.inv(F.pow(lam, c)))
        term = K.scale(F, np.asarray(diamond_matrix(QD, k, lam).data), coeff)
        acc = term if acc is None else K.add(F, acc, term)
    return PolyMatrix(F, acc)


def _pivot_basis(F: FieldSpec, E: np.ndarray, P: int):
    """Column basis (unit pivots) of the image of an idempotent over F_q[[t]]/t^P.

    Returns (B, rows): B is N x r with B[rows] = identity.
    """
    E = K.pad(E, P).copy()
    N = E.shape[0]
    cols = []
    rows = []
    work = E
    big = np.iinfo(np.int64).max
    while True:
        vals = K.valuations(work, cap=big)
        if work.shape[1] == 0 or vals.min() > 0:
            break
        # lowest (row, col) unit entry
        flat = np.flatnonzero(vals == 0)[0]
        pr, pc = divmod(int(flat), work.shape[1])
        piv = K.series_inverse(F, work[pr, pc], P)
        col = K.mul_trunc(F, work[:, pc], piv, P)  # pivot entry now 1
        rest = [j for j in range(work.shape[1]) if j != pc]
        if rest:
            factors = work[pr, rest]  # (len(rest), P, e)
            upd = K.mul_trunc(F, col[:, None], factors[None], P)
            work = (work[:, rest] - upd) % F.p
        else:
            work = work[:, rest]
        # keep earlier basis columns reduced at the new pivot row
        for idx, bc in enumerate(cols):
            f = bc[pr]
            if f.any():
                cols[idx] = (bc - K.mul_trunc(F, col, f, P)) % F.p
        cols.append(col)
        rows.append(pr)
    if work.shape[1] and work.any():
        raise ArithmeticError("projector image is not a direct summand (not idempotent?)")
    if not cols:
        return K.zeros(F, (N, 0), P), []
    return np.stack(cols, axis=1), rows


def chi_part_matrix(QD: QuotientData, k: int, c: int, op: PolyMatrix, precision: int | None = None):
    """Matrix of ``op`` on the chi-part, in a basis of the lattice localised at t.

    Entries are exact modulo t^precision.  The default precision exceeds the
    t-degree of det(I - op X), so the characteristic polynomial of the result,
    truncated at that precision, is the exact chi-part factor.
    Returns (matrix, precision).
    """
    from .algebra.linalg import charpoly_reciprocal

    F = QD.F
    eps = chi_projector(QD, k, c)
    if not (eps @ op == op @ eps):
        raise ValueError("operator does not commute with the projector")
    if precision is None:
        full = charpoly_reciprocal(op)
        precision = max([cf.degree() for cf in full.coeffs] + [0]) + 1
    P = precision
    B, rows = _pivot_basis(F, np.asarray(eps.data), P)
    r = len(rows)
    if r == 0:
        return PolyMatrix.zeros(F, 0, 0), P
    OB = K.matmul_trunc(F, K.pad(np.asarray(op.data), P), B, P)
    X = OB[rows]
    check = K.matmul_trunc(F, B, X, P)
    if not np.array_equal(check % F.p, OB % F.p):
        raise ArithmeticError("operator does not preserve the chi-part")
    return PolyMatrix(F, X), P


def weight_reduction_matrix(F: FieldSpec, k: int, N: int, d: int) -> PolyMatrix:
    """Matrix of the map from weight k + N to weight k dual to P -> X^N P."""
    if N < 1:
        raise ValueError("N must be >= 1")
    rows, cols = d * (k - 1), d * (k + N - 1)
    a = K.zeros(F, (rows, cols))
    for j in range(k - 1):
        for i in range(d):
            a[j * d + i, (j + N) * d + i, 0, 0] = 1
    return PolyMatrix(F, a)


class OrdinaryError(ArithmeticError):
    pass


def ordinary_eigenvector(U: PolyMatrix, M: int) -> np.ndarray:
    """Slope-zero eigenvector of U modulo t^M, normalised to have a coordinate 1.

    Powers U^(2^j) mod t^M converge to (unit multiples of) the projector onto
    the ordinary line; a column with a unit entry spans it.  Returns an
    (N, M, e) coordinate array.
    """
    from .algebra.linalg import charpoly_reciprocal
    from .algebra.newton import newton_polygon, slope_multiplicity

    F = U.F
    if slope_multiplicity(newton_polygon(charpoly_reciprocal(U)), 0) != 1:
        raise OrdinaryError("ordinary multiplicity is not 1")
    W = K.pad(np.asarray(U.data), M)
    prev = None
    for _ in range(2 * M + 2):
        W = K.matmul_trunc(F, W, W, M)
        unit = W[:, :, 0].any(axis=-1)
        if not unit.any():
            raise OrdinaryError("power of U lost its unit entries")
        i, j = map(int, np.argwhere(unit)[0])
        v = K.mul_trunc(F, W[:, j], K.series_inverse(F, W[i, j], M), M)
        if prev is not None and np.array_equal(v, prev):
            return v
        prev = v
    raise OrdinaryError("power iteration did not converge")
