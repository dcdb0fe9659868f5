import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_slopes.algebra import FieldSpec, Poly, PolyMatrix, charpoly_reciprocal
from drinfeld_slopes.algebra import kernels as K
from drinfeld_slopes.hecke import (
    IntegralityError, chi_part_matrix, chi_projector, diamond_matrix, extend_cocycle, hecke_matrix,
    ordinary_eigenvector, vk_matrix, weight_reduction_matrix,
)
from drinfeld_slopes.tree import GroupElem, OrientedEdge, act_edge, neighbors
from strategies import polys
from test_tree import sl2_elements, vertices

F = FieldSpec(3)


@settings(max_examples=30)
@given(sl2_elements(), sl2_elements(), st.integers(2, 7))
def test_vk_is_a_left_action(g, h, k):
    assert vk_matrix(g * h, k) == vk_matrix(g, k) @ vk_matrix(h, k)


def test_vk_rejects_non_integral_inverse():
    g = GroupElem.diag(Poly.t(F), Poly.one(F))
    with pytest.raises(IntegralityError):
        vk_matrix(g, 4)


def _random_values(QD, k, data):
    return [[data.draw(polys(F, 2)) for _ in range(k - 1)] for _ in range(QD.d)]


@settings(max_examples=15)
@given(vertices(), st.integers(2, 6), st.data())
def test_extended_cocycle_is_harmonic(gamma1_t, v, k, data):
    values = _random_values(gamma1_t, k, data)
    total = [Poly.zero(F)] * (k - 1)
    for w in neighbors(v):
        c = extend_cocycle(values, OrientedEdge(v, w), gamma1_t, k)
        total = [x + y for x, y in zip(total, c)]
    assert all(x.is_zero() for x in total)


@settings(max_examples=15)
@given(vertices(), st.integers(2, 6), st.data())
def test_extended_cocycle_is_alternating(gamma1_t, v, k, data):
    values = _random_values(gamma1_t, k, data)
    w = neighbors(v)[0]
    a = extend_cocycle(values, OrientedEdge(v, w), gamma1_t, k)
    b = extend_cocycle(values, OrientedEdge(w, v), gamma1_t, k)
    assert all((x + y).is_zero() for x, y in zip(a, b))


@settings(max_examples=15)
@given(sl2_elements(steps=3), vertices(), st.integers(2, 5), st.data())
def test_extended_cocycle_is_equivariant(gamma1_t, g, v, k, data):
    t = Poly.t(F)
    if not ((g.c % t).is_zero() and g.a.coeff(0) == 1):
        return
    values = _random_values(gamma1_t, k, data)
    e = OrientedEdge(v, neighbors(v)[1])
    lhs = extend_cocycle(values, act_edge(g, e), gamma1_t, k)
    base = extend_cocycle(values, e, gamma1_t, k)
    rhs = vk_matrix(g, k) @ PolyMatrix.from_rows(F, [[x] for x in base])
    assert lhs == [rhs[i, 0] for i in range(k - 1)]


def test_weight_two_u_is_one(gamma1_t):
    assert hecke_matrix(gamma1_t, 2, Poly.t(F)) == PolyMatrix.from_rows(F, [[1]])


@pytest.mark.parametrize("k", [3, 6, 10])
def test_dimension(gamma1_t, gamma0p_t2, k):
    assert hecke_matrix(gamma1_t, k, Poly.t(F)).rows == k - 1
    assert hecke_matrix(gamma0p_t2, k, Poly.t(F)).rows == 3 * (k - 1)


@pytest.mark.parametrize("k", [4, 7, 11])
def test_hecke_operators_commute(gamma1_t, k):
    U = hecke_matrix(gamma1_t, k, Poly.t(F))
    for Q in ("1+t", "2+t", "1+t^2"):
        T = hecke_matrix(gamma1_t, k, Poly.parse(F, Q))
        assert U @ T == T @ U


@pytest.mark.parametrize("k", [3, 5])
def test_operators_commute_at_level_t_squared(gamma0p_t2, k):
    U = hecke_matrix(gamma0p_t2, k, Poly.t(F))
    T = hecke_matrix(gamma0p_t2, k, Poly.parse(F, "1+t"))
    D = diamond_matrix(gamma0p_t2, k, 2)
    assert U @ T == T @ U and U @ D == D @ U


@pytest.mark.parametrize("k", [3, 4, 5])
def test_chi_projectors_are_orthogonal_idempotents(gamma0p_t2, k):
    E = [chi_projector(gamma0p_t2, k, c) for c in range(2)]
    n = E[0].rows
    assert E[0] + E[1] == PolyMatrix.identity(F, n)
    assert E[0] @ E[0] == E[0] and E[0] @ E[1] == PolyMatrix.zeros(F, n, n)


@pytest.mark.parametrize("k", [3, 4, 6])
def test_chi_parts_factor_the_charpoly(gamma0p_t2, k):
    U = hecke_matrix(gamma0p_t2, k, Poly.t(F))
    full = charpoly_reciprocal(U)
    prod = None
    for c in range(2):
        M, P = chi_part_matrix(gamma0p_t2, k, c, U)
        part = charpoly_reciprocal(M) if M.rows else None
        if part is not None:
            part = type(part)(F, [x.truncate(P) for x in part.coeffs])
            prod = part if prod is None else prod * part
    assert prod == full


def test_weight_reduction_shape():
    rho = weight_reduction_matrix(F, 4, 3, 2)
    assert (rho.rows, rho.cols) == (6, 12)
    assert rho[0, 6] == Poly.one(F)


@pytest.mark.parametrize("k", [3, 8])
def test_ordinary_eigenvector_is_eigen(gamma1_t, k):
    U = hecke_matrix(gamma1_t, k, Poly.t(F))
    M = 16
    v = ordinary_eigenvector(U, M)
    Uv = K.matmul_trunc(F, K.pad(np.asarray(U.data), M), v[:, None], M)[:, 0]
    assert np.array_equal(Uv % 3, v % 3)
