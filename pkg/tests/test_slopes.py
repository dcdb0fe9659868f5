from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_slopes.algebra import FieldSpec, Poly, PolyMatrix
from drinfeld_slopes import slopes as S

F = FieldSpec(3)


def test_weight_ten_table(gamma1_t):
    tb = S.slope_decomposition(gamma1_t, 10)
    assert tb.entries == ((Fraction(0), 1), (Fraction(1), 1), (Fraction(4), 5))
    assert tb.dim == 9 and tb.deficiency == 2


def test_weight_nineteen_table(gamma1_t):
    tb = S.slope_decomposition(gamma1_t, 19)
    want = {0: 1, 1: 1, 4: 5, 9: 1, 10: 1}
    assert {int(s): m for s, m in tb.entries} == want


@pytest.mark.parametrize("k", range(2, 16))
def test_slopes_nonnegative_and_deficiency(gamma1_t, k):
    tb = S.slope_decomposition(gamma1_t, k)
    P, dim = S.u_charpoly(gamma1_t, k)
    assert all(s >= 0 for s, _ in tb.entries)
    assert tb.deficiency == dim - P.degree()


def test_ordinary_part_same_in_congruent_weights_for_characters(gamma0p_t2):
    # characters of F_3^x: weights congruent mod 2 carry the same ordinary rank
    for c in range(2):
        assert S.slope_decomposition(gamma0p_t2, 3, c).mult(0) == S.slope_decomposition(gamma0p_t2, 5, c).mult(0)


def test_eldiv_report(gamma1_t):
    assert S.check_eldiv_bound(S.u_operator(gamma1_t, 12), 1).verdict == "PASS"
    # a matrix violating the bound is reported, not hidden
    bad = PolyMatrix.identity(F, 3)
    assert S.check_eldiv_bound(bad, 1).verdict == "FAIL"


@pytest.mark.parametrize("k,n", [(3, 1), (5, 1), (4, 2)])
def test_window(gamma1_t, k, n):
    assert S.check_window(gamma1_t, k, n).verdict == "PASS"


def test_window_with_character(gamma1_t):
    assert S.check_window(gamma1_t, 4, 1, chi=0).verdict == "PASS"


def test_constancy_and_skip(gamma1_t):
    assert S.check_constancy(gamma1_t, 4, 7, 1).verdict == "PASS"
    assert S.check_constancy(gamma1_t, 4, 8, 1).verdict == "SKIP"


def test_hida(F3):
    r = S.hida_check(F3, None, 4, 1, 2)
    assert r.verdict == "PASS" and r.computed["unique_character"]


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.integers(2, 8), st.sampled_from([1, 2]), st.sampled_from([1, 2, 3]))
def test_perturbation_property(seed, L, n, d0):
    assert S.perturb_trial(seed, L, 3, n, d0).verdict == "PASS"


def test_perturbation_negative_control():
    # a perturbation of size t^1 is far below t^(p^n) and breaks slope agreement somewhere
    r = S.perturb_trial(1, 6, 3, 1, 1, trials=20, perturb_power=1)
    assert r.verdict == "FAIL" and r.computed["failures"]


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_product_divisors_dominate(seed, L):
    assert S.product_divisor_trial(seed, L).verdict == "PASS"


def test_slope_root_of_split_polynomial():
    t = Poly.t(F)
    from drinfeld_slopes.algebra import XPoly
    from drinfeld_slopes.algebra import kernels as K

    f = XPoly.linear_root(Poly.one(F)) * XPoly.linear_root(t + t * t) * XPoly.linear_root(t**3)
    root = S.slope_root(f, 1, 10)
    assert K.to_poly(F, K.trim(root)) == t + t * t
    with pytest.raises(ArithmeticError):
        S.slope_root(f * XPoly.linear_root(2 * t), 1, 10)


@pytest.mark.parametrize("Q", ["t", "1+t"])
def test_family_congruence(gamma1_t, Q):
    r = S.family_congruence(gamma1_t, 10, 19, 1, Poly.parse(F, Q), 2, 1)
    assert r.verdict == "PASS"
    assert r.computed["valuation"] == 9 and r.bound == 5
    assert r.computed["routes_agree"]


def test_family_hypothesis_failure_is_reported(gamma1_t):
    r = S.family_congruence(gamma1_t, 10, 19, 1, Poly.t(F), 1, 1)
    assert r.verdict == "HYPOTHESIS_FAILED"


def test_report_json_is_serialisable(gamma1_t):
    import json

    r = S.family_congruence(gamma1_t, 10, 10, 1, Poly.t(F), 2, 1)
    text = json.dumps(r.to_dict())
    assert '"valuation": "inf"' in text
