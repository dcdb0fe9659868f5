from hypothesis import assume, given, strategies as st

from drinfeld_slopes.algebra import FieldSpec, Poly, XPoly, diff_valuations, resultant_x
from oracles import diff_oracle, split_poly
from strategies import polys

F = FieldSpec(3)
roots = st.lists(polys(F, 3), min_size=1, max_size=3)


@given(roots, roots)
def test_resultant_is_product_of_shifted_differences(alphas, betas):
    P1, P2 = split_poly(F, alphas), split_poly(F, betas)
    want = XPoly(F, [Poly.one(F)])
    for a in alphas:
        for b in betas:
            want = want * XPoly(F, [a - b, Poly.one(F)])  # Z + alpha - beta
    assert resultant_x(P1, P2) == want


@given(roots, roots)
def test_difference_valuations_match_oracle(alphas, betas):
    expect, zeros = diff_oracle(alphas, betas)
    assume(expect)
    dv = diff_valuations(split_poly(F, alphas), split_poly(F, betas))
    assert dv.coincident == zeros
    assert dv.polygon.as_dict() == expect


@given(polys(F, 3), roots)
def test_linear_route_agrees_with_general_route(lam, betas):
    P2 = split_poly(F, betas)
    P1 = XPoly.linear_root(lam)
    fast = diff_valuations(P1, P2)
    slow_R = resultant_x(P1, P2)
    assume(not slow_R.is_zero())
    z = 0
    while slow_R.coeffs[z].is_zero():
        z += 1
    assert fast.coincident == z
    expect, _ = diff_oracle([lam], betas)
    if expect:
        assert fast.polygon.as_dict() == expect


def test_known_pair():
    t = Poly.t(F)
    R = resultant_x(XPoly.linear_root(t), XPoly.linear_root(t * t))
    assert R == XPoly(F, [t - t * t, Poly.one(F)])
