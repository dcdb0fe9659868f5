"""Acceptance suite: one test per criterion, desk scale (q = 3, Gamma_1(t), weights <= 30).

Run with ``pytest tests/test_acceptance.py``; the terminal summary lists one
PASS/FAIL line per criterion.
"""

from fractions import Fraction

import numpy as np
import pytest

from drinfeld_slopes import slopes as S
from drinfeld_slopes.algebra import (
    AtLeast, FieldSpec, Poly, PolyMatrix, XPoly, charpoly_reciprocal, diff_valuations,
    elementary_divisors, newton_polygon, resultant_x,
)
from drinfeld_slopes.algebra import kernels as K
from drinfeld_slopes.bounds import BoundParams, SqrtBound, bound_C, bound_D, compare_a
from drinfeld_slopes.hecke import hecke_matrix, ordinary_eigenvector
from oracles import charpoly_oracle, diff_oracle, hull_oracle, smith_oracle, split_poly

F = FieldSpec(3)
t = Poly.t(F)
QUARTIC = XPoly(F, [
    Poly.parse(F, "-t^18 - t^20 + t^24 + t^26 + t^28"),
    Poly.parse(F, "-t^9 - t^11 + t^13 + t^15 + t^17 + t^19"),
    Poly.parse(F, "-t^8 + t^10 + t^12 + t^14 + t^16"),
    Poly.parse(F, "t + t^3"),
    Poly.one(F),
])


@pytest.mark.criterion(1)
def test_dimensions(gamma1_t, criterion):
    dims = {k: S.u_operator(gamma1_t, k).rows for k in range(2, 31)}
    criterion("dim = k - 1 for k = 2..30")
    assert all(dims[k] == k - 1 for k in dims)


@pytest.mark.criterion(2)
def test_ordinary_rank_one(gamma1_t, criterion):
    ords = {k: S.slope_decomposition(gamma1_t, k).mult(0) for k in range(2, 31)}
    criterion(f"d(k,0) values {sorted(set(ords.values()))} for k = 2..30")
    assert set(ords.values()) == {1}


@pytest.mark.criterion(3)
def test_slope_one_in_weight_ten(gamma1_t, criterion):
    m = S.slope_decomposition(gamma1_t, 10).mult(1)
    criterion(f"d(10,1) = {m}")
    assert m == 1


@pytest.mark.criterion(4)
def test_u_eigenvalue_weight_ten(gamma1_t, criterion):
    U = S.u_operator(gamma1_t, 10)
    lam = Poly.parse(F, "-t-t^3")
    recip = charpoly_reciprocal(U)
    ok = XPoly.linear_root(lam).divides(recip.reversed(U.rows))
    criterion(f"X - ({lam}) divides the weight 10 U-charpoly: {ok}")
    assert ok


@pytest.mark.criterion(5)
def test_weight_nineteen_quartic(gamma1_t, criterion):
    U = S.u_operator(gamma1_t, 19)
    ok = QUARTIC.divides(S.ordinary_charpoly(U))
    criterion(f"quartic divides the weight 19 U-charpoly: {ok}")
    assert ok


@pytest.mark.criterion(6)
def test_eigenvalue_at_one_plus_t(gamma1_t, criterion):
    Q = Poly.parse(F, "1+t")
    lam, P = S.slope_eigenvalue(gamma1_t, 10, 1, Q, 40)
    got = K.to_poly(F, K.trim(lam))
    want = Poly.parse(F, "1-t-t^3")
    factor = XPoly.linear_root(want).divides(S.ordinary_charpoly(hecke_matrix(gamma1_t, 10, Q)))
    criterion(f"slope-1 eigenvalue of T_(1+t) in weight 10 = {got} (mod t^{P}); charpoly factor: {factor}")
    assert got == want and factor


@pytest.mark.criterion(7)
def test_family_congruence(gamma1_t, criterion):
    vals = {}
    for Q in ("t", "1+t"):
        r = S.family_congruence(gamma1_t, 10, 19, 1, Poly.parse(F, Q), 2, 1)
        vals[Q] = (r.computed.get("valuation"), r.bound, r.verdict, r.computed.get("routes_agree"))
    criterion(f"(valuation, bound, verdict, routes agree): {vals}")
    assert all(v[0] == 9 and v[1] == 5 and v[2] == "PASS" and v[3] for v in vals.values())


@pytest.mark.criterion(8)
def test_ordinary_eigenvalues_are_one(gamma1_t, criterion):
    M = 32
    Qs = [Poly.parse(F, s) for s in ("t", "1+t", "2+t", "1+t^2")]
    bad = []
    for k in range(2, 13):
        v = ordinary_eigenvector(S.u_operator(gamma1_t, k), M)
        for Q in Qs:
            T = K.pad(np.asarray(hecke_matrix(gamma1_t, k, Q).data), M)
            Tv = K.matmul_trunc(F, T, v[:, None], M)[:, 0]
            if not np.array_equal(Tv % 3, v % 3):
                bad.append((k, str(Q)))
    criterion(f"T_Q v = v mod t^32 for k = 2..12, Q in t, 1+t, 2+t, 1+t^2; failures {bad}")
    assert not bad


@pytest.mark.criterion(9)
def test_bounds(criterion):
    D = bound_D(3, 1, 1, 1)
    six = D == SqrtBound.make(Fraction(-1, 2), 1, 6)
    C = bound_C(BoundParams(3, 1, 1, 1))
    family = all(bound_D(3, n, 1, 1) == SqrtBound.make(Fraction(-1, 2), 1, 2 * 3**n) for n in range(1, 5))
    criterion(f"D(1,1,1) = {D}: {six}; C(1,1,1) = {C}; D(n,1,1) closed form for n <= 4: {family}")
    assert six and C == 2 and family and compare_a(1, D) < 0


@pytest.mark.criterion(10)
def test_elementary_divisor_bound(gamma1_t, criterion):
    bad = []
    for k in range(3, 21):
        for c in (None, 0, 1):
            if S.check_eldiv_part(gamma1_t, k, c).verdict != "PASS":
                bad.append((k, c))
    criterion(f"s_i >= i - 1 for U and its chi-parts, k = 3..20; failures {bad}")
    assert not bad


@pytest.mark.criterion(11)
def test_window(gamma1_t, criterion):
    bad = [(k, n) for n in (1, 2) for k in range(3, 11) if S.check_window(gamma1_t, k, n).verdict != "PASS"]
    criterion(f"block congruences for k = 3..10, n = 1, 2; failures {bad}")
    assert not bad


@pytest.mark.criterion(12)
def test_constancy(gamma1_t, criterion):
    bad = []
    for n in (1, 2):
        for k in range(3, 13):
            r = S.check_constancy(gamma1_t, k, k + 3**n, n)
            if r.verdict != "PASS":
                bad.append((k, n, r.computed.get("violations")))
    criterion(f"d(k,a) = d(k+3^n,a) below min(C, k-1), k = 3..12, n = 1, 2; failures {bad}")
    assert not bad


@pytest.mark.criterion(13)
def test_hida(criterion):
    reports = [S.hida_check(F, None, k, 1, 2) for k in range(3, 9)]
    bad = [k for k, r in zip(range(3, 9), reports) if r.verdict != "PASS"]
    criterion(f"ordinary rank equal for t and t^2 with a unique character, k = 3..8; failures {bad}")
    assert not bad


@pytest.mark.criterion(14)
def test_perturbation_suite(criterion):
    trials, failures = 0, []
    seed = 0
    for d0 in (1, 2, 3):
        for n in (1, 2):
            for L in (3, 6, 9, 12):
                r = S.perturb_trial(seed, L, 3, n, d0, trials=21)
                trials += 21
                failures += r.computed["failures"]
                seed += 1
    ked = [S.product_divisor_trial(1000 + i, L, trials=50) for i, L in enumerate((1, 2, 3, 4, 5) * 2)]
    ked_fail = sum(len(r.computed["failures"]) for r in ked)
    criterion(f"{trials} perturbation trials, {len(failures)} failures; 500 product pairs, {ked_fail} failures")
    assert trials >= 500 and not failures and not ked_fail


def _random_rows(rng, n, deg):
    return [[Poly(F, rng.integers(0, 3, deg + 1).tolist()) for _ in range(n)] for _ in range(n)]


@pytest.mark.criterion(15)
def test_oracle_equivalence(criterion):
    rng = np.random.default_rng(2024)
    counts = dict.fromkeys(["charpoly", "resultant", "smith", "newton"], 0)
    for _ in range(200):
        n = int(rng.integers(1, 5))
        rows = _random_rows(rng, n, int(rng.integers(0, 4)))
        M = PolyMatrix.from_rows(F, rows)
        assert charpoly_reciprocal(M) == charpoly_oracle(F, rows)
        counts["charpoly"] += 1
        want = smith_oracle(F, rows)
        got = elementary_divisors(M, cap=80)
        assert all(isinstance(g, AtLeast) if w is None else g == w for g, w in zip(got, want))
        counts["smith"] += 1
        alphas = [Poly(F, rng.integers(0, 3, int(rng.integers(1, 5))).tolist()) for _ in range(int(rng.integers(1, 4)))]
        betas = [Poly(F, rng.integers(0, 3, int(rng.integers(1, 5))).tolist()) for _ in range(int(rng.integers(1, 4)))]
        P1, P2 = split_poly(F, alphas), split_poly(F, betas)
        prod = XPoly(F, [Poly.one(F)])
        for a in alphas:
            for b in betas:
                prod = prod * XPoly(F, [a - b, Poly.one(F)])
        assert resultant_x(P1, P2) == prod
        expect, zeros = diff_oracle(alphas, betas)
        if expect:
            dv = diff_valuations(P1, P2)
            assert dv.polygon.as_dict() == expect and dv.coincident == zeros
        counts["resultant"] += 1
        vals = [None if rng.random() < 0.25 else int(rng.integers(0, 10)) for _ in range(int(rng.integers(2, 6)))]
        vals[0], vals[-1] = int(rng.integers(0, 10)), int(rng.integers(0, 10))
        P = XPoly(F, [Poly.zero(F) if v is None else t**v for v in vals])
        assert newton_polygon(P).as_dict() == hull_oracle(vals)
        counts["newton"] += 1
    criterion(f"instances checked against brute force: {counts}")
    assert min(counts.values()) >= 200
