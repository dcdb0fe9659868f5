"""Slope tables and mechanical checks of the slope theorems."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import kernels as K
from .algebra.field import FieldSpec
from .algebra.linalg import AtLeast, charpoly_reciprocal, determinant, elementary_divisors
from .algebra.matrix import PolyMatrix
from .algebra.newton import newton_polygon
from .algebra.poly import Poly
from .algebra.resultant import diff_valuations
from .algebra.xpoly import XPoly
from .bounds import BoundParams, bound_C, compare_a, gm_condition
from .hecke import chi_part_matrix, chi_projector, hecke_matrix, weight_reduction_matrix
from .level import QuotientData


# -- reports ---------------------------------------------------------------------


@dataclass
class Report:
    claim: str
    params: dict
    computed: dict = field(default_factory=dict)
    bound: object = None
    verdict: str = "PASS"

    @property
    def ok(self) -> bool:
        return self.verdict != "FAIL"

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, AtLeast):
        return repr(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (Poly, XPoly)):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


# -- slope tables ------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeTable:
    level: str
    k: int
    chi: int | None
    entries: tuple  # ((slope, multiplicity), ...) with slopes increasing
    dim: int

    def mult(self, a) -> int:
        a = Fraction(a)
        return sum(m for s, m in self.entries if s == a)

    @property
    def deficiency(self) -> int:
        """Eigenvalues equal to zero (formal slope infinity)."""
        return self.dim - sum(m for _, m in self.entries)

    def rows(self):
        chi = "" if self.chi is None else self.chi
        return [(self.k, chi, s.numerator, s.denominator, m) for s, m in self.entries]


def table_from_charpoly(P: XPoly, dim: int, level="", k=0, chi=None) -> SlopeTable:
    np_ = newton_polygon(P)
    return SlopeTable(level, k, chi, tuple(np_.segments), dim)


def u_operator(QD: QuotientData, k: int) -> PolyMatrix:
    return hecke_matrix(QD, k, Poly.t(QD.F))


def operator_on_part(QD: QuotientData, k: int, op: PolyMatrix, chi: int | None):
    """(matrix, precision) of op on the whole space or on a chi-part."""
    if chi is None:
        return op, None
    return chi_part_matrix(QD, k, chi, op)


def u_charpoly(QD: QuotientData, k: int, chi: int | None = None) -> XPoly:
    key = ("charpoly", k, chi)
    if key not in QD.cache:
        M, prec = operator_on_part(QD, k, u_operator(QD, k), chi)
        P = charpoly_reciprocal(M)
        if prec is not None:
            P = XPoly(P.F, [c.truncate(prec) for c in P.coeffs])
        QD.cache[key] = (P, M.rows)
    return QD.cache[key]


def slope_decomposition(QD: QuotientData, k: int, chi: int | None = None) -> SlopeTable:
    """Multiplicities d(k, a) (or d(k, chi, a)) from the Newton polygon of U."""
    P, dim = u_charpoly(QD, k, chi)
    return table_from_charpoly(P, dim, QD.level.describe(), k, chi)


# -- elementary divisors and windows -------------------------------------------------


def check_eldiv_bound(M: PolyMatrix, d: int) -> Report:
    """s_i >= floor((i - 1) / d) for the ascending elementary divisors s_i."""
    s = elementary_divisors(M)
    bad = [(i + 1, s[i], i // d) for i in range(len(s)) if not s[i] >= i // d]
    return Report(
        claim="elementary divisors s_i >= floor((i-1)/d)",
        params={"dim": M.rows, "d": d},
        computed={"elementary_divisors": s, "violations": bad},
        bound=[i // d for i in range(len(s))],
        verdict="FAIL" if bad else "PASS",
    )


def check_eldiv_part(QD: QuotientData, k: int, chi: int | None = None) -> Report:
    """Elementary divisor bound for U on the whole space or on a chi-part.

    The chi-part is computed to a precision above both the charpoly degree and
    the largest bound floor((L-1)/d), so saturated divisors still decide the check.
    """
    U = u_operator(QD, k)
    if chi is None:
        M = U
    else:
        full = charpoly_reciprocal(U)
        P = max([c.degree() for c in full.coeffs] + [0, U.rows]) + 1
        M, _ = chi_part_matrix(QD, k, chi, U, precision=P)
    if M.rows == 0:
        rep = Report("elementary divisors s_i >= floor((i-1)/d)", {"dim": 0, "d": QD.d}, {}, [], "PASS")
    else:
        rep = check_eldiv_bound(M, QD.d)
    rep.params.update({"k": k, "chi": chi})
    return rep


def check_window(QD: QuotientData, k: int, n: int, chi: int | None = None) -> Report:
    """Block shape of U in weight k + N against U in weight k (N = p^n, or p^n (q^d - 1) with chi).

    Lower-left block = 0 and lower-right block = U^(k) modulo t^(p^n); the
    upper-left block is divisible by t^(k-1).
    """
    F, d = QD.F, QD.d
    pn = F.p**n
    N = pn if chi is None else pn * (F.q**d - 1)
    kp = k + N
    Ub, Us = u_operator(QD, kp), u_operator(QD, k)
    if chi is not None:
        Ub = Ub @ chi_projector(QD, kp, chi)
        Us = Us @ chi_projector(QD, k, chi)
    cut = d * N
    total = d * (kp - 1)
    up, low = range(cut), range(cut, total)
    lower_left = Ub.submatrix(low, up)
    lower_right = Ub.submatrix(low, low)
    upper_left = Ub.submatrix(up, up)
    rho = weight_reduction_matrix(F, k, N, d)
    checks = {
        "lower_left_vanishes": lower_left.divisible_by_t_power(pn),
        "lower_right_matches": lower_right.congruent(Us, pn),
        "upper_left_divisible": upper_left.divisible_by_t_power(k - 1),
        "reduction_commutes": (rho @ Ub).congruent(Us @ rho, pn),
    }
    return Report(
        claim="window shape of U in weight k + N",
        params={"k": k, "n": n, "N": N, "chi": chi, "level": QD.level.describe()},
        computed=checks,
        bound={"modulus_power": pn, "upper_left_power": k - 1},
        verdict="PASS" if all(checks.values()) else "FAIL",
    )


def check_constancy(
    QD: QuotientData, k: int, kprime: int, n: int, a_max=None, chi: int | None = None
) -> Report:
    """d(k', a) = d(k, a) for every a < min(C(n, d, eps), k - 1, a_max)."""
    F, d = QD.F, QD.d
    period = F.p**n if chi is None else F.p**n * (F.q**d - 1)
    params = {"k": k, "kprime": kprime, "n": n, "chi": chi, "level": QD.level.describe()}
    if kprime < k or (kprime - k) % period:
        return Report("slope constancy", params, {"error": "weights not congruent"}, None, "SKIP")
    t1 = slope_decomposition(QD, k, chi)
    t2 = slope_decomposition(QD, kprime, chi)
    eps = t1.mult(0)
    C = bound_C(BoundParams(F.p, n, d, eps))
    bound = min(C, Fraction(k - 1))
    if a_max is not None:
        bound = min(bound, Fraction(a_max))
    slopes = sorted({s for s, _ in t1.entries + t2.entries if s < bound})
    bad = [(s, t1.mult(s), t2.mult(s)) for s in slopes if t1.mult(s) != t2.mult(s)]
    return Report(
        claim="d(k',a) = d(k,a) below the bound",
        params=params,
        computed={"table_k": t1.entries, "table_kprime": t2.entries, "violations": bad, "eps": eps},
        bound=bound,
        verdict="FAIL" if bad else "PASS",
    )


# -- Hida constancy in r --------------------------------------------------------------


def hida_check(F: FieldSpec, n_poly: Poly | None, k: int, r: int, rprime: int, builder=None) -> Report:
    """Ordinary multiplicity is the same for levels t^r and t^r'; one character carries it."""
    from .level import LevelSpec, build_quotient

    builder = builder or (lambda L: build_quotient(L))
    computed = {}
    ords = []
    unique_ok = True
    for rr in (r, rprime):
        QD = builder(LevelSpec.gamma0p(F, n_poly, rr))
        total = slope_decomposition(QD, k).mult(0)
        per_chi = {c: slope_decomposition(QD, k, c).mult(0) for c in range(F.q - 1)}
        carriers = [c for c, m in per_chi.items() if m]
        unique_ok &= len(carriers) == 1 and per_chi[carriers[0]] == 1
        ords.append(total)
        computed[f"r={rr}"] = {"ordinary": total, "ordinary_by_chi": per_chi, "d": QD.d}
    same = ords[0] == ords[1]
    computed["ordinary_equal"] = same
    computed["unique_character"] = unique_ok
    return Report(
        claim="d(k,0) independent of r and carried by a unique character",
        params={"k": k, "r": r, "rprime": rprime, "n": str(n_poly) if n_poly is not None else "1"},
        computed=computed,
        verdict="PASS" if same and unique_ok else "FAIL",
    )


# -- perturbation trials ------------------------------------------------------------------


def _random_poly_matrix(F: FieldSpec, rng, rows: int, cols: int, deg: int) -> np.ndarray:
    return rng.integers(0, F.p, size=(rows, cols, deg + 1, F.e), dtype=np.int64)


def _unit_constant_matrix(F: FieldSpec, rng, L: int, deg: int) -> np.ndarray:
    """Random matrix over F_q[t] whose constant term is invertible over F_q."""
    while True:
        R = _random_poly_matrix(F, rng, L, L, deg)
        R0 = PolyMatrix(F, R[:, :, :1])
        if determinant(R0).coeff(0):
            return R


def _t_power_diagonal(F: FieldSpec, exps) -> np.ndarray:
    L = len(exps)
    D = K.zeros(F, (L, L), max(exps) + 1)
    for i, x in enumerate(exps):
        D[i, i, x, 0] = 1
    return D


def _slopes_of(M: PolyMatrix) -> SlopeTable:
    return table_from_charpoly(charpoly_reciprocal(M), M.rows)


def perturb_trial(
    seed: int,
    L: int,
    p: int,
    n: int,
    d0: int,
    trials: int = 1,
    perturb_power: int | None = None,
    deg: int = 2,
    gm: bool = True,
) -> Report:
    """Random B = R diag(t^floor(i/d0)) and B' = B + t^(p^n) E: compare slopes below the bound.

    Slopes a < C(n, d0, eps0) must have equal multiplicity.  When the
    Gouvea-Mazur condition holds, every a <= n is compared as well.
    ``perturb_power`` replaces p^n as the size of the perturbation (negative
    controls).
    """
    F = FieldSpec(p)
    rng = np.random.default_rng(seed)
    power = p**n if perturb_power is None else perturb_power
    D = _t_power_diagonal(F, [i // d0 for i in range(L)])
    failures = []
    for trial in range(trials):
        R = _unit_constant_matrix(F, rng, L, deg)
        B = PolyMatrix(F, K.matmul(F, R, D))
        E = _random_poly_matrix(F, rng, L, L, deg)
        Bp = B + PolyMatrix(F, K.shift(E, power))
        s, sp = _slopes_of(B), _slopes_of(Bp)
        eps0 = s.mult(0)
        C = bound_C(BoundParams(p, n, d0, eps0))
        compared = {a for a, _ in s.entries + sp.entries if compare_a(a, C) < 0}
        if gm and gm_condition(BoundParams(p, n, d0, eps0)):
            compared |= {a for a, _ in s.entries + sp.entries if a <= n}
        for a in sorted(compared):
            if s.mult(a) != sp.mult(a):
                failures.append({"trial": trial, "slope": a, "B": s.mult(a), "B_prime": sp.mult(a)})
    return Report(
        claim="slope multiplicities of B and B' agree below the bound",
        params={"seed": seed, "L": L, "p": p, "n": n, "d0": d0, "trials": trials, "perturbation": power},
        computed={"failures": failures},
        verdict="FAIL" if failures else "PASS",
    )


def product_divisor_trial(seed: int, L: int, p: int = 3, trials: int = 1, deg: int = 2, cap: int = 40) -> Report:
    """Elementary divisors of AB and BA dominate those of A, index by index."""
    F = FieldSpec(p)
    rng = np.random.default_rng(seed)
    failures = []
    for trial in range(trials):
        exps = sorted(int(x) for x in rng.integers(0, 4, size=L))
        A = PolyMatrix(F, K.matmul(F, _random_poly_matrix(F, rng, L, L, deg), _t_power_diagonal(F, exps)))
        B = PolyMatrix(F, _random_poly_matrix(F, rng, L, L, deg))
        sA = elementary_divisors(A, cap=cap)
        for name, M in (("AB", A @ B), ("BA", B @ A)):
            sM = elementary_divisors(M, cap=cap)
            for i, (x, y) in enumerate(zip(sA, sM)):
                if not y >= x:
                    failures.append({"trial": trial, "product": name, "index": i + 1, "A": x, name: y})
    return Report(
        claim="elementary divisors of products dominate the factor",
        params={"seed": seed, "L": L, "p": p, "trials": trials},
        computed={"failures": failures},
        verdict="FAIL" if failures else "PASS",
    )


# -- slope-a eigen-data over truncated series ----------------------------------------------


def _series(F: FieldSpec, f: Poly, P: int) -> np.ndarray:
    return K.pad(K.from_poly(F, f.truncate(P)), P)


def _horner(F: FieldSpec, coeffs: list, x: np.ndarray, P: int) -> np.ndarray:
    acc = K.zeros(F, (), P)
    for c in reversed(coeffs):
        acc = K.add(F, K.mul_trunc(F, acc, x, P), c)
    return acc


def _series_valuation(a: np.ndarray) -> int | None:
    v = int(K.valuations(a, cap=-1))
    return None if v < 0 else v


def ordinary_charpoly(U: PolyMatrix) -> XPoly:
    """Monic polynomial whose roots are the eigenvalues of U."""
    return charpoly_reciprocal(U).reversed(U.rows)


def slope_root(f: XPoly, a: int, P: int) -> np.ndarray:
    """The unique root of slope a of the monic f, modulo t^P (Hensel lifting).

    Substituting X = t^a Y and removing the content leaves a polynomial whose
    reduction mod t has the unit parts of the slope-a roots as its nonzero
    roots; exactly one simple root is required.
    """
    F = f.F
    scaled = [c.shift(a * i) for i, c in enumerate(f.coeffs)]
    m = min(c.valuation() for c in scaled if not c.is_zero())
    g = [c.shift(-m) for c in scaled]
    dg = [c.scale(F.from_int(i)) for i, c in enumerate(g)][1:]

    def ev(cs, u):
        acc = 0
        for c in reversed(cs):
            acc = F.add(F.mul(acc, u), c.coeff(0))
        return acc

    roots = [u for u in F.units() if ev(g, u) == 0]
    if len(roots) != 1 or ev(dg, roots[0]) == 0:
        raise ArithmeticError(f"slope {a} does not carry exactly one simple eigenvalue")
    target = max(P - a, 1)
    G = [_series(F, c, target) for c in g]
    dG = [_series(F, c, target) for c in dg]
    u = K.zeros(F, (), 1)
    u[0] = F.coords(roots[0])
    prec = 1
    while prec < target:
        prec = min(2 * prec, target)
        u = K.pad(u, prec)
        val = _horner(F, [x[:prec] for x in G], u, prec)
        der = _horner(F, [x[:prec] for x in dG], u, prec)
        u = K.sub(F, u, K.mul_trunc(F, val, K.series_inverse(F, der, prec), prec))
    return K.pad(K.shift(K.pad(u, target), a), P)


def slope_eigenvalue(QD: QuotientData, k: int, a: int, Q: Poly, P: int):
    """(lambda_Q, precision) for the unique slope-a U-eigenform in weight k.

    lambda_Q = tr(T_Q R(U)) / f'(lambda) where f is the U-charpoly,
    lambda its slope-a root and R = f / (X - lambda); R(U) is a rank one
    operator onto the slope-a eigenline.
    """
    F = QD.F
    U = u_operator(QD, k)
    f = ordinary_charpoly(U)
    lam = slope_root(f, a, P)
    # synthetic division f = (X - lam) R
    fc = [_series(F, c, P) for c in f.coeffs]
    n = f.degree()
    r = [None] * n
    r[n - 1] = fc[n]
    for i in range(n - 1, 0, -1):
        r[i - 1] = K.add(F, fc[i], K.mul_trunc(F, lam, r[i], P))
    N = U.rows
    Ua = K.pad(np.asarray(U.data), P)
    acc = K.zeros(F, (N, N), P)
    eye = np.arange(N)
    for c in reversed(r):
        acc = K.matmul_trunc(F, acc, Ua, P)
        acc[eye, eye] = K.add(F, acc[eye, eye], c[None])
    T = K.pad(np.asarray(hecke_matrix(QD, k, Q).data), P)
    num = K.mul_trunc(F, T, np.swapaxes(acc, 0, 1), P).sum(axis=(0, 1)) % F.p
    den = _horner(F, r, lam, P)
    v = _series_valuation(den)
    if v is None:
        raise ArithmeticError("precision too small to separate the slope-a eigenvalue")
    vn = _series_valuation(num)
    if vn is not None and vn < v:
        raise ArithmeticError("trace projection is not divisible by f'(lambda)")
    Pout = P - v
    quotient = K.mul_trunc(F, num[v:], K.series_inverse(F, den[v:], Pout), Pout)
    return quotient, Pout


def _recognise_polynomial(F: FieldSpec, s: np.ndarray, f_Q: XPoly):
    """The truncated series as a polynomial, if that polynomial is an exact root of f_Q."""
    cand = K.to_poly(F, K.trim(s))
    if cand.degree() > s.shape[-2] // 2:
        return None
    return cand if f_Q(cand).is_zero() else None


def family_congruence(
    QD: QuotientData,
    k1: int,
    k2: int,
    a: int,
    Q: Poly,
    n: int,
    nprime: int,
    precision: int | None = None,
    retries: int = 3,
) -> Report:
    """Check v(lambda_Q(F_1) - lambda_Q(F_2)) > p^n - p^n' - a for slope-a eigenforms."""
    F, d = QD.F, QD.d
    p = F.p
    params = {"k1": k1, "k2": k2, "a": a, "Q": str(Q), "n": n, "nprime": nprime, "level": QD.level.describe()}
    t1 = slope_decomposition(QD, k1)
    eps = t1.mult(0)
    bound = p**n - p**nprime - a
    hyp = {
        "d(k1,a)=1": t1.mult(a) == 1,
        "a<min(C(n),k1-1)": compare_a(a, bound_C(BoundParams(p, n, d, eps))) < 0 and a < k1 - 1,
        "p^n-p^n'-a>=0": bound >= 0,
        "a<C(n')": compare_a(a, bound_C(BoundParams(p, nprime, d, eps))) < 0,
        "k2=k1 mod p^n": k2 >= k1 and (k2 - k1) % p**n == 0,
    }
    if not all(hyp.values()):
        return Report("family congruence", params, {"hypotheses": hyp}, bound, "HYPOTHESIS_FAILED")
    t2 = slope_decomposition(QD, k2)
    computed = {"hypotheses": hyp, "d(k2,a)": t2.mult(a)}
    if t2.mult(a) != 1:
        return Report("family congruence", params, computed, bound, "FAIL")
    if k1 == k2:
        computed["valuation"] = math.inf
        return Report("family congruence", params, computed, bound, "PASS")
    if precision is None:
        eld = [x for x in elementary_divisors(u_operator(QD, k2)) if isinstance(x, int)]
        precision = 2 * (bound + max(eld + [0])) + 8
    P = precision
    for _ in range(retries + 1):
        l1, P1 = slope_eigenvalue(QD, k1, a, Q, P)
        l2, P2 = slope_eigenvalue(QD, k2, a, Q, P)
        Pc = min(P1, P2)
        diff = K.sub(F, l1[:Pc], l2[:Pc])
        v = _series_valuation(diff)
        if v is not None:
            break
        P *= 2
    computed["precision"] = P
    if v is None:
        computed["valuation"] = AtLeast(Pc)
        verdict = "PASS" if Pc > bound else "FAIL"
        return Report("family congruence", params, computed, bound, verdict)
    computed["valuation"] = v
    # second route: exact eigenvalues and the Newton polygon of root differences
    fQ1 = ordinary_charpoly(hecke_matrix(QD, k1, Q))
    exact1 = _recognise_polynomial(F, l1, fQ1)
    if exact1 is not None:
        computed["lambda_Q_k1"] = exact1
        fQ2 = ordinary_charpoly(hecke_matrix(QD, k2, Q))
        dv = diff_valuations(XPoly.linear_root(exact1), fQ2)
        computed["difference_slopes"] = dv.polygon.as_dict()
        computed["routes_agree"] = Fraction(v) in dv.polygon.as_dict()
    exact2 = _recognise_polynomial(F, l2, ordinary_charpoly(hecke_matrix(QD, k2, Q)))
    if exact2 is not None:
        computed["lambda_Q_k2"] = exact2
    ok = v > bound and computed.get("routes_agree", True)
    return Report("family congruence", params, computed, bound, "PASS" if ok else "FAIL")
