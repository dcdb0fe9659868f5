"""Slow, independent reference implementations used to check the fast paths."""

from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations

from drinfeld_slopes.algebra import INF, Poly, XPoly


def perm_sign(perm) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def leibniz_det(rows, one):
    """Determinant by the permutation expansion; ``one`` is the ring unit."""
    n = len(rows)
    total = one - one
    for perm in permutations(range(n)):
        term = one
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term if perm_sign(perm) > 0 else total - term
    return total


def charpoly_oracle(F, rows):
    """det(I - X M) with entries taken as polynomials in X over F_q[t]."""
    n = len(rows)
    one = XPoly(F, [Poly.one(F)])
    ent = [
        [XPoly(F, [Poly.one(F) if i == j else Poly.zero(F), -rows[i][j]]) for j in range(n)]
        for i in range(n)
    ]
    return leibniz_det(ent, one)


def smith_oracle(F, rows):
    """Elementary divisor valuations from minimal valuations of k x k minors."""
    n = len(rows)
    one = Poly.one(F)
    prev, out = 0, []
    for k in range(1, n + 1):
        best = INF
        for rs in combinations(range(n), k):
            for cs in combinations(range(n), k):
                m = leibniz_det([[rows[r][c] for c in cs] for r in rs], one)
                best = min(best, m.valuation())
        if best == INF:
            out.extend([None] * (n - k + 1))
            return out
        out.append(best - prev)
        prev = best
    return out


def hull_oracle(vals):
    """Slope multiplicities of the lower convex hull of (i, vals[i]) (None = missing point)."""
    pts = [(i, Fraction(v)) for i, v in enumerate(vals) if v is not None]
    if len(pts) < 2:
        return {}
    x0, x1 = pts[0][0], pts[-1][0]

    def h(x):
        best = None
        for (i, a) in pts:
            for (j, b) in pts:
                if i <= x <= j and i < j:
                    val = a + (b - a) * Fraction(x - i, j - i)
                elif i == j == x:
                    val = a
                else:
                    continue
                best = val if best is None else min(best, val)
        return best

    steps = Counter(h(x + 1) - h(x) for x in range(x0, x1))
    return dict(steps)


def diff_oracle(alphas, betas):
    """Valuations of the pairwise differences beta - alpha (zeros counted apart)."""
    vals = Counter()
    zeros = 0
    for a in alphas:
        for b in betas:
            d = b - a
            if d.is_zero():
                zeros += 1
            else:
                vals[Fraction(d.valuation())] += 1
    return dict(vals), zeros


def split_poly(F, roots):
    out = XPoly(F, [Poly.one(F)])
    for r in roots:
        out = out * XPoly.linear_root(r)
    return out
