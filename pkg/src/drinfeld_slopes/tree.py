"""The Bruhat-Tits tree of SL_2 over F_q((1/t)).

A vertex is the coset g * GL_2(O_inf) * K_inf^x of a matrix g over K = F_q(t),
with g acting on the left.  Every coset contains a unique matrix of the form
(t^i, u; 0, 1) where u is a Laurent polynomial in t whose exponents all exceed
i; ``TreeVertex`` stores the pair (i, u).  The standard half-line is
v_i = diag(t^i, 1), i >= 0, a fundamental domain for SL_2(A), and the
standard edges are e_i = (v_i, v_{i+1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .algebra.field import FieldSpec
from .algebra.poly import Poly, all_polys, gcd


class GroupElem:
    """A 2x2 matrix over F_q(t), stored as a polynomial matrix over a denominator.

    ``(a, b, c, d) / den`` with ``den`` monic and no common factor with all
    four entries.
    """

    __slots__ = ("F", "a", "b", "c", "d", "den")

    def __init__(self, a: Poly, b: Poly, c: Poly, d: Poly, den: Poly | None = None):
        F = a.F
        den = Poly.one(F) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = gcd(gcd(gcd(a, b), gcd(c, d)), den)
        if g.degree() > 0:
            a, b, c, d, den = (x.exact_div(g) for x in (a, b, c, d, den))
        lc = den.lc()
        if lc != 1:
            inv = F.inv(lc)
            a, b, c, d, den = (x.scale(inv) for x in (a, b, c, d, den))
        self.F = F
        self.a, self.b, self.c, self.d, self.den = a, b, c, d, den

    @classmethod
    def from_ints(cls, F: FieldSpec, a, b, c, d) -> "GroupElem":
        """Entries given as polynomial strings or integers."""
        conv = [Poly.parse(F, x) if isinstance(x, str) else Poly.from_ints(F, [x]) for x in (a, b, c, d)]
        return cls(*conv)

    @classmethod
    def identity(cls, F: FieldSpec) -> "GroupElem":
        one, zero = Poly.one(F), Poly.zero(F)
        return cls(one, zero, zero, one)

    @classmethod
    def diag(cls, x: Poly, y: Poly) -> "GroupElem":
        zero = Poly.zero(x.F)
        return cls(x, zero, zero, y)

    def entries(self):
        return self.a, self.b, self.c, self.d

    def num_det(self) -> Poly:
        return self.a * self.d - self.b * self.c

    def det(self):
        """Determinant as a (numerator, denominator) pair."""
        return self.num_det(), self.den * self.den

    def is_singular(self) -> bool:
        return self.num_det().is_zero()

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return GroupElem(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.den * other.den)

    def inverse(self) -> "GroupElem":
        det = self.num_det()
        if det.is_zero():
            raise ZeroDivisionError("singular matrix")
        a, b, c, d = self.entries()
        s = self.den
        return GroupElem(d * s, -b * s, -c * s, a * s, det)

    def is_integral(self) -> bool:
        return self.den.degree() == 0

    def in_M2A(self) -> bool:
        return self.is_integral() and not self.is_singular()

    def in_SL2A(self) -> bool:
        return self.is_integral() and self.num_det() == 1

    def in_M_inverse(self) -> bool:
        """True when the inverse has polynomial entries."""
        return self.inverse().is_integral()

    def __eq__(self, other):
        if not isinstance(other, GroupElem):
            return NotImplemented
        return self.entries() == other.entries() and self.den == other.den

    def __hash__(self):
        return hash((self.entries(), self.den))

    def __repr__(self):
        body = f"[{self.a}, {self.b}; {self.c}, {self.d}]"
        return f"GroupElem({body})" if self.den == 1 else f"GroupElem({body} / ({self.den}))"


# -- Laurent tails --------------------------------------------------------------


def _laurent_terms(b: Poly, d: Poly, above: int) -> tuple:
    """Terms c*t^j of the 1/t-expansion of b/d with j > above, as (j, c) pairs."""
    F = b.F
    if b.is_zero():
        return ()
    top = b.degree() - d.degree()
    n = top - above  # number of terms with exponent in (above, top]
    if n <= 0:
        return ()
    # b/d = t^top * B(s)/D(s) with s = 1/t and B, D the reversed coefficient lists
    B = list(reversed(b.coeffs))
    D = list(reversed(d.coeffs))
    inv0 = F.inv(D[0])
    rem = B + [0] * max(0, n - len(B))
    out = []
    for k in range(n):
        ck = F.mul(rem[k], inv0)
        if ck:
            out.append((top - k, ck))
            for j in range(1, len(D)):
                if k + j < n:
                    rem[k + j] = F.sub(rem[k + j], F.mul(ck, D[j]))
    return tuple(sorted(out))


@dataclass(frozen=True)
class TreeVertex:
    """Normal form (t^level, tail; 0, 1) of a vertex; tail is ((exponent, coeff), ...)."""

    F: FieldSpec
    level: int
    tail: tuple = ()

    def matrix(self) -> GroupElem:
        """A polynomial matrix representing this vertex."""
        F = self.F
        lo = min([self.level] + [j for j, _ in self.tail] + [0])
        s = -lo
        u = Poly.zero(F)
        for j, c in self.tail:
            u = u + Poly(F, (0,) * (j + s) + (c,))
        return GroupElem(Poly.t(F, self.level + s), u, Poly.zero(F), Poly.t(F, s))

    def __str__(self):
        return f"({self.level}, {list(self.tail)})"


def vertex_of(g: GroupElem) -> TreeVertex:
    """The vertex g * v_0."""
    a, b, c, d = g.entries()
    if g.is_singular():
        raise ValueError("singular matrix does not define a vertex")
    if c.degree() > d.degree():
        a, b, c, d = b, a, d, c
    det = a * d - b * c
    level = det.degree() - 2 * d.degree()
    return TreeVertex(g.F, level, _laurent_terms(b, d, level))


def std_vertex(F: FieldSpec, i: int) -> TreeVertex:
    return TreeVertex(F, i, ())


@dataclass(frozen=True)
class OrientedEdge:
    origin: TreeVertex
    terminus: TreeVertex

    def reverse(self) -> "OrientedEdge":
        return OrientedEdge(self.terminus, self.origin)

    def __neg__(self):
        return self.reverse()

    def __str__(self):
        return f"{self.origin} -> {self.terminus}"


def std_edge(F: FieldSpec, i: int) -> OrientedEdge:
    return OrientedEdge(std_vertex(F, i), std_vertex(F, i + 1))


def act_vertex(g: GroupElem, v: TreeVertex) -> TreeVertex:
    if g.is_singular():
        raise ValueError("singular matrix cannot act")
    return vertex_of(g * v.matrix())


def act_edge(g: GroupElem, e: OrientedEdge) -> OrientedEdge:
    return OrientedEdge(act_vertex(g, e.origin), act_vertex(g, e.terminus))


def act(g: GroupElem, x):
    return act_edge(g, x) if isinstance(x, OrientedEdge) else act_vertex(g, x)


def neighbors(v: TreeVertex) -> list:
    """The q + 1 vertices adjacent to v."""
    F = v.F
    g = v.matrix()
    out = [act_vertex(g, TreeVertex(F, 1, ()))]
    for c in F.elements():
        # (t^-1, c; 0, 1) scaled by t
        h = GroupElem(Poly.one(F), Poly.t(F).scale(c) if c else Poly.zero(F), Poly.zero(F), Poly.t(F))
        out.append(act_vertex(g, vertex_of(h)))
    return out


# -- reduction to the standard half-line ----------------------------------------


class ReductionError(RuntimeError):
    pass


def _col_degree(y) -> int:
    return max(y[0].degree(), y[1].degree())


def _lead(y, D) -> tuple:
    return (y[0].coeff(D), y[1].coeff(D))


def reduce_vertex(v: TreeVertex):
    """Return (i, g) with g in SL_2(A) and g * v = v_i.

    Rank-two basis reduction: the columns of adj(M) * B (M a matrix of v,
    B unimodular) are reduced until their leading coefficient vectors are
    independent; then v = B * v_i with i the difference of column degrees.
    """
    F = v.F
    M = v.matrix()
    a, b, c, d = M.entries()
    adj = (d, -b, -c, a)
    one, zero = Poly.one(F), Poly.zero(F)
    b1, b2 = (one, zero), (zero, one)

    def img(x):
        return (adj[0] * x[0] + adj[1] * x[1], adj[2] * x[0] + adj[3] * x[1])

    y1, y2 = img(b1), img(b2)
    budget = 4 * (max(_col_degree(y1), _col_degree(y2)) + abs(v.level)) + 16
    for _ in range(budget):
        if _col_degree(y1) > _col_degree(y2):
            b1, b2 = b2, (-b1[0], -b1[1])
            y1, y2 = y2, (-y1[0], -y1[1])
        D1, D2 = _col_degree(y1), _col_degree(y2)
        l1, l2 = _lead(y1, D1), _lead(y2, D2)
        if F.sub(F.mul(l1[0], l2[1]), F.mul(l1[1], l2[0])) != 0:
            B = GroupElem(b1[0], b2[0], b1[1], b2[1])
            return D2 - D1, B.inverse()
        k = 0 if l1[0] else 1
        alpha = F.mul(l2[k], F.inv(l1[k]))
        m = Poly.t(F, D2 - D1).scale(alpha)
        b2 = (b2[0] - m * b1[0], b2[1] - m * b1[1])
        y2 = (y2[0] - m * y1[0], y2[1] - m * y1[1])
    raise ReductionError(f"vertex reduction did not terminate for {v}")


@cache
def _sl2_fq(F: FieldSpec) -> tuple:
    out = []
    q = F.q
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    if F.sub(F.mul(a, d), F.mul(b, c)) == 1:
                        out.append(GroupElem(*(Poly.const(F, x) for x in (a, b, c, d))))
    return tuple(out)


@cache
def _level_one_movers(F: FieldSpec) -> tuple:
    """Pairs (s, s * v_1) with s in SL_2(F_q) covering the q + 1 neighbours of v_0."""
    seen = {}
    for s in _sl2_fq(F):
        w = act_vertex(s, std_vertex(F, 1))
        seen.setdefault(w, s)
    return tuple((s, w) for w, s in seen.items())


def reduce_edge(e: OrientedEdge):
    """Return (i, forward, g) with g in SL_2(A) and g * e = e_i (or -e_i)."""
    F = e.origin.F
    i, g = reduce_vertex(e.origin)
    w = act_vertex(g, e.terminus)
    if i == 0:
        for s, sv in _level_one_movers(F):
            if sv == w:
                return 0, True, s.inverse() * g
        raise ReductionError(f"terminus of {e} is not adjacent to its origin")
    if w == std_vertex(F, i + 1):
        return i, True, g
    j, fwd, h = reduce_edge(e.reverse())
    if not fwd or j != i - 1:
        raise ReductionError(f"inconsistent reduction of {e}")
    return j, False, h


@cache
def std_stabilizer(F: FieldSpec, i: int, kind: str = "vertex") -> tuple:
    """Full SL_2(A)-stabiliser of v_i (kind='vertex') or e_i (kind='edge')."""
    if kind not in ("vertex", "edge"):
        raise ValueError("kind must be 'vertex' or 'edge'")
    if i < 0:
        raise ValueError("level must be >= 0")
    if i == 0 and kind == "vertex":
        return _sl2_fq(F)
    bdeg = 0 if i == 0 else i
    out = []
    for a in F.units():
        ainv = F.inv(a)
        for b in all_polys(F, bdeg):
            out.append(GroupElem(Poly.const(F, a), b, Poly.zero(F), Poly.const(F, ainv)))
    return tuple(out)
