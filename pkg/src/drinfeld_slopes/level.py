"""Congruence subgroups of SL_2(A) and the data needed to evaluate cocycles.

The group attached to a ``LevelSpec`` is

    Gamma = { g in SL_2(A) : g = (1 *; 0 1) mod n,
                             g mod t^r upper triangular with diagonal in Theta }

where Theta is a subgroup of 1 + t(A/t^r).  Everything is computed through
reduction modulo m = n t^r.  Cosets of Gamma inside Gamma_1(t) are labelled by
left orbits of the image H of Gamma on the image H_1 of Gamma_1(t).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra.field import FieldSpec
from .algebra.poly import Poly, all_polys, gcd, is_irreducible, xgcd
from .tree import (
    GroupElem,
    OrientedEdge,
    TreeVertex,
    act_edge,
    act_vertex,
    neighbors,
    reduce_edge,
    reduce_vertex,
    std_edge,
    std_stabilizer,
)

LABEL_BUDGET = 200_000


class LevelError(ValueError):
    pass


class BudgetError(RuntimeError):
    pass


def _residues(F: FieldSpec, deg: int):
    return list(all_polys(F, deg - 1)) if deg > 0 else [Poly.zero(F)]


@dataclass(frozen=True)
class LevelSpec:
    """Level data (n, r, Theta); Theta is stored as a frozenset of residues mod t^r."""

    F: FieldSpec
    n: Poly
    r: int
    theta: frozenset = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        F = self.F
        if self.r < 1:
            raise LevelError("r must be >= 1")
        if self.n.is_zero() or self.n.coeff(0) == 0:
            raise LevelError(f"n = {self.n} must be coprime to t")
        n = self.n.monic()
        object.__setattr__(self, "n", n)
        tr = Poly.t(F, self.r)
        gens = [Poly.one(F)] if self.theta is None else [g % tr for g in self.theta]
        for g in gens:
            if g.coeff(0) != 1:
                raise LevelError(f"theta generator {g} is not 1 mod t")
        # close under multiplication (finite group)
        group = {Poly.one(F)}
        frontier = list(group)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = (x * g) % tr
                if y not in group:
                    group.add(y)
                    frontier.append(y)
        object.__setattr__(self, "theta", frozenset(group))

    @classmethod
    def gamma1(cls, F: FieldSpec, n: Poly | None = None, r: int = 1) -> "LevelSpec":
        """Gamma_1(n t^r) (Theta trivial)."""
        return cls(F, Poly.one(F) if n is None else n, r)

    @classmethod
    def gamma0p(cls, F: FieldSpec, n: Poly | None = None, r: int = 1) -> "LevelSpec":
        """Theta = 1 + t(A/t^r): the group Gamma_1(n) meet Gamma_0^p(t^r)."""
        full = [Poly.one(F) + Poly.t(F) * f for f in _residues(F, r - 1)]
        return cls(F, Poly.one(F) if n is None else n, r, frozenset(full))

    @property
    def m(self) -> Poly:
        return self.n * Poly.t(self.F, self.r)

    @property
    def theta_full(self) -> bool:
        return len(self.theta) == self.F.q ** (self.r - 1)

    def describe(self) -> str:
        kind = "gamma1" if len(self.theta) == 1 else ("gamma0p" if self.theta_full else "theta")
        return f"{kind}(n={self.n}, r={self.r}, |Theta|={len(self.theta)})"

    # -- membership ---------------------------------------------------------

    def member_mod(self, x) -> bool:
        """Membership test for a residue matrix (a, b, c, d) modulo m."""
        a, b, c, d = x
        n, F = self.n, self.F
        if n.degree() > 0:
            if (a - 1) % n or c % n or (d - 1) % n:
                return False
        tr = Poly.t(F, self.r)
        if c % tr:
            return False
        return (a % tr) in self.theta and (d % tr) in self.theta

    def member(self, g: GroupElem) -> bool:
        if not g.in_SL2A():
            raise LevelError(f"{g} is not in SL_2(A)")
        return self.member_mod(reduce_mod(g, self.m))


def parse_level(F: FieldSpec, text: str) -> LevelSpec:
    """Parse ``gamma1:<poly>[,<poly>^r]``, ``gamma0p:<poly>^r`` or ``theta:<poly>:<g1>;<g2>``.

    A single polynomial is split as n * t^r with r its t-adic valuation;
    ``gamma1:n,t^r`` gives the two factors separately.
    """
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if not rest:
        raise LevelError(f"bad level {text!r}")

    def split(poly_text):
        parts = [Poly.parse(F, s) for s in poly_text.split(",")]
        if len(parts) == 2:
            n, tr = parts
            r = tr.valuation()
            if tr != Poly.t(F, r):
                raise LevelError(f"second factor of {poly_text!r} must be a power of t")
            return n, r
        if len(parts) != 1:
            raise LevelError(f"bad level modulus {poly_text!r}")
        P = parts[0]
        r = P.valuation()
        if not isinstance(r, int) or r < 1:
            raise LevelError(f"level modulus {P} must be divisible by t")
        return P.shift(-r), r

    if kind == "gamma1":
        n, r = split(rest)
        return LevelSpec.gamma1(F, n, r)
    if kind == "gamma0p":
        n, r = split(rest)
        return LevelSpec.gamma0p(F, n, r)
    if kind == "theta":
        mod_text, _, gens_text = rest.partition(":")
        n, r = split(mod_text)
        gens = [Poly.parse(F, g) for g in gens_text.split(";") if g.strip()]
        return LevelSpec(F, n, r, frozenset(gens))
    raise LevelError(f"unknown level kind {kind!r}")


# -- residues mod m -------------------------------------------------------------


def reduce_mod(g: GroupElem, m: Poly) -> tuple:
    return tuple(x % m for x in g.entries())


def _mul_mod(x, y, m):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % m, (a * f + b * h) % m, (c * e + d * g) % m, (c * f + d * h) % m)


def _inv_mod(x, m):
    a, b, c, d = x
    return (d, (-b) % m, (-c) % m, a)


def lift_sl2(x, m: Poly) -> GroupElem:
    """Lift a residue matrix of determinant 1 modulo m to SL_2(A)."""
    F = m.F
    a, b, c, d = (y % m for y in x)
    if (a * d - b * c - 1) % m:
        raise LevelError("residue matrix does not have determinant 1")
    if a * d - b * c == 1:
        return GroupElem(a, b, c, d)
    c1 = c if c else m
    a1 = None
    for deg in range(0, 8):
        for y in all_polys(F, deg):
            cand = a + m * y
            if gcd(cand, c1) == 1:
                a1 = cand
                break
        if a1 is not None:
            break
    if a1 is None:
        raise LevelError("could not make the first column unimodular")
    g, u, v = xgcd(a1, c1)  # u a1 + v c1 = 1
    b0, d0 = -v, u
    xp, yp = b - b0, d - d0
    s = (d0 * xp - b0 * yp) % m
    out = GroupElem(a1, b0 + s * a1, c1, d0 + s * c1)
    assert out.in_SL2A() and reduce_mod(out, m) == (a, b, c, d)
    return out


def crt(residues, moduli) -> Poly:
    """Chinese remainder theorem for pairwise coprime moduli."""
    F = moduli[0].F
    x, M = Poly.zero(F), Poly.one(F)
    for r, mod in zip(residues, moduli):
        g, u, v = xgcd(M, mod)  # u M + v mod = 1
        x = (x + (r - x) * u * M) % (M * mod)
        M = M * mod
    return x


# -- quotient data ----------------------------------------------------------------

def weyl(F: FieldSpec) -> GroupElem:
    one, zero = Poly.one(F), Poly.zero(F)
    return GroupElem(zero, -one, one, zero)


def basic_edge(F: FieldSpec) -> OrientedEdge:
    """The Gamma_1(t)-stable edge w * e_0 whose translates carry the cocycle basis."""
    return act_edge(weyl(F), std_edge(F, 0))


@dataclass
class EdgeClass:
    """``edge = sign * gamma * basis_edges[rep]`` with gamma in Gamma."""

    rep: int
    sign: int
    gamma: GroupElem


@dataclass
class QuotientData:
    level: LevelSpec
    depth: int
    d: int
    deltas: list  # coset representatives of Gamma in Gamma_1(t), deltas[0] = 1
    label_of: dict  # residue of an element of Gamma_1(t) -> coset index
    basis_edges: list
    stable_orbits: list  # Lambda_1: (level i, residue label, lift in SL_2(A))
    stable_vertex_orbits: list
    stabilization_level: int
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def F(self) -> FieldSpec:
        return self.level.F

    def coset_index(self, g: GroupElem) -> int:
        """Index j with g in Gamma * deltas[j], for g in Gamma_1(t)."""
        key = reduce_mod(g, self.level.m)
        try:
            return self.label_of[key]
        except KeyError:
            raise LevelError(f"{g} is not in Gamma_1(t)") from None


def _gamma1t_image(L: LevelSpec) -> list:
    """All residues modulo m of elements of Gamma_1(t)."""
    F, m = L.F, L.m
    dm = m.degree()
    size = F.q ** (4 * dm - 3)
    if size > LABEL_BUDGET * 50:
        raise BudgetError(f"modulus {m} too large to enumerate SL_2(A/m)")
    one = Poly.one(F)
    tpoly = Poly.t(F)
    low = _residues(F, dm - 1)  # multiples of t: t * f, deg f < dm - 1
    ones = [(one + tpoly * f) % m for f in low]
    tees = [(tpoly * f) % m for f in low]
    allres = _residues(F, dm)
    out = []
    for a in ones:
        for c in tees:
            for dd in ones:
                for b in allres:
                    if (a * dd - b * c - 1) % m == 0:
                        out.append((a, b, c, dd))
    return out


def _classify_levels(L: LevelSpec, depth: int):
    """Gamma-orbits of stable edges e = X e_i and stable vertices, for i <= depth."""
    F, m = L.F, L.m
    dm = m.degree()
    if F.q ** (3 * dm) > LABEL_BUDGET:
        return None, None
    res = _residues(F, dm)
    sl2 = [
        (a, b, c, d)
        for a, b, c in itertools.product(res, res, res)
        for d in res
        if (a * d - b * c - 1) % m == 0
    ]
    H = [x for x in sl2 if L.member_mod(x)]
    # right cosets H x
    label = {}
    reps = []
    for x in sl2:
        if x in label:
            continue
        for h in H:
            label[_mul_mod(h, x, m)] = len(reps)
        reps.append(x)
    edges, verts = [], []
    for i in range(depth + 1):
        for kind, bucket in (("edge", edges), ("vertex", verts)):
            stab = [reduce_mod(s, m) for s in std_stabilizer(F, i, kind)]
            stab_nontriv = [s for s, g in zip(stab, std_stabilizer(F, i, kind)) if g != GroupElem.identity(F)]
            seen = set()
            for j, x in enumerate(reps):
                if j in seen:
                    continue
                orbit = {label[_mul_mod(x, s, m)] for s in stab}
                seen |= orbit
                xinv = _inv_mod(x, m)
                stable = all(not L.member_mod(_mul_mod(_mul_mod(x, s, m), xinv, m)) for s in stab_nontriv)
                if stable:
                    bucket.append((i, x, lift_sl2(x, m)))
    return edges, verts


def build_quotient(L: LevelSpec, depth: int | None = None) -> QuotientData:
    """Coset labels, cocycle basis edges and the stable/unstable classification."""
    F, m = L.F, L.m
    istar = m.degree()  # every edge and vertex at level >= deg m is unstable
    if depth is None:
        depth = istar + 2
    if depth < istar + 1:
        raise LevelError(f"depth {depth} is below the stabilisation level {istar} + 1")
    H1 = _gamma1t_image(L)
    H = [x for x in H1 if L.member_mod(x)]
    label_of: dict = {}
    reps = []
    for x in sorted(H1, key=lambda y: tuple(p.coeffs for p in y)):
        if x in label_of:
            continue
        for h in H:
            label_of[_mul_mod(h, x, m)] = len(reps)
        reps.append(x)
    # make the identity coset come first
    one = Poly.one(F) % m
    ident = (one, Poly.zero(F), Poly.zero(F), one)
    j0 = label_of[ident]
    order = [j0] + [j for j in range(len(reps)) if j != j0]
    remap = {old: new for new, old in enumerate(order)}
    label_of = {k: remap[v] for k, v in label_of.items()}
    reps = [reps[j] for j in order]
    deltas = [GroupElem.identity(F)] + [lift_sl2(x, m) for x in reps[1:]]
    e_star = basic_edge(F)
    basis_edges = [act_edge(dl, e_star) for dl in deltas]
    edges, verts = _classify_levels(L, depth)
    return QuotientData(
        level=L,
        depth=depth,
        d=len(reps),
        deltas=deltas,
        label_of=label_of,
        basis_edges=basis_edges,
        stable_orbits=edges if edges is not None else [],
        stable_vertex_orbits=verts if verts is not None else [],
        stabilization_level=istar,
    )


# -- edges, stability, cusps ------------------------------------------------------


def edge_class(e: OrientedEdge, QD: QuotientData) -> EdgeClass:
    """Write a Gamma_1(t)-stable edge as sign * gamma * basis_edges[rep], gamma in Gamma."""
    i, fwd, g = reduce_edge(e)
    if i != 0:
        raise LevelError(f"edge {e} is not Gamma_1(t)-stable")
    h = g.inverse()
    return _class_of_level0(h, 1 if fwd else -1, QD)


def _class_of_level0(h: GroupElem, sign: int, QD: QuotientData) -> EdgeClass:
    """Class of h * e_0 (h in SL_2(A)) assumed Gamma_1(t)-stable."""
    F = QD.F
    h11, h12, h21, h22 = (x.coeff(0) for x in h.entries())
    if h21 == 0:
        raise LevelError("edge is not Gamma_1(t)-stable")
    x = F.mul(h11, F.inv(h21))
    s22 = F.sub(F.mul(h22, x), h12)
    # s in Stab(e_0) with h s w^{-1} = 1 mod t in the lower row
    s = GroupElem(Poly.const(F, s22), Poly.const(F, F.neg(h22)), Poly.zero(F), Poly.const(F, h21))
    Hp = h * s * weyl(F).inverse()
    j = QD.coset_index(Hp)
    gamma = Hp * QD.deltas[j].inverse()
    return EdgeClass(j, sign, gamma)


def _gamma_stabilizer(x, QD: QuotientData, kind: str):
    """Nontrivial elements of Gamma fixing the vertex or edge x."""
    F, L = QD.F, QD.level
    if kind == "edge":
        i, _, g = reduce_edge(x)
    else:
        i, g = reduce_vertex(x)
    ginv = g.inverse()
    ident = GroupElem.identity(F)
    out = []
    for s in std_stabilizer(F, i, kind):
        if s == ident:
            continue
        c = ginv * s * g
        if L.member(c):
            out.append(c)
    return out


def is_stable(x, QD: QuotientData) -> bool:
    """Trivial Gamma-stabiliser (x an OrientedEdge or a TreeVertex)."""
    kind = "edge" if isinstance(x, OrientedEdge) else "vertex"
    return not _gamma_stabilizer(x, QD, kind)


def cusp_direction(v: TreeVertex, QD: QuotientData) -> OrientedEdge:
    """Edge at an unstable vertex pointing towards the end fixed by its stabiliser."""
    stab = _gamma_stabilizer(v, QD, "vertex")
    if not stab:
        raise LevelError(f"vertex {v} is stable")
    fixed = [w for w in neighbors(v) if all(act_vertex(s, w) == w for s in stab)]
    if len(fixed) > 1:
        # prefer the neighbour whose stabiliser strictly grows
        size = len(stab)
        fixed = [w for w in fixed if len(_gamma_stabilizer(w, QD, "vertex")) > size]
    if len(fixed) != 1:
        raise LevelError(f"internal inconsistency: {len(fixed)} candidate cusp directions at {v}")
    return OrientedEdge(v, fixed[0])


# -- Hecke cosets and diamond representatives -------------------------------------


def hecke_cosets(L: LevelSpec, Q: Poly) -> list:
    """Representatives xi_i of Gamma \\ Gamma diag(1, Q) Gamma for irreducible Q."""
    F = L.F
    if not is_irreducible(Q):
        raise LevelError(f"{Q} is not irreducible")
    Q = Q.monic()
    zero = Poly.zero(F)
    out = [GroupElem(Poly.one(F), beta, zero, Q) for beta in _residues(F, Q.degree())]
    m = L.m
    if (m % Q).is_zero():
        return out
    g, u, v = xgcd(Q, m)  # u Q + v m = 1, so R = u, S = -v gives R Q - m S = 1
    R, S = u, -v
    out.append(GroupElem(R * Q, S, m * Q, Q))
    return out


def eta_lambda(L: LevelSpec, lam: int) -> GroupElem:
    """eta in SL_2(A) with eta = 1 mod n and eta = diag(lam^-1, lam) mod t^r."""
    F = L.F
    if lam % F.q == 0:
        raise LevelError("lambda must be a nonzero field element")
    if lam == 1:
        return GroupElem.identity(F)
    n, tr, m = L.n, Poly.t(F, L.r), L.m
    one = Poly.one(F)
    linv = Poly.const(F, F.inv(lam))
    lmb = Poly.const(F, lam)
    if n.degree() == 0:
        a, d = linv, lmb
    else:
        a, d = crt([one, linv], [n, tr]), crt([one, lmb], [n, tr])
    if a * d == one:
        return GroupElem.diag(a, d)
    return lift_sl2((a, Poly.zero(F), Poly.zero(F), d), m)
