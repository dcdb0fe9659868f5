"""Newton polygons of polynomials over F_q[t] with respect to v_t."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .xpoly import XPoly


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull as (slope, horizontal length) segments, slopes increasing.

    ``start`` is the index of the first coefficient with finite valuation.
    """

    segments: tuple
    start: int = 0

    def slopes(self) -> list:
        return [s for s, _ in self.segments]

    def length(self) -> int:
        return sum(n for _, n in self.segments)

    def vertices(self, v0: int) -> list:
        pts = [(self.start, Fraction(v0))]
        for s, n in self.segments:
            x, y = pts[-1]
            pts.append((x + n, y + s * n))
        return pts

    def as_dict(self) -> dict:
        return {s: n for s, n in self.segments}


def lower_hull(points) -> list:
    """Lower convex hull of integer points sorted by x (monotone chain)."""
    hull: list = []
    for x, y in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (y2 - y1) * (x - x1) >= (y - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    return hull


def newton_polygon(P: XPoly) -> NewtonPolygon:
    """Newton polygon of sum b_l X^l from the points (l, v_t(b_l)).

    For P = det(I - BX) the slopes are the t-adic valuations of the
    eigenvalues of B, each with its multiplicity.
    """
    if P.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    pts = [(l, c.valuation()) for l, c in enumerate(P.coeffs) if c]
    hull = lower_hull(pts)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(segs), hull[0][0])


def slope_multiplicity(np_: NewtonPolygon, a) -> int:
    a = Fraction(a)
    return sum(n for s, n in np_.segments if s == a)
