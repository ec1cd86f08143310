"""Exact planar predicates and point-set handling.

All predicates are evaluated in exact arithmetic.  A :class:`PointSet` rescales
its rational input coordinates by one positive common factor so that every
point carries integer coordinates; signs of orientation and incircle
determinants are invariant under that scaling, and integer arithmetic is much
faster than ``Fraction`` arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Number = Union[int, Fraction]


class GeometryError(ValueError):
    """Raised for malformed geometric input."""


class DegenerateTriangleError(GeometryError):
    pass


class GenericityError(GeometryError):
    def __init__(self, report: "GenericityReport"):
        self.report = report
        triples = ", ".join(str(t) for t in report.collinear[:5])
        more = "" if len(report.collinear) <= 5 else f" (+{len(report.collinear) - 5} more)"
        super().__init__(f"collinear triples: {triples}{more}")


@dataclass(frozen=True)
class Point:
    id: int
    x: Number
    y: Number


class Edge(NamedTuple):
    """Vertex pair in canonical form ``u < v``.

    Tuple ordering coincides with the lexicographic edge order used throughout.
    """

    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        if a == b:
            raise GeometryError(f"self-loop on vertex {a}")
        return cls(a, b) if a < b else cls(b, a)

    def __str__(self) -> str:
        return f"{self.u}{self.v}" if max(self.u, self.v) < 10 else f"({self.u},{self.v})"


def _sign(v: Number) -> int:
    return (v > 0) - (v < 0)


def orientation(a: Point, b: Point, c: Point) -> int:
    """+1 if ``c`` is left of the directed line ``ab``, -1 if right, 0 if collinear."""
    return _sign((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def _incircle_terms(a: Point, b: Point, c: Point, d: Point):
    adx, ady = a.x - d.x, a.y - d.y
    bdx, bdy = b.x - d.x, b.y - d.y
    cdx, cdy = c.x - d.x, c.y - d.y
    ca = bdx * cdy - cdx * bdy
    cb = cdx * ady - adx * cdy
    cc = adx * bdy - bdx * ady
    det = (adx * adx + ady * ady) * ca + (bdx * bdx + bdy * bdy) * cb + (cdx * cdx + cdy * cdy) * cc
    return det, ca, cb, cc


def incircle(a: Point, b: Point, c: Point, d: Point) -> int:
    """Sign of the incircle determinant.

    +1 iff ``d`` lies strictly inside the circumcircle of ``abc`` when ``abc`` is
    counter-clockwise; the sign flips with the orientation of ``abc``.
    """
    if orientation(a, b, c) == 0:
        raise DegenerateTriangleError(f"collinear triangle {a.id},{b.id},{c.id}")
    return _sign(_incircle_terms(a, b, c, d)[0])


def incircle_tiebroken(a: Point, b: Point, c: Point, d: Point) -> int:
    """Incircle sign with co-circular ties broken symbolically.

    Point ``k`` has its paraboloid lift raised by ``eps**k.id``.  The
    determinant is linear in the lifts, so a zero determinant is resolved by
    the lift coefficient of the lowest-id point among the four.  Those
    coefficients are orientation determinants of the other three points and
    never vanish when no three points are collinear.
    """
    if orientation(a, b, c) == 0:
        raise DegenerateTriangleError(f"collinear triangle {a.id},{b.id},{c.id}")
    det, ca, cb, cc = _incircle_terms(a, b, c, d)
    if det:
        return _sign(det)
    coefficients = sorted(
        [(a.id, ca), (b.id, cb), (c.id, cc), (d.id, -(ca + cb + cc))]
    )
    for _, coef in coefficients:
        if coef:
            return _sign(coef)
    raise DegenerateTriangleError("perturbation failed to break tie (collinear input)")


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    # r collinear with pq; is it within the bounding box
    return min(p.x, q.x) <= r.x <= max(p.x, q.x) and min(p.y, q.y) <= r.y <= max(p.y, q.y)


def properly_intersect(e1: Sequence[Point], e2: Sequence[Point]) -> bool:
    """True iff two vertex-disjoint closed segments share a point."""
    p, q = e1
    r, s = e2
    if {p.id, q.id} & {r.id, s.id}:
        return False
    o1, o2 = orientation(p, q, r), orientation(p, q, s)
    o3, o4 = orientation(r, s, p), orientation(r, s, q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _on_segment(p, q, r))
        or (o2 == 0 and _on_segment(p, q, s))
        or (o3 == 0 and _on_segment(r, s, p))
        or (o4 == 0 and _on_segment(r, s, q))
    )


@dataclass
class GenericityReport:
    collinear: list[tuple[int, int, int]]
    cocircular: list[tuple[int, int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.collinear


def assert_generic(points: Iterable[Point], raise_on_violation: bool = False) -> GenericityReport:
    """Report collinear triples (violations) and co-circular quadruples (informational)."""
    pts = list(points)
    collinear = [
        (a.id, b.id, c.id)
        for a, b, c in itertools.combinations(pts, 3)
        if orientation(a, b, c) == 0
    ]
    cocircular = []
    if not collinear:
        for a, b, c, d in itertools.combinations(pts, 4):
            if _incircle_terms(a, b, c, d)[0] == 0:
                cocircular.append((a.id, b.id, c.id, d.id))
    report = GenericityReport(collinear, cocircular)
    if raise_on_violation and not report.ok:
        raise GenericityError(report)
    return report


def _to_fraction(v) -> Fraction:
    if isinstance(v, float):
        # floats are taken at their shortest decimal representation
        return Fraction(repr(v))
    return Fraction(v)


@dataclass
class PointSet:
    """Points ``1..n`` in input order, with memoised id-based predicates.

    ``coords`` keeps the exact input coordinates; ``points`` holds the rescaled
    integer copies every predicate runs on.
    """

    coords: list[tuple[Fraction, Fraction]]
    points: list[Point] = field(init=False)
    scale: int = field(init=False)

    def __post_init__(self):
        self.coords = [(_to_fraction(x), _to_fraction(y)) for x, y in self.coords]
        if len(set(self.coords)) != len(self.coords):
            raise GeometryError("coincident points")
        denominators = [c.denominator for xy in self.coords for c in xy]
        self.scale = math.lcm(*denominators) if denominators else 1
        # index 0 is a placeholder so that points[i].id == i
        self.points = [Point(0, 0, 0)] + [
            Point(i, int(x * self.scale), int(y * self.scale))
            for i, (x, y) in enumerate(self.coords, start=1)
        ]
        self._orient_cache: dict[tuple[int, int, int], int] = {}
        self._incircle_cache: dict[tuple[int, int, int, int], int] = {}

    @classmethod
    def from_coords(cls, coords: Iterable[tuple]) -> "PointSet":
        return cls(list(coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> Point:
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.points[i]

    def ids(self) -> range:
        return range(1, self.n + 1)

    def orient(self, i: int, j: int, k: int) -> int:
        key = (i, j, k)
        s = self._orient_cache.get(key)
        if s is None:
            p = self.points
            s = orientation(p[i], p[j], p[k])
            self._orient_cache[key] = s
        return s

    def incircle_tb(self, i: int, j: int, k: int, l: int) -> int:
        key = (i, j, k, l)
        s = self._incircle_cache.get(key)
        if s is None:
            p = self.points
            s = incircle_tiebroken(p[i], p[j], p[k], p[l])
            self._incircle_cache[key] = s
        return s

    def crosses(self, e: tuple[int, int], f: tuple[int, int]) -> bool:
        p = self.points
        return properly_intersect((p[e[0]], p[e[1]]), (p[f[0]], p[f[1]]))

    def genericity(self) -> GenericityReport:
        return assert_generic(self.points[1:])

    def convex_hull(self) -> list[int]:
        """Hull vertex ids in counter-clockwise order (monotone chain)."""
        ids = sorted(self.ids(), key=lambda i: (self.points[i].x, self.points[i].y))
        if len(ids) < 3:
            return ids

        def half(seq):
            chain: list[int] = []
            for i in seq:
                while len(chain) >= 2 and self.orient(chain[-2], chain[-1], i) <= 0:
                    chain.pop()
                chain.append(i)
            return chain

        lower, upper = half(ids), half(reversed(ids))
        return lower[:-1] + upper[:-1]

    def hull_edges(self) -> set[Edge]:
        hull = self.convex_hull()
        return {Edge.of(a, b) for a, b in zip(hull, hull[1:] + hull[:1])}
