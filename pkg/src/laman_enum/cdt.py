"""Constrained Delaunay triangulations with exact, tie-broken predicates.

A :class:`Triangulation` is stored as a map from directed edges to apexes:
``left[(u, v)] = w`` means ``u, v, w`` is a counter-clockwise triangle.  Hull
edges therefore appear with one direction only.  All Delaunay decisions use
``PointSet.incircle_tb``, so every constraint set has exactly one CDT.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .geometry import Edge, GeometryError, PointSet


class ConstraintError(GeometryError):
    """Constraint edges cross each other or an existing constraint."""


class EdgeClass(enum.Enum):
    HULL = "hull"
    CONSTRAINED = "constrained"
    ILLEGAL = "F-illegal"
    LEGAL = "F-legal"


class Triangulation:
    def __init__(self, ps: PointSet, constrained: Iterable = ()):
        self.ps = ps
        self.left: dict[tuple[int, int], int] = {}
        self.constrained: set[Edge] = {Edge.of(*e) for e in constrained}
        self.hull: frozenset[Edge] = frozenset(ps.hull_edges())

    # -- structure ---------------------------------------------------------

    def copy(self) -> "Triangulation":
        other = Triangulation.__new__(Triangulation)
        other.ps = self.ps
        other.left = dict(self.left)
        other.constrained = set(self.constrained)
        other.hull = self.hull
        return other

    def _add(self, a: int, b: int, c: int) -> None:
        left = self.left
        left[(a, b)] = c
        left[(b, c)] = a
        left[(c, a)] = b

    def _remove(self, a: int, b: int, c: int) -> None:
        left = self.left
        del left[(a, b)], left[(b, c)], left[(c, a)]

    def edges(self) -> set[Edge]:
        return {Edge(u, v) if u < v else Edge(v, u) for u, v in self.left}

    def has_edge(self, e) -> bool:
        return (e[0], e[1]) in self.left or (e[1], e[0]) in self.left

    def triangles(self) -> list[tuple[int, int, int]]:
        """Counter-clockwise triangles, each rotated to start at its lowest id."""
        return sorted(
            (a, b, c) for (a, b), c in self.left.items() if a < b and a < c
        )

    def neighbors(self, a: int) -> list[int]:
        return sorted(v for (u, v) in self.left if u == a)

    def key(self) -> tuple[frozenset[Edge], frozenset[Edge]]:
        return frozenset(self.edges()), frozenset(self.constrained)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.ps is other.ps and self.key() == other.key()

    __hash__ = None  # mutable

    def __repr__(self) -> str:
        return f"Triangulation(n={self.ps.n}, edges={len(self.edges())}, constrained={len(self.constrained)})"

    @classmethod
    def from_edges(cls, ps: PointSet, edges: Iterable, constrained: Iterable = ()) -> "Triangulation":
        """Rebuild the face structure of a full triangulation given by its edges."""
        es = {Edge.of(*e) for e in edges}
        t = cls(ps, constrained)
        pts = ps.ids()
        for a, b, c in itertools.combinations(pts, 3):
            if Edge(a, b) in es and Edge(a, c) in es and Edge(b, c) in es:
                o = ps.orient(a, b, c)
                if any(
                    ps.orient(a, b, p) == o and ps.orient(b, c, p) == o and ps.orient(c, a, p) == o
                    for p in pts
                    if p not in (a, b, c)
                ):
                    continue
                if o > 0:
                    t._add(a, b, c)
                else:
                    t._add(a, c, b)
        if t.edges() != es:
            raise GeometryError("edge set is not a triangulation")
        return t

    # -- local tests -------------------------------------------------------

    def quad(self, e) -> Optional[tuple[int, int, int, int]]:
        """``(a, c, b, d)`` with triangles ``acb`` and ``cad``; None on the hull."""
        a, c = e
        b = self.left.get((a, c))
        d = self.left.get((c, a))
        if b is None or d is None:
            return None
        return a, c, b, d

    def flippable(self, e) -> bool:
        q = self.quad(e)
        if q is None:
            return False
        a, c, b, d = q
        orient = self.ps.orient
        return orient(b, d, a) * orient(b, d, c) < 0

    def is_locally_delaunay(self, e) -> bool:
        q = self.quad(e)
        if q is None:
            return True
        a, c, b, d = q
        orient = self.ps.orient
        if orient(b, d, a) * orient(b, d, c) > 0:
            return True
        return self.ps.incircle_tb(a, c, b, d) < 0

    def is_illegal(self, e, constraints: Optional[set] = None) -> bool:
        """D-flip condition for ``e``; constrained edges are never illegal."""
        if constraints is None:
            constraints = self.constrained
        if Edge.of(*e) in constraints:
            return False
        return not self.is_locally_delaunay(e)

    def flip(self, e) -> Edge:
        q = self.quad(e)
        if q is None or not self.flippable(e):
            raise GeometryError(f"edge {tuple(e)} is not flippable")
        a, c, b, d = q
        self._remove(a, c, b)
        self._remove(c, a, d)
        self._add(a, d, b)
        self._add(d, c, b)
        return Edge.of(b, d)

    def illegal_edges(self, constraints: Optional[set] = None, among: Optional[Iterable] = None) -> list[Edge]:
        pool = self.edges() if among is None else among
        return sorted(e for e in pool if self.has_edge(e) and self.is_illegal(e, constraints))

    # -- updates -----------------------------------------------------------

    def _legalize(self, queue: list, on_flip: Optional[Callable] = None) -> int:
        flips = 0
        constrained = self.constrained
        while queue:
            e = queue.pop()
            e = Edge.of(*e)
            if e in constrained or not self.has_edge(e):
                continue
            if self.is_locally_delaunay(e):
                continue
            a, c, b, d = self.quad(e)
            if on_flip is not None:
                on_flip(self, e)
            self.flip(e)
            flips += 1
            queue.extend([(a, d), (d, c), (c, b), (b, a)])
        return flips

    def legalize(self, on_flip: Optional[Callable] = None) -> int:
        return self._legalize(sorted(self.edges(), reverse=True), on_flip)

    def insert_constraint(self, e) -> None:
        """Add ``e`` as a constraint, retriangulating the pseudo-polygons it cuts."""
        e = Edge.of(*e)
        if self.has_edge(e):
            self.constrained.add(e)
            return
        a, b = e
        orient = self.ps.orient
        start = None
        for (u, v), w in self.left.items():
            if u == a and orient(a, v, b) > 0 and orient(a, w, b) < 0:
                start = (v, w)
                break
        if start is None:
            raise GeometryError(f"cannot locate segment {e}")
        v, w = start
        upper, lower, crossed = [w], [v], [(v, w)]
        while True:
            r = self.left[(w, v)]
            if r == b:
                break
            if orient(a, b, r) > 0:
                w = r
                upper.append(r)
            else:
                v = r
                lower.append(r)
            crossed.append((v, w))
        blocked = [Edge.of(*c) for c in crossed if Edge.of(*c) in self.constrained]
        if blocked:
            raise ConstraintError(f"{e} crosses constraint {blocked[0]}")
        dead = set()
        for v, w in crossed:
            for x, y in ((v, w), (w, v)):
                z = self.left[(x, y)]
                dead.add(min((x, y, z), (y, z, x), (z, x, y)))
        for tri in dead:
            self._remove(*tri)
        self._fill(a, b, upper)
        self._fill(b, a, lower[::-1])
        self.constrained.add(e)

    def _fill(self, a: int, b: int, chain: list[int]) -> None:
        # Delaunay triangulation of the pseudo-polygon a, b, chain[-1], ..., chain[0]
        if not chain:
            return
        incircle = self.ps.incircle_tb
        best = 0
        for k in range(1, len(chain)):
            if incircle(a, b, chain[best], chain[k]) > 0:
                best = k
        c = chain[best]
        self._add(a, b, c)
        self._fill(a, c, chain[:best])
        self._fill(c, b, chain[best + 1:])

    def remove_constraint(self, e) -> int:
        """Drop the constraint flag of ``e`` and restore the Delaunay property."""
        e = Edge.of(*e)
        if not self.has_edge(e):
            raise GeometryError(f"edge {e} not in triangulation")
        self.constrained.discard(e)
        return self._legalize([e])

    def check(self, constraints: Optional[Iterable] = None) -> list[str]:
        """Structural invariant violations (empty when sound)."""
        problems = []
        ps = self.ps
        es = self.edges()
        h = len(self.hull)
        if len(es) != 3 * ps.n - h - 3:
            problems.append(f"edge count {len(es)} != {3 * ps.n - h - 3}")
        if not self.hull <= es:
            problems.append("hull edge missing")
        cons = self.constrained if constraints is None else {Edge.of(*c) for c in constraints}
        if not cons <= es:
            problems.append("constraint missing")
        for (a, b), c in self.left.items():
            if ps.orient(a, b, c) <= 0:
                problems.append(f"triangle {a},{b},{c} not ccw")
            if self.left.get((b, c)) != a or self.left.get((c, a)) != b:
                problems.append(f"triangle {a},{b},{c} inconsistent")
        for (u, v) in self.left:
            if (v, u) not in self.left and Edge.of(u, v) not in self.hull:
                problems.append(f"open edge {u},{v}")
        for e, f in itertools.combinations(sorted(es), 2):
            if ps.crosses(e, f):
                problems.append(f"{e} crosses {f}")
        return problems


def _check_noncrossing(ps: PointSet, edges: Iterable[Edge]) -> None:
    edges = sorted(edges)
    for e in edges:
        if not (1 <= e.u and e.v <= ps.n):
            raise ConstraintError(f"constraint {e} out of range")
    for e, f in itertools.combinations(edges, 2):
        if ps.crosses(e, f):
            raise ConstraintError(f"constraints {e} and {f} cross")


def delaunay(ps: PointSet) -> Triangulation:
    """Unconstrained (tie-broken) Delaunay triangulation by sorted insertion."""
    if ps.n < 3:
        raise GeometryError("need at least 3 points")
    t = Triangulation(ps)
    pts = ps.points
    order = sorted(ps.ids(), key=lambda i: (pts[i].x, pts[i].y))
    a, b, c = order[:3]
    if ps.orient(a, b, c) == 0:
        raise GeometryError("first three points collinear")
    hull = [a, b, c] if ps.orient(a, b, c) > 0 else [a, c, b]
    t._add(*hull)
    for p in order[3:]:
        m = len(hull)
        visible = [i for i in range(m) if ps.orient(hull[i], hull[(i + 1) % m], p) < 0]
        s = next(i for i in visible if (i - 1) % m not in visible)
        queue = []
        for i in visible:
            u, v = hull[i], hull[(i + 1) % m]
            t._add(v, u, p)
            queue.append((u, v))
        k = len(visible)
        hull = [hull[(s + k + j) % m] for j in range(m - k + 1)] + [p]
        t._legalize(queue)
    return t


def build_cdt(ps: PointSet, constraints: Iterable = ()) -> Triangulation:
    """The CDT of ``ps`` constrained by ``constraints``."""
    cons = sorted({Edge.of(*e) for e in constraints})
    _check_noncrossing(ps, cons)
    t = delaunay(ps)
    for e in cons:
        t.insert_constraint(e)
    return t


def legalize(t: Triangulation, constraints: Iterable = (), on_flip: Optional[Callable] = None):
    """Lawson-flip a copy of ``t`` into the CDT of ``constraints``; returns (cdt, flips)."""
    out = t.copy()
    out.constrained = {Edge.of(*e) for e in constraints}
    missing = [e for e in out.constrained if not out.has_edge(e)]
    if missing:
        raise ConstraintError(f"triangulation lacks constraint {missing[0]}")
    flips = out.legalize(on_flip)
    return out, flips


def classify_edge(t: Triangulation, e, constraints: Iterable = ()) -> EdgeClass:
    e = Edge.of(*e)
    if not t.has_edge(e):
        raise GeometryError(f"edge {e} not in triangulation")
    if e in t.hull:
        return EdgeClass.HULL
    cons = constraints if isinstance(constraints, (set, frozenset)) else {Edge.of(*c) for c in constraints}
    if e in cons:
        return EdgeClass.CONSTRAINED
    return EdgeClass.ILLEGAL if t.is_illegal(e, cons) else EdgeClass.LEGAL


def underlying_triangulation(ps: PointSet, framework: Iterable, base: Optional[Triangulation] = None) -> Triangulation:
    """T(L): hull edges plus a constrained Delaunay fill of every face of ``L``.

    ``base`` may be any CDT whose constraints are a subset of ``L``; the
    missing framework edges are inserted into a copy of it.
    """
    edges = {Edge.of(*e) for e in framework}
    if base is None:
        _check_noncrossing(ps, edges)
        t = delaunay(ps)
    else:
        if not base.constrained <= edges:
            raise ConstraintError("base triangulation carries extra constraints")
        t = base.copy()
    for e in sorted(edges - t.constrained):
        t.insert_constraint(e)
    t.constrained |= t.hull
    return t


def remove_edge_update(t: Triangulation, e, constraints: Optional[Iterable] = None) -> Triangulation:
    """Copy of ``t`` with ``e`` no longer constrained (CDT of the reduced set)."""
    e = Edge.of(*e)
    if constraints is not None:
        cons = {Edge.of(*c) for c in constraints}
        if e in cons:
            raise ConstraintError(f"{e} is still a constraint")
    out = t.copy()
    if constraints is not None:
        out.constrained = cons | (t.constrained & t.hull)
    out.remove_constraint(e)
    return out


def insert_edge_update(t: Triangulation, e, constraints: Optional[Iterable] = None) -> Triangulation:
    """Copy of ``t`` with ``e`` inserted as a constraint."""
    out = t.copy()
    if constraints is not None:
        out.constrained = {Edge.of(*c) for c in constraints} - {Edge.of(*e)}
    out.insert_constraint(e)
    return out


def is_cdt(t: Triangulation, constraints: Optional[Iterable] = None) -> bool:
    """Certificate: all constraints present and every other edge locally Delaunay."""
    cons = t.constrained if constraints is None else {Edge.of(*c) for c in constraints}
    if any(not t.has_edge(c) for c in cons):
        return False
    return all(e in cons or t.is_locally_delaunay(e) for e in t.edges())


# -- angle vectors -----------------------------------------------------------


def _angle_key(ps: PointSet, p: int, q: int, r: int) -> Fraction:
    # strictly increasing function of the angle qpr: -sign(cos) * cos^2
    P, Q, R = ps.points[p], ps.points[q], ps.points[r]
    ux, uy, vx, vy = Q.x - P.x, Q.y - P.y, R.x - P.x, R.y - P.y
    dot = ux * vx + uy * vy
    sq = Fraction(dot * dot, (ux * ux + uy * uy) * (vx * vx + vy * vy))
    return -sq if dot > 0 else sq


@dataclass(frozen=True, order=True)
class AngleVector:
    """Interior angles in non-decreasing order, as exact monotone keys."""

    angles: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.angles)


def angle_vector_of(ps: PointSet, triangles: Iterable[tuple[int, int, int]]) -> AngleVector:
    keys = []
    for a, b, c in triangles:
        keys += [_angle_key(ps, a, b, c), _angle_key(ps, b, c, a), _angle_key(ps, c, a, b)]
    return AngleVector(tuple(sorted(keys)))


def angle_vector(t: Triangulation) -> AngleVector:
    return angle_vector_of(t.ps, t.triangles())
