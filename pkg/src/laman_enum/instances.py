"""Random and fixed test instances."""

from __future__ import annotations

import random
from typing import Optional

from .geometry import Edge, GeometryError, PointSet
from .rigidity import is_independent

# six points carrying the constraint set {13, 15, 26, 45, 56} without crossings
SIX_POINT_COORDS = [(10, 4), (12, 20), (1, 2), (17, 3), (11, 18), (1, 16)]
SIX_POINT_CONSTRAINTS = [Edge(1, 3), Edge(1, 5), Edge(2, 6), Edge(4, 5), Edge(5, 6)]

# ten points, eight in convex position and two inside, no co-circular quadruple;
# 55299 frameworks with F empty
SCALING_COORDS = [
    (95148, -7495), (70507, 65210), (-3418, 90591), (-58698, 78944), (-92103, 6661),
    (-56305, -76147), (9549, -94281), (67347, -61950), (11606, -20064), (26888, 4287),
]

# convex quadrilateral whose four points are co-circular
COCIRCULAR_QUAD = [(0, 0), (4, 0), (3, 3), (0, 2)]


def random_generic_points(
    n: int,
    rng: Optional[random.Random] = None,
    coord_range: int = 1000,
    allow_cocircular: bool = True,
) -> PointSet:
    """Integer points with no three collinear."""
    rng = rng or random.Random()
    while True:
        coords = [(rng.randint(0, coord_range), rng.randint(0, coord_range)) for _ in range(n)]
        try:
            ps = PointSet(coords)
        except GeometryError:
            continue
        report = ps.genericity()
        if report.ok and (allow_cocircular or not report.cocircular):
            return ps


def random_constraints(ps: PointSet, size: int, rng: Optional[random.Random] = None) -> list[Edge]:
    """Up to ``size`` random pairwise non-crossing, Laman-independent edges."""
    rng = rng or random.Random()
    n = ps.n
    pool = [Edge(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    rng.shuffle(pool)
    chosen: list[Edge] = []
    for e in pool:
        if len(chosen) >= size:
            break
        if any(ps.crosses(e, f) for f in chosen):
            continue
        if is_independent(chosen + [e], n):
            chosen.append(e)
    return sorted(chosen)


def random_triangulation(ps: PointSet, constraints=(), rng: Optional[random.Random] = None, flips: Optional[int] = None):
    """Constrained triangulation reached from the CDT by random unconstrained flips."""
    from .cdt import build_cdt

    rng = rng or random.Random()
    t = build_cdt(ps, constraints)
    fixed = t.constrained | t.hull
    for _ in range(3 * ps.n if flips is None else flips):
        cand = sorted(e for e in t.edges() if e not in fixed and t.flippable(e))
        if not cand:
            break
        t.flip(rng.choice(cand))
    return t
