"""Brute-force ground truth for small instances.

Nothing here imports the rigidity or triangulation code: crossings use a local
rational orientation test and Laman-ness is decided by counting edges inside
every vertex subset.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

MAX_FRAMEWORK_N = 9
MAX_TRIANGULATION_N = 8
MAX_RANK_N = 8

EdgeKey = tuple[tuple[int, int], ...]


class OracleGuardError(ValueError):
    """Instance too large for exhaustive search."""


@dataclass
class OracleReport:
    frameworks: set[EdgeKey] = field(default_factory=set)
    triangulations: Optional[set[EdgeKey]] = None
    stats: dict = field(default_factory=dict)
    diagnostic: str = ""


def _coords(points) -> list[tuple[Fraction, Fraction]]:
    if hasattr(points, "coords"):
        points = points.coords
    return [(Fraction(str(x)) if isinstance(x, float) else Fraction(x),
             Fraction(str(y)) if isinstance(y, float) else Fraction(y)) for x, y in points]


def _canon(edges: Iterable) -> list[tuple[int, int]]:
    return sorted({(min(u, v), max(u, v)) for u, v in edges})


def _cross_table(pts: Sequence[tuple[Fraction, Fraction]]) -> dict:
    """``table[e]`` is the set of edges properly crossing ``e`` (vertex ids 1-based)."""
    n = len(pts)

    def orient(i, j, k):
        (ax, ay), (bx, by), (cx, cy) = pts[i - 1], pts[j - 1], pts[k - 1]
        d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        return (d > 0) - (d < 0)

    def between(i, j, k):
        (ax, ay), (bx, by), (cx, cy) = pts[i - 1], pts[j - 1], pts[k - 1]
        return min(ax, bx) <= cx <= max(ax, bx) and min(ay, by) <= cy <= max(ay, by)

    def cross(e, f):
        (a, b), (c, d) = e, f
        if len({a, b, c, d}) < 4:
            return False
        o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
        if o1 * o2 < 0 and o3 * o4 < 0:
            return True
        return ((o1 == 0 and between(a, b, c)) or (o2 == 0 and between(a, b, d))
                or (o3 == 0 and between(c, d, a)) or (o4 == 0 and between(c, d, b)))

    edges = list(itertools.combinations(range(1, n + 1), 2))
    table = {e: set() for e in edges}
    for e, f in itertools.combinations(edges, 2):
        if cross(e, f):
            table[e].add(f)
            table[f].add(e)
    return table


def laman_by_counting(edges: Iterable, n: int) -> bool:
    """|E| = 2n-3 and every vertex subset of size >= 2 spans at most 2n'-3 edges."""
    es = _canon(edges)
    if len(es) != 2 * n - 3:
        return False
    return sparse_by_counting(es, n)


def sparse_by_counting(edges: Iterable, n: int) -> bool:
    es = _canon(edges)
    masks = [(1 << (u - 1)) | (1 << (v - 1)) for u, v in es]
    for s in range(1, 1 << n):
        size = bin(s).count("1")
        if size < 2:
            continue
        if sum(1 for m in masks if m & s == m) > 2 * size - 3:
            return False
    return True


class _Counts:
    """Edge counts of all vertex subsets, updated per added edge."""

    def __init__(self, n: int):
        self.n = n
        self.full = (1 << n) - 1
        self.cnt = [0] * (1 << n)
        self.cap = [2 * bin(s).count("1") - 3 for s in range(1 << n)]

    def _supersets(self, u: int, v: int):
        base = (1 << (u - 1)) | (1 << (v - 1))
        rest = self.full ^ base
        sub = rest
        while True:
            yield sub | base
            if sub == 0:
                return
            sub = (sub - 1) & rest

    def add(self, u: int, v: int) -> bool:
        ok = True
        cnt, cap = self.cnt, self.cap
        for s in self._supersets(u, v):
            cnt[s] += 1
            if cnt[s] > cap[s]:
                ok = False
        return ok

    def remove(self, u: int, v: int) -> None:
        for s in self._supersets(u, v):
            self.cnt[s] -= 1


def brute_frameworks(points, constraints: Iterable = ()) -> OracleReport:
    """Every non-crossing Laman edge set on ``points`` containing ``constraints``."""
    pts = _coords(points)
    n = len(pts)
    if n > MAX_FRAMEWORK_N:
        raise OracleGuardError(f"n={n} exceeds oracle limit {MAX_FRAMEWORK_N}")
    start = time.perf_counter()
    report = OracleReport()
    F = _canon(constraints)
    target = 2 * n - 3
    if n < 2:
        report.frameworks.add(())
        return report
    table = _cross_table(pts)
    for e, f in itertools.combinations(F, 2):
        if f in table[e]:
            report.diagnostic = f"constraints {e} and {f} cross"
            return report
    counts = _Counts(n)
    for u, v in F:
        if not counts.add(u, v):
            report.diagnostic = "constraints are dependent"
            return report
    fset = set(F)
    universe = [e for e in table if e not in fset and not (table[e] & fset)]
    chosen = list(F)
    blocked: dict[tuple[int, int], int] = {}
    nodes = 0

    def extend(idx: int) -> None:
        nonlocal nodes
        nodes += 1
        need = target - len(chosen)
        if need == 0:
            if laman_by_counting(chosen, n):
                report.frameworks.add(tuple(sorted(chosen)))
            return
        for k in range(idx, len(universe) - need + 1):
            e = universe[k]
            if blocked.get(e):
                continue
            ok = counts.add(*e)
            if ok:
                chosen.append(e)
                for f in table[e]:
                    blocked[f] = blocked.get(f, 0) + 1
                extend(k + 1)
                for f in table[e]:
                    blocked[f] -= 1
                chosen.pop()
            counts.remove(*e)

    extend(0)
    report.stats = {"n": n, "nodes": nodes, "count": len(report.frameworks),
                    "seconds": time.perf_counter() - start}
    return report


def brute_rank(edges: Iterable, n: int) -> int:
    """Size of a largest edge subset satisfying the subset-count condition."""
    if n > MAX_RANK_N:
        raise OracleGuardError(f"n={n} exceeds oracle limit {MAX_RANK_N}")
    es = _canon(edges)
    if n < 2 or not es:
        return 0
    ceiling = min(len(es), 2 * n - 3)
    counts = _Counts(n)
    best = 0

    def search(idx: int, size: int) -> bool:
        nonlocal best
        best = max(best, size)
        if best == ceiling:
            return True
        for k in range(idx, len(es)):
            if size + len(es) - k <= best:
                return False
            ok = counts.add(*es[k])
            if ok and search(k + 1, size + 1):
                counts.remove(*es[k])
                return True
            counts.remove(*es[k])
        return False

    search(0, 0)
    return best


def all_triangulations(points, constraints: Iterable = ()) -> set[EdgeKey]:
    """All triangulations containing ``constraints``, as maximal non-crossing edge sets."""
    pts = _coords(points)
    n = len(pts)
    if n > MAX_TRIANGULATION_N:
        raise OracleGuardError(f"n={n} exceeds oracle limit {MAX_TRIANGULATION_N}")
    table = _cross_table(pts)
    F = _canon(constraints)
    for e, f in itertools.combinations(F, 2):
        if f in table[e]:
            return set()
    edges = sorted(table)
    state = {e: None for e in edges}  # None undecided, True in, False out
    for e in F:
        state[e] = True
        for f in table[e]:
            state[f] = False
    out: set[EdgeKey] = set()

    def crossed_by_chosen(e) -> bool:
        return any(state[f] for f in table[e])

    def recurse() -> None:
        e = next((x for x in edges if state[x] is None), None)
        if e is None:
            if all(state[x] or crossed_by_chosen(x) for x in edges):
                out.add(tuple(x for x in edges if state[x]))
            return
        # include e
        changed = [f for f in table[e] if state[f] is None]
        state[e] = True
        for f in changed:
            state[f] = False
        recurse()
        for f in changed:
            state[f] = None
        # exclude e: only viable if something undecided can still cross it
        if any(state[f] is None for f in table[e]):
            state[e] = False
            recurse()
        state[e] = None

    recurse()
    return out
