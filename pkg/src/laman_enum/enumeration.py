"""Reverse search over F-constrained non-crossing Laman frameworks.

The search tree is rooted at the lexicographically smallest Laman framework
inside the constrained Delaunay triangulation (CDT).  Every other framework
``L`` has a parent obtained by one edge exchange:

* if ``L`` lies inside the CDT, drop its largest edge missing from the root
  and add the smallest root edge that restores rigidity;
* otherwise drop the largest flippable (non-Delaunay) edge of ``L``'s
  underlying triangulation ``T(L)`` and add the smallest edge of
  ``T(L - ac)`` that restores rigidity.

Children are found by scanning exchange pairs ``(e1, e2)`` and testing the
parent relation either directly (``fast=False``) or through constant-time
flag and threshold conditions precomputed per node (``fast=True``).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional

from .cdt import ConstraintError, Triangulation, build_cdt, underlying_triangulation
from .geometry import Edge, GenericityError, PointSet
from .rigidity import BlockIndex, PebbleGame, is_independent

log = logging.getLogger(__name__)


class EnumerationError(ValueError):
    pass


@dataclass(frozen=True)
class Framework:
    """A lexicographically sorted edge list."""

    edges: tuple[Edge, ...]
    constraints: frozenset = field(default=frozenset(), compare=False, repr=False)

    @classmethod
    def of(cls, edges: Iterable, constraints: Iterable = ()) -> "Framework":
        return cls(tuple(sorted({Edge.of(*e) for e in edges})), frozenset(Edge.of(*e) for e in constraints))

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def __contains__(self, e) -> bool:
        return e in self.edge_set

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def swap(self, e_out: Edge, e_in: Edge) -> "Framework":
        return Framework(tuple(sorted((self.edge_set - {e_out}) | {e_in})), self.constraints)

    def format(self) -> str:
        return "".join(f"({u},{v})" for u, v in self.edges)


def lex_compare(a: Iterable, b: Iterable) -> int:
    """-1, 0 or 1 comparing two sorted edge lists by their first difference."""
    a = sorted(Edge.of(*e) for e in a)
    b = sorted(Edge.of(*e) for e in b)
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    return (len(a) > len(b)) - (len(a) < len(b))


@dataclass(frozen=True)
class ParentStep:
    parent: Framework
    removed: Edge  # edge of the child dropped by the parent function
    added: Edge  # edge of the parent not in the child
    case: int  # 1: child inside the CDT, 2: otherwise


@dataclass(frozen=True)
class Emission:
    index: int
    framework: Framework
    depth: int
    swap: Optional[tuple[Edge, Edge]]  # (e1 removed from parent, e2 added)


class Node:
    """Per-framework scratch data for child generation: O(n^2) space."""

    def __init__(self, enum: "LamanEnumerator", framework: Framework, T: Optional[Triangulation] = None):
        self.enum = enum
        self.L = framework
        self.edges = framework.edge_set
        if T is None:
            T = underlying_triangulation(enum.ps, self.edges, base=enum.cdt)
        self.T: Triangulation = T
        self.tri_edges = self.T.edges()
        self.blocks = BlockIndex(self.edges, enum.ps.n)
        self.is_cdlf = self.edges <= enum.cdt_edges
        outside_root = self.edges - enum.root.edge_set
        self.max_outside_root: Optional[Edge] = max(outside_root) if outside_root else None
        self.cross_n: dict[Edge, int] = {}
        self.cross_e: dict[Edge, Edge] = {}
        for e2 in enum.kn:
            if e2 in self.edges:
                continue
            hits = enum.cross[e2] & self.edges
            self.cross_n[e2] = len(hits)
            if len(hits) == 1:
                self.cross_e[e2] = next(iter(hits))
        self._legal: dict[Edge, bool] = {}
        self._thr1: dict[Edge, Optional[Edge]] = {}
        self._thr2: dict[Edge, Optional[Edge]] = {}
        self._flag_d: dict[Edge, bool] = {}

    def is_legal(self, e1: Edge) -> bool:
        """Whether ``e1`` is F-legal in T(L)."""
        v = self._legal.get(e1)
        if v is None:
            v = self._legal[e1] = not self.T.is_illegal(e1, self.enum.F)
        return v

    def threshold(self, e1: Edge, mode: int) -> Optional[Edge]:
        """Smallest restoring replacement for ``e1`` from the mode's pool (None = +inf)."""
        cache = self._thr1 if mode == 1 else self._thr2
        if e1 in cache:
            return cache[e1]
        pool = self.enum.root.edge_set - self.edges if mode == 1 else self.tri_edges - self.edges
        best = None
        for e in sorted(pool):
            if self.blocks.restores(e1, e):
                best = e
                break
        cache[e1] = best
        return best

    def flag_d(self, e2: Edge) -> bool:
        """Whether ``e2`` would be the largest F-illegal edge after inserting it."""
        v = self._flag_d.get(e2)
        if v is not None:
            return v
        t = self.T.copy()
        members = set(self.edges)
        c = self.cross_e.get(e2)
        if c is not None:
            t.remove_constraint(c)
            members.discard(c)
        t.insert_constraint(e2)
        members.add(e2)
        F = self.enum.F
        illegal = [e for e in members if e not in F and t.is_illegal(e, F)]
        v = self._flag_d[e2] = bool(illegal) and max(illegal) == e2
        return v

    def adjacency(self, e1: Edge, e2: Edge) -> Optional[Framework]:
        if e1 in self.enum.F:
            raise EnumerationError(f"{e1} is a constraint edge")
        if e1 not in self.edges or e2 in self.edges:
            raise EnumerationError(f"invalid exchange pair {e1}, {e2}")
        k = self.cross_n[e2]
        if k > 1 or (k == 1 and self.cross_e[e2] != e1):
            return None
        if not self.blocks.restores(e1, e2):
            return None
        return self.L.swap(e1, e2)

    def check_f1(self, e1: Edge, e2: Edge) -> bool:
        enum = self.enum
        if not self.is_cdlf:
            return False
        if e1 not in enum.root.edge_set:  # (a)
            return False
        if e2 not in enum.cdt_edges or e2 in enum.root.edge_set:  # (b)
            return False
        if self.max_outside_root is not None and not e2 > self.max_outside_root:  # (d)
            return False
        thr = self.threshold(e1, 1)  # (c)
        return thr is None or e1 < thr

    def check_f2(self, e1: Edge, e2: Edge) -> bool:
        if e2 in self.tri_edges:  # (b)
            return False
        if not self.is_legal(e1):  # (a)
            return False
        thr = self.threshold(e1, 2)  # (c)
        if thr is not None and not e1 < thr:
            return False
        return self.flag_d(e2)  # (d)

    def exchanged(self, e_out: Edge, e_in: Edge) -> "Node":
        """Node of ``L - e_out + e_in`` with its triangulation updated locally."""
        t = self.T.copy()
        if e_out not in t.hull:
            t.remove_constraint(e_out)
        t.insert_constraint(e_in)
        return Node(self.enum, self.L.swap(e_out, e_in), t)

    def parent_step(self) -> ParentStep:
        enum = self.enum
        if self.L == enum.root:
            raise EnumerationError("the root has no parent")
        if self.is_cdlf:
            ac = max(self.edges - enum.root.edge_set)
            pool = enum.root.edge_set - self.edges
            t_pool = None
            case = 1
        else:
            illegal = [e for e in self.edges if e not in enum.F and self.T.is_illegal(e, enum.F)]
            ac = max(illegal)
            t_pool = self.T.copy()
            t_pool.remove_constraint(ac)
            pool = t_pool.edges() - (self.edges - {ac})
            case = 2
        for st in sorted(pool):
            if self.blocks.restores(ac, st):
                return ParentStep(self.L.swap(ac, st), ac, st, case)
        raise EnumerationError(f"no restoring edge for {ac} (case {case})")


class LamanEnumerator:
    """Enumeration context for a point set and constraint set."""

    def __init__(self, ps: PointSet, constraints: Iterable = (), fast: bool = True, validate: bool = True):
        self.ps = ps
        n = ps.n
        if n < 3:
            raise EnumerationError("need at least 3 points")
        self.F = frozenset(Edge.of(*e) for e in constraints)
        if validate:
            report = ps.genericity()
            if not report.ok:
                raise GenericityError(report)
        for e in self.F:
            if not (1 <= e.u and e.v <= n):
                raise ConstraintError(f"constraint {e} out of range")
        if not is_independent(sorted(self.F), n):
            raise ConstraintError("constraints are dependent in the Laman matroid")
        self.fast = fast
        self.kn = [Edge(u, v) for u, v in itertools.combinations(range(1, n + 1), 2)]
        self.cross: dict[Edge, frozenset] = {e: frozenset() for e in self.kn}
        crossing = {e: set() for e in self.kn}
        for e, f in itertools.combinations(self.kn, 2):
            if ps.crosses(e, f):
                crossing[e].add(f)
                crossing[f].add(e)
        self.cross = {e: frozenset(s) for e, s in crossing.items()}
        for e in self.F:
            if self.cross[e] & self.F:
                raise ConstraintError(f"constraint {e} crosses another constraint")
        self.cdt = build_cdt(ps, self.F)
        self.cdt_edges = frozenset(self.cdt.edges())
        self.root = self.compute_root()

    def compute_root(self) -> Framework:
        game = PebbleGame(self.ps.n)
        for e in sorted(self.F):
            game.try_insert(e)
        for e in sorted(self.cdt_edges - self.F):
            game.try_insert(e)
        edges = game.accepted
        if len(edges) != 2 * self.ps.n - 3:
            raise EnumerationError("CDT does not contain a Laman framework")
        return Framework.of(edges, self.F)

    def framework(self, edges: Iterable) -> Framework:
        return Framework.of(edges, self.F)

    def node(self, framework: Framework) -> Node:
        return Node(self, framework)

    def is_cdlf(self, framework: Framework) -> bool:
        return framework.edge_set <= self.cdt_edges

    def parent(self, framework: Framework) -> Framework:
        return self.node(framework).parent_step().parent

    def parent_step(self, framework: Framework) -> ParentStep:
        return self.node(framework).parent_step()

    def is_child(self, node: Node, e1: Edge, e2: Edge, child: Optional[Framework] = None) -> bool:
        """Whether ``L' - e1 + e2`` is a child of ``node``; ``child`` is needed only in slow mode."""
        if self.fast:
            if node.is_cdlf and e2 in self.cdt_edges and e2 not in self.root.edge_set:
                return node.check_f1(e1, e2)
            if e2 not in node.tri_edges:
                return node.check_f2(e1, e2)
            return False
        return self.is_parent_of(node.L, child if child is not None else node.L.swap(e1, e2))

    def is_parent_of(self, parent: Framework, child: Framework) -> bool:
        """Definitional test: does the parent function map ``child`` to ``parent``?"""
        return child != self.root and self.parent(child) == parent

    def run(self, max_outputs: Optional[int] = None) -> Iterator[Emission]:
        """Depth-first traversal of the search tree without a stack."""
        kn = self.kn
        kn_index = {e: j for j, e in enumerate(kn)}
        node = self.node(self.root)
        depth = 0
        count = 1
        yield Emission(1, self.root, 0, None)
        if max_outputs is not None and count >= max_outputs:
            return
        i = j = 0
        while True:
            elist = node.L.edges
            child = None
            cross_n, cross_e, restores = node.cross_n, node.cross_e, node.blocks.restores
            while i < len(elist):
                e1 = elist[i]
                if e1 not in self.F:
                    while j < len(kn):
                        e2 = kn[j]
                        j += 1
                        # inline form of node.adjacency: e2 not in L', no other
                        # crossing edge, and the swap stays Laman
                        k = cross_n.get(e2)
                        if k is None or k > 1 or (k == 1 and cross_e[e2] != e1):
                            continue
                        if not restores(e1, e2):
                            continue
                        cand = None if self.fast else node.L.swap(e1, e2)
                        if self.is_child(node, e1, e2, cand):
                            child = (cand or node.L.swap(e1, e2), e1, e2)
                            break
                    if child is not None:
                        break
                i += 1
                j = 0
            if child is not None:
                framework, e1, e2 = child
                node = node.exchanged(e1, e2)
                depth += 1
                count += 1
                yield Emission(count, framework, depth, (e1, e2))
                if max_outputs is not None and count >= max_outputs:
                    return
                i = j = 0
                continue
            if node.L == self.root:
                return
            step = node.parent_step()
            node = node.exchanged(step.removed, step.added)
            depth -= 1
            # resume just after the pair (st, ac) that produced the child
            i = node.L.edges.index(step.added)
            j = kn_index[step.removed] + 1


def compute_root(ps: PointSet, constraints: Iterable = ()) -> Framework:
    return LamanEnumerator(ps, constraints).root


def reverse_search(
    ps: PointSet,
    constraints: Iterable = (),
    sink: Optional[Callable[[Emission], None]] = None,
    fast: bool = True,
    max_outputs: Optional[int] = None,
) -> int:
    """Emit every framework once to ``sink``; returns the count."""
    count = 0
    for em in LamanEnumerator(ps, constraints, fast=fast).run(max_outputs):
        count += 1
        if sink is not None:
            sink(em)
    return count


def threshold_c(node: Node, e1: Edge, mode: str) -> Optional[Edge]:
    return node.threshold(Edge.of(*e1), 1 if mode == "f1" else 2)


def check_parent_f1(node: Node, e1: Edge, e2: Edge) -> bool:
    return node.check_f1(Edge.of(*e1), Edge.of(*e2))


def check_parent_f2(node: Node, e1: Edge, e2: Edge) -> bool:
    return node.check_f2(Edge.of(*e1), Edge.of(*e2))
