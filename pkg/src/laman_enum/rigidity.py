"""(2,3)-pebble game, Laman tests and rigid components of 1dof mechanisms.

The pair-find structure for ``L - e`` is derived from the minimal rigid blocks
of the Laman framework ``L``: for a vertex pair ``uv`` the fundamental circuit
of ``uv`` in ``L`` is ``uv`` plus the edges spanned by the smallest rigid block
containing ``u`` and ``v``.  Removing ``e`` frees the pair exactly when ``e``
lies in that circuit.  Blocks are computed once per framework with the pebble
game, after which every removal index is built in O(n^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .geometry import Edge


class PebbleGame:
    """Directed pebble bookkeeping for the (2,3)-sparsity game on vertices 1..n."""

    def __init__(self, n: int):
        self.n = n
        self.pebbles = [2] * (n + 1)
        self.pebbles[0] = 0
        self.out: list[list[int]] = [[] for _ in range(n + 1)]
        self.accepted: set[Edge] = set()

    def copy(self) -> "PebbleGame":
        other = PebbleGame.__new__(PebbleGame)
        other.n = self.n
        other.pebbles = self.pebbles[:]
        other.out = [heads[:] for heads in self.out]
        other.accepted = set(self.accepted)
        return other

    def free_pebbles(self) -> int:
        return sum(self.pebbles)

    def _search(self, root: int, blocked: int) -> bool:
        """Move one free pebble to ``root`` along a reversed out-edge path."""
        parent = {root: 0, blocked: -1}
        stack = [root]
        out, pebbles = self.out, self.pebbles
        while stack:
            v = stack.pop()
            # reversed so the smallest head is explored first
            for w in sorted(out[v], reverse=True):
                if w in parent:
                    continue
                parent[w] = v
                if pebbles[w] > 0:
                    pebbles[w] -= 1
                    pebbles[root] += 1
                    while w != root:
                        p = parent[w]
                        out[p].remove(w)
                        out[w].append(p)
                        w = p
                    return True
                stack.append(w)
        return False

    def gather(self, u: int, v: int, target: int) -> int:
        """Collect up to ``target`` pebbles on ``{u, v}``; returns the number held."""
        pebbles = self.pebbles
        while pebbles[u] + pebbles[v] < target:
            if pebbles[u] < 2 and self._search(u, v):
                continue
            if pebbles[v] < 2 and self._search(v, u):
                continue
            break
        return pebbles[u] + pebbles[v]

    def reach(self, u: int, v: int) -> set[int]:
        seen = {u, v}
        stack = [u, v]
        while stack:
            x = stack.pop()
            for w in self.out[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def can_insert(self, e: Edge) -> bool:
        return self.gather(e.u, e.v, 4) >= 4

    def try_insert(self, e: Edge) -> bool:
        e = Edge.of(*e)
        if e in self.accepted:
            raise ValueError(f"edge {e} already accepted")
        if not self.can_insert(e):
            return False
        tail, head = (e.u, e.v) if self.pebbles[e.u] > 0 else (e.v, e.u)
        self.pebbles[tail] -= 1
        self.out[tail].append(head)
        self.accepted.add(e)
        return True

    def minimal_block(self, u: int, v: int) -> set[int]:
        """Smallest rigid block spanning ``u`` and ``v``.

        Only meaningful when ``u`` and ``v`` are already rigidly connected,
        e.g. for any pair in a Laman graph.
        """
        if self.gather(u, v, 4) >= 4:
            raise ValueError(f"{u},{v} are not spanned by a rigid block")
        return self.reach(u, v)


@dataclass
class SparseGraph:
    n: int
    edges: set[Edge] = field(default_factory=set)

    def __post_init__(self):
        self.edges = {Edge.of(*e) for e in self.edges}
        for e in self.edges:
            if not (1 <= e.u and e.v <= self.n):
                raise ValueError(f"edge {e} out of range 1..{self.n}")


def pebble_state(edges: Iterable, n: int) -> tuple[PebbleGame, list[Edge]]:
    """Insert edges in the given order; returns the state and the rejected edges."""
    game = PebbleGame(n)
    rejected = []
    for e in edges:
        e = Edge.of(*e)
        if e in game.accepted or not game.try_insert(e):
            rejected.append(e)
    return game, rejected


def is_independent(edges: Iterable, n: int) -> bool:
    edges = list(edges)
    if len(edges) > max(2 * n - 3, 0):
        return False
    return not pebble_state(edges, n)[1]


def is_laman(graph: SparseGraph | Iterable, n: int | None = None) -> bool:
    if isinstance(graph, SparseGraph):
        n, edges = graph.n, list(graph.edges)
    else:
        edges = list(graph)
    if n is None:
        raise TypeError("vertex count required")
    if n == 1:
        return not edges
    return len(edges) == 2 * n - 3 and is_independent(edges, n)


class BlockIndex:
    """Minimal rigid blocks of every vertex pair of a Laman framework."""

    def __init__(self, edges: Iterable, n: int):
        self.n = n
        self.edges = frozenset(Edge.of(*e) for e in edges)
        game, rejected = pebble_state(sorted(self.edges), n)
        if rejected or len(self.edges) != 2 * n - 3:
            raise ValueError("edge set is not Laman")
        self._game = game
        # block[u][v] is a vertex bitmask, 0 until first asked for
        self._block = [[0] * (n + 1) for _ in range(n + 1)]
        for u in range(1, n + 1):
            self._block[u][u] = 1 << u
        for e in self.edges:
            self._block[e.u][e.v] = self._block[e.v][e.u] = (1 << e.u) | (1 << e.v)

    def mask(self, u: int, v: int) -> int:
        m = self._block[u][v]
        if not m:
            for w in self._game.minimal_block(u, v):
                m |= 1 << w
            self._block[u][v] = self._block[v][u] = m
        return m

    @property
    def block(self) -> list[list[int]]:
        for u in range(1, self.n + 1):
            for v in range(u + 1, self.n + 1):
                self.mask(u, v)
        return self._block

    def restores(self, e_out: Edge, e_in: Edge) -> bool:
        """Whether ``L - e_out + e_in`` is Laman (``e_in`` not in ``L``)."""
        if e_out == e_in:
            return True
        mask = self.mask(e_in.u, e_in.v)
        return bool(mask >> e_out.u & 1 and mask >> e_out.v & 1)

    def removal(self, e: Edge) -> "ComponentIndex":
        return ComponentIndex.after_removal(self, Edge.of(*e))


@dataclass
class ComponentIndex:
    """Rigid components of a 1dof mechanism with O(1) pair-find."""

    n: int
    components: list[frozenset[int]]
    pair: list[list[bool]]

    @classmethod
    def after_removal(cls, index: BlockIndex, e: Edge) -> "ComponentIndex":
        if e not in index.edges:
            raise ValueError(f"edge {e} not in framework")
        n, block = index.n, index.block
        emask = (1 << e.u) | (1 << e.v)
        pair = [[False] * (n + 1) for _ in range(n + 1)]
        for u in range(1, n + 1):
            row = block[u]
            for v in range(1, n + 1):
                pair[u][v] = u == v or (row[v] & emask) != emask
        components: list[frozenset[int]] = []
        covered: set[int] = set()
        seen: set[frozenset[int]] = set()
        for f in sorted(index.edges - {e}):
            comp = frozenset(
                [f.u, f.v]
                + [w for w in range(1, n + 1) if pair[f.u][w] and pair[f.v][w]]
            )
            if comp not in seen:
                seen.add(comp)
                components.append(comp)
                covered |= comp
        for w in range(1, n + 1):
            if w not in covered:
                components.append(frozenset([w]))
        return cls(n, components, pair)

    def pair_find(self, u: int, v: int) -> bool:
        return self.pair[u][v]


def components_after_removal(edges: Iterable, e: Edge, n: int) -> ComponentIndex:
    return BlockIndex(edges, n).removal(e)


def pair_find(idx: ComponentIndex, u: int, v: int) -> bool:
    return idx.pair_find(u, v)


def restores_laman(edges: Iterable, e_out: Edge, e_in: Edge, n: int) -> bool:
    e_out, e_in = Edge.of(*e_out), Edge.of(*e_in)
    if e_out == e_in:
        return True
    idx = components_after_removal(edges, e_out, n)
    return not idx.pair_find(e_in.u, e_in.v)
