import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laman_enum.geometry import Edge
from laman_enum.oracle import brute_rank, laman_by_counting, sparse_by_counting
from laman_enum.rigidity import (
    BlockIndex,
    PebbleGame,
    SparseGraph,
    components_after_removal,
    is_independent,
    is_laman,
    pair_find,
    pebble_state,
    restores_laman,
)

E = Edge.of
TRI_PENDANT = [E(1, 2), E(1, 3), E(2, 3), E(1, 4), E(2, 4)]


def brute_components(edges, n):
    """Maximal vertex sets spanning exactly 2k-3 edges (k >= 2)."""
    es = [tuple(e) for e in edges]
    blocks = []
    for k in range(2, n + 1):
        for s in itertools.combinations(range(1, n + 1), k):
            ss = set(s)
            if sum(1 for u, v in es if u in ss and v in ss) == 2 * k - 3:
                blocks.append(frozenset(s))
    return {b for b in blocks if not any(b < c for c in blocks)}


def test_triangle_all_accepted():
    g = PebbleGame(3)
    assert [g.try_insert(e) for e in (E(1, 2), E(1, 3), E(2, 3))] == [True] * 3
    assert g.free_pebbles() == 3


def test_k4_minus_edge_rejects_last():
    g, rejected = pebble_state([E(1, 2), E(1, 3), E(1, 4), E(2, 3), E(2, 4)], 4)
    assert not rejected
    assert g.try_insert(E(3, 4)) is False


def test_triangle_plus_two_edges():
    g, _ = pebble_state([E(1, 2), E(1, 3), E(2, 3)], 4)
    assert g.try_insert(E(1, 4)) and g.try_insert(E(2, 4))
    assert is_laman(g.accepted, 4)
    assert brute_rank(g.accepted, 4) == 5


def test_duplicate_insert_is_caller_error():
    g = PebbleGame(3)
    g.try_insert(E(1, 2))
    with pytest.raises(ValueError):
        g.try_insert(E(1, 2))


def test_is_laman_examples():
    assert is_laman(SparseGraph(3, {E(1, 2), E(1, 3), E(2, 3)}))
    k4 = {E(u, v) for u, v in itertools.combinations(range(1, 5), 2)}
    assert not is_laman(SparseGraph(4, k4))
    four_cycle_diag = [E(1, 2), E(2, 3), E(3, 4), E(1, 4), E(1, 3)]
    assert laman_by_counting(four_cycle_diag, 4)
    assert is_laman(four_cycle_diag, 4)


def test_is_independent_examples():
    assert is_independent([E(1, 2), E(1, 3)], 4)
    assert not is_independent(itertools.combinations(range(1, 5), 2), 4)
    assert not is_independent([E(u, v) for u, v in itertools.combinations(range(1, 6), 2)][:8], 5)


def test_components_after_removal_examples():
    idx = components_after_removal(TRI_PENDANT, E(1, 4), 4)
    assert set(idx.components) == {frozenset({1, 2, 3}), frozenset({2, 4})}
    assert set(idx.components) == brute_components([e for e in TRI_PENDANT if e != E(1, 4)], 4)
    assert pair_find(idx, 1, 3) and not pair_find(idx, 3, 4) and pair_find(idx, 2, 2)

    idx = components_after_removal([E(1, 2), E(1, 3), E(2, 3)], E(1, 2), 3)
    assert set(idx.components) == {frozenset({1, 3}), frozenset({2, 3})}


def test_restores_laman_examples():
    assert restores_laman(TRI_PENDANT, E(1, 4), E(3, 4), 4)
    assert laman_by_counting([E(1, 2), E(1, 3), E(2, 3), E(2, 4), E(3, 4)], 4)
    assert not restores_laman(TRI_PENDANT, E(1, 4), E(2, 3), 4)
    assert restores_laman(TRI_PENDANT, E(1, 4), E(1, 4), 4)


def random_laman(n, rng):
    """Laman graph by Henneberg-I steps on a random vertex order."""
    edges = {E(1, 2)}
    for v in range(3, n + 1):
        a, b = rng.sample(range(1, v), 2)
        edges |= {E(a, v), E(b, v)}
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return {E(perm[u - 1], perm[v - 1]) for u, v in edges}


edge_sets = st.integers(2, 6).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.sampled_from(list(itertools.combinations(range(1, n + 1), 2))), unique=True, max_size=12),
    )
)


@settings(max_examples=200, deadline=None)
@given(edge_sets)
def test_independence_agrees_with_brute_rank(case):
    n, edges = case
    assert is_independent(edges, n) == (brute_rank(edges, n) == len(edges))
    assert is_independent(edges, n) == sparse_by_counting(edges, n)


@settings(max_examples=200, deadline=None)
@given(edge_sets)
def test_pebble_conservation_and_rejection_purity(case):
    n, edges = case
    g = PebbleGame(n)
    shadow = PebbleGame(n)
    for e in edges:
        before = g.copy()
        ok = g.try_insert(E(*e))
        assert g.free_pebbles() + len(g.accepted) == 2 * n
        if not ok:
            assert g.accepted == before.accepted
        if ok:
            shadow.try_insert(E(*e))
    # replaying the accepted edges on a fresh state gives the same verdicts
    assert shadow.accepted == g.accepted


def test_restores_matches_is_laman_exhaustive():
    rng = random.Random(11)
    for n in range(3, 7):
        for _ in range(6):
            L = random_laman(n, rng)
            assert brute_rank(L, n) == 2 * n - 3 and is_laman(L, n)
            blocks = BlockIndex(L, n)
            for e_out in sorted(L):
                idx = blocks.removal(e_out)
                mech = L - {e_out}
                assert set(idx.components) == brute_components(mech, n)
                for a, b in itertools.combinations(idx.components, 2):
                    assert len(a & b) <= 1
                for e in mech:
                    assert any({e.u, e.v} <= c for c in idx.components)
                for u, v in itertools.combinations(range(1, n + 1), 2):
                    e_in = E(u, v)
                    if e_in in L:
                        continue
                    expect = laman_by_counting(mech | {e_in}, n)
                    assert blocks.restores(e_out, e_in) == expect
                    assert restores_laman(L, e_out, e_in, n) == expect
