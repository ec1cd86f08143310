import ast
import itertools
import math
from pathlib import Path

import pytest

from laman_enum import oracle
from laman_enum.oracle import (
    OracleGuardError,
    all_triangulations,
    brute_frameworks,
    brute_rank,
    laman_by_counting,
)
from laman_enum.rigidity import is_laman

CONVEX4 = [(0, 0), (4, 0), (5, 3), (1, 4)]


def regular_polygon(n, r=1000):
    # integer vertices of a slightly irregular convex polygon
    return [(round(r * math.cos(2 * math.pi * k / n + 0.1)), round(r * math.sin(2 * math.pi * k / n + 0.1)))
            for k in range(n)]


def test_three_points():
    rep = brute_frameworks([(0, 0), (1, 0), (0, 1)])
    assert rep.frameworks == {((1, 2), (1, 3), (2, 3))}
    assert all_triangulations([(0, 0), (1, 0), (0, 1)]) == {((1, 2), (1, 3), (2, 3))}


def test_convex_four():
    rep = brute_frameworks(CONVEX4)
    hull = [(1, 2), (1, 4), (2, 3), (3, 4)]
    assert rep.frameworks == {tuple(sorted(hull + [d])) for d in [(1, 3), (2, 4)]}
    assert len(all_triangulations(CONVEX4)) == 2
    assert all_triangulations(CONVEX4, [(1, 3)]) == {tuple(sorted(hull + [(1, 3)]))}


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_convex_polygon_catalan(n):
    assert len(all_triangulations(regular_polygon(n))) == math.comb(2 * (n - 2), n - 2) // (n - 1)


def test_dependent_constraints_give_diagnostic():
    rep = brute_frameworks(CONVEX4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (2, 4)])
    assert not rep.frameworks and rep.diagnostic
    # planar K4: triangle with a point inside, six edges on four vertices
    k4 = list(itertools.combinations(range(1, 5), 2))
    rep = brute_frameworks([(0, 0), (10, 0), (0, 10), (2, 2), (20, 20)], k4)
    assert not rep.frameworks and "dependent" in rep.diagnostic


def test_crossing_constraints_give_diagnostic():
    rep = brute_frameworks(CONVEX4, [(1, 3), (2, 4)])
    assert not rep.frameworks and "cross" in rep.diagnostic


def test_brute_rank_examples():
    assert brute_rank([(1, 2), (1, 3), (2, 3)], 3) == 3
    assert brute_rank(itertools.combinations(range(1, 5), 2), 4) == 5
    two_triangles = [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)]
    assert brute_rank(two_triangles, 6) == 6
    assert brute_rank([], 5) == 0


def test_guards():
    with pytest.raises(OracleGuardError):
        brute_frameworks(regular_polygon(10))
    with pytest.raises(OracleGuardError):
        all_triangulations(regular_polygon(9))
    with pytest.raises(OracleGuardError):
        brute_rank([(1, 2)], 9)


def test_rank_matches_laman_exhaustive_small():
    for n in range(2, 6):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        for edges in itertools.combinations(pairs, 2 * n - 3):
            full = brute_rank(edges, n) == 2 * n - 3
            assert full == laman_by_counting(edges, n) == is_laman(edges, n)


def test_oracle_imports_no_code_under_test():
    tree = ast.parse(Path(oracle.__file__).read_text())
    names = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            names.add((node.module or "", node.level))
        elif isinstance(node, ast.Import):
            names.update((a.name, 0) for a in node.names)
    assert all(level == 0 and not mod.startswith("laman_enum") for mod, level in names)
