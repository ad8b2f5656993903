from itertools import combinations, permutations

import pytest

from measloc.ems import EnhancedMeasurableSpace
from measloc.errors import BoundExceeded, MeasLocError
from measloc.fixtures import enumerate_fixtures, random_ems, seeded_rng, set_partitions


def families(points):
    subsets = [frozenset(c) for r in range(len(points) + 1) for c in combinations(points, r)]
    for mask in range(1 << len(subsets)):
        yield [s for i, s in enumerate(subsets) if mask >> i & 1]


def canonical(E):
    best = None
    for perm in permutations(range(len(E.X))):
        r = dict(zip(E.X, perm))
        key = (sorted(sorted(r[x] for x in m) for m in E.M),
               sorted(sorted(r[x] for x in m) for m in E.N))
        best = key if best is None or key < best else best
    return repr(best)


def brute_spaces(n):
    """Every valid (M, N) on n points, found by trying all pairs of families."""
    pts = list(range(n))
    found = set()
    algebras = []
    for M in families(pts):
        try:
            EnhancedMeasurableSpace(pts, M, [frozenset()])
            algebras.append(M)
        except MeasLocError:
            continue
    for M in algebras:
        for mask in range(1 << len(M)):
            N = [m for i, m in enumerate(M) if mask >> i & 1]
            try:
                found.add(canonical(EnhancedMeasurableSpace(pts, M, N)))
            except MeasLocError:
                continue
    return found


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_enumeration_matches_brute_force(n):
    ours = [E for E in enumerate_fixtures(n) if len(E.X) == n]
    assert len({canonical(E) for E in ours}) == len(ours)
    assert {canonical(E) for E in ours} == brute_spaces(n)


def test_counts():
    assert [sum(1 for E in enumerate_fixtures(n) if len(E.X) == n) for n in range(5)] == [1, 2, 4, 7, 12]


def test_bound():
    with pytest.raises(BoundExceeded):
        list(enumerate_fixtures(5))


def test_set_partitions_are_bell_numbers():
    assert [len(list(set_partitions(range(n)))) for n in range(6)] == [1, 1, 2, 5, 15, 52]


def test_random_spaces_are_valid_and_seeded():
    a = [random_ems(seeded_rng(3, "x", i)) for i in range(50)]
    b = [random_ems(seeded_rng(3, "x", i)) for i in range(50)]
    assert a == b
    assert max(len(E.X) for E in a) <= 6
