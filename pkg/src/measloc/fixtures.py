"""Fixture corpus: exhaustive small spaces, random spaces and named examples."""

from __future__ import annotations

import random
from itertools import combinations, permutations

from .duality import tm
from .ems import EMPTY, EnhancedMeasurableSpace, discrete_ems, indiscrete_ems
from .errors import BoundExceeded
from .lattice import chain, powerset, set_key
from .topology import sierpinski_space

MAX_EXHAUSTIVE = 4


def set_partitions(points):
    points = list(points)
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _space(points, blocks, null_blocks):
    """Sigma-algebra generated by the blocks; N = everything inside the null blocks."""
    blocks = [frozenset(b) for b in blocks]
    M = set()
    for r in range(len(blocks) + 1):
        for combo in combinations(blocks, r):
            M.add(frozenset().union(*combo) if combo else EMPTY)
    null = [frozenset(b) for b in null_blocks]
    N = set()
    for r in range(len(null) + 1):
        for combo in combinations(null, r):
            N.add(frozenset().union(*combo) if combo else EMPTY)
    return EnhancedMeasurableSpace(points, M, N)


def _canonical(E):
    n = len(E.X)
    best = None
    for perm in permutations(range(n)):
        rename = dict(zip(E.X, perm))
        key = (
            tuple(sorted(tuple(sorted(rename[x] for x in m)) for m in E.M)),
            tuple(sorted(tuple(sorted(rename[x] for x in m)) for m in E.N)),
        )
        if best is None or key < best:
            best = key
    return best


def enumerate_fixtures(max_points):
    """Every space on {0..n-1}, n <= max_points, up to relabelling points.

    A finite sigma-algebra is the set of unions of a partition.  Completeness
    forces every negligible block to be a singleton, so N is fixed by a
    choice of singleton blocks.
    """
    if max_points > MAX_EXHAUSTIVE:
        raise BoundExceeded(f"exhaustive enumeration is limited to {MAX_EXHAUSTIVE} points",
                            max_points)
    for n in range(max_points + 1):
        seen = set()
        points = list(range(n))
        for part in set_partitions(points):
            singles = [b for b in part if len(b) == 1]
            for r in range(len(singles) + 1):
                for nulls in combinations(singles, r):
                    E = _space(points, part, nulls)
                    key = _canonical(E)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield E


def random_ems(rng, max_points=6):
    n = rng.randint(0, max_points)
    points = list(range(n))
    labels = [rng.randint(0, max(n - 1, 0)) for _ in points]
    part = {}
    for x, b in zip(points, labels):
        part.setdefault(b, []).append(x)
    blocks = list(part.values())
    nulls = [b for b in blocks if len(b) == 1 and rng.random() < 0.4]
    return _space(points, blocks, nulls)


def boolean_fixtures(max_atoms=4):
    return [powerset(k) for k in range(max_atoms + 1)]


def named_ems():
    """Small spaces that exercise each branch of the theory."""
    return {
        "empty": discrete_ems([]),
        "point": discrete_ems([0]),
        "discrete-2": discrete_ems([0, 1]),
        "discrete-3": discrete_ems([0, 1, 2]),
        "IND": indiscrete_ems(2),
        "TM-sierpinski": tm(sierpinski_space()),
        "all-null": EnhancedMeasurableSpace([0, 1], [EMPTY, {0}, {1}, {0, 1}],
                                            [EMPTY, {0}, {1}, {0, 1}]),
        "half-null": EnhancedMeasurableSpace([0, 1, 2], [EMPTY, {0}, {1, 2}, {0, 1, 2}], [EMPTY, {0}]),
    }


def named_lattices():
    return {
        "powerset(0)": powerset(0),
        "powerset(1)": powerset(1),
        "powerset(2)": powerset(2),
        "powerset(3)": powerset(3),
        "chain(3)": chain(3),
    }


def seeded_rng(seed, *salt):
    """Independent stream per (seed, salt) so cases do not share state."""
    return random.Random(repr((seed,) + salt))
