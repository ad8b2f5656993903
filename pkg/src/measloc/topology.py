"""Finite topological spaces."""

from __future__ import annotations

from functools import cached_property
from itertools import product

from .errors import InvalidTopology
from .lattice import label, point_key, set_key


class FiniteTopSpace:
    """A finite set of points with a family of open subsets."""

    def __init__(self, points, opens, validate=True):
        self.points = tuple(sorted(set(points), key=point_key))
        self.opens = frozenset(frozenset(u) for u in opens)
        if validate:
            self._validate()

    def _validate(self):
        X = frozenset(self.points)
        if frozenset() not in self.opens:
            raise InvalidTopology("empty set is not open")
        if X not in self.opens:
            raise InvalidTopology("whole space is not open")
        for u in self.opens:
            if not u <= X:
                raise InvalidTopology("open set outside the carrier", u)
        ops = list(self.opens)
        for i, u in enumerate(ops):
            for v in ops[i + 1:]:
                if u | v not in self.opens:
                    raise InvalidTopology("opens not closed under union", (u, v))
                if u & v not in self.opens:
                    raise InvalidTopology("opens not closed under intersection", (u, v))

    def __eq__(self, other):
        return (isinstance(other, FiniteTopSpace) and self.points == other.points
                and self.opens == other.opens)

    def __hash__(self):
        return hash((self.points, self.opens))

    def __repr__(self):
        opens = " ".join(label(u) for u in sorted(self.opens, key=set_key))
        return f"FiniteTopSpace(points={label(frozenset(self.points))}, opens=[{opens}])"

    @cached_property
    def carrier(self):
        return frozenset(self.points)

    @cached_property
    def closed_sets(self):
        return frozenset(self.carrier - u for u in self.opens)

    @cached_property
    def clopens(self):
        return frozenset(u for u in self.opens if u in self.closed_sets)

    def interior(self, A):
        A = frozenset(A)
        out = frozenset()
        for u in self.opens:
            if u <= A:
                out |= u
        return out

    def closure(self, A):
        A = frozenset(A)
        out = self.carrier
        for c in self.closed_sets:
            if A <= c:
                out &= c
        return out

    def is_rare(self, A):
        """The closure of A has empty interior."""
        return not self.interior(self.closure(A))

    @cached_property
    def rare_sets(self):
        return frozenset(A for A in all_subsets(self.points) if self.is_rare(A))

    def is_sober(self):
        """Every irreducible closed set is the closure of exactly one point."""
        generic = {}
        for x in self.points:
            generic.setdefault(self.closure({x}), []).append(x)
        for c in self.closed_sets:
            if not c:
                continue
            proper = [d for d in self.closed_sets if d < c]
            reducible = any(d1 | d2 == c for d1 in proper for d2 in proper)
            if reducible:
                continue
            if len(generic.get(c, [])) != 1:
                return False
        return True


def all_subsets(points):
    points = list(points)
    for bits in range(1 << len(points)):
        yield frozenset(p for i, p in enumerate(points) if bits >> i & 1)


def discrete_space(points):
    if isinstance(points, int):
        points = range(points)
    return FiniteTopSpace(points, all_subsets(points))


def indiscrete_space(points):
    if isinstance(points, int):
        points = range(points)
    return FiniteTopSpace(points, [frozenset(), frozenset(points)])


def sierpinski_space():
    """Points 0 and 1 with {1} open and {0} closed."""
    return FiniteTopSpace([0, 1], [frozenset(), frozenset({1}), frozenset({0, 1})])


def enumerate_topologies(n):
    """All topologies on range(n), via their specialization preorders."""
    pts = list(range(n))
    off = [(i, j) for i in pts for j in pts if i != j]
    seen = set()
    for bits in product((False, True), repeat=len(off)):
        rel = {(i, i) for i in pts}
        rel.update(p for p, b in zip(off, bits) if b)
        if any((a, c) not in rel for (a, b) in rel for (b2, c) in rel if b == b2):
            continue
        opens = frozenset(
            U for U in all_subsets(pts)
            if all(y in U for x in U for y in pts if (x, y) in rel)
        )
        if opens not in seen:
            seen.add(opens)
            yield FiniteTopSpace(pts, opens, validate=False)


class ContinuousMap:
    """A total point map between finite spaces."""

    def __init__(self, src, dst, mapping):
        self.src = src
        self.dst = dst
        self.mapping = dict(mapping)

    def preimage(self, V):
        return frozenset(x for x in self.src.points if self.mapping[x] in V)

    def image(self, U):
        return frozenset(self.mapping[x] for x in U)

    def is_continuous(self):
        return all(self.preimage(V) in self.src.opens for V in self.dst.opens)

    def is_open(self):
        return all(self.image(U) in self.dst.opens for U in self.src.opens)


def enumerate_maps(src, dst):
    for values in product(dst.points, repeat=len(src.points)):
        yield ContinuousMap(src, dst, zip(src.points, values))
