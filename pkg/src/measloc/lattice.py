"""Finite lattices, frames and maps between them.

A :class:`FiniteLattice` stores its order as a dense boolean table and
computes the meet and join tables eagerly.  Element ids are opaque
hashable values; internally everything is indexed by position.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import NoAdjoint, NotALattice, NotDistributive


def point_key(v):
    """Sort key that orders ints numerically and everything else by text."""
    if isinstance(v, bool):
        return (1, 0, str(v))
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, label(v))


def set_key(s):
    return (len(s), [point_key(v) for v in sorted(s, key=point_key)])


def label(x):
    """Compact text form of an element id, used by reports and documents."""
    if isinstance(x, frozenset):
        return "{" + ",".join(label(v) for v in sorted(x, key=point_key)) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(label(v) for v in x) + ")"
    return str(x)


class FiniteLattice:
    """A finite lattice given by its elements and order table.

    ``leq[i][j]`` is true when ``elems[i] <= elems[j]``.  Construction fails
    with :class:`NotALattice` if the relation is not a partial order or some
    pair lacks a meet or a join.
    """

    def __init__(self, elems, leq, name=None):
        elems = tuple(elems)
        n = len(elems)
        if n == 0:
            raise NotALattice("the empty poset has no top or bottom")
        index = {x: i for i, x in enumerate(elems)}
        if len(index) != n:
            raise NotALattice("duplicate element ids")
        order = np.array(leq, dtype=bool).reshape(n, n)
        self.elems = elems
        self.name = name
        self._index = index
        self._check_order(order)
        self.leq_table = order
        self.meet_table, self.join_table = self._build_tables(order)
        bottoms = np.flatnonzero(order.all(axis=1))
        tops = np.flatnonzero(order.all(axis=0))
        self._bot = int(bottoms[0])
        self._top = int(tops[0])
        for arr in (self.leq_table, self.meet_table, self.join_table):
            arr.setflags(write=False)

    # construction helpers

    def _check_order(self, order):
        n = len(self.elems)
        diag = np.diag(order)
        if not diag.all():
            i = int(np.flatnonzero(~diag)[0])
            raise NotALattice("order is not reflexive", self.elems[i])
        anti = order & order.T & ~np.eye(n, dtype=bool)
        if anti.any():
            i, j = np.argwhere(anti)[0]
            raise NotALattice("order is not antisymmetric", (self.elems[i], self.elems[j]))
        o = order.astype(np.int64)
        trans = ((o @ o) > 0) & ~order
        if trans.any():
            i, j = np.argwhere(trans)[0]
            raise NotALattice("order is not transitive", (self.elems[i], self.elems[j]))

    def _build_tables(self, order):
        n = len(self.elems)
        down = order.sum(axis=0)
        up = order.sum(axis=1)
        ub = order[:, None, :] & order[None, :, :]
        lb = order.T[:, None, :] & order.T[None, :, :]
        if not ub.any(axis=2).all():
            i, j = np.argwhere(~ub.any(axis=2))[0]
            raise NotALattice("pair without upper bound", (self.elems[i], self.elems[j]))
        if not lb.any(axis=2).all():
            i, j = np.argwhere(~lb.any(axis=2))[0]
            raise NotALattice("pair without lower bound", (self.elems[i], self.elems[j]))
        join = np.where(ub, down[None, None, :], n + 1).argmin(axis=2)
        meet = np.where(lb, up[None, None, :], n + 1).argmin(axis=2)
        join_ok = (~ub | order[join]).all(axis=2)
        meet_ok = (~lb | order.T[meet]).all(axis=2)
        if not join_ok.all():
            i, j = np.argwhere(~join_ok)[0]
            raise NotALattice("pair without least upper bound", (self.elems[i], self.elems[j]))
        if not meet_ok.all():
            i, j = np.argwhere(~meet_ok)[0]
            raise NotALattice("pair without greatest lower bound", (self.elems[i], self.elems[j]))
        return meet, join

    @classmethod
    def from_order(cls, elems, leq_fn, name=None):
        elems = tuple(elems)
        table = [[bool(leq_fn(x, y)) for y in elems] for x in elems]
        return cls(elems, table, name=name)

    @classmethod
    def from_covers(cls, elems, covers, name=None):
        """Build from covering pairs ``(lower, upper)``; closes reflexively and transitively."""
        elems = tuple(elems)
        idx = {x: i for i, x in enumerate(elems)}
        n = len(elems)
        rel = np.eye(n, dtype=bool)
        for a, b in covers:
            rel[idx[a], idx[b]] = True
        for k in range(n):
            rel |= rel[:, k:k + 1] & rel[k:k + 1, :]
        return cls(elems, rel, name=name)

    @classmethod
    def from_family(cls, sets, name=None):
        """Lattice of a family of sets ordered by inclusion."""
        sets = sorted({frozenset(s) for s in sets}, key=set_key)
        return cls.from_order(sets, lambda a, b: a <= b, name=name)

    # element level interface

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<FiniteLattice{tag} with {len(self.elems)} elements>"

    def index(self, x):
        try:
            return self._index[x]
        except KeyError:
            raise KeyError(f"{label(x)} is not an element of {self!r}") from None

    @property
    def bottom(self):
        return self.elems[self._bot]

    @property
    def top(self):
        return self.elems[self._top]

    def leq(self, x, y):
        return bool(self.leq_table[self.index(x), self.index(y)])

    def meet(self, x, y):
        return self.elems[self.meet_table[self.index(x), self.index(y)]]

    def join(self, x, y):
        return self.elems[self.join_table[self.index(x), self.index(y)]]

    def join_all(self, xs):
        mask = np.zeros(len(self.elems), dtype=bool)
        for x in xs:
            mask[self.index(x)] = True
        return self.elems[self._sup_mask(mask)]

    def meet_all(self, xs):
        mask = np.zeros(len(self.elems), dtype=bool)
        for x in xs:
            mask[self.index(x)] = True
        return self.elems[self._inf_mask(mask)]

    def below(self, x):
        col = self.leq_table[:, self.index(x)]
        return [self.elems[i] for i in np.flatnonzero(col)]

    def above(self, x):
        row = self.leq_table[self.index(x)]
        return [self.elems[i] for i in np.flatnonzero(row)]

    def covers(self):
        """Covering pairs (x, y): x < y with nothing strictly between."""
        lt = self.leq_table & ~np.eye(len(self.elems), dtype=bool)
        lt_i = lt.astype(np.int64)
        between = (lt_i @ lt_i) > 0
        cov = lt & ~between
        return [(self.elems[i], self.elems[j]) for i, j in np.argwhere(cov)]

    def atoms(self):
        return list(self._atoms)

    @cached_property
    def _atoms(self):
        return tuple(y for x, y in self.covers() if x == self.bottom)

    def atoms_below(self, x):
        xi = self.index(x)
        return [a for a in self._atoms if self.leq_table[self.index(a), xi]]

    # index level helpers shared with other modules

    def _sup_mask(self, mask):
        order = self.leq_table
        ub = order[mask].all(axis=0)
        down = order.sum(axis=0)
        return int(np.where(ub, down, len(self.elems) + 1).argmin())

    def _inf_mask(self, mask):
        order = self.leq_table
        lb = order[:, mask].all(axis=1)
        up = order.sum(axis=1)
        return int(np.where(lb, up, len(self.elems) + 1).argmin())

    @cached_property
    def profile(self):
        return classify(self)

    @cached_property
    def _neg(self):
        # pseudocomplement by index: sup{w | w ∧ x = 0}
        m = self.meet_table == self._bot
        return np.array([self._sup_mask(m[:, x]) for x in range(len(self.elems))])

    @cached_property
    def _heyting_table(self):
        n = len(self.elems)
        below = self.leq_table[self.meet_table]  # [w, x, y]: w∧x <= y
        out = np.empty((n, n), dtype=np.intp)
        for x in range(n):
            for y in range(n):
                out[x, y] = self._sup_mask(below[:, x, y])
        return out

    def _require_frame(self):
        if not self.profile.is_frame:
            raise NotDistributive("not a frame", self.profile.distributivity_witness)


# standard constructors


def powerset(atoms):
    """Boolean lattice of all subsets of ``atoms`` (an int means range(n))."""
    if isinstance(atoms, int):
        atoms = range(atoms)
    atoms = sorted(set(atoms), key=point_key)
    subsets = [frozenset(c) for r in range(len(atoms) + 1) for c in combinations(atoms, r)]
    return FiniteLattice.from_order(subsets, lambda a, b: a <= b, name=f"powerset({len(atoms)})")


def chain(n):
    """The chain 0 < 1 < ... < n-1."""
    return FiniteLattice.from_order(range(n), lambda a, b: a <= b, name=f"chain({n})")


def diamond():
    """M3: three pairwise incomparable atoms."""
    return FiniteLattice.from_covers(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "c"), ("a", "top"), ("b", "top"), ("c", "top")],
        name="M3",
    )


def pentagon():
    """N5: bot < a < b < top and bot < c < top."""
    return FiniteLattice.from_covers(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("a", "b"), ("b", "top"), ("bot", "c"), ("c", "top")],
        name="N5",
    )


def sublattice(L, elems, name=None):
    """Subset of ``L`` with the restricted order (must itself be a lattice)."""
    elems = [x for x in L.elems if x in set(elems)]
    idx = [L.index(x) for x in elems]
    return FiniteLattice(elems, L.leq_table[np.ix_(idx, idx)], name=name)


# Heyting structure


def heyting(L, x, y):
    """x → y = sup{w | w ∧ x <= y}."""
    L._require_frame()
    return L.elems[L._heyting_table[L.index(x), L.index(y)]]


def pseudocomplement(L, x):
    L._require_frame()
    return L.elems[L._neg[L.index(x)]]


@dataclass(frozen=True)
class LatticeProfile:
    is_lattice: bool
    is_distributive: bool
    is_boolean: bool
    is_frame: bool
    is_regular: bool
    is_extremally_disconnected: bool
    is_boolean_locale: bool
    distributivity_witness: tuple | None = None


def classify(L):
    """Evaluate the structural predicates by exhaustive quantification."""
    meet, join, bot, top = L.meet_table, L.join_table, L._bot, L._top
    lhs = meet[:, join]  # x ∧ (y ∨ z)
    rhs = join[meet[:, :, None], meet[:, None, :]]  # (x∧y) ∨ (x∧z)
    bad = lhs != rhs
    witness = None
    if bad.any():
        x, y, z = np.argwhere(bad)[0]
        witness = (L.elems[x], L.elems[y], L.elems[z])
    distributive = witness is None
    complemented = ((meet == bot) & (join == top)).any(axis=1).all()
    boolean = distributive and bool(complemented)
    regular = ext_disc = bool_loc = False
    if distributive:
        neg = L._neg
        bool_loc = bool((join[np.arange(len(L)), neg] == top).all())
        ext_disc = bool((join[neg, neg[neg]] == top).all())
        regular = True
        for y in range(len(L)):
            mask = join[neg, y] == top  # x ≺ y
            if L._sup_mask(mask) != y:
                regular = False
                break
    return LatticeProfile(
        is_lattice=True,
        is_distributive=distributive,
        is_boolean=boolean,
        is_frame=distributive,
        is_regular=regular,
        is_extremally_disconnected=ext_disc,
        is_boolean_locale=bool_loc,
        distributivity_witness=witness,
    )


# maps


class LatticeMap:
    """A total function between the element sets of two finite lattices."""

    def __init__(self, src, dst, table):
        if callable(table) and not isinstance(table, dict):
            values = [table(x) for x in src.elems]
        else:
            missing = [x for x in src.elems if x not in table]
            if missing:
                raise ValueError(f"map is not total: no image for {label(missing[0])}")
            values = [table[x] for x in src.elems]
        self.src = src
        self.dst = dst
        self.idx = np.array([dst.index(v) for v in values], dtype=np.intp)
        self.idx.setflags(write=False)

    @classmethod
    def _from_idx(cls, src, dst, idx):
        f = cls.__new__(cls)
        f.src, f.dst = src, dst
        f.idx = np.asarray(idx, dtype=np.intp)
        f.idx.setflags(write=False)
        return f

    def __call__(self, x):
        return self.dst.elems[self.idx[self.src.index(x)]]

    @property
    def table(self):
        return {x: self.dst.elems[i] for x, i in zip(self.src.elems, self.idx)}

    def pairs(self):
        return [(label(x), label(self.dst.elems[i])) for x, i in zip(self.src.elems, self.idx)]

    def then(self, g):
        """The composite g ∘ self."""
        if g.src is not self.dst:
            raise ValueError("maps are not composable")
        return LatticeMap._from_idx(self.src, g.dst, g.idx[self.idx])

    def same_as(self, other):
        return (self.src is other.src and self.dst is other.dst
                and np.array_equal(self.idx, other.idx))

    def is_identity(self):
        return self.src is self.dst and np.array_equal(self.idx, np.arange(len(self.src)))

    def is_bijective(self):
        return len(self.src) == len(self.dst) and len(set(self.idx.tolist())) == len(self.dst)

    def inverse(self):
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = np.empty(len(self.dst), dtype=np.intp)
        inv[self.idx] = np.arange(len(self.src))
        return LatticeMap._from_idx(self.dst, self.src, inv)

    def __repr__(self):
        body = ", ".join(f"{a}->{b}" for a, b in self.pairs())
        return f"LatticeMap({body})"


def identity_map(L):
    return LatticeMap._from_idx(L, L, np.arange(len(L)))


@dataclass(frozen=True)
class MapProfile:
    preserves_meets: bool
    preserves_joins: bool
    is_open: bool
    witness: tuple | None = None


def _first_pair(bad, L):
    i, j = np.argwhere(bad)[0]
    return (L.elems[i], L.elems[j])


def check_frame_map(f, open_check=True):
    """Meet, join and Heyting preservation of ``f``.

    Arbitrary joins of a finite family reduce by induction to the empty
    join and binary joins, so those are what is checked here; the literal
    all-subsets check is :func:`preserves_joins_literal`.  ``is_open`` also
    requires the map to be a frame map; pass ``open_check=False`` to skip
    the Heyting comparison.
    """
    s, d, t = f.src, f.dst, f.idx
    witness = None
    bad_meet = t[s.meet_table] != d.meet_table[t[:, None], t[None, :]]
    meets = t[s._top] == d._top and not bad_meet.any()
    if not meets:
        witness = ("meet", _first_pair(bad_meet, s)) if bad_meet.any() else ("top", s.top)
    bad_join = t[s.join_table] != d.join_table[t[:, None], t[None, :]]
    joins = t[s._bot] == d._bot and not bad_join.any()
    if not joins and witness is None:
        witness = ("join", _first_pair(bad_join, s)) if bad_join.any() else ("bottom", s.bottom)
    is_open = False
    if open_check and meets and joins and s.profile.is_frame and d.profile.is_frame:
        bad_imp = t[s._heyting_table] != d._heyting_table[t[:, None], t[None, :]]
        is_open = not bad_imp.any()
        if not is_open:
            witness = ("heyting", _first_pair(bad_imp, s))
    return MapProfile(bool(meets), bool(joins), bool(is_open), witness)


def preserves_joins_literal(f, limit=12):
    """Check f(⋁S) = ⋁f(S) for every subset S of the source (small sources only)."""
    n = len(f.src)
    if n > limit:
        raise ValueError(f"literal subset check limited to {limit} elements")
    for bits in range(1 << n):
        mask = np.array([(bits >> i) & 1 for i in range(n)], dtype=bool)
        img = np.zeros(len(f.dst), dtype=bool)
        img[f.idx[mask]] = True
        if f.idx[f.src._sup_mask(mask)] != f.dst._sup_mask(img):
            return False
    return True


def preserves_meets_literal(f, limit=12):
    n = len(f.src)
    if n > limit:
        raise ValueError(f"literal subset check limited to {limit} elements")
    for bits in range(1 << n):
        mask = np.array([(bits >> i) & 1 for i in range(n)], dtype=bool)
        img = np.zeros(len(f.dst), dtype=bool)
        img[f.idx[mask]] = True
        if f.idx[f.src._inf_mask(mask)] != f.dst._inf_mask(img):
            return False
    return True


@dataclass
class Adjoints:
    """Lower and upper adjoints of a map; an absent adjoint is None."""
    lower: LatticeMap | None
    upper: LatticeMap | None
    frobenius: bool | None = None
    lower_witness: tuple | None = None
    upper_witness: tuple | None = None


def adjoints(f):
    """Candidate adjoints dst -> src, each verified by the Galois condition.

    upper(u) = sup{v | f(v) <= u}, lower(u) = inf{v | u <= f(v)}.  When the
    map is open and the lower adjoint exists, Frobenius reciprocity
    lower(m ∧ f(n)) = lower(m) ∧ n is checked as well.
    """
    s, d, t = f.src, f.dst, f.idx
    below = d.leq_table[t]  # [v, u]: f(v) <= u
    above = d.leq_table[:, t]  # [u, v]: u <= f(v)
    up = np.array([s._sup_mask(below[:, u]) for u in range(len(d))], dtype=np.intp)
    lower_cand = np.array([s._inf_mask(above[u]) for u in range(len(d))], dtype=np.intp)

    upper_ok = below == s.leq_table[:, up]  # f(v) <= u  iff  v <= upper(u)
    lower_ok = s.leq_table[lower_cand, :] == above  # lower(u) <= v  iff  u <= f(v)
    upper = lower = None
    upper_w = lower_w = None
    if upper_ok.all():
        upper = LatticeMap._from_idx(d, s, up)
    else:
        v, u = np.argwhere(~upper_ok)[0]
        upper_w = (s.elems[v], d.elems[u])
    if lower_ok.all():
        lower = LatticeMap._from_idx(d, s, lower_cand)
    else:
        u, v = np.argwhere(~lower_ok)[0]
        lower_w = (d.elems[u], s.elems[v])
    frob = None
    if lower is not None and check_frame_map(f).is_open:
        lhs = lower_cand[d.meet_table[:, t]]  # [m, n]: lower(m ∧ f n)
        rhs = s.meet_table[lower_cand[:, None], np.arange(len(s))[None, :]]
        frob = bool((lhs == rhs).all())
    return Adjoints(lower, upper, frob, lower_w, upper_w)


def upper_adjoint(f):
    adj = adjoints(f)
    if adj.upper is None:
        raise NoAdjoint("no upper adjoint: Galois condition fails", adj.upper_witness)
    return adj.upper


def lower_adjoint(f):
    adj = adjoints(f)
    if adj.lower is None:
        raise NoAdjoint("no lower adjoint: Galois condition fails", adj.lower_witness)
    return adj.lower


# isomorphisms


@dataclass
class IsoCheck:
    ok: bool
    witness: LatticeMap | None = None
    refutation: str | None = None

    def __bool__(self):
        return self.ok


def is_isomorphism(f):
    """A bijection that preserves and reflects the order."""
    if len(f.src) != len(f.dst):
        return IsoCheck(False, None, f"cardinality mismatch {len(f.src)} vs {len(f.dst)}")
    if not f.is_bijective():
        i = _first_collision(f.idx)
        return IsoCheck(False, None, f"not injective at {label(f.src.elems[i])}")
    t = f.idx
    bad = f.src.leq_table != f.dst.leq_table[t[:, None], t[None, :]]
    if bad.any():
        x, y = _first_pair(bad, f.src)
        return IsoCheck(False, None, f"order not preserved on ({label(x)}, {label(y)})")
    return IsoCheck(True, f)


def _first_collision(idx):
    seen = {}
    for i, v in enumerate(idx.tolist()):
        if v in seen:
            return i
        seen[v] = i
    return 0


def find_isomorphism(A, B):
    """Search for an order isomorphism A -> B by backtracking."""
    if len(A) != len(B):
        return IsoCheck(False, None, f"cardinality mismatch {len(A)} vs {len(B)}")
    la, lb = A.leq_table, B.leq_table
    sig_a = list(zip(la.sum(axis=0).tolist(), la.sum(axis=1).tolist()))
    sig_b = list(zip(lb.sum(axis=0).tolist(), lb.sum(axis=1).tolist()))
    if sorted(sig_a) != sorted(sig_b):
        return IsoCheck(False, None, "rank profiles differ")
    order = sorted(range(len(A)), key=lambda i: sig_a[i])
    assign = [-1] * len(A)
    used = [False] * len(B)

    def extend(k):
        if k == len(order):
            return True
        i = order[k]
        for j in range(len(B)):
            if used[j] or sig_b[j] != sig_a[i]:
                continue
            ok = True
            for i2 in order[:k]:
                j2 = assign[i2]
                if la[i, i2] != lb[j, j2] or la[i2, i] != lb[j2, j]:
                    ok = False
                    break
            if ok:
                assign[i], used[j] = j, True
                if extend(k + 1):
                    return True
                assign[i], used[j] = -1, False
        return False

    if not extend(0):
        return IsoCheck(False, None, "no order isomorphism exists")
    return IsoCheck(True, LatticeMap._from_idx(A, B, assign))
