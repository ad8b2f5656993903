"""Stone-type dualities at finite scale.

Ideals, compact opens and clopens, spectra and frames of opens, together
with the unit and counit of the duality and checkers for the coherent,
Stone, Stonean and hyperstonean levels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import NotBoolean, NotDistributive
from .lattice import (
    FiniteLattice,
    LatticeMap,
    IsoCheck,
    chain,
    check_frame_map,
    is_isomorphism,
    label,
    set_key,
    sublattice,
)
from .topology import FiniteTopSpace

TWO = chain(2)


def is_ideal(R, members):
    """Literal ideal check: contains bottom, down-closed, join-closed."""
    S = frozenset(members)
    if R.bottom not in S:
        return False
    for x in S:
        if any(y not in S for y in R.below(x)):
            return False
    return all(R.join(x, y) in S for x in S for y in S)


def principal_ideal(R, r):
    return frozenset(R.below(r))


def generated_ideal(R, generators):
    """Smallest ideal containing the generators: the down-set of their join."""
    return principal_ideal(R, R.join_all(generators))


def ideals(R):
    """All ideals of a finite lattice.

    A finite ideal contains the join s of its members and is down-closed,
    so it equals the principal ideal of s.  The principal ideals are
    therefore all of them; each one is still checked literally.
    """
    out = []
    for r in R.elems:
        I = principal_ideal(R, r)
        assert is_ideal(R, I)
        out.append(I)
    return out


@lru_cache(maxsize=4096)
def ideal_frame(R):
    """The frame of all ideals of R ordered by inclusion."""
    if not R.profile.is_distributive:
        raise NotDistributive("ideal frame needs a distributive lattice",
                              R.profile.distributivity_witness)
    frame = FiniteLattice.from_family(ideals(R), name=f"Idl({R.name or 'R'})")
    assert frame.profile.is_frame
    return frame


def ideal_implication(R, I, J):
    """I → J = {k | k ∧ i ∈ J for all i ∈ I}."""
    return frozenset(k for k in R.elems if all(R.meet(k, i) in J for i in I))


def ideal_map(h):
    """Idl(h): send an ideal to the ideal generated by its image."""
    src, dst = ideal_frame(h.src), ideal_frame(h.dst)
    return LatticeMap(src, dst, lambda I: generated_ideal(h.dst, [h(x) for x in I]))


@lru_cache(maxsize=4096)
def copen(L):
    """Complemented (clopen) elements of a frame, with the restricted order.

    In a finite frame every element is compact (see :func:`compact_opens`);
    the duality chain uses the clopen part, which agrees with the compact
    opens exactly on Stone-profile frames.
    """
    L._require_frame()
    meet, join = L.meet_table, L.join_table
    comp = ((meet == L._bot) & (join == L._top)).any(axis=1)
    if comp.all():
        return L
    elems = [x for x, c in zip(L.elems, comp) if c]
    return sublattice(L, elems, name=f"COpen({L.name or 'L'})")


def compact_opens(L):
    """Every element of a finite frame is compact: any cover is already finite."""
    L._require_frame()
    return L


# spectra


@lru_cache(maxsize=4096)
def frame_points(L):
    """All frame maps L -> 2, each paired with the generator of its filter.

    The preimage of 1 under a frame map is a filter, and a filter of a
    finite lattice is principal, so every point is among the candidates
    x |-> [p <= x].
    """
    out = []
    for p in L.elems:
        row = L.leq_table[L.index(p)]
        f = LatticeMap._from_idx(L, TWO, row.astype(np.intp))
        prof = check_frame_map(f, open_check=False)
        if prof.preserves_meets and prof.preserves_joins:
            out.append((p, f))
    return tuple(out)


def spectrum_points(L):
    """Sp(L): points are frame maps L -> 2, opens are the evaluation images."""
    L._require_frame()
    pts = frame_points(L)
    opens = set()
    for x in L.elems:
        xi = L.index(x)
        opens.add(frozenset(p for p, f in pts if f.idx[xi] == 1))
    return FiniteTopSpace([p for p, _ in pts], opens)


def open_of(L, x):
    """The open subset of Sp(L) determined by the element x."""
    xi = L.index(x)
    return frozenset(p for p, f in frame_points(L) if f.idx[xi] == 1)


def omega(T):
    """The frame of opens of a finite space."""
    return FiniteLattice.from_family(T.opens, name="Omega")


# unit and counit


def stone_unit(L):
    """Ideal(COpen(L)) -> L, an ideal going to the join of its members."""
    C = copen(L)
    IC = ideal_frame(C)
    return LatticeMap(IC, L, lambda I: L.join_all(I))


def stone_counit(R):
    """R -> compact opens of Ideal(R), r going to its principal ideal.

    The target is the full lattice of compact opens, which for a finite R
    is all of Ideal(R); on Boolean R it coincides with the clopens.
    """
    if not R.profile.is_distributive:
        raise NotDistributive("counit needs a distributive lattice",
                              R.profile.distributivity_witness)
    target = compact_opens(ideal_frame(R))
    return LatticeMap(R, target, lambda r: principal_ideal(R, r))


def copen_map(f):
    """Restrict a frame map to the clopen parts of source and target."""
    src, dst = copen(f.src), copen(f.dst)
    return LatticeMap(src, dst, lambda x: f(x))


@dataclass
class TriangleCheck:
    locale_side: bool
    algebra_side: bool
    witness: tuple | None = None

    @property
    def ok(self):
        return self.locale_side and self.algebra_side


def stone_triangles(A):
    """Both triangle identities of the COpen / Ideal duality, elementwise.

    Locale side: COpen(A) -> COpen(Ideal(COpen A)) -> COpen(A) via the
    counit of COpen(A) followed by COpen of the unit of A.
    Algebra side: Ideal(A) -> Ideal(COpen(Ideal A)) -> Ideal(A) via Ideal
    of the counit of A followed by the unit of Ideal(A).
    """
    witness = None
    C = copen(A)
    first = stone_counit(C).then(copen_map(stone_unit(A)))
    locale_ok = first.is_identity()
    if not locale_ok:
        witness = ("locale", first.pairs())
    second = ideal_map(stone_counit(A)).then(stone_unit(ideal_frame(A)))
    algebra_ok = second.is_identity()
    if not algebra_ok and witness is None:
        witness = ("algebra", second.pairs())
    return TriangleCheck(locale_ok, algebra_ok, witness)


def double_negation(L):
    """The Boolean frame of ¬¬-fixed elements and the surjection x |-> ¬¬x."""
    L._require_frame()
    neg = L._neg
    fixed = [x for i, x in enumerate(L.elems) if neg[neg[i]] == i]
    sub = sublattice(L, fixed, name=f"NegNeg({L.name or 'L'})")
    if not sub.profile.is_boolean:
        raise NotBoolean("double negation sublocale is not Boolean")
    surj = LatticeMap(L, sub, lambda x: L.elems[neg[neg[L.index(x)]]])
    prof = check_frame_map(surj, open_check=False)
    assert prof.preserves_meets and prof.preserves_joins
    return sub, surj


# duality levels

LEVELS = ("coherent", "Stone", "Stonean", "hyperstonean")


@dataclass
class DualityReport:
    level: str | None
    profile: object
    checks: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def lines(self):
        out = [f"level: {self.level}"]
        for k, v in self.checks.items():
            out.append(f"{k}: {'yes' if v else 'no'}")
        for w in self.witnesses:
            out.append("witness: " + " ".join(f"{label(x)}={w(x)}" for x in w.carrier.elems))
        return out


def check_duality_level(L):
    """Highest level among coherent, Stone, Stonean, hyperstonean reached by L."""
    from .valuations import normal_witnesses

    prof = L.profile
    checks = {"frame": prof.is_frame}
    if not prof.is_frame:
        return DualityReport(None, prof, checks)
    # coherent: compact opens form a sublattice containing top and generate L
    checks["coherent"] = compact_opens(L) is L
    clopen = copen(L)
    zero_dim = all(
        L.join_all([c for c in clopen.elems if L.leq(c, x)]) == x for x in L.elems
    )
    checks["zero_dimensional"] = zero_dim
    checks["regular"] = prof.is_regular
    checks["Stone"] = checks["coherent"] and zero_dim and prof.is_regular
    checks["Stonean"] = checks["Stone"] and prof.is_extremally_disconnected
    witnesses = []
    hyper = False
    if checks["Stonean"]:
        witnesses = normal_witnesses(L)
        hyper = all(
            any(w(x) != 0 for w in witnesses) for x in L.elems if x != L.bottom
        )
    checks["hyperstonean"] = hyper
    level = "coherent"
    for name in LEVELS[1:]:
        if checks[name]:
            level = name
    return DualityReport(level, prof, checks, witnesses)


def hyperstonean_compactification(A):
    """The principal-ideal embedding A -> Ideal(A); its image is the clopen part."""
    if not A.profile.is_boolean:
        raise NotBoolean("expected a Boolean algebra")
    target = ideal_frame(A)
    emb = LatticeMap(A, target, lambda a: principal_ideal(A, a))
    image = {emb(a) for a in A.elems}
    assert image == set(copen(target).elems)
    return emb


def principal_iso(R):
    """r |-> principal ideal, as an isomorphism R -> Ideal(R)."""
    f = LatticeMap(R, ideal_frame(R), lambda r: principal_ideal(R, r))
    return is_isomorphism(f)


def spaces_isomorphic(S, T):
    """Bijection of points carrying opens onto opens, by brute force."""
    from itertools import permutations

    if len(S.points) != len(T.points) or len(S.opens) != len(T.opens):
        return None
    for perm in permutations(T.points):
        m = dict(zip(S.points, perm))
        if {frozenset(m[p] for p in u) for u in S.opens} == set(T.opens):
            return m
    return None
