"""Measurable spaces from spaces and algebras, and the lifting equivalence.

TM builds an enhanced measurable space from a finite topology, ML takes
the quotient algebra M/N, and Spec goes back from a Boolean algebra through
ideals and points.  The lifting data (theta, eta, psi) make E and
Spec(ML(E)) isomorphic up to weak equality almost everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .ems import (
    EMPTY,
    EnhancedMeasurableSpace,
    PreMap,
    compose,
    compact_class,
    identity,
    powerset_family,
    weak_eq_ae,
)
from .errors import MeasLocError, NotBoolean
from .lattice import FiniteLattice, LatticeMap, check_frame_map, is_isomorphism, label, point_key, set_key
from .stone import frame_points, ideal_frame, ideal_map, open_of, principal_ideal, spectrum_points


# TM


def meager_sets(T):
    """Finite unions of rare sets."""
    out = set(T.rare_sets)
    frontier = list(out)
    while frontier:
        new = []
        for a in frontier:
            for b in list(out):
                u = a | b
                if u not in out:
                    out.add(u)
                    new.append(u)
        frontier = new
    return frozenset(out)


def tm(T):
    """(X, opens ⊕ meagers, meagers) for a finite space."""
    N = meager_sets(T)
    M = {u ^ n for u in T.opens for n in N}
    return EnhancedMeasurableSpace(T.points, M, N)


def tm_map(f):
    """TM of an open continuous map, as a total premap."""
    if not (f.is_continuous() and f.is_open()):
        raise MeasLocError("TM is defined on open continuous maps")
    return PreMap(tm(f.src), tm(f.dst), f.mapping)


def baire_classes(T):
    """Five descriptions of the measurable sets, each computed independently."""
    R = T.rare_sets
    return {
        "clopen_xor_rare": frozenset(c ^ r for c in T.clopens for r in R),
        "closed_xor_rare": frozenset(c ^ r for c in T.closed_sets for r in R),
        "open_xor_rare": frozenset(u ^ r for u in T.opens for r in R),
        "open_union_rare": frozenset(u | r for u in T.opens for r in R),
        "closed_minus_rare": frozenset(c - r for c in T.closed_sets for r in R),
    }


def regularization_check(T, A):
    """A, cl A, int A, cl int A, int cl A differ pairwise by rare sets."""
    cl, it = T.closure, T.interior
    forms = [frozenset(A), cl(A), it(A), cl(it(A)), it(cl(A))]
    return all(T.is_rare(a ^ b) for i, a in enumerate(forms) for b in forms[i + 1:])


def is_hyperstonean_space(T):
    from .stone import check_duality_level, omega

    return check_duality_level(omega(T)).level == "hyperstonean"


# ML


@dataclass
class QuotientAlgebra:
    source: EnhancedMeasurableSpace
    classes: FiniteLattice
    quot: dict

    def rep(self, cls):
        """Smallest member of a class (fewest points, then lexicographic)."""
        return min(cls, key=set_key)

    def __call__(self, m):
        return self.quot[frozenset(m)]


@lru_cache(maxsize=4096)
def ml(E):
    """M/N: measurable sets modulo negligible symmetric differences."""
    reps = []
    members = []
    for m in sorted(E.M, key=set_key):
        for k, r in enumerate(reps):
            if (m ^ r) in E.N:
                members[k].append(m)
                break
        else:
            reps.append(m)
            members.append([m])
    classes = [frozenset(ms) for ms in members]
    rep_of = dict(zip(classes, reps))
    A = FiniteLattice.from_order(
        classes, lambda a, b: (rep_of[a] - rep_of[b]) in E.N, name="ML"
    )
    quot = {m: c for c in classes for m in c}
    Q = QuotientAlgebra(E, A, quot)
    _check_quotient(Q)
    return Q


def _check_quotient(Q):
    E, A = Q.source, Q.classes
    assert A.profile.is_boolean
    for m in E.M:
        assert (Q.quot[m] == A.bottom) == (m in E.N)
        assert Q.quot[E.carrier - m] == _complement(A, Q.quot[m])
    ms = list(E.M)
    for i, a in enumerate(ms):
        for b in ms[i:]:
            assert Q.quot[a | b] == A.join(Q.quot[a], Q.quot[b])
            assert Q.quot[a & b] == A.meet(Q.quot[a], Q.quot[b])


def _complement(A, x):
    return A.elems[A._neg[A.index(x)]]


def ml_map(f):
    """[m'] |-> [f* m'] from ML(target) to ML(source)."""
    QS, QT = ml(f.src), ml(f.dst)
    table = {}
    for cls in QT.classes.elems:
        images = {QS.quot[f.preimage(m)] for m in cls}
        if len(images) != 1:
            raise AssertionError("ml_map is not well defined")
        table[cls] = images.pop()
    h = LatticeMap(QT.classes, QS.classes, table)
    prof = check_frame_map(h, open_check=False)
    assert prof.preserves_meets and prof.preserves_joins
    return h


# Spec


@lru_cache(maxsize=4096)
def spec(A):
    """TM(Sp(Ideal(A))) with points named by atoms of A.

    The composite is computed literally and compared with the direct
    description (atoms, all subsets, only the empty set negligible).
    """
    if not A.profile.is_boolean:
        raise NotBoolean("Spec is defined on Boolean algebras")
    I = ideal_frame(A)
    T = spectrum_points(I)
    composed = tm(T)
    rename = {p: A.join_all(p) for p in T.points}
    relabeled = EnhancedMeasurableSpace(
        [rename[p] for p in composed.X],
        [frozenset(rename[p] for p in m) for m in composed.M],
        [frozenset(rename[p] for p in n) for n in composed.N],
        validate=False,
    )
    atoms = A.atoms()
    direct = EnhancedMeasurableSpace(atoms, powerset_family(atoms), [EMPTY])
    if relabeled != direct:
        raise AssertionError("Spec composite differs from the atom description")
    return direct


def spec_map(h):
    """Spec of a Boolean homomorphism h: B -> A, a premap Spec(A) -> Spec(B).

    A point of Sp(Ideal(A)) is a frame map to 2; precomposing it with
    Ideal(h) gives the image point.
    """
    B, A = h.src, h.dst
    Ih = ideal_map(h)
    pts_b = frame_points(ideal_frame(B))
    mapping = {}
    for gen, p in frame_points(ideal_frame(A)):
        comp = Ih.then(p)
        match = [g for g, q in pts_b if np.array_equal(q.idx, comp.idx)]
        if len(match) != 1:
            raise AssertionError("precomposed point is not a unique point")
        mapping[A.join_all(gen)] = B.join_all(match[0])
    return PreMap(spec(A), spec(B), mapping)


def epsilon(A):
    """A -> ML(Spec(A)): m goes to the class of the clopen set of its principal ideal."""
    S = spec(A)
    Q = ml(S)
    I = ideal_frame(A)

    def image(m):
        clopen = frozenset(A.join_all(p) for p in open_of(I, principal_ideal(A, m)))
        return Q.quot[clopen]

    f = LatticeMap(A, Q.classes, image)
    return f


def epsilon_naturality(h):
    """For h: B -> A, eps_A ∘ h equals ML(Spec h) ∘ eps_B elementwise."""
    left = h.then(epsilon(h.dst))
    right = epsilon(h.src).then(ml_map(spec_map(h)))
    bad = [x for x in h.src.elems if left(x) != right(x)]
    return (not bad), (bad[0] if bad else None)


# lifting


@dataclass
class LiftingData:
    quotient: QuotientAlgebra
    theta: dict
    blocks: dict
    eta: PreMap
    psi: PreMap


def lifting(E, variant="canonical"):
    """Section theta of M -> M/N and the induced premaps eta, psi.

    ``canonical`` disjointifies the smallest class representatives in
    ascending order of least point; ``alternate`` uses the largest
    representatives in descending order.  The leftover negligible points
    go into the last block.
    """
    Q = ml(E)
    A = Q.classes
    atoms = A.atoms()
    if variant == "canonical":
        reps = {a: min(a, key=set_key) for a in atoms}
        order = sorted(atoms, key=lambda a: _least(reps[a]))
    elif variant == "alternate":
        reps = {a: max(a, key=set_key) for a in atoms}
        order = sorted(atoms, key=lambda a: _least(min(a, key=set_key)), reverse=True)
    else:
        raise ValueError(f"unknown lifting variant {variant!r}")
    blocks = {}
    used = EMPTY
    for a in order:
        blocks[a] = reps[a] - used
        used |= reps[a]
    if order:
        blocks[order[-1]] = blocks[order[-1]] | (E.carrier - used)
    theta = {}
    for c in A.elems:
        s = EMPTY
        for a in A.atoms_below(c):
            s |= blocks[a]
        theta[c] = s
    S = spec(A)
    eta = PreMap(E, S, {x: a for a, b in blocks.items() for x in b})
    K = compact_class(E)
    psi_map = {}
    for a in atoms:
        hits = [k for k in K if A.leq(a, Q.quot[k])]
        core = frozenset.intersection(*hits)
        psi_map[a] = min(core, key=point_key)
    psi = PreMap(S, E, psi_map)
    return LiftingData(Q, theta, blocks, eta, psi)


def _least(s):
    return min((point_key(x) for x in s), default=(2, 0, ""))


def star(Q, m):
    """E* : the clopen subset of Spec(M/N) matching the class of m."""
    return frozenset(Q.classes.atoms_below(Q.quot[frozenset(m)]))


@dataclass
class LawResult:
    law: str
    ok: bool
    witness: object = None


def check_lifting(E, ld=None):
    ld = ld or lifting(E)
    Q, A = ld.quotient, ld.quotient.classes
    S = ld.eta.dst
    out = []
    bad = [c for c in A.elems if ld.theta[c] not in E.M or Q.quot[ld.theta[c]] != c]
    out.append(LawResult("theta-section", not bad, bad[0] if bad else None))
    bad = [(c, d) for c in A.elems for d in A.elems
           if ld.theta[A.meet(c, d)] != ld.theta[c] & ld.theta[d]
           or ld.theta[A.join(c, d)] != ld.theta[c] | ld.theta[d]]
    out.append(LawResult("theta-homomorphism", not bad and ld.theta[A.bottom] == EMPTY,
                         bad[0] if bad else None))
    bad = [m for m in E.M if (m ^ ld.eta.preimage(star(Q, m))) not in E.N]
    out.append(LawResult("eta-pulls-back-star", not bad, bad[0] if bad else None))
    bad = [m for m in E.M if (ld.psi.preimage(m) ^ star(Q, m)) not in S.N]
    out.append(LawResult("psi-pulls-back-star", not bad, bad[0] if bad else None))
    bad = [n for n in S.N if ld.eta.preimage(n) not in E.N]
    out.append(LawResult("eta-reflects-null", not bad, bad[0] if bad else None))
    out.append(LawResult("eta-psi-identity", weak_eq_ae(compose(ld.psi, ld.eta), identity(S))))
    out.append(LawResult("psi-eta-identity", weak_eq_ae(compose(ld.eta, ld.psi), identity(E))))
    eps = epsilon(A)
    iso = is_isomorphism(eps)
    out.append(LawResult("epsilon-iso", iso.ok, iso.refutation))
    tri = eps.then(ml_map(ld.eta))
    out.append(LawResult("triangle-ML", tri.is_identity(),
                         None if tri.is_identity() else tri.pairs()))
    return out


def check_equivalence(obj, samples=()):
    """Laws of the equivalence between spaces and measurable locales.

    For a space E: the lifting laws, eta naturality on each sample premap
    out of E, and the exact triangle identity.  For a Boolean algebra A:
    epsilon is an isomorphism, natural on each sample homomorphism into A,
    and the second triangle identity holds up to weak equality.
    """
    if isinstance(obj, EnhancedMeasurableSpace):
        E = obj
        out = check_lifting(E)
        eta_e = lifting(E).eta
        for k, h in enumerate(samples):
            eta_f = lifting(h.dst).eta
            lhs = compose(eta_e, spec_map(ml_map(h)))
            rhs = compose(h, eta_f)
            out.append(LawResult(f"eta-natural[{k}]", weak_eq_ae(lhs, rhs)))
        return out
    A = obj
    if not A.profile.is_boolean:
        raise NotBoolean("expected a Boolean algebra")
    out = []
    eps = epsilon(A)
    iso = is_isomorphism(eps)
    out.append(LawResult("epsilon-iso", iso.ok, iso.refutation))
    for k, h in enumerate(samples):
        ok, w = epsilon_naturality(h)
        out.append(LawResult(f"epsilon-natural[{k}]", ok, w))
    S = spec(A)
    eta = lifting(S).eta
    back = spec_map(eps)
    out.append(LawResult("triangle-Spec", weak_eq_ae(compose(eta, back), identity(S))))
    out.extend(r for r in check_lifting(S) if r.law == "triangle-ML")
    return out


def boolean_homs(B, A):
    """All Boolean homomorphisms B -> A between finite Boolean algebras.

    Each one is determined by sending every atom of A to the atom of B
    whose image contains it.
    """
    from itertools import product

    ab, aa = B.atoms(), A.atoms()
    if not ab and aa:
        return
    for choice in product(range(len(ab)), repeat=len(aa)):
        def image(x, choice=choice):
            below = set(B.atoms_below(x))
            return A.join_all([a for a, k in zip(aa, choice) if ab[k] in below])
        yield LatticeMap(B, A, image)
