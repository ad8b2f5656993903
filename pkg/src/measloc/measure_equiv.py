"""Transport of a finite measure through five equivalent presentations.

The slots are: a measure on the space E, a valuation on ML(E), a normal
valuation on the ideal frame of ML(E), a measure on TM of its spectrum,
and a normal functional on Step(ML(E)).  The edges form a tree

    ems - loc - hyp_val - hyp_meas
           |
         predual

and a transport between any two slots follows the unique path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .cvna import PredualElement, integrate, predual_bijection, step
from .duality import ml, tm
from .ems import Measure, classify_measure
from .errors import AlgebraMismatch, NotFinite
from .lattice import FiniteLattice
from .stone import copen, ideal_frame, open_of, principal_ideal, spectrum_points
from .valuations import (
    Valuation,
    extend_normal_valuation,
    restrict_normal_valuation,
    validate_valuation,
    variation_parts,
)

SLOTS = ("ems", "loc", "hyp_val", "hyp_meas", "predual")

_EDGES = {
    "ems": ("loc",),
    "loc": ("ems", "hyp_val", "predual"),
    "hyp_val": ("loc", "hyp_meas"),
    "hyp_meas": ("hyp_val",),
    "predual": ("loc",),
}


@dataclass
class HypSide:
    """The spaces attached to a Boolean algebra A on the hyperstonean side."""

    algebra: FiniteLattice
    ideals: FiniteLattice
    clopens: FiniteLattice
    space: object
    measurable: object

    def clopen_part(self, S):
        """The clopen element whose open differs from S by a meager set."""
        hits = [x for x in self.clopens.elems
                if (open_of(self.ideals, x) ^ S) in self.measurable.N]
        assert len(hits) == 1
        return hits[0]


@lru_cache(maxsize=1024)
def hyp_side(A):
    I = ideal_frame(A)
    T = spectrum_points(I)
    return HypSide(A, I, copen(I), T, tm(T))


# edges


def to_valuation(E, mu):
    """[m] |-> mu(m) on ML(E)."""
    if mu.domain != E.M:
        raise NotFinite("only measures defined on every measurable set are transported")
    Q = ml(E)
    nu = Valuation(Q.classes, lambda c: mu(Q.rep(c)))
    for m in E.M:
        assert nu(Q(m)) == mu(m)
    return nu


def from_valuation(E, nu):
    Q = ml(E)
    if nu.carrier is not Q.classes:
        raise AlgebraMismatch("valuation is not on ML(E)")
    return Measure(E, {m: nu(Q(m)) for m in E.M})


def to_hyp_valuation(nu):
    """Carry nu to the clopens of Ideal(A) and precompose with double negation."""
    A = nu.carrier
    H = hyp_side(A)
    w = Valuation(H.clopens, lambda c: nu(A.join_all(c)))
    return extend_normal_valuation(H.ideals, w)


def from_hyp_valuation(A, v):
    """Restrict to clopens and read back through principal ideals."""
    H = hyp_side(A)
    if v.carrier is not H.ideals:
        raise AlgebraMismatch("valuation is not on Ideal(A)")
    w = restrict_normal_valuation(H.ideals, v)
    return Valuation(A, lambda a: w(principal_ideal(A, a)))


def to_hyp_measure(A, v):
    """Each measurable set gets the value of its clopen part."""
    H = hyp_side(A)
    return Measure(H.measurable, {S: v(H.clopen_part(S)) for S in H.measurable.M})


def from_hyp_measure(A, mu):
    """Restriction of the measure to open sets."""
    H = hyp_side(A)
    return Valuation(H.ideals, lambda x: mu(open_of(H.ideals, x)))


def to_predual(nu):
    """Atom weights of nu as a functional on Step(A); pairings match nu."""
    A = nu.carrier
    S = step(A)
    p = PredualElement.from_weights(S, {a: nu(a) for a in A.atoms()})
    for m in A.elems:
        assert integrate(S.chi(A.atoms_below(m)), p) == nu(m)
    return p


def from_predual(A, p):
    if p.algebra != step(A):
        raise AlgebraMismatch("functional is not on Step(A)")
    return Valuation.from_atom_weights(A, {a: p.weight(a) for a in A.atoms()})


# the pentad


@dataclass
class MeasurePentad:
    space: object
    ems_measure: Measure
    loc_valuation: Valuation
    hyp_valuation: Valuation
    hyp_measure: Measure
    predual: PredualElement

    def slot(self, name):
        return {
            "ems": self.ems_measure,
            "loc": self.loc_valuation,
            "hyp_val": self.hyp_valuation,
            "hyp_meas": self.hyp_measure,
            "predual": self.predual,
        }[name]

    @property
    def algebra(self):
        return self.loc_valuation.carrier


def pentad(E, mu):
    nu = to_valuation(E, mu)
    hv = to_hyp_valuation(nu)
    return MeasurePentad(E, mu, nu, hv, to_hyp_measure(nu.carrier, hv), to_predual(nu))


def _step(E, A, src, dst, x):
    if (src, dst) == ("ems", "loc"):
        return to_valuation(E, x)
    if (src, dst) == ("loc", "ems"):
        return from_valuation(E, x)
    if (src, dst) == ("loc", "hyp_val"):
        return to_hyp_valuation(x)
    if (src, dst) == ("hyp_val", "loc"):
        return from_hyp_valuation(A, x)
    if (src, dst) == ("hyp_val", "hyp_meas"):
        return to_hyp_measure(A, x)
    if (src, dst) == ("hyp_meas", "hyp_val"):
        return from_hyp_measure(A, x)
    if (src, dst) == ("loc", "predual"):
        return to_predual(x)
    if (src, dst) == ("predual", "loc"):
        return from_predual(A, x)
    raise KeyError((src, dst))


def path(src, dst):
    """Slots visited from src to dst in the transport tree."""
    prev = {src: None}
    queue = [src]
    while queue:
        cur = queue.pop(0)
        for nxt in _EDGES[cur]:
            if nxt not in prev:
                prev[nxt] = cur
                queue.append(nxt)
    out = [dst]
    while out[-1] != src:
        out.append(prev[out[-1]])
    return out[::-1]


def transport(E, A, src, dst, x):
    route = path(src, dst)
    for a, b in zip(route, route[1:]):
        x = _step(E, A, a, b, x)
    return x


@dataclass
class PentadCheck:
    edge: str
    ok: bool
    witness: object = None


def _diff(a, b):
    """A point where two slot values differ, or None."""
    if isinstance(a, Valuation):
        if a.carrier is not b.carrier:
            return "carrier"
        for x, p, q in zip(a.carrier.elems, a.vec, b.vec):
            if p != q:
                return x
        return None
    if isinstance(a, Measure):
        for m in a.domain:
            if a(m) != b(m):
                return m
        return None if a.domain == b.domain else "domain"
    if a != b:
        for atom in a.algebra.atoms:
            if a.weight(atom) != b.weight(atom):
                return atom
        return "algebra"
    return None


def verify_pentad(p):
    """All 20 directed roundtrips and the coherence properties."""
    E, A = p.space, p.algebra
    out = []
    for src in SLOTS:
        for dst in SLOTS:
            if src == dst:
                continue
            there = transport(E, A, src, dst, p.slot(src))
            back = transport(E, A, dst, src, there)
            w = _diff(there, p.slot(dst))
            if w is None:
                w = _diff(back, p.slot(src))
            out.append(PentadCheck(f"{src}->{dst}->{src}", w is None, w))
    out.extend(coherence(p))
    return out


def _positive_valuation(v):
    return v.is_real() and all(x >= 0 for x in v.vec)


def restriction_faithful(v):
    """Every nonzero x has some y <= x with v(y) != 0.

    For positive valuations this is the usual v(x) != 0; for signed ones it
    matches faithfulness of measures, which asks for a nonzero restriction.
    """
    L = v.carrier
    nonzero = [a != 0 for a in v.vec]
    return all(any(nonzero[j] for j in range(len(L)) if L.leq_table[j, i])
               for i in range(len(L)) if i != L._bot)


def coherence(p):
    """Positivity, faithfulness and variation norms agree across slots."""
    out = []
    pos = [
        p.ems_measure.is_positive(),
        _positive_valuation(p.loc_valuation),
        _positive_valuation(p.hyp_valuation),
        p.hyp_measure.is_positive(),
        p.predual.is_positive(),
    ]
    out.append(PentadCheck("positivity", len(set(pos)) == 1, None if len(set(pos)) == 1 else pos))
    f_ems = classify_measure(p.ems_measure).faithful
    f_loc = restriction_faithful(p.loc_valuation)
    if p.ems_measure.is_positive():
        f_loc = f_loc and validate_valuation(p.loc_valuation).faithful
    out.append(PentadCheck("faithfulness", f_ems == f_loc, None if f_ems == f_loc else (f_ems, f_loc)))
    ems_norm = variation_parts(_measure_as_valuation(p.ems_measure))
    pred_norm = variation_parts(predual_bijection(p.predual.algebra).to_valuation(p.predual))
    out.append(PentadCheck("variation-norm", ems_norm == pred_norm,
                           None if ems_norm == pred_norm else (ems_norm, pred_norm)))
    return out


@lru_cache(maxsize=1024)
def _sigma_algebra_lattice(E):
    return FiniteLattice.from_family(E.M, name="M")


def _measure_as_valuation(mu):
    """The measure as a valuation on the Boolean algebra M of the space."""
    return Valuation(_sigma_algebra_lattice(mu.space), lambda m: mu(m))


def variation_norm(mu):
    """Real and imaginary variation norms of a finite measure."""
    return variation_parts(_measure_as_valuation(mu))
