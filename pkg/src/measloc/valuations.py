"""Valuations on finite lattices and their Hahn-Jordan decomposition.

Values are exact: ``Fraction`` for reals and ``GaussianRational`` otherwise.
Law checks rescale real and imaginary parts to a common denominator and
compare integer vectors, which is exact and much faster than looping over
Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import NotBoolean, NotNormal, NotReal
from .lattice import label
from .scalars import format_scalar, imag_part, is_real, real_part, scalar


class Valuation:
    """A scalar-valued function on the elements of a finite lattice."""

    def __init__(self, carrier, values):
        self.carrier = carrier
        if callable(values) and not isinstance(values, dict):
            vec = [scalar(values(x)) for x in carrier.elems]
        else:
            vec = [scalar(values[x]) for x in carrier.elems]
        self.vec = tuple(vec)

    @classmethod
    def _from_vec(cls, carrier, vec):
        v = cls.__new__(cls)
        v.carrier = carrier
        v.vec = tuple(vec)
        return v

    @classmethod
    def zero(cls, carrier):
        return cls._from_vec(carrier, [Fraction(0)] * len(carrier))

    @classmethod
    def from_atom_weights(cls, carrier, weights):
        """Additive extension of atom weights on a Boolean carrier.

        ``weights`` is a mapping atom -> scalar or a sequence in atom order.
        """
        if not carrier.profile.is_boolean:
            raise NotBoolean("atom weights need a Boolean carrier")
        atoms = carrier.atoms()
        if not isinstance(weights, dict):
            weights = dict(zip(atoms, weights))
        w = [scalar(weights.get(a, 0)) for a in atoms]
        member = _atom_matrix(carrier)
        vec = []
        for row in member:
            total = Fraction(0)
            for k in np.flatnonzero(row):
                total = total + w[k]
            vec.append(total)
        return cls._from_vec(carrier, vec)

    def __call__(self, x):
        return self.vec[self.carrier.index(x)]

    @property
    def values(self):
        return dict(zip(self.carrier.elems, self.vec))

    def atom_weights(self):
        return {a: self(a) for a in self.carrier.atoms()}

    def is_real(self):
        return all(is_real(x) for x in self.vec)

    def _check(self, other):
        if other.carrier is not self.carrier:
            raise ValueError("valuations live on different carriers")

    def __add__(self, other):
        self._check(other)
        return Valuation._from_vec(self.carrier, [a + b for a, b in zip(self.vec, other.vec)])

    def __sub__(self, other):
        self._check(other)
        return Valuation._from_vec(self.carrier, [a - b for a, b in zip(self.vec, other.vec)])

    def __neg__(self):
        return Valuation._from_vec(self.carrier, [-a for a in self.vec])

    def scale(self, c):
        c = scalar(c)
        return Valuation._from_vec(self.carrier, [c * a for a in self.vec])

    def real(self):
        return Valuation._from_vec(self.carrier, [real_part(a) for a in self.vec])

    def imag(self):
        return Valuation._from_vec(self.carrier, [imag_part(a) for a in self.vec])

    def __eq__(self, other):
        return (isinstance(other, Valuation) and self.carrier is other.carrier
                and self.vec == other.vec)

    def __hash__(self):
        return hash((id(self.carrier), self.vec))

    def __repr__(self):
        body = ", ".join(f"{label(x)}: {format_scalar(a)}" for x, a in zip(self.carrier.elems, self.vec))
        return f"Valuation({{{body}}})"


def _atom_matrix(L):
    """Boolean matrix [element, atom]: atom <= element."""
    return _atom_matrix_cached(L)


@lru_cache(maxsize=4096)
def _atom_matrix_cached(L):
    cols = [L.index(a) for a in L.atoms()]
    m = L.leq_table[cols, :].T.copy()
    m.setflags(write=False)
    return m


def scaled_parts(vec):
    """Exact integer images of the real and imaginary parts over a common denominator."""
    out = []
    for part in (real_part, imag_part):
        xs = [part(a) for a in vec]
        den = 1
        for x in xs:
            den = math.lcm(den, x.denominator)
        ints = [x.numerator * (den // x.denominator) for x in xs]
        big = max((abs(i) for i in ints), default=0)
        arr = np.array(ints, dtype=np.int64 if big < 2 ** 60 else object)
        out.append(arr)
    return out


@dataclass
class ValuationFlags:
    valid: bool
    positive: bool
    real: bool
    continuous: bool
    completely_additive: bool
    faithful: bool
    normal: bool
    failures: dict = field(default_factory=dict)


@lru_cache(maxsize=4096)
def disjoint_families(L):
    """Pairwise-disjoint families of nonzero elements, with their suprema.

    Repeating bottom in a family only adds the value at bottom, which the
    empty family already pins to zero, so families of distinct nonzero
    elements cover every case.
    """
    n = len(L)
    nonzero = [i for i in range(n) if i != L._bot]
    disjoint = L.meet_table == L._bot
    out = []

    def grow(members, start, sup):
        out.append((tuple(members), sup))
        for k in range(start, len(nonzero)):
            i = nonzero[k]
            if all(disjoint[i, j] for j in members):
                members.append(i)
                grow(members, k + 1, int(L.join_table[sup, i]))
                members.pop()

    grow([], 0, L._bot)
    return tuple(out)


def validate_valuation(v):
    """Evaluate every valuation predicate literally.

    Continuity asks that directed suprema are preserved; a finite directed
    set contains its maximum, which is its supremum, so continuity holds
    exactly when the map is a valuation.
    """
    L = v.carrier
    meet, join = L.meet_table, L.join_table
    fails = {}
    parts = scaled_parts(v.vec)
    zero_ok = v.vec[L._bot] == 0
    if not zero_ok:
        fails["zero"] = L.bottom
    modular = True
    for V in parts:
        bad = (V[:, None] + V[None, :]) != (V[join] + V[meet])
        if bad.any():
            i, j = np.argwhere(bad)[0]
            fails["modular"] = (L.elems[i], L.elems[j])
            modular = False
            break
    valid = zero_ok and modular
    real = not parts[1].any()
    positive = False
    if real:
        R = parts[0]
        nonneg = (R >= 0).all()
        mono = ~L.leq_table | (R[:, None] <= R[None, :])
        positive = bool(nonneg and mono.all() and valid)
        if not nonneg:
            fails["positive"] = L.elems[int(np.flatnonzero(R < 0)[0])]
        elif not mono.all():
            i, j = np.argwhere(~mono)[0]
            fails["monotone"] = (L.elems[i], L.elems[j])
    ca = True
    for members, sup in disjoint_families(L):
        total = Fraction(0)
        for i in members:
            total = total + v.vec[i]
        if v.vec[sup] != total:
            ca = False
            fails["completely_additive"] = tuple(L.elems[i] for i in members)
            break
    faithful = all(a != 0 for i, a in enumerate(v.vec) if i != L._bot)
    if not faithful:
        fails["faithful"] = next(L.elems[i] for i, a in enumerate(v.vec) if a == 0 and i != L._bot)
    normal = False
    if valid and L.profile.is_frame:
        neg = L._neg
        normal = all(v.vec[neg[neg[i]]] == v.vec[i] for i in range(len(L)))
        if not normal:
            fails["normal"] = next(L.elems[i] for i in range(len(L)) if v.vec[neg[neg[i]]] != v.vec[i])
    return ValuationFlags(
        valid=bool(valid),
        positive=positive,
        real=bool(real),
        continuous=bool(valid),
        completely_additive=ca,
        faithful=faithful,
        normal=normal,
        failures=fails,
    )


# Hahn-Jordan


@dataclass
class JordanDecomposition:
    nu_plus: object
    nu_minus: object
    pos_part: Valuation
    neg_part: Valuation
    abs: Valuation
    variation_norm: Fraction


def hahn_jordan(v):
    """Positive and negative parts of a real valuation on a Boolean algebra.

    nu_plus is the largest element below which v is nonnegative, nu_minus
    the largest below which it is nonpositive.  Below any element the
    valuation is the sum of its atom weights, so these are the joins of
    the atoms of nonnegative and nonpositive weight.
    """
    L = v.carrier
    if not L.profile.is_boolean:
        raise NotBoolean("Hahn-Jordan decomposition needs a Boolean carrier")
    if not v.is_real():
        raise NotReal("valuation has a nonzero imaginary part")
    atoms = L.atoms()
    plus = L.join_all([a for a in atoms if v(a) >= 0])
    minus = L.join_all([a for a in atoms if v(a) <= 0])
    pi, mi = L.index(plus), L.index(minus)
    meet = L.meet_table
    pos = Valuation._from_vec(L, [v.vec[meet[pi, x]] for x in range(len(L))])
    neg = Valuation._from_vec(L, [-v.vec[meet[mi, x]] for x in range(len(L))])
    total = pos + neg
    return JordanDecomposition(plus, minus, pos, neg, total, total(L.top))


def check_jordan(v, jd, full=True):
    """Verify every clause of the decomposition; returns {clause: witness or None}.

    Maximality is checked with explicit certificates: for every element a
    not below nu_plus, b = a ∧ ¬nu_plus is below a with v(b) < 0, so a is
    not admissible.  ``full`` also checks modularity of the parts.
    """
    L = v.carrier
    n = len(L)
    meet, join, leq = L.meet_table, L.join_table, L.leq_table
    neg = L._neg
    V = scaled_parts(v.vec)[0]
    P = scaled_parts(jd.pos_part.vec)[0]
    Q = scaled_parts(jd.neg_part.vec)[0]
    # common scale: the parts take values of v, so compare via Fractions where needed
    out = {}
    pi, mi = L.index(jd.nu_plus), L.index(jd.nu_minus)
    zi = meet[pi, mi]
    out["join_is_top"] = None if join[pi, mi] == L._top else (jd.nu_plus, jd.nu_minus)
    recon = [i for i in range(n) if jd.pos_part.vec[i] - jd.neg_part.vec[i] != v.vec[i]]
    out["reconstruction"] = L.elems[recon[0]] if recon else None
    below_p = np.flatnonzero(leq[:, pi])
    bad = [i for i in below_p if V[i] < 0]
    out["plus_admissible"] = L.elems[bad[0]] if bad else None
    below_m = np.flatnonzero(leq[:, mi])
    bad = [i for i in below_m if V[i] > 0]
    out["minus_admissible"] = L.elems[bad[0]] if bad else None
    bad = [a for a in range(n) if not leq[a, pi] and not V[meet[a, neg[pi]]] < 0]
    out["plus_maximal"] = L.elems[bad[0]] if bad else None
    bad = [a for a in range(n) if not leq[a, mi] and not V[meet[a, neg[mi]]] > 0]
    out["minus_maximal"] = L.elems[bad[0]] if bad else None
    below_z = np.flatnonzero(leq[:, zi])
    bad = [i for i in below_z if V[i] != 0]
    out["vanishing"] = L.elems[bad[0]] if bad else None
    bad = []
    for a in range(n):
        if leq[a, zi]:
            continue
        rest = meet[a, neg[zi]]
        if V[meet[rest, pi]] == 0 and V[meet[rest, mi]] == 0:
            bad.append(a)
    out["vanishing_maximal"] = L.elems[bad[0]] if bad else None
    for name, W in (("pos_part_positive", P), ("neg_part_positive", Q)):
        mono = ~leq | (W[:, None] <= W[None, :])
        ok = (W >= 0).all() and mono.all()
        if ok and full:
            ok = (W[L._bot] == 0) and ((W[:, None] + W[None, :]) == (W[join] + W[meet])).all()
        out[name] = None if ok else name
    abs_ok = all(jd.abs.vec[i] == jd.pos_part.vec[i] + jd.neg_part.vec[i] for i in range(n))
    out["abs_is_sum"] = None if abs_ok else "abs"
    norm_ok = jd.variation_norm == jd.abs(L.top) == jd.pos_part(L.top) + jd.neg_part(L.top)
    out["variation_norm"] = None if norm_ok else jd.variation_norm
    zero = all(a == 0 for a in v.vec)
    out["norm_zero_iff_zero"] = None if (jd.variation_norm == 0) == zero else jd.variation_norm
    return out


@dataclass
class ComplexJordan:
    real: JordanDecomposition
    imag: JordanDecomposition

    @property
    def summands(self):
        """(re+, re-, im+, im-): v = (re+ - re-) + i (im+ - im-)."""
        return (self.real.pos_part, self.real.neg_part, self.imag.pos_part, self.imag.neg_part)

    def reconstruct(self):
        rp, rn, ip, im = self.summands
        return (rp - rn) + (ip - im).scale(scalar("i"))


def complex_jordan(v):
    """Split into real and imaginary parts and decompose each."""
    return ComplexJordan(hahn_jordan(v.real()), hahn_jordan(v.imag()))


def variation_parts(v):
    """Variation norms of the real and imaginary parts."""
    cj = complex_jordan(v)
    return cj.real.variation_norm, cj.imag.variation_norm


# witnesses and normal valuations


def atom_indicator(L, atom):
    ai = L.index(atom)
    return Valuation._from_vec(L, [Fraction(int(L.leq_table[ai, x])) for x in range(len(L))])


def counting_valuation(L):
    return Valuation.from_atom_weights(L, [1] * len(L.atoms()))


def is_localizable(A):
    """Each nonzero b is detected by the indicator of an atom below it."""
    if not A.profile.is_boolean:
        raise NotBoolean("localizability is defined for Boolean algebras")
    witnesses = {}
    for b in A.elems:
        if b == A.bottom:
            continue
        atom = A.atoms_below(b)[0]
        w = atom_indicator(A, atom)
        flags = validate_valuation(w)
        assert flags.positive and flags.continuous and w(b) != 0
        witnesses[b] = w
    return True, witnesses


def localizable_by_definition(A):
    """1 is the join of all a whose principal down-set has a faithful continuous valuation."""
    from .lattice import sublattice

    if not A.profile.is_boolean:
        raise NotBoolean("localizability is defined for Boolean algebras")
    good = []
    for a in A.elems:
        sub = sublattice(A, A.below(a))
        flags = validate_valuation(counting_valuation(sub))
        if flags.faithful and flags.continuous and flags.positive:
            good.append(a)
    return A.join_all(good) == A.top


def normal_witnesses(L):
    """One normal valuation per atom of the clopen algebra: x |-> [c <= ¬¬x]."""
    from .stone import copen

    C = copen(L)
    neg = L._neg
    out = []
    for c in C.atoms():
        ci = L.index(c)
        vec = [Fraction(int(L.leq_table[ci, neg[neg[x]]])) for x in range(len(L))]
        w = Valuation._from_vec(L, vec)
        assert validate_valuation(w).normal
        out.append(w)
    return out


def restrict_normal_valuation(L, v):
    """Restrict a normal valuation to the clopen elements."""
    from .stone import copen

    if not L.profile.is_extremally_disconnected:
        raise NotBoolean("clopen restriction needs an extremally disconnected frame")
    if not validate_valuation(v).normal:
        raise NotNormal("valuation is not normal")
    C = copen(L)
    return Valuation(C, lambda c: v(c))


def extend_normal_valuation(L, w):
    """Inverse of the restriction: precompose with double negation."""
    from .stone import copen

    C = copen(L)
    if w.carrier is not C:
        raise ValueError("valuation must live on the clopen algebra of L")
    neg = L._neg
    return Valuation._from_vec(L, [w(L.elems[neg[neg[i]]]) for i in range(len(L))])


def random_valuation(L, rng, bound=5, denominators=(1, 2, 3, 4), complex_values=False):
    """Atom weights drawn from a bounded rational grid, extended additively."""
    def draw():
        return Fraction(rng.randint(-bound, bound), rng.choice(denominators))

    weights = []
    for _ in L.atoms():
        if complex_values:
            weights.append(scalar((draw(), draw())))
        else:
            weights.append(draw())
    return Valuation.from_atom_weights(L, weights)
