"""Finite-dimensional commutative von Neumann algebras.

An algebra is presented by a finite set of atoms (minimal projections);
elements are vectors of exact scalars indexed by the atoms, with
coordinatewise operations and conjugation as involution.  Norms are
compared through squared moduli so everything stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .errors import AlgebraMismatch, InvalidHom, NotBoolean
from .lattice import FiniteLattice, LatticeMap, check_frame_map, is_isomorphism, label, point_key
from .scalars import abs2, conj, format_scalar, imag_part, real_part, scalar
from .valuations import Valuation, complex_jordan

ZERO = Fraction(0)
ONE = Fraction(1)


class Cvna:
    def __init__(self, atoms):
        self.atoms = tuple(atoms)
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("duplicate atoms")
        self._pos = {a: i for i, a in enumerate(self.atoms)}

    def __eq__(self, other):
        return isinstance(other, Cvna) and self.atoms == other.atoms

    def __hash__(self):
        return hash(("Cvna", self.atoms))

    def __repr__(self):
        return f"Cvna(atoms=[{' '.join(label(a) for a in self.atoms)}])"

    def element(self, coords):
        if isinstance(coords, dict):
            coords = [coords.get(a, 0) for a in self.atoms]
        coords = tuple(scalar(c) for c in coords)
        if len(coords) != len(self.atoms):
            raise ValueError("wrong number of coordinates")
        return CvnaElement(self, coords)

    def one(self):
        return CvnaElement(self, (ONE,) * len(self.atoms))

    def zero(self):
        return CvnaElement(self, (ZERO,) * len(self.atoms))

    def chi(self, support):
        """The projection whose support is the given set of atoms."""
        support = set(support)
        return CvnaElement(self, tuple(ONE if a in support else ZERO for a in self.atoms))

    def position(self, atom):
        return self._pos[atom]


@dataclass(frozen=True)
class CvnaElement:
    algebra: Cvna
    coords: tuple

    def _same(self, other):
        if not isinstance(other, CvnaElement) or other.algebra != self.algebra:
            raise AlgebraMismatch("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        return CvnaElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return CvnaElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other):
        if isinstance(other, CvnaElement):
            self._same(other)
            return CvnaElement(self.algebra, tuple(a * b for a, b in zip(self.coords, other.coords)))
        c = scalar(other)
        return CvnaElement(self.algebra, tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def star(self):
        return CvnaElement(self.algebra, tuple(conj(a) for a in self.coords))

    def __call__(self, atom):
        return self.coords[self.algebra.position(atom)]

    def is_projection(self):
        return self.star() == self and self * self == self

    def support(self):
        return frozenset(a for a, c in zip(self.algebra.atoms, self.coords) if c != 0)

    def norm_sq(self):
        """Square of the sup norm."""
        return max((abs2(c) for c in self.coords), default=ZERO)

    def __repr__(self):
        return "(" + ", ".join(format_scalar(c) for c in self.coords) + ")"


def cstar_identity(x):
    """‖x*x‖ = ‖x‖², compared as ‖x*x‖² = (‖x‖²)²."""
    return (x.star() * x).norm_sq() == x.norm_sq() ** 2


class CvnaHom:
    """A unital *-homomorphism src -> dst, stored by its dual atom map.

    ``atom_map`` sends each atom of dst to an atom of src; the element map
    is precomposition, (h x)(b) = x(atom_map[b]).
    """

    def __init__(self, src, dst, atom_map):
        self.src = src
        self.dst = dst
        self.atom_map = dict(atom_map)
        for b in dst.atoms:
            if b not in self.atom_map or self.atom_map[b] not in src._pos:
                raise InvalidHom("atom map must send every target atom to a source atom", b)

    def __call__(self, x):
        if x.algebra != self.src:
            raise AlgebraMismatch("element not in the source algebra")
        return CvnaElement(self.dst, tuple(x(self.atom_map[b]) for b in self.dst.atoms))

    def then(self, g):
        """The composite g ∘ self."""
        if g.src != self.dst:
            raise AlgebraMismatch("homomorphisms are not composable")
        return CvnaHom(self.src, g.dst, {c: self.atom_map[g.atom_map[c]] for c in g.dst.atoms})

    def is_identity(self):
        return self.src == self.dst and all(self.atom_map[a] == a for a in self.dst.atoms)

    def same_as(self, other):
        return self.src == other.src and self.dst == other.dst and self.atom_map == other.atom_map

    def check(self, samples=()):
        """Unital, involutive, additive and multiplicative on the basis and samples."""
        basis = [self.src.chi({a}) for a in self.src.atoms]
        elems = basis + list(samples) + [self.src.one()]
        if self(self.src.one()) != self.dst.one():
            return False
        for x in elems:
            if self(x.star()) != self(x).star():
                return False
            for y in elems:
                if self(x * y) != self(x) * self(y) or self(x + y) != self(x) + self(y):
                    return False
        return True

    def __repr__(self):
        pairs = " ".join(f"{label(b)}->{label(a)}" for b, a in self.atom_map.items())
        return f"CvnaHom({pairs})"


def all_homs(src, dst):
    for choice in product(src.atoms, repeat=len(dst.atoms)):
        yield CvnaHom(src, dst, dict(zip(dst.atoms, choice)))


# projections


@lru_cache(maxsize=1024)
def proj_alg(A):
    """Boolean algebra of projections, named by their supports.

    A projection satisfies z = conj(z) and z² = z in each coordinate, so
    every coordinate is 0 or 1 and projections are indexed by subsets of
    atoms.  The lattice operations are checked against ab, a+b-ab and the
    symmetric difference (a-b)².
    """
    subsets = [frozenset(c) for r in range(len(A.atoms) + 1) for c in combinations(A.atoms, r)]
    P = FiniteLattice.from_order(subsets, lambda s, t: A.chi(s) * A.chi(t) == A.chi(s), name="ProjAlg")
    for s in subsets:
        assert A.chi(s).is_projection()
        for t in subsets:
            a, b = A.chi(s), A.chi(t)
            assert A.chi(P.meet(s, t)) == a * b
            assert A.chi(P.join(s, t)) == a + b - a * b
            assert A.chi(s ^ t) == (a - b) * (a - b)
    assert P.profile.is_boolean
    return P


def proj_alg_map(h):
    """Restriction of a homomorphism to projections."""
    P, Q = proj_alg(h.src), proj_alg(h.dst)
    f = LatticeMap(P, Q, lambda s: h(h.src.chi(s)).support())
    prof = check_frame_map(f, open_check=False)
    assert prof.preserves_meets and prof.preserves_joins
    return f


@lru_cache(maxsize=1024)
def step(L):
    """The algebra of step functions on a Boolean algebra: one coordinate per atom."""
    if not L.profile.is_boolean:
        raise NotBoolean("Step is defined on Boolean algebras")
    return Cvna(L.atoms())


def step_map(h):
    """Step(h) for a Boolean homomorphism h: B -> L, a hom Step(B) -> Step(L).

    Atom a of L goes to the atom b of B with a <= h(b).
    """
    B, L = h.src, h.dst
    amap = {}
    for a in L.atoms():
        hits = [b for b in B.atoms() if L.leq(a, h(b))]
        if len(hits) != 1:
            raise InvalidHom("homomorphism does not partition the target atoms", a)
        amap[a] = hits[0]
    return CvnaHom(step(B), step(L), amap)


# predual


@dataclass(frozen=True)
class PredualElement:
    algebra: Cvna
    weights: tuple

    @classmethod
    def from_weights(cls, algebra, weights):
        if isinstance(weights, dict):
            weights = [weights.get(a, 0) for a in algebra.atoms]
        return cls(algebra, tuple(scalar(w) for w in weights))

    def weight(self, atom):
        return self.weights[self.algebra.position(atom)]

    def is_positive(self):
        return all(imag_part(w) == 0 and real_part(w) >= 0 for w in self.weights)

    def __add__(self, other):
        return PredualElement(self.algebra, tuple(a + b for a, b in zip(self.weights, other.weights)))

    def scale(self, c):
        c = scalar(c)
        return PredualElement(self.algebra, tuple(c * w for w in self.weights))

    def __repr__(self):
        return "Predual(" + ", ".join(format_scalar(w) for w in self.weights) + ")"


def integrate(f, mu):
    """Σ f(a) w(a) over the atoms."""
    if f.algebra != mu.algebra:
        raise AlgebraMismatch("element and functional live on different algebras")
    total = ZERO
    for x, w in zip(f.coords, mu.weights):
        total = total + x * w
    return total


class PredualBijection:
    """Normal functionals on A and complex valuations on its projections."""

    def __init__(self, A):
        self.algebra = A
        self.projections = proj_alg(A)

    def to_valuation(self, mu):
        A = self.algebra
        return Valuation(self.projections, lambda s: integrate(A.chi(s), mu))

    def from_valuation(self, nu):
        if nu.carrier is not self.projections:
            raise AlgebraMismatch("valuation is not on the projection algebra")
        return PredualElement(self.algebra, tuple(nu(frozenset({a})) for a in self.algebra.atoms))

    def positive_summands(self, mu):
        """Four positive functionals with mu = (p1 - p2) + i (p3 - p4)."""
        cj = complex_jordan(self.to_valuation(mu))
        return tuple(self.from_valuation(v) for v in cj.summands)


def predual_bijection(A):
    return PredualBijection(A)


def preserves_directed_sups(mu):
    """Value at the supremum of each directed set of projections is its limit.

    A finite directed set has a greatest member t, so the sets are indexed
    by t together with any family of projections below it.
    """
    P = proj_alg(mu.algebra)
    A = mu.algebra
    val = {s: integrate(A.chi(s), mu) for s in P.elems}
    for t in P.elems:
        lower = [s for s in P.below(t) if s != t]
        for r in range(len(lower) + 1):
            for extra in combinations(lower, r):
                D = (t,) + extra
                if val[P.join_all(D)] != val[t]:
                    return False
    return True


# the natural isomorphisms


def chi_iso(L):
    """L -> ProjAlg(Step(L)), m going to the projection on the atoms below m."""
    P = proj_alg(step(L))
    f = LatticeMap(L, P, lambda m: frozenset(L.atoms_below(m)))
    iso = is_isomorphism(f)
    assert iso.ok, iso.refutation
    return f


def mu_iso(A):
    """Step(ProjAlg(A)) -> A sending the indicator of m to m."""
    S = step(proj_alg(A))
    return CvnaHom(S, A, {a: frozenset({a}) for a in A.atoms})


def mu_inverse(A):
    S = step(proj_alg(A))
    return CvnaHom(A, S, {frozenset({a}): a for a in A.atoms})


@dataclass(frozen=True)
class Interval:
    lo: Fraction | None = None
    hi: Fraction | None = None
    lo_closed: bool = True
    hi_closed: bool = False

    def contains(self, x):
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True


@dataclass(frozen=True)
class Rect:
    re: Interval = Interval()
    im: Interval = Interval()

    def contains(self, z):
        return self.re.contains(real_part(z)) and self.im.contains(imag_part(z))


def spectral_projection(a, region):
    """Projection onto the atoms where the value of a lies in the region."""
    rects = [region] if isinstance(region, Rect) else list(region)
    A = a.algebra
    return A.chi(x for x, c in zip(A.atoms, a.coords) if any(r.contains(c) for r in rects))


def spectral_decomposition(a):
    """Distinct values of a with their spectral projections."""
    A = a.algebra
    out = {}
    for value in sorted(set(a.coords), key=lambda z: (real_part(z), imag_part(z))):
        box = Rect(Interval(real_part(value), real_part(value), True, True),
                   Interval(imag_part(value), imag_part(value), True, True))
        out[value] = spectral_projection(a, box)
    total = A.zero()
    for value, p in out.items():
        total = total + p * value
    assert total == a
    return out


def reconstruct_from_spectrum(A, a):
    """mu-inverse of a computed from spectral data alone."""
    S = step(proj_alg(A))
    coords = {}
    for value, p in spectral_decomposition(a).items():
        for atom in p.support():
            coords[frozenset({atom})] = value
    return S.element(coords)


@dataclass
class CvnaLaw:
    law: str
    ok: bool
    witness: object = None


def check_cvna_equivalence(obj, samples=()):
    """chi and mu isomorphisms, naturality on samples and the triangle identities."""
    out = []
    if isinstance(obj, FiniteLattice):
        L = obj
        chi = chi_iso(L)
        out.append(CvnaLaw("chi-iso", is_isomorphism(chi).ok))
        for k, h in enumerate(samples):
            left = h.then(chi)
            right = chi_iso(h.src).then(proj_alg_map(step_map(h)))
            out.append(CvnaLaw(f"chi-natural[{k}]", left.same_as(right)))
        tri = step_map(chi).then(mu_iso(step(L)))
        out.append(CvnaLaw("triangle-step", tri.is_identity(), None if tri.is_identity() else tri))
        return out
    A = obj
    mu = mu_iso(A)
    inv = mu_inverse(A)
    S = mu.src
    sends_chi = all(mu(S.chi(_proj_atoms_below(A, s))) == A.chi(s) for s in proj_alg(A).elems)
    out.append(CvnaLaw("mu-iso", mu.check() and inv.check() and mu.then(inv).is_identity()
                       and inv.then(mu).is_identity() and sends_chi))
    for k, h in enumerate(samples):
        left = mu.then(h)
        right = step_map(proj_alg_map(h)).then(mu_iso(h.dst))
        out.append(CvnaLaw(f"mu-natural[{k}]", left.same_as(right)))
    tri = chi_iso(proj_alg(A)).then(proj_alg_map(mu))
    out.append(CvnaLaw("triangle-proj", tri.is_identity()))
    return out


def _proj_atoms_below(A, s):
    """Atoms of ProjAlg(A) below the projection with support s."""
    return [frozenset({a}) for a in s]
