"""Finite enhanced measurable spaces, premaps and measures.

Countable families collapse to finite ones on a finite carrier; every
definition is otherwise evaluated verbatim.  Subsets are frozensets of
points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

from .errors import (
    DomainNotConegligible,
    NotAMeasure,
    NotComplete,
    NotMeasurable,
    NotSigmaAlgebra,
    NotSigmaIdeal,
    PreimageNotMeasurable,
    PreimageNotNegligible,
)
from .lattice import label, point_key, set_key
from .scalars import is_real, real_part, scalar
from .topology import all_subsets

EMPTY = frozenset()


def fmt_family(fam):
    return "[" + " ".join(label(s) for s in sorted(fam, key=set_key)) + "]"


class EnhancedMeasurableSpace:
    """A triple (X, M, N): points, measurable sets, negligible sets."""

    def __init__(self, X, M, N, validate=True):
        self.X = tuple(sorted(set(X), key=point_key))
        self.M = frozenset(frozenset(m) for m in M)
        self.N = frozenset(frozenset(n) for n in N)
        if validate:
            _check_ems(self.carrier, self.M, self.N)

    @cached_property
    def carrier(self):
        return frozenset(self.X)

    def __eq__(self, other):
        return (isinstance(other, EnhancedMeasurableSpace) and self.X == other.X
                and self.M == other.M and self.N == other.N)

    def __hash__(self):
        return hash((self.X, self.M, self.N))

    def __repr__(self):
        return (f"EMS(X={label(self.carrier)}, M={fmt_family(self.M)}, "
                f"N={fmt_family(self.N)})")

    @cached_property
    def blocks(self):
        """Atoms of the finite σ-algebra M, ordered by least point."""
        out = []
        for x in self.X:
            b = self.carrier
            for m in self.M:
                if x in m:
                    b &= m
            if b not in out:
                out.append(b)
        return tuple(out)

    @cached_property
    def null_union(self):
        """The largest negligible set."""
        s = EMPTY
        for n in self.N:
            s |= n
        return s

    def is_measurable(self, A):
        return frozenset(A) in self.M

    def is_negligible(self, A):
        return frozenset(A) in self.N


def _check_ems(X, M, N):
    for m in M:
        if not m <= X:
            raise NotSigmaAlgebra("measurable set outside the carrier", m)
    if EMPTY not in M:
        raise NotSigmaAlgebra("empty set is not measurable", EMPTY)
    if X not in M:
        raise NotSigmaAlgebra("carrier is not measurable", X)
    for m in M:
        if X - m not in M:
            raise NotSigmaAlgebra("not closed under complement", m)
    ms = sorted(M, key=set_key)
    for a, b in combinations(ms, 2):
        if a | b not in M:
            raise NotSigmaAlgebra("not closed under union", (a, b))
    for n in N:
        if n not in M:
            raise NotSigmaIdeal("negligible set is not measurable", n)
    if EMPTY not in N:
        raise NotSigmaIdeal("empty set is not negligible", EMPTY)
    ns = sorted(N, key=set_key)
    for a, b in combinations(ns, 2):
        if a | b not in N:
            raise NotSigmaIdeal("negligible sets not closed under union", (a, b))
    for n in ns:
        for m in M:
            if m <= n and m not in N:
                raise NotSigmaIdeal("measurable subset of a negligible set is not negligible", m)
    for n in ns:
        for s in all_subsets(sorted(n, key=point_key)):
            if s not in N:
                raise NotComplete("subset of a negligible set is not negligible", s)


def validate_ems(X, M, N):
    return EnhancedMeasurableSpace(X, M, N)


def powerset_family(points):
    return frozenset(all_subsets(sorted(set(points), key=point_key)))


def discrete_ems(points):
    if isinstance(points, int):
        points = range(points)
    return EnhancedMeasurableSpace(points, powerset_family(points), [EMPTY])


def indiscrete_ems(points=2):
    """IND: only the trivial sets are measurable, nothing nonempty is negligible."""
    if isinstance(points, int):
        points = range(points)
    X = frozenset(points)
    return EnhancedMeasurableSpace(X, [EMPTY, X], [EMPTY])


def induced(E, m):
    """The induced space (m, M_m, N_m)."""
    m = frozenset(m)
    if m not in E.M:
        raise NotMeasurable("not a measurable set", m)
    return EnhancedMeasurableSpace(
        m, [a for a in E.M if a <= m], [n for n in E.N if n <= m], validate=False
    )


# premaps

_UNDEFINED = object()


class PreMap:
    """Partial map defined on pdom (the keys of ``mapping``)."""

    def __init__(self, src, dst, mapping, validate=True):
        self.src = src
        self.dst = dst
        self.mapping = dict(mapping)
        self.pdom = frozenset(self.mapping)
        if validate:
            _check_premap(self)

    def __call__(self, x):
        return self.mapping.get(x, _UNDEFINED)

    def preimage(self, A):
        return frozenset(x for x, y in self.mapping.items() if y in A)

    @cached_property
    def preimages(self):
        return {m: self.preimage(m) for m in self.dst.M}

    def __repr__(self):
        pairs = " ".join(f"{label(x)}->{label(y)}"
                         for x, y in sorted(self.mapping.items(), key=lambda p: point_key(p[0])))
        return f"PreMap({pairs})"

    def __eq__(self, other):
        return (isinstance(other, PreMap) and self.src == other.src
                and self.dst == other.dst and self.mapping == other.mapping)

    def __hash__(self):
        return hash((self.src, self.dst, frozenset(self.mapping.items())))


def _check_premap(f):
    for x, y in f.mapping.items():
        if x not in f.src.carrier:
            raise DomainNotConegligible("domain point outside the source", x)
        if y not in f.dst.carrier:
            raise PreimageNotMeasurable("value outside the target", y)
    rest = f.src.carrier - f.pdom
    if rest not in f.src.N:
        raise DomainNotConegligible("complement of pdom is not negligible", rest)
    for m in f.dst.M:
        if f.preimage(m) not in f.src.M:
            raise PreimageNotMeasurable("preimage is not measurable", m)
    for n in f.dst.N:
        if f.preimage(n) not in f.src.N:
            raise PreimageNotNegligible("preimage of a negligible set is not negligible", n)


def validate_premap(f):
    _check_premap(f)
    return f


def identity(E):
    return PreMap(E, E, {x: x for x in E.X}, validate=False)


def compose(f, g):
    """First f, then g: pdom = pdom f ∩ f*(pdom g)."""
    if f.dst != g.src:
        raise ValueError("premaps are not composable")
    dom = f.pdom & f.preimage(g.pdom)
    return PreMap(f.src, g.dst, {x: g.mapping[f.mapping[x]] for x in dom})


def eq_ae(f, g):
    """{x | f(x) != g(x)} is negligible; undefined points take a sentinel value."""
    diff = frozenset(x for x in f.src.X if f(x) is not g(x) and f(x) != g(x))
    return diff in f.src.N


def weak_eq_ae(f, g):
    """f*m ⊕ g*m is negligible for every measurable m of the target."""
    pf, pg = f.preimages, g.preimages
    return all((pf[m] ^ pg[m]) in f.src.N for m in f.dst.M)


def enumerate_premaps(src, dst):
    """All premaps src -> dst (partial maps are included)."""
    options = [list(dst.X) + [_UNDEFINED] for _ in src.X]
    for values in product(*options):
        mapping = {x: y for x, y in zip(src.X, values) if y is not _UNDEFINED}
        f = PreMap(src, dst, mapping, validate=False)
        try:
            _check_premap(f)
        except (DomainNotConegligible, PreimageNotMeasurable, PreimageNotNegligible):
            continue
        yield f


def countably_separated(E):
    """A smallest family of measurable sets that separates and covers the points."""
    def works(fam):
        covered = frozenset().union(*fam) if fam else EMPTY
        if covered != E.carrier:
            return False
        for x, y in combinations(E.X, 2):
            if not any((x in m) != (y in m) for m in fam):
                return False
        return True

    candidates = sorted((m for m in E.M if m), key=set_key)
    if not works(candidates):
        return False, None
    for k in range(len(candidates) + 1):
        for fam in combinations(candidates, k):
            if works(fam):
                return True, list(fam)
    return False, None  # unreachable: the full family works


# completion and incomplete spaces


def completion(X, M, N):
    """Complete (X, M, N): N' = subsets of negligibles, M' = M modulo N'."""
    X = frozenset(X)
    M = [frozenset(m) for m in M]
    N = [frozenset(n) for n in N]
    Nc = set()
    for n in N:
        Nc.update(all_subsets(sorted(n, key=point_key)))
    Mc = set()
    for a in all_subsets(sorted(X, key=point_key)):
        if any((a ^ m) in Nc for m in M):
            Mc.add(a)
    return EnhancedMeasurableSpace(X, Mc, Nc)


def is_incomplete_morphism(src, dst, mapping):
    """Morphism condition between not necessarily complete triples.

    ``src`` and ``dst`` are (X, M, N) triples; the domain's complement must
    be covered by a negligible set, preimages of measurable sets must agree
    with a measurable set up to a negligible one, and preimages of
    negligible sets must be covered by negligible sets.
    """
    X, M, N = (frozenset(src[0]), [frozenset(m) for m in src[1]], [frozenset(n) for n in src[2]])
    Y, MY, NY = (frozenset(dst[0]), [frozenset(m) for m in dst[1]], [frozenset(n) for n in dst[2]])
    dom = frozenset(mapping)
    if not any((X - dom) <= n for n in N):
        return False

    def pre(A):
        return frozenset(x for x in dom if mapping[x] in A)

    for m in MY:
        p = pre(m)
        if not any((p ^ mx) <= n for mx in M for n in N):
            return False
    for ny in NY:
        if not any(pre(ny) <= n for n in N):
            return False
    return True


# coproducts


@dataclass
class Coproduct:
    space: EnhancedMeasurableSpace
    injections: list

    def copair(self, target, maps):
        """The induced premap out of the coproduct."""
        mapping = {}
        for i, f in enumerate(maps):
            for x, y in f.mapping.items():
                mapping[(i, x)] = y
        return PreMap(self.space, target, mapping)


def coproduct(spaces):
    """Disjoint union; a set is measurable (negligible) iff each slice is."""
    X = [(i, x) for i, E in enumerate(spaces) for x in E.X]

    def combine(families):
        out = []
        for choice in product(*[sorted(f, key=set_key) for f in families]):
            out.append(frozenset((i, x) for i, part in enumerate(choice) for x in part))
        return out

    M = combine([E.M for E in spaces])
    N = combine([E.N for E in spaces])
    C = EnhancedMeasurableSpace(X, M, N)
    inj = [PreMap(E, C, {x: (i, x) for x in E.X}) for i, E in enumerate(spaces)]
    return Coproduct(C, inj)


# measures


class Measure:
    """A scalar function on an ideal M' of measurable sets containing N."""

    def __init__(self, space, values, domain=None, validate=True):
        self.space = space
        vals = {frozenset(k): scalar(v) for k, v in dict(values).items()}
        self.domain = frozenset(frozenset(d) for d in domain) if domain is not None else frozenset(vals)
        self.values = vals
        if validate:
            _check_measure(self)

    def __call__(self, m):
        return self.values[frozenset(m)]

    def __eq__(self, other):
        return (isinstance(other, Measure) and self.space == other.space
                and self.domain == other.domain
                and all(self.values[d] == other.values[d] for d in self.domain))

    def __hash__(self):
        return hash((self.space, self.domain))

    def __repr__(self):
        body = " ".join(f"{label(m)}={self.values[m]}" for m in sorted(self.domain, key=set_key))
        return f"Measure({body})"

    def restricted_nonzero(self, m):
        """Whether μ|_m is nonzero."""
        m = frozenset(m)
        return any(self.values[d] != 0 for d in self.domain if d <= m)

    def is_real(self):
        return all(is_real(self.values[d]) for d in self.domain)

    def is_positive(self):
        return self.is_real() and all(real_part(self.values[d]) >= 0 for d in self.domain)


def _check_measure(mu):
    E, D = mu.space, mu.domain
    missing = [d for d in D if d not in mu.values]
    if missing:
        raise NotAMeasure("no value on a domain set", missing[0])
    for d in D:
        if d not in E.M:
            raise NotAMeasure("domain set is not measurable", d)
    for n in E.N:
        if n not in D:
            raise NotAMeasure("domain ideal does not contain N", n)
        if mu.values[n] != 0:
            raise NotAMeasure("measure does not vanish on N", n)
    for d in D:
        for m in E.M:
            if m <= d and m not in D:
                raise NotAMeasure("domain is not down-closed in M", m)
    ds = sorted(D, key=set_key)
    for a, b in combinations(ds, 2):
        if a | b not in D:
            raise NotAMeasure("domain is not closed under union", (a, b))
        if not a & b and mu.values[a | b] != mu.values[a] + mu.values[b]:
            raise NotAMeasure("not additive on a disjoint pair", (a, b))


def zero_measure(E):
    return Measure(E, {m: 0 for m in E.M})


def counting_measure(E):
    """Number of non-negligible blocks inside each measurable set."""
    good = [b for b in E.blocks if b not in E.N]
    return Measure(E, {m: sum(1 for b in good if b <= m) for m in E.M})


def measure_from_block_weights(E, weights):
    """Finite measure from weights on the non-negligible blocks (negligible blocks weigh 0)."""
    w = {}
    good = [b for b in E.blocks if b not in E.N]
    if isinstance(weights, dict):
        w = {frozenset(k): scalar(v) for k, v in weights.items()}
    else:
        w = dict(zip(good, (scalar(x) for x in weights)))
    vals = {}
    for m in E.M:
        total = Fraction(0)
        for b in good:
            if b <= m:
                total = total + w.get(b, Fraction(0))
        vals[m] = total
    return Measure(E, vals)


@dataclass
class MeasureFlags:
    faithful: bool
    finite: bool
    semifinite: bool
    positive: bool
    real: bool
    essential: bool


def _faithful(mu):
    return all(d in mu.space.N for d in mu.domain if not mu.restricted_nonzero(d))


def _finite(mu):
    return mu.domain == mu.space.M


def classify_measure(mu):
    E = mu.space
    semifinite = all(
        any(d <= m and d not in E.N for d in mu.domain) for m in E.M - E.N
    )
    essential = True
    for m in E.M:
        if not mu.restricted_nonzero(m):
            continue
        if not any(
            sub <= m and is_sigma_finite(induced(E, sub))[0] and mu.restricted_nonzero(sub)
            for sub in E.M
        ):
            essential = False
            break
    return MeasureFlags(
        faithful=_faithful(mu),
        finite=_finite(mu),
        semifinite=semifinite,
        positive=mu.is_positive(),
        real=mu.is_real(),
        essential=essential,
    )


def essential_supremum(E, family):
    """Least measurable upper bound of the family modulo negligible sets."""
    family = [frozenset(m) for m in family]
    for m in family:
        if m not in E.M:
            raise NotMeasurable("family member is not measurable", m)
    union = frozenset().union(*family) if family else EMPTY
    candidates = [union] if union in E.M else sorted(E.M, key=set_key)
    for s in candidates:
        if _is_ess_sup(E, family, s):
            return s
    return None


def _is_ess_sup(E, family, s):
    if any((m - s) not in E.N for m in family):
        return False
    for t in E.M:
        if all((m - t) in E.N for m in family) and (s - t) not in E.N:
            return False
    return True


def ae_disjoint_families(E, domain):
    """Families of domain sets with pairwise negligible intersections.

    Negligible members change neither the sum nor the essential supremum
    modulo N, so at most one negligible member is admitted.
    """
    good = sorted((d for d in domain if d not in E.N), key=set_key)
    null = sorted((d for d in domain if d in E.N), key=set_key)
    out = []

    def grow(members, start):
        out.append(list(members))
        for k in range(start, len(good)):
            d = good[k]
            if all((d & e) in E.N for e in members):
                members.append(d)
                grow(members, k + 1)
                members.pop()

    grow([], 0)
    extended = list(out)
    for fam in out:
        for n in null:
            extended.append(fam + [n])
    return extended


@dataclass
class MeasureProps:
    completely_additive: bool
    preserves_ess_sup: bool


def measure_props(mu):
    E = mu.space
    ca = True
    for fam in ae_disjoint_families(E, mu.domain):
        s = essential_supremum(E, fam)
        if s is None:
            continue
        if s not in mu.domain:
            ca = False
            break
        total = Fraction(0)
        for m in fam:
            total = total + mu.values[m]
        if mu.values[s] != total:
            ca = False
            break
    # a finite directed family closed under measurable subsets is the set
    # of measurable subsets of its largest member
    sup_ok = True
    for top in mu.domain:
        T = [m for m in E.M if m <= top]
        s = essential_supremum(E, T)
        if s is None or s not in mu.domain:
            continue
        if mu.values[s] != mu.values[top]:
            sup_ok = False
            break
    return MeasureProps(ca, sup_ok)


# σ-finiteness, localizing partitions, compact classes


def is_sigma_finite(E):
    """Build the faithful finite measure counting non-negligible blocks."""
    mu = counting_measure(E)
    ok = _faithful(mu) and _finite(mu)
    return ok, mu


def strictly_localizing_partition(E):
    """The blocks of M: σ-finite pieces whose coproduct recovers E."""
    parts = list(E.blocks)
    for p in parts:
        assert is_sigma_finite(induced(E, p))[0]
    cop = coproduct([induced(E, p) for p in parts])
    back = {(i, x): x for i, p in enumerate(parts) for x in sorted(p, key=point_key)}
    there = {x: (i, x) for i, p in enumerate(parts) for x in p}
    PreMap(cop.space, E, back)
    PreMap(E, cop.space, there)
    return parts


def is_compact_class(K, limit=12):
    """Literal finite intersection property over every subfamily (small K only).

    Intersections shrink as a family grows, so a finite subfamily has the
    finite intersection property exactly when its own intersection is
    nonempty; both sides are still computed separately.
    """
    K = sorted(K, key=set_key)
    if len(K) > limit:
        raise ValueError(f"literal compact class check limited to {limit} sets")
    for r in range(1, len(K) + 1):
        for sub in combinations(K, r):
            fip = all(frozenset.intersection(*sub[:k]) for k in range(1, r + 1))
            fip = fip and all(frozenset.intersection(*(sub[:i] + sub[i + 1:]))
                              for i in range(r) if r > 1)
            if fip and not frozenset.intersection(*sub):
                return False
    return True


def compact_class(E):
    """K = M minus N; every non-negligible measurable set contains a member."""
    K = sorted(E.M - E.N, key=set_key)
    for m in E.M - E.N:
        assert any(k <= m and k not in E.N for k in K)
    return K


def measurable_image(f):
    """Complement of the essential supremum of sets with negligible preimage."""
    E, F = f.src, f.dst
    null_pre = [m for m in F.M if f.preimage(m) in E.N]
    p = essential_supremum(F, null_pre)
    image = F.carrier - p
    if not _is_image(f, image):
        raise AssertionError("measurable image failed its defining properties")
    for cand in F.M:
        if _is_image(f, cand) and (cand ^ image) not in F.N:
            raise AssertionError("measurable image is not unique modulo N")
    return image


def _is_image(f, m):
    E, F = f.src, f.dst
    if f.preimage(F.carrier - m) not in E.N:
        return False
    return all(sub in F.N for sub in F.M if sub <= m and f.preimage(sub) in E.N)
