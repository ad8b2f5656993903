import pytest

from measloc.duality import (
    baire_classes,
    boolean_homs,
    check_equivalence,
    check_lifting,
    epsilon,
    epsilon_naturality,
    is_hyperstonean_space,
    lifting,
    meager_sets,
    ml,
    ml_map,
    regularization_check,
    spec,
    spec_map,
    star,
    tm,
    tm_map,
)
from measloc.ems import (
    EMPTY,
    EnhancedMeasurableSpace,
    PreMap,
    compose,
    discrete_ems,
    enumerate_premaps,
    eq_ae,
    identity,
    indiscrete_ems,
    powerset_family,
    weak_eq_ae,
)
from measloc.errors import MeasLocError, NotBoolean, PreimageNotNegligible
from measloc.fixtures import enumerate_fixtures, named_ems
from measloc.lattice import LatticeMap, chain, is_isomorphism, powerset
from measloc.topology import (
    ContinuousMap,
    discrete_space,
    enumerate_maps,
    enumerate_topologies,
    indiscrete_space,
    sierpinski_space,
)

F = frozenset
IND = indiscrete_ems(2)
FIX3 = list(enumerate_fixtures(3))


def test_tm_examples():
    E = tm(discrete_space([0, 1, 2]))
    assert E == discrete_ems([0, 1, 2])
    S = tm(sierpinski_space())
    assert S.M == powerset_family([0, 1]) and S.N == {EMPTY, F({0})}
    I = tm(indiscrete_space([0, 1]))
    assert I.M == {EMPTY, F({0, 1})} and I.N == {EMPTY}


def brute_meager(T):
    """Closure of the rare sets under union, by fixed-point iteration from scratch."""
    fam = {EMPTY}
    changed = True
    while changed:
        changed = False
        for a in list(fam) + list(T.rare_sets):
            for b in list(fam):
                if a | b not in fam:
                    fam.add(a | b)
                    changed = True
    return fam


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_tm_validates_for_every_topology(n):
    for T in enumerate_topologies(n):
        assert meager_sets(T) == brute_meager(T)
        E = tm(T)
        EnhancedMeasurableSpace(E.X, E.M, E.N)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_baire_classes_on_hyperstonean_spaces(n):
    hits = 0
    for T in enumerate_topologies(n):
        if is_hyperstonean_space(T):
            hits += 1
            classes = baire_classes(T)
            assert len(set(classes.values())) == 1
            assert set(classes["clopen_xor_rare"]) == set(tm(T).M)
        for A in T.opens:
            assert regularization_check(T, A)
    assert hits > 0


def test_tm_map_is_functorial():
    S = sierpinski_space()
    spaces = [S, discrete_space([0, 1]), indiscrete_space([0, 1])]
    for A in spaces:
        for B in spaces:
            for f in enumerate_maps(A, B):
                if not (f.is_continuous() and f.is_open()):
                    with pytest.raises(MeasLocError):
                        tm_map(f)
                    continue
                for C in spaces:
                    for g in enumerate_maps(B, C):
                        if g.is_continuous() and g.is_open():
                            gf = ContinuousMap(A, C, {x: g.mapping[f.mapping[x]] for x in A.points})
                            assert tm_map(gf) == compose(tm_map(f), tm_map(g))


def test_ml_examples():
    D = discrete_ems([0, 1])
    assert len(ml(D).classes) == 4
    assert len(ml(IND).classes) == 2
    assert len(ml(tm(sierpinski_space())).classes) == 2


def test_ml_map_functoriality_and_weak_equality():
    spaces = FIX3[:8]
    for A in spaces:
        for B in spaces:
            ps = list(enumerate_premaps(A, B))
            for f in ps:
                for g in ps:
                    assert weak_eq_ae(f, g) == ml_map(f).same_as(ml_map(g))
            for C in spaces[:4]:
                for f in ps[:4]:
                    for g in list(enumerate_premaps(B, C))[:4]:
                        assert ml_map(compose(f, g)).same_as(ml_map(g).then(ml_map(f)))


def test_spec_examples():
    assert spec(powerset(0)).X == ()
    assert spec(powerset(["a", "b"])) == discrete_ems([F("a"), F("b")])
    assert len(spec(powerset(1)).X) == 1
    with pytest.raises(NotBoolean):
        spec(chain(3))


@pytest.mark.parametrize("k", range(5))
def test_epsilon_is_iso(k):
    assert is_isomorphism(epsilon(powerset(k))).ok


def test_epsilon_naturality_on_projection():
    B, A = powerset(["a", "b"]), powerset(["a"])
    proj = LatticeMap(B, A, lambda S: S & F("a"))
    ok, w = epsilon_naturality(proj)
    assert ok, w


def test_boolean_homs_count():
    # homs 2^m -> 2^n correspond to maps from n atoms to m atoms
    for m in range(3):
        for n in range(3):
            expected = m ** n if m else (1 if n == 0 else 0)
            assert len(list(boolean_homs(powerset(m), powerset(n)))) == expected


def test_lifting_discrete():
    D = discrete_ems([0, 1])
    ld = lifting(D)
    assert len(set(ld.eta.mapping.values())) == 2
    assert eq_ae(compose(ld.eta, ld.psi), identity(D))
    assert eq_ae(compose(ld.psi, ld.eta), identity(ld.eta.dst))


def test_lifting_indiscrete():
    ld = lifting(IND)
    assert len(ld.eta.dst.X) == 1
    assert len(set(ld.eta.mapping.values())) == 1
    assert list(ld.psi.mapping.values()) == [0]
    back = compose(ld.eta, ld.psi)
    assert weak_eq_ae(back, identity(IND))
    assert weak_eq_ae(compose(ld.psi, ld.eta), identity(ld.eta.dst))
    assert not eq_ae(back, identity(IND))


def test_lifting_everything_negligible():
    E = named_ems()["all-null"]
    ld = lifting(E)
    assert ld.eta.pdom == EMPTY
    assert all(r.ok for r in check_lifting(E))


def naive_psi(E):
    """Least point of each theta-block, the rule the construction is sometimes stated with."""
    ld = lifting(E)
    return {a: min(b) for a, b in ld.blocks.items()}


def test_least_point_of_block_can_be_negligible():
    E = named_ems()["half-null"]
    ld = lifting(E)
    with pytest.raises(PreimageNotNegligible):
        PreMap(ld.eta.dst, E, naive_psi(E))
    assert all(r.ok for r in check_lifting(E, ld))


@pytest.mark.parametrize("E", FIX3, ids=repr)
def test_lifting_variants_agree_up_to_weak_equality(E):
    a, b = lifting(E, "canonical"), lifting(E, "alternate")
    assert all(r.ok for r in check_lifting(E, a))
    assert all(r.ok for r in check_lifting(E, b))
    assert weak_eq_ae(a.eta, b.eta)
    assert weak_eq_ae(a.psi, b.psi)


@pytest.mark.parametrize("E", FIX3, ids=repr)
def test_check_equivalence_on_small_spaces(E):
    samples = [f for D in FIX3[:5] for f in list(enumerate_premaps(E, D))[:2]]
    report = check_equivalence(E, samples)
    assert all(r.ok for r in report), [r for r in report if not r.ok]


@pytest.mark.parametrize("k", range(4))
def test_check_equivalence_on_algebras(k):
    A = powerset(k)
    homs = [h for m in range(3) for h in boolean_homs(powerset(m), A)]
    report = check_equivalence(A, homs)
    assert all(r.ok for r in report)
    assert any(r.law == "triangle-ML" for r in report)


def test_star_is_the_clopen_of_a_class():
    D = discrete_ems([0, 1])
    Q = ml(D)
    assert star(Q, F({0})) == {Q(F({0}))}
    assert star(Q, EMPTY) == EMPTY
