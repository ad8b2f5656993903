from itertools import combinations, product

import pytest

from measloc.errors import NotDistributive
from measloc.lattice import (
    LatticeMap,
    chain,
    check_frame_map,
    diamond,
    find_isomorphism,
    heyting,
    is_isomorphism,
    powerset,
    preserves_joins_literal,
    preserves_meets_literal,
)
from measloc.stone import (
    TWO,
    check_duality_level,
    compact_opens,
    copen,
    double_negation,
    frame_points,
    hyperstonean_compactification,
    ideal_frame,
    ideal_implication,
    ideals,
    is_ideal,
    omega,
    principal_iso,
    spaces_isomorphic,
    spectrum_points,
    stone_counit,
    stone_triangles,
    stone_unit,
)
from measloc.topology import discrete_space, enumerate_topologies, indiscrete_space, sierpinski_space

SMALL = [powerset(k) for k in range(4)] + [chain(n) for n in range(1, 5)]


def subsets(xs):
    xs = list(xs)
    for r in range(len(xs) + 1):
        yield from combinations(xs, r)


def brute_ideals(R):
    """Every subset of R that is down-closed, join-closed and contains bottom."""
    out = set()
    for S in subsets(R.elems):
        S = frozenset(S)
        if R.bottom not in S:
            continue
        if all(y in S for x in S for y in R.elems if R.leq(y, x)) and \
                all(R.join(x, y) in S for x in S for y in S):
            out.add(S)
    return out


def brute_points(L):
    """All maps L -> 2 that literally preserve every meet and join."""
    out = []
    for bits in product((0, 1), repeat=len(L)):
        f = LatticeMap(L, TWO, dict(zip(L.elems, bits)))
        if preserves_joins_literal(f) and preserves_meets_literal(f):
            out.append(bits)
    return out


def literally_compact(L, a):
    """Every S with sup S >= a has a finite subfamily with the same property."""
    for S in subsets(L.elems):
        if L.leq(a, L.join_all(S)):
            if not any(L.leq(a, L.join_all(F)) for F in subsets(S)):
                return False
    return True


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_ideals_match_brute_force(R):
    assert set(ideals(R)) == brute_ideals(R)
    assert all(is_ideal(R, I) for I in ideals(R))


def test_ideal_frame_examples():
    I = ideal_frame(chain(2))
    assert set(I.elems) == {frozenset({0}), frozenset({0, 1})}
    B = ideal_frame(powerset(2))
    assert len(B) == 4 and B.profile.is_boolean
    with pytest.raises(NotDistributive):
        ideal_frame(diamond())


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_ideal_frame_isomorphic_via_principal_ideals(R):
    assert principal_iso(R).ok


@pytest.mark.parametrize("R", SMALL[:6], ids=lambda R: R.name)
def test_ideal_implication_formula(R):
    I = ideal_frame(R)
    for a in I.elems:
        for b in I.elems:
            assert ideal_implication(R, a, b) == heyting(I, a, b)


@pytest.mark.parametrize("L", SMALL[:6], ids=lambda L: L.name)
def test_every_finite_element_is_compact(L):
    assert compact_opens(L) is L
    assert all(literally_compact(L, a) for a in L.elems)


def test_copen_examples():
    P3 = powerset(3)
    assert set(copen(P3).elems) == set(P3.elems)
    assert set(copen(chain(3)).elems) == {0, 2}
    image = {frozenset(I) for I in copen(ideal_frame(powerset(2))).elems}
    assert len(image) == 4


@pytest.mark.parametrize("L", SMALL, ids=lambda L: L.name)
def test_points_match_brute_force(L):
    found = sorted(tuple(int(v) for v in f.idx) for _, f in frame_points(L))
    assert found == sorted(brute_points(L))


def test_spectrum_examples():
    T = spectrum_points(powerset(["a", "b", "c"]))
    assert spaces_isomorphic(T, discrete_space(["a", "b", "c"])) is not None
    S = spectrum_points(chain(3))
    assert len(S.points) == 2 and len(S.opens) == 3
    assert spaces_isomorphic(S, sierpinski_space()) is not None
    assert spectrum_points(chain(1)).points == ()


def test_omega_examples():
    assert find_isomorphism(omega(discrete_space([0, 1])), powerset(2)).ok
    assert find_isomorphism(omega(sierpinski_space()), chain(3)).ok
    assert find_isomorphism(omega(indiscrete_space([0, 1])), chain(2)).ok


def test_unit_examples():
    assert is_isomorphism(stone_unit(powerset(2))).ok
    assert is_isomorphism(stone_unit(chain(2))).ok
    check = is_isomorphism(stone_unit(chain(3)))
    assert not check.ok and "cardinality" in check.refutation


@pytest.mark.parametrize("R", [powerset(2), chain(2), chain(4)], ids=lambda R: R.name)
def test_counit_bijective(R):
    f = stone_counit(R)
    assert f.is_bijective() and is_isomorphism(f).ok


@pytest.mark.parametrize("k", range(5))
def test_triangles_on_boolean_algebras(k):
    assert stone_triangles(powerset(k)).ok


def test_unit_and_counit_are_frame_maps():
    for k in range(4):
        for f in (stone_unit(powerset(k)), stone_counit(powerset(k))):
            prof = check_frame_map(f)
            assert prof.preserves_meets and prof.preserves_joins


def test_double_negation_examples():
    B = powerset(2)
    sub, surj = double_negation(B)
    assert len(sub) == 4 and surj.then(LatticeMap(sub, B, lambda x: x)).is_identity()
    sub, surj = double_negation(chain(3))
    assert set(sub.elems) == {0, 2} and surj(1) == 2
    sub, _ = double_negation(omega(sierpinski_space()))
    assert len(sub) == 2 and sub.profile.is_boolean


@pytest.mark.parametrize("L", SMALL, ids=lambda L: L.name)
def test_double_negation_idempotent(L):
    sub, _ = double_negation(L)
    sub2, surj2 = double_negation(sub)
    assert is_isomorphism(surj2).ok and len(sub2) == len(sub)


def test_duality_levels():
    rep = check_duality_level(powerset(3))
    assert rep.level == "hyperstonean" and len(rep.witnesses) == 3
    atoms = powerset(3).atoms()
    for w, a in zip(rep.witnesses, atoms):
        assert [w(x) for x in powerset(3).elems] == [int(a <= x) for x in powerset(3).elems]
    rep = check_duality_level(chain(3))
    assert rep.level == "coherent" and not rep.checks["Stone"]
    assert check_duality_level(chain(1)).level == "hyperstonean"


@pytest.mark.parametrize("k", range(5))
def test_spectrum_of_ideals_is_discrete_on_atoms(k):
    A = powerset(k)
    T = spectrum_points(ideal_frame(A))
    assert len(T.points) == k
    assert len(T.opens) == 2 ** k
    assert find_isomorphism(omega(T), ideal_frame(A)).ok


def test_hyperstonean_compactification():
    for k in range(4):
        emb = hyperstonean_compactification(powerset(k))
        assert is_isomorphism(emb).ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_spaces_are_sober_iff_spectrum_recovers_them(n):
    for T in enumerate_topologies(n):
        back = spectrum_points(omega(T))
        assert (spaces_isomorphic(back, T) is not None) == T.is_sober()
