import random
from fractions import Fraction

import pytest

from measloc.cvna import PredualElement, integrate, step
from measloc.duality import ml, tm
from measloc.ems import (
    Measure,
    counting_measure,
    discrete_ems,
    indiscrete_ems,
    measure_from_block_weights,
    zero_measure,
)
from measloc.errors import NotFinite
from measloc.fixtures import enumerate_fixtures
from measloc.lattice import powerset
from measloc.measure_equiv import (
    SLOTS,
    from_hyp_measure,
    hyp_side,
    path,
    pentad,
    to_hyp_measure,
    to_hyp_valuation,
    to_predual,
    to_valuation,
    transport,
    variation_norm,
    verify_pentad,
)
from measloc.reports import random_measure
from measloc.scalars import make
from measloc.topology import sierpinski_space
from measloc.valuations import Valuation, atom_indicator, validate_valuation

F = frozenset


def test_to_valuation_examples():
    D = discrete_ems([0, 1])
    nu = to_valuation(D, zero_measure(D))
    assert all(v == 0 for v in nu.vec)
    nu = to_valuation(D, counting_measure(D))
    assert [nu(a) for a in nu.carrier.atoms()] == [1, 1]
    I = indiscrete_ems(2)
    q = Fraction(7, 3)
    nu = to_valuation(I, measure_from_block_weights(I, [q]))
    assert len(nu.carrier) == 2 and nu(nu.carrier.top) == q
    partial = Measure(D, {F(): 0, F({0}): 1}, domain=[F(), {0}])
    with pytest.raises(NotFinite):
        to_valuation(D, partial)


def test_to_hyp_valuation_examples():
    A = powerset(2)
    assert all(v == 0 for v in to_hyp_valuation(Valuation.zero(A)).vec)
    unit = to_hyp_valuation(atom_indicator(A, F({0})))
    assert validate_valuation(unit).normal
    signed = Valuation.from_atom_weights(A, [1, -2])
    hv = to_hyp_valuation(signed)
    H = hyp_side(A)
    for a in A.elems:
        assert hv(frozenset(A.below(a))) == signed(a)


def test_to_hyp_measure_on_two_atoms():
    A = powerset(2)
    nu = Valuation.from_atom_weights(A, [Fraction(1, 2), 3])
    mu = to_hyp_measure(A, to_hyp_valuation(nu))
    H = hyp_side(A)
    assert len(H.measurable.X) == 2 and H.measurable.N == {F()}
    weights = sorted(mu(F({p})) for p in H.measurable.X)
    assert weights == [Fraction(1, 2), 3]
    assert from_hyp_measure(A, mu) == to_hyp_valuation(nu)


def test_to_predual_pairing():
    A = powerset(3)
    nu = Valuation.from_atom_weights(A, [make(1, 1), -2, Fraction(1, 2)])
    p = to_predual(nu)
    S = step(A)
    for m in A.elems:
        assert integrate(S.chi(A.atoms_below(m)), p) == nu(m)
    assert to_predual(Valuation.zero(A)).weights == (0, 0, 0)


def test_transport_paths():
    assert path("ems", "hyp_meas") == ["ems", "loc", "hyp_val", "hyp_meas"]
    assert path("predual", "hyp_val") == ["predual", "loc", "hyp_val"]
    assert len([(a, b) for a in SLOTS for b in SLOTS if a != b]) == 20


def test_zero_pentad():
    D = discrete_ems([0, 1])
    p = pentad(D, zero_measure(D))
    assert all(v == 0 for v in p.loc_valuation.vec)
    assert all(v == 0 for v in p.hyp_valuation.vec)
    assert all(p.hyp_measure(m) == 0 for m in p.hyp_measure.domain)
    assert all(w == 0 for w in p.predual.weights)
    assert all(c.ok for c in verify_pentad(p))


def test_counting_pentad_on_three_points():
    D = discrete_ems([0, 1, 2])
    p = pentad(D, counting_measure(D))
    assert [p.ems_measure(F({x})) for x in D.X] == [1, 1, 1]
    assert [p.loc_valuation(a) for a in p.algebra.atoms()] == [1, 1, 1]
    I = hyp_side(p.algebra).ideals
    assert [p.hyp_valuation(x) for x in I.atoms()] == [1, 1, 1]
    assert sorted(p.hyp_measure(F({q})) for q in p.hyp_measure.space.X) == [1, 1, 1]
    assert p.predual.weights == (1, 1, 1)
    checks = verify_pentad(p)
    assert len(checks) == 23 and all(c.ok for c in checks)


def test_signed_pentad_on_sierpinski():
    S = tm(sierpinski_space())
    p = pentad(S, measure_from_block_weights(S, [make(2, -1)]))
    assert all(c.ok for c in verify_pentad(p))
    assert p.predual.weights == (make(2, -1),)
    assert variation_norm(p.ems_measure) == (2, 1)


def test_broken_pentad_is_reported():
    D = discrete_ems([0, 1])
    p = pentad(D, counting_measure(D))
    p.predual = PredualElement.from_weights(p.predual.algebra, [1, 2])
    bad = [c for c in verify_pentad(p) if not c.ok]
    assert bad and all("predual" in c.edge or c.edge == "variation-norm" for c in bad)
    assert any(c.witness is not None for c in bad)


@pytest.mark.parametrize("E", list(enumerate_fixtures(3)), ids=repr)
def test_transports_are_linear(E):
    rng = random.Random(repr(E))
    for _ in range(5):
        mu, nu = random_measure(rng, E), random_measure(rng, E)
        c = make(rng.randint(-3, 3), rng.randint(-3, 3))
        combo = Measure(E, {m: mu(m) + c * nu(m) for m in E.M})
        a, b, ab = pentad(E, mu), pentad(E, nu), pentad(E, combo)
        assert ab.loc_valuation == a.loc_valuation + b.loc_valuation.scale(c)
        assert ab.hyp_valuation == a.hyp_valuation + b.hyp_valuation.scale(c)
        assert ab.predual == a.predual + b.predual.scale(c)
        for m in ab.hyp_measure.domain:
            assert ab.hyp_measure(m) == a.hyp_measure(m) + c * b.hyp_measure(m)


@pytest.mark.parametrize("E", list(enumerate_fixtures(3)), ids=repr)
def test_roundtrips_between_every_pair(E):
    rng = random.Random(repr(E) + "rt")
    for _ in range(5):
        p = pentad(E, random_measure(rng, E))
        A = p.algebra
        for src in SLOTS:
            for dst in SLOTS:
                there = transport(E, A, src, dst, p.slot(src))
                assert transport(E, A, dst, src, there) == p.slot(src) or src == dst
