import pytest

from measloc.cvna import Cvna, CvnaHom
from measloc.documents import parse, parse_all, print_document, same_object
from measloc.ems import PreMap, counting_measure, discrete_ems, indiscrete_ems
from measloc.errors import ParseError, ValidationError
from measloc.fixtures import enumerate_fixtures, named_ems
from measloc.lattice import LatticeMap, chain, diamond, powerset
from measloc.scalars import make
from measloc.topology import enumerate_topologies
from measloc.valuations import Valuation


def roundtrip(obj):
    text = print_document(obj)
    back = parse(text)
    assert same_object(back, obj), text
    assert print_document(back) == text


def test_shorthand():
    L = parse("powerset(2)")
    assert len(L) == 4 and L.profile.is_boolean
    assert len(parse("chain(5)")) == 5
    assert not parse("M3").profile.is_distributive


def test_malformed_relation_has_position():
    with pytest.raises(ParseError) as e:
        parse("kind: lattice\nelements: a b\ncovers: a < ")
    assert e.value.line == 3 and e.value.column > 1
    with pytest.raises(ParseError) as e:
        parse("kind: lattice\nelements: a b\ncovers: a ~ b")
    assert e.value.line == 3


def test_validation_errors_name_the_invariant():
    with pytest.raises(ValidationError) as e:
        parse("kind: ems\npoints: 0 1\nM: {} {0,1}\nN: {} {0}")
    assert e.value.invariant == "NotSigmaIdeal"
    with pytest.raises(ValidationError) as e:
        parse("kind: lattice\nelements: a b c\ncovers: a < b a < c")
    assert e.value.invariant == "NotALattice"


def test_unknown_kind_and_reference():
    with pytest.raises(ParseError):
        parse("kind: widget\n")
    with pytest.raises(ParseError):
        parse("kind: valuation\non: nowhere\nvalues: {}=0")


@pytest.mark.parametrize("L", [powerset(k) for k in range(4)] + [chain(3), diamond()], ids=repr)
def test_lattice_roundtrip(L):
    roundtrip(L)


def test_fixture_roundtrips():
    for E in enumerate_fixtures(3):
        roundtrip(E)
    for E in named_ems().values():
        roundtrip(E)
        roundtrip(counting_measure(E))
    for T in enumerate_topologies(3):
        roundtrip(T)


def test_maps_and_valuations_roundtrip():
    D = discrete_ems([0, 1])
    roundtrip(PreMap(indiscrete_ems(2), indiscrete_ems(2), {0: 1, 1: 0}))
    roundtrip(PreMap(D, indiscrete_ems(2), {0: 0, 1: 0}))
    roundtrip(Valuation.from_atom_weights(powerset(3), [make(1, 2), -1, make(0, -1)]))
    A, B = Cvna(["a", "b"]), Cvna([0, 1, 2])
    roundtrip(A)
    roundtrip(CvnaHom(A, B, {0: "a", 1: "a", 2: "b"}))
    P = powerset(2)
    roundtrip(LatticeMap(P, chain(2), lambda S: 1 if S else 0))


def test_multi_document_names():
    docs = parse_all(print_document(counting_measure(discrete_ems([0]))))
    assert [name for name, _ in docs] == ["main_on", "main"]
