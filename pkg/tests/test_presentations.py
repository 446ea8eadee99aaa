import json

import pytest

from operad_forge.catalog import CATALOG, builtin
from operad_forge.linalg import EQUAL, A_IN_B, RowSpace, span_relate
from operad_forge.poly import TreePoly, parse_poly
from operad_forge.presentations import (
    OperadPresentation,
    PresentationError,
    free_dimension,
    ideal_component,
    relation_orbit,
    validate,
)
from operad_forge.trees import Generator

FIXED = [n for n in CATALOG if "<" not in n]


@pytest.mark.parametrize("name", FIXED + ["PAs2", "PAs3", "TAs3", "nLie2", "nLie3", "nPreLie3"])
def test_builtins_validate(name):
    assert validate(builtin(name)).passed


def test_inhomogeneous_relation_rejected():
    mu = Generator("mu", 2)
    P = OperadPresentation("bad", False, [mu], [parse_poly("mu(1,2) + mu(mu(1,2),3)", [mu])])
    rep = validate(P)
    assert not rep.passed
    assert "inhomogeneous" in rep.failures[0].detail


def test_3lie_skew_action():
    L = builtin("3Lie")
    br = L.generator("br")
    assert L.actions.swap(br, 1) == (br, -1)
    assert L.actions.swap(br, 2) == (br, -1)


@pytest.mark.parametrize("name", ["As", "3Lie", "GenPreLie3", "PartDend3"])
def test_json_round_trip(name):
    P = builtin(name)
    Q = OperadPresentation.from_json(json.loads(P.dumps()))
    assert Q.generators == P.generators
    assert Q.relations == P.relations
    assert Q.symmetric == P.symmetric


def test_unknown_builtin():
    with pytest.raises(PresentationError):
        builtin("Nope")
    with pytest.raises(PresentationError):
        builtin("PAs9")


def test_orbits():
    L = builtin("3Lie")
    orbit = relation_orbit(L, L.relations[0])
    assert len(orbit) == 10
    assert RowSpace(orbit).rank == 5
    S = builtin("AsSym")
    orbit = relation_orbit(S, S.relations[0])
    assert len(orbit) == 6 and RowSpace(orbit).rank == 6


def test_orbit_needs_symmetric():
    with pytest.raises(PresentationError):
        relation_orbit(builtin("As"), builtin("As").relations[0])


def test_ideal_component_associative():
    As = builtin("As")
    assert free_dimension(As, 4) == 5
    # the nonsymmetric associative operad is one-dimensional in every arity
    assert RowSpace(ideal_component(As, 4)).rank == free_dimension(As, 4) - 1


def test_ideal_component_3lie_at_relation_size():
    L = builtin("3Lie")
    assert span_relate(ideal_component(L, 5), relation_orbit(L, L.relations[0])) == EQUAL


def test_span_relate_scalar_multiple():
    mu = Generator("mu", 2)
    p = parse_poly("mu(mu(1,2),3)", [mu])
    q = parse_poly("mu(1,mu(2,3))", [mu])
    assert span_relate([p], [p]) == EQUAL
    assert span_relate([p], [p.scale(2), q]) == A_IN_B
    assert span_relate([], []) == EQUAL
    assert RowSpace([TreePoly()]).rank == 0


@pytest.mark.parametrize("family,fixed", [("nPreLie3", "3PreLie"), ("nLie3", "3Lie")])
def test_family_specializes_to_named_operad(family, fixed):
    # sign placement in the n-ary family is fixed by this agreement at n = 3
    a, b = builtin(family), builtin(fixed)
    assert [g.id for g in a.generators] == [g.id for g in b.generators]
    assert span_relate(ideal_component(a, 5), ideal_component(b, 5)) == EQUAL
