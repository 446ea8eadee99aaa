import pytest

from operad_forge.catalog import builtin, tridend_axioms
from operad_forge.configurations import Configuration, parse_config
from operad_forge.linalg import EQUAL, span_relate
from operad_forge.poly import TreePoly, parse_poly
from operad_forge.presentations import orbit_closure, validate
from operad_forge.splitting import (
    SplitError,
    ainf_split_bookkeeping,
    aligned_relations,
    check_canonical_morphisms,
    check_morphism,
    check_splitting_sum,
    induced_split_morphism,
    restriction_morphism,
    split_alphabet,
    split_generator,
    split_presentation,
    split_tree,
)
from operad_forge.trees import Generator, parse_tree


def test_split_alphabets(As, arity, power):
    gens, acts = split_alphabet(As, arity)
    assert [g.id for g in gens] == ["mu[1]", "mu[2]"] and acts is None
    gens, _ = split_alphabet(As, power)
    assert [g.part for g in gens] == [(1,), (2,), (1, 2)]


def test_split_corolla(power):
    w = Generator("w", 3)
    t = parse_tree("w(1,2,3)", [w])
    assert split_tree(t, (1, 3), power) == TreePoly.of(parse_tree("w[1,3](1,2,3)", [split_generator(w, (1, 3))]))


def test_split_tree_stars_off_J(arity):
    """J = {2} in o3(o1(1,2), o2(3,4)): the right child is starred."""
    o = Generator("o", 2)
    t = parse_tree("o(o(1,2),o(3,4))", [o])
    S = {g.id: g for g in split_alphabet(
        type("P", (), {"generators": [o], "symmetric": False, "actions": None})(), arity)[0]}
    expected = parse_poly("o[1](o[2](1,2),o[1](3,4)) + o[1](o[2](1,2),o[2](3,4))", S)
    assert split_tree(t, (2,), arity) == expected


def test_split_tree_rejects_J_outside(arity):
    o = Generator("o", 2)
    with pytest.raises(SplitError):
        split_tree(parse_tree("o(1,2)", [o]), (1, 2), arity)


def test_relation_counts(As, arity, power):
    assert len(split_presentation(As, arity).relations) == 3
    assert len(split_presentation(As, power).relations) == 7
    assert len(split_presentation(As, parse_config("trivial")).relations) == 1


def test_split_presentations_validate(As, arity, power):
    for P in (As, builtin("3Lie"), builtin("PAs3")):
        for C in (arity, power):
            assert validate(split_presentation(P, C)).passed


def test_dend_and_tridend(As, arity, power):
    assert span_relate(aligned_relations(split_presentation(As, arity), builtin("Dend")),
                       builtin("Dend").relations) == EQUAL
    assert span_relate(aligned_relations(split_presentation(As, power), builtin("TriDend")),
                       tridend_axioms()) == EQUAL


def test_lie_splittings(arity, power):
    for C, T in ((arity, "PreLie"), (power, "PostLie")):
        Tp = builtin(T)
        mine = aligned_relations(split_presentation(builtin("Lie"), C), Tp)
        assert span_relate(orbit_closure(mine, Tp.actions), orbit_closure(Tp.relations, Tp.actions),
                           Tp.actions) == EQUAL


@pytest.mark.parametrize("name", ["As", "Lie", "3Lie"])
@pytest.mark.parametrize("spec", ["arity", "power", "trivial"])
def test_splitting_sum(name, spec):
    assert check_splitting_sum(builtin(name), parse_config(spec), 5).passed


def test_splitting_sum_outside_index_is_skipped():
    rep = check_splitting_sum(builtin("As"), parse_config("capped:1"), 4)
    assert rep.passed


@pytest.mark.parametrize("variant", ["sum_arity", "sum_full", "top"])
def test_canonical_morphisms(As, arity, power, variant):
    assert check_canonical_morphisms(As, arity, variant).passed
    assert check_canonical_morphisms(As, power, variant).passed


def test_canonical_not_applicable_is_skip(As, power):
    rep = check_canonical_morphisms(As, power, "sum_arity")
    assert rep.passed and all(c.passed is None for c in rep.checks)


def test_canonical_bad_variant(As, arity):
    with pytest.raises(SplitError):
        check_canonical_morphisms(As, arity, "nope")


def test_morphisms(As, arity):
    mu = As.generator("mu")
    assert check_morphism({"mu": (mu, 1)}, As, As).passed
    assert check_morphism({"mu": (mu, -1)}, As, As).passed
    assert induced_split_morphism({"mu": (mu, -1)}, As, As, arity).passed


def test_non_morphism():
    # x o y -> [x, y] turns the pre-Lie relation into -[x, [y, z]], not a Lie consequence
    L, PL = builtin("Lie"), builtin("PreLie")
    br = L.generator("br")
    rep = check_morphism({"pl[1]": (br, 1), "pl[2]": (br, 1)}, PL, L)
    assert [c.name for c in rep.failures] == ["relation 1"]


def test_restriction(As, arity, power):
    assert restriction_morphism(As, arity, power).passed
    assert restriction_morphism(As, arity, arity).passed
    assert not restriction_morphism(As, power, arity).passed


@pytest.mark.parametrize("n", range(2, 7))
def test_ainf(n):
    assert ainf_split_bookkeeping(n).passed


def test_ainf_range():
    with pytest.raises(SplitError):
        ainf_split_bookkeeping(7)


def test_explicit_config_split(As):
    C = Configuration("explicit", n_max=3, sets={1: [(1,)], 2: [(1,), (2,)], 3: [(1,), (2,), (3,)]})
    assert len(split_presentation(As, C).relations) == 3
