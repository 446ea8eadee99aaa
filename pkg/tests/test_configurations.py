import pytest

from operad_forge.catalog import builtin
from operad_forge.configurations import (
    INFINITE,
    ConfigError,
    Configuration,
    meet,
    parse_config,
    s_invariant,
    validate_closure,
)
from operad_forge.trees import Generator, parse_tree

o = Generator("o", 2)


def test_meets_on_the_two_shapes():
    t1 = parse_tree("o(1,o(2,3))", [o])
    assert meet({1, 3}, t1, ()) == (1, 2)
    assert meet({1, 3}, t1, (2,)) == (2,)
    t2 = parse_tree("o(o(1,2),3)", [o])
    assert meet({2}, t2, ()) == (1,)
    assert meet({2}, t2, (1,)) == (2,)
    assert meet({1, 2, 3}, t1, ()) == (1, 2)


@pytest.mark.parametrize("spec", ["arity", "power", "trivial", "capped:2", "capped:3"])
def test_named_configurations_are_closed(spec):
    assert validate_closure(parse_config(spec, n_max=6)).passed


def test_closure_counterexample():
    C = Configuration("explicit", n_max=3, sets={1: [(1,)], 2: [(1,)], 3: [(2,), (1, 2, 3)]})
    rep = validate_closure(C)
    assert not rep.passed
    assert rep.failures[0].witness["meet"] == [2]


def test_s_invariance():
    assert s_invariant(parse_config("power", n_max=5))
    assert s_invariant(parse_config("capped:2", n_max=5))
    assert not s_invariant(Configuration("explicit", n_max=2, sets={1: [(1,)], 2: [(1,)]}))


def test_index():
    assert parse_config("arity").index() == 1
    assert parse_config("power").index() == INFINITE
    assert parse_config("capped:2").index() == 2


def test_json_round_trip():
    C = Configuration("explicit", n_max=3, sets={1: [(1,)], 2: [(1,), (2,), (1, 2)], 3: [(1, 2, 3)]})
    assert Configuration.from_json(C.to_json()) == C


def test_bad_kind():
    with pytest.raises(ConfigError):
        parse_config("nonsense")
    with pytest.raises(ConfigError):
        Configuration("capped")


def test_sets():
    assert parse_config("capped:2").sets_for(3) == ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3))
    assert parse_config("trivial").sets_for(3) == ((1, 2, 3),)
    assert len(parse_config("power").sets_for(4)) == 15
