from fractions import Fraction

import pytest

from operad_forge.catalog import builtin
from operad_forge.configurations import parse_config
from operad_forge.poly import TreePoly
from operad_forge.rota_baxter import (
    GuardError,
    LinearOperator,
    ModuleData,
    MultilinearAlgebra,
    PreconditionError,
    canonical_module_from_split,
    check_algebra,
    check_crb_operator,
    check_module,
    check_relative_rb,
    eval_tree,
    induce_on_module,
    induce_split_algebra,
    rb_relations,
    relative_verdicts,
    search_rb_operators,
    xi,
)
from operad_forge.rota_baxter.algebra import LinearMap
from operad_forge.rota_baxter.examples import builtin_algebra, three_lie_4, upper_triangular
from operad_forge.rota_baxter.operators import split_operation_table
from operad_forge.rota_baxter.syntax import XiError, count_P
from operad_forge.splitting import split_presentation, split_tree
from operad_forge.trees import Generator, Leaf, parse_tree

E12 = LinearOperator(((0, 0, 0), (1, 0, 0), (0, 0, 0)))


@pytest.fixture(scope="module")
def A():
    return upper_triangular()


def test_eval_tree(A, As):
    (r,) = As.relations
    one = [1, 0, 0]
    assert eval_tree(A, r, {1: one, 2: [0, 1, 0], 3: [0, 0, 1]}) == [0, 0, 0]
    mu = As.generator("mu")
    assert eval_tree(A, parse_tree("mu(1,2)", [mu]), {1: one, 2: [0, 1, 0]}) == [0, 1, 0]
    assert eval_tree(A, Leaf(1), {1: [5, 0, 0]}) == [5, 0, 0]


def test_commutative_algebra_satisfies_associativity(As):
    mu = As.generator("mu")
    C = MultilinearAlgebra(2, [mu], {"mu": {(0, 0): {0: Fraction(1)}, (0, 1): {1: Fraction(1)},
                                          (1, 0): {1: Fraction(1)}}})
    assert check_algebra(C, As).passed


def test_upper_triangular_is_associative_not_lie(A, As):
    assert check_algebra(A, As).passed
    br = builtin("Lie").generator("br")
    rep = check_algebra(A.renamed({"mu": br}), builtin("Lie"))
    assert not rep.passed and rep.failures[0].witness is not None


def test_zero_algebra_passes_everything():
    for name in ("As", "3Lie", "PartDend3"):
        P = builtin(name)
        Z = MultilinearAlgebra.zero(2, [g for g in P.generators])
        assert check_algebra(Z, P).passed


def test_random_ternary_is_not_3lie():
    assert check_algebra(three_lie_4((1, 0, 0, 0)), builtin("3Lie")).passed
    br = builtin("3Lie").generator("br")
    bad = MultilinearAlgebra(2, [br], {"br": {(0, 0, 1): {0: Fraction(1)}}})
    assert not check_algebra(bad, builtin("3Lie")).passed


def test_json_round_trips(A):
    B = MultilinearAlgebra.from_json(A.to_json(), A.alphabet)
    assert B.same_constants(A)
    assert LinearOperator.from_json(E12.to_json()) == E12
    M = ModuleData.regular(A, parse_config("power"))
    M2 = ModuleData.from_json(M.to_json(), A)
    assert M2.tensors == M.tensors


def test_operator_checks(A):
    arity, power = parse_config("arity"), parse_config("power")
    assert check_crb_operator(A, LinearOperator.zero(3), arity).passed
    assert check_crb_operator(A, LinearOperator.identity(3), power, -1).passed
    assert check_crb_operator(A, E12, arity, 0).passed
    assert not check_crb_operator(A, LinearOperator.identity(3), arity, 0).passed


def test_search_examples(A):
    arity, power = parse_config("arity"), parse_config("power")
    ops = search_rb_operators(A, arity, 0, (-1, 0, 1), max_results=1000)
    assert E12 in ops and len(ops) == 21
    assert LinearOperator.identity(3) in search_rb_operators(A, power, -1, (0, 1), max_results=1000)
    Z = MultilinearAlgebra.zero(2, A.alphabet)
    assert len(search_rb_operators(Z, arity, 0, (-1, 0, 1), max_results=7)) == 7


def test_search_guard(A):
    with pytest.raises(GuardError):
        search_rb_operators(A, parse_config("arity"), 0, range(-5, 6), limit=10**6)


def test_induced_dendriform(A, As):
    B = induce_split_algebra(A, E12, parse_config("arity"), As, weight=0)
    D = builtin("Dend")
    by_part = {g.part: g for g in D.generators}
    assert check_algebra(B.renamed({g.id: by_part[g.part] for g in B.alphabet}), D).passed


def test_induced_tridendriform(A, As):
    power = parse_config("power")
    ops = search_rb_operators(A, power, 1, (0, 1), max_results=50)
    assert ops
    for op in ops:
        B = induce_split_algebra(A, op, power, As)
        assert check_algebra(B, split_presentation(As, power)).passed


def test_induce_preconditions(A, As):
    with pytest.raises(PreconditionError):
        induce_split_algebra(A, LinearOperator.identity(3), parse_config("arity"), As, weight=0)
    with pytest.raises(PreconditionError):
        induce_split_algebra(A, E12, parse_config("power"), As, weight=0)


def test_3lie_family_instance():
    A = three_lie_4()
    L = builtin("3Lie")
    assert check_algebra(A, L).passed
    op = LinearOperator(((-1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))
    arity = parse_config("arity")
    assert check_crb_operator(A, op, arity, 0).passed
    assert not split_operation_table(A, op, arity).is_zero()
    B = induce_split_algebra(A, op, arity, L, weight=0)
    T = builtin("3PreLie")
    by_part = {g.part: g for g in T.generators}
    assert check_algebra(B.renamed({g.id: by_part[g.part] for g in B.alphabet}), T).passed


def test_builtin_algebras():
    assert builtin_algebra("upper3").dim == 3
    assert builtin_algebra("3lie4:1,0,0,1").dim == 4
    with pytest.raises(KeyError):
        builtin_algebra("nope")


# ---------------------------------------------------------------- modules


def test_regular_and_zero_modules(A, As):
    for C in (parse_config("arity"), parse_config("power")):
        assert check_module(A, ModuleData.regular(A, C), C, As).passed
        assert check_module(A, ModuleData.zero(A, 2), C, As).passed


def test_corrupted_module_fails(A, As):
    arity = parse_config("arity")
    M = ModuleData.regular(A, arity).with_entry("mu", (1,), (0, 0), 2, 1)
    rep = check_module(A, M, arity, As)
    assert not rep.passed and rep.failures[0].witness is not None


def test_relative_operators(A, As):
    arity = parse_config("arity")
    R = ModuleData.regular(A, arity)
    assert check_relative_rb(LinearMap(((0,) * 3,) * 3), A, R, arity).passed
    assert check_relative_rb(E12, A, R, arity).passed
    direct, lifted = relative_verdicts(LinearOperator.identity(3), A, R, arity)
    assert not direct.passed and not lifted.passed


def test_regular_module_recovers_induced_algebra(A, As):
    power = parse_config("power")
    op = search_rb_operators(A, power, 1, (-1, 0, 1), max_results=1)[0]
    U = induce_on_module(op, A, ModuleData.regular(A, power), power, As)
    assert U.same_constants(induce_split_algebra(A, op, power, As))


def test_round_trip(A, As):
    arity = parse_config("arity")
    B = induce_split_algebra(A, E12, arity, As, weight=0)
    _, _, rep = canonical_module_from_split(B, As, arity)
    assert rep.passed
    Z = MultilinearAlgebra.zero(3, split_presentation(As, arity).generators)
    _, M, rep = canonical_module_from_split(Z, As, arity)
    assert rep.passed and all(not t for t in M.tensors.values())


def test_round_trip_rejects_non_split_algebra(A, As):
    with pytest.raises(PreconditionError):
        canonical_module_from_split(A, As, parse_config("arity"))


def test_lifted_operator_disagrees_for_nested_parts(As):
    """With nested parts the lifted identity picks up extra terms: the
    identity map on the canonical module of a tridendriform algebra is a
    relative operator, yet its lift is not an operator."""
    A = upper_triangular()
    power = parse_config("power")
    op = next(o for o in search_rb_operators(A, power, 1, (-1, 0, 1), max_results=200)
              if not o.is_zero() and o != LinearOperator.identity(3))
    B = induce_split_algebra(A, op, power, As)
    Astar, M, rep = canonical_module_from_split(B, As, power)
    assert rep.passed
    direct, lifted = relative_verdicts(LinearOperator.identity(3), Astar, M, power)
    assert direct.passed
    rep = check_relative_rb(LinearOperator.identity(3), Astar, M, power)
    assert [c.status for c in rep.checks if "agree" in c.name] == ["SKIP"]


# ---------------------------------------------------------------- syntax


def test_rb_relations(As, arity, power):
    (r,) = rb_relations(As, arity, 0)
    assert len(r) == 3
    (r,) = rb_relations(As, power, 1)
    assert len(r) == 4
    (r,) = rb_relations(As, power, 0)
    assert len(r) == 3


def test_xi_on_corollas(power):
    w = Generator("w", 4)
    t = parse_tree("w(1,2,3,4)", [w])
    for J in power.sets_for(4):
        ((s, _),) = split_tree(t, J, power).items()
        (xt,) = xi(TreePoly.of(s)).trees()
        assert xt.leaves == (1, 2, 3, 4)
        assert count_P(xt) == 4 - len(J)


def test_xi_top_level(As, arity, power):
    mu = As.generator("mu")
    t = parse_tree("mu(mu(1,2),mu(3,4))", [mu])
    for C in (arity, power):
        for J in C.sets_for(4):
            off = sum(1 for c in t.children if not set(J) & set(c.leaves))
            for s, _ in split_tree(t, J, C).items():
                (xt,) = xi(TreePoly.of(s)).trees()
                assert xt.leaves == t.leaves
                assert sum(1 for k in xt.children if not k.is_leaf and k.gen.unary) == off


def test_xi_rejects_unsplit(As):
    mu = As.generator("mu")
    with pytest.raises(XiError):
        xi(TreePoly.of(parse_tree("mu(1,2)", [mu])))
