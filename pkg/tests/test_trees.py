import pytest

from operad_forge.poly import Actions, TreePoly, combine, normal_form, parse_poly, substitute_generators
from operad_forge.catalog import builtin
from operad_forge.trees import (
    Generator,
    Leaf,
    Permutation,
    TreeError,
    enumerate_reduced_trees,
    graft,
    parse_tree,
    relabel_leaves,
)

mu = Generator("mu", 2)
w = Generator("w", 3)


def test_graft_corolla():
    t = graft(mu, [Leaf(1), Leaf(2)])
    assert t.leaves == (1, 2) and repr(t) == "mu(1, 2)"


def test_graft_jacobi_shape():
    t = graft(w, [Leaf(1), graft(w, [Leaf(2), Leaf(3), Leaf(4)]), Leaf(5)])
    assert t.leaves == (1, 2, 3, 4, 5)
    assert t == parse_tree("w(1,w(2,3,4),5)", [w])


def test_graft_duplicate_label():
    with pytest.raises(TreeError):
        graft(mu, [Leaf(1), Leaf(1)])


def test_graft_wrong_arity():
    with pytest.raises(TreeError):
        graft(mu, [Leaf(1)])


@pytest.mark.parametrize("n, arities, count", [(1, {2}, 1), (5, {2}, 14), (4, {2, 3, 4}, 11)])
def test_reduced_tree_counts(n, arities, count):
    assert len(enumerate_reduced_trees(n, arities)) == count


def test_relabel():
    t = parse_tree("mu(1,2)", [mu])
    assert relabel_leaves(t, Permutation.identity(2)) == t
    assert relabel_leaves(t, Permutation((2, 1))) == parse_tree("mu(2,1)", [mu])


def test_permutation_sign_and_compose():
    s = Permutation((2, 3, 1))
    assert s.sign() == 1
    assert Permutation((2, 1, 3)).sign() == -1
    assert s.compose(s.inverse()) == Permutation.identity(3)


def test_normal_form_nonsymmetric_identity():
    p = parse_poly("mu(2,1)", [mu])
    assert normal_form(p, None) == p


def test_normal_form_skew():
    L = builtin("3Lie")
    br = L.generator("br")
    p = parse_poly("br(2,1,3)", [br])
    assert normal_form(p, L.actions) == parse_poly("-br(1,2,3)", [br])


def test_normal_form_split_generator():
    from operad_forge.splitting import split_presentation
    from operad_forge.configurations import parse_config

    S = split_presentation(builtin("3Lie"), parse_config("arity"))
    alpha = S.alphabet
    p = parse_poly("br[2](2,1,3)", alpha)
    assert S.nf(p) == parse_poly("-br[1](1,2,3)", alpha)


def test_combine():
    p = parse_poly("mu(mu(1,2),3)", [mu])
    assert combine([(1, p), (-1, p)]).is_zero()
    assert combine([("1/2", p), ("1/2", p)]) == p


def test_substitute():
    p = parse_poly("mu(mu(1,2),3) - mu(1,mu(2,3))", [mu])
    ident = {"mu": TreePoly.of(graft(mu, [Leaf(1), Leaf(2)]))}
    assert substitute_generators(p, ident) == p
    assert substitute_generators(p, {"mu": TreePoly()}).is_zero()


def test_substitute_into_split_sum(As, arity):
    from operad_forge.splitting import split_poly, split_presentation

    S = split_presentation(As, arity)
    a = S.alphabet
    star = parse_poly("mu[1](1,2) + mu[2](1,2)", a)
    (r,) = As.relations
    img = substitute_generators(r, {"mu": star})
    assert len(img) == 8
    total = TreePoly()
    for J in [(1,), (2,), (3,)]:
        total = total + split_poly(r, J, arity)
    assert img == total


def test_actions_coxeter_check():
    ok = Actions({w: {1: (w, -1), 2: (w, -1)}})
    assert ok.check() == []
    bad = Actions({w: {1: (w, -1), 2: (w, 1)}})
    assert bad.check()


def test_parse_rational_coefficients():
    p = parse_poly("2/3*mu(1,2) - mu(1,2)", [mu])
    assert str(p.coeff(parse_tree("mu(1,2)", [mu]))) == "-1/3"
