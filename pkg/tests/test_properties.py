"""Randomized properties."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from operad_forge.acceptance import random_tree
from operad_forge.catalog import builtin
from operad_forge.configurations import parse_config, validate_closure
from operad_forge.linalg import RowSpace
from operad_forge.poly import TreePoly, normal_form, relabel_nf
from operad_forge.rota_baxter.algebra import LinearOperator, MultilinearAlgebra
from operad_forge.trees import Permutation

SYMMETRIC = ["Lie", "PreLie", "3Lie", "GenPreLie3", "PostLie"]


def _tree(seed, name):
    rng = random.Random(seed)
    P = builtin(name)
    gens = [g for g in P.generators if not g.unary]
    k = gens[0].arity
    n = rng.choice([m for m in range(2, 8) if (m - 1) % (k - 1) == 0])
    return P, random_tree(rng, gens, n)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(SYMMETRIC))
def test_normal_form_idempotent(seed, name):
    P, t = _tree(seed, name)
    p = normal_form(TreePoly.of(t), P.actions)
    assert normal_form(p, P.actions) == p


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(SYMMETRIC))
def test_normal_form_respects_relabelings(seed, name):
    P, t = _tree(seed, name)
    n = len(t.leaves)
    rng = random.Random(seed + 1)
    s = Permutation(tuple(rng.sample(range(1, n + 1), n)))
    p = TreePoly.of(t)
    assert relabel_nf(p, s.images, P.actions) == normal_form(p.relabel(s), P.actions)
    # relabel, then undo: back to the normal form of p
    back = relabel_nf(relabel_nf(p, s.images, P.actions), s.inverse().images, P.actions)
    assert back == normal_form(p, P.actions)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(0, 10**9))
def test_poly_linearity(coeffs, seed):
    P, t = _tree(seed, "3Lie")
    _, u = _tree(seed + 7, "3Lie")
    p, q = TreePoly.of(t, coeffs[0]), TreePoly.of(u, coeffs[1])
    assert (p + q) - q == p
    assert (p + q).scale(coeffs[2]) == p.scale(coeffs[2]) + q.scale(coeffs[2])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_rowspace_rank_bounds(seed):
    rng = random.Random(seed)
    P = builtin("As")
    polys = []
    for _ in range(rng.randint(1, 6)):
        t = random_tree(rng, P.generators, 4)
        polys.append(TreePoly.of(t, rng.randint(-2, 2)))
    R = RowSpace(polys)
    distinct = {t for p in polys for t in p.trees()}
    assert R.rank <= min(len(polys), len(distinct))
    assert all(R.contains(p) for p in polys)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["arity", "power", "trivial", "capped:1", "capped:2", "capped:3"]))
def test_named_configs_closed(spec):
    assert validate_closure(parse_config(spec, n_max=5)).passed


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=9, max_size=9))
def test_algebra_json_round_trip(dim, vals):
    mu = builtin("As").generator("mu")
    A = MultilinearAlgebra.from_function(dim, [mu], lambda g, idx: {
        k: vals[(sum(idx) + k) % len(vals)] for k in range(dim)})
    assert MultilinearAlgebra.from_json(A.to_json(), [mu]).same_constants(A)
    op = LinearOperator(tuple(tuple(vals[(i * dim + j) % 9] for j in range(dim)) for i in range(dim)))
    assert LinearOperator.from_json(op.to_json()) == op
    assert op(dict(enumerate([Fraction(1)] * dim))) == {
        i: s for i in range(dim) if (s := sum(op.matrix[i]))}
