"""Relations over the generators extended by a unary operator symbol ``P``."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..configurations import Configuration
from ..poly import TreePoly, as_fraction
from ..presentations import OperadPresentation
from ..trees import Generator, Leaf, Tree, Vertex

RB_OPERATOR = Generator("P", 1, unary=True)


class XiError(ValueError):
    pass


def rb_alphabet(P: OperadPresentation) -> list[Generator]:
    if any(g.id == RB_OPERATOR.id for g in P.generators):
        raise XiError(f"{P.name} already uses the symbol {RB_OPERATOR.id!r}")
    return [g for g in P.generators if not g.unary] + [RB_OPERATOR]


def apply_P(t: Tree) -> Tree:
    return Vertex(RB_OPERATOR, [t])


def _with_P_off(g: Generator, part: Iterable[int], kids) -> Tree:
    keep = set(part)
    return Vertex(g, [c if i in keep else apply_P(c) for i, c in enumerate(kids, 1)])


def rb_relations(P: OperadPresentation, C: Configuration, weight=1) -> list[TreePoly]:
    """One relation per generator ``w``:
    ``w(P1,...,Pn) - sum_I weight^(|I|-1) P(w(args with P off I))``."""
    lam = as_fraction(weight)
    rb_alphabet(P)
    out = []
    for g in P.generators:
        if g.unary:
            continue
        n = g.arity
        leaves = [Leaf(i) for i in range(1, n + 1)]
        rel = {Vertex(g, [apply_P(x) for x in leaves]): Fraction(1)}
        for I in C.sets_for(n):
            c = lam ** (len(I) - 1)
            if c:
                t = apply_P(_with_P_off(g, I, leaves))
                rel[t] = rel.get(t, 0) - c
        out.append(TreePoly(rel))
    return out


def xi_tree(t: Tree) -> Tree:
    if t.is_leaf:
        return t
    g = t.gen
    kids = [xi_tree(c) for c in t.children]
    if g.unary:
        return Vertex(g, kids)
    if g.base is None or not g.part:
        raise XiError(f"generator {g.id!r} is not a split generator")
    return _with_P_off(Generator(g.base, g.arity), g.part, kids)


def xi(p: TreePoly) -> TreePoly:
    """Replace each split vertex ``(w, e_I)`` by ``w`` with ``P`` above every
    child position outside ``I``."""
    return p.map_trees(xi_tree)


def count_P(t: Tree) -> int:
    if t.is_leaf:
        return 0
    return (t.gen.id == RB_OPERATOR.id) + sum(count_P(c) for c in t.children)


__all__ = ["RB_OPERATOR", "XiError", "rb_alphabet", "rb_relations", "xi", "xi_tree", "apply_P", "count_P"]
