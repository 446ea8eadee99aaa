"""Configuration Rota-Baxter operators: verification, search and the induced
split structure."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Iterable

from ..configurations import Configuration
from ..poly import as_fraction, fraction_str
from ..presentations import OperadPresentation
from ..report import Report
from ..splitting import split_generator, split_presentation
from .algebra import (
    GUARD,
    GuardError,
    LinearOperator,
    MultilinearAlgebra,
    basis,
    check_algebra,
    dense,
    guard,
    vec_add,
)


class PreconditionError(ValueError):
    pass


class TheoremViolation(RuntimeError):
    """A structure that must satisfy the split relations does not."""


def _rb_sides(A: MultilinearAlgebra, g, idx, Pcols, parts, lam):
    """Both sides of the identity on one basis tuple; ``Pcols[j]`` is ``P(e_j)``.
    Returns ``(lhs, inner)`` with the right-hand side equal to ``P(inner)``."""
    lhs = A.apply(g.id, [Pcols[i] for i in idx])
    inner: dict = {}
    for I, c in parts:
        if not c:
            continue
        args = [basis(i) if k in I else Pcols[i] for k, i in enumerate(idx, 1)]
        vec_add(inner, A.apply(g.id, args), c)
    return lhs, inner


def _parts(C: Configuration, n: int, lam: Fraction):
    return [(frozenset(I), lam ** (len(I) - 1)) for I in C.sets_for(n)]


def check_crb_operator(A: MultilinearAlgebra, op: LinearOperator, C: Configuration, weight=1) -> Report:
    """``w(Px1,...,Pxn) = P(sum_I weight^(|I|-1) w(x with P off I))`` for every
    operation on every basis tuple."""
    lam = as_fraction(weight)
    if op.dim != A.dim:
        raise PreconditionError(f"operator dimension {op.dim} differs from the algebra dimension {A.dim}")
    rep = Report(f"{C.name} Rota-Baxter operator of weight {lam}")
    cols = [op.column(j) for j in range(A.dim)]
    for g in A.alphabet:
        guard(A.dim, g.arity, "operator check")
        parts = _parts(C, g.arity, lam)
        bad = None
        for idx in itertools.product(range(A.dim), repeat=g.arity):
            lhs, inner = _rb_sides(A, g, idx, cols, parts, lam)
            rhs = op(inner)
            if lhs != rhs:
                bad = {"operation": g.id, "tuple": list(idx),
                       "lhs": [fraction_str(x) for x in dense(lhs, A.dim)],
                       "rhs": [fraction_str(x) for x in dense(rhs, A.dim)]}
                break
        rep.add(f"identity for {g.id}", bad is None, f"{A.dim ** g.arity} basis tuples", witness=bad)
    return rep


# ---------------------------------------------------------------- search


def search_rb_operators(A: MultilinearAlgebra, C: Configuration, weight=0, entries: Iterable = (-1, 0, 1),
                        max_results: int = 100, max_nonzeros: int | None = None,
                        limit: int = 10**8) -> list[LinearOperator]:
    """Exhaustive search over matrices with entries in ``entries``, filled
    column by column; a basis tuple is tested as soon as every column it
    needs is fixed, so failing prefixes are cut early.  Results come in
    lexicographic order of the columns and are re-verified."""
    lam = as_fraction(weight)
    vals = sorted({as_fraction(x) for x in entries})
    d = A.dim
    per_col = [c for c in itertools.product(vals, repeat=d)
               if max_nonzeros is None or sum(1 for x in c if x) <= max_nonzeros]
    if max_nonzeros is None:
        space = len(vals) ** (d * d)
    else:
        nz = len([v for v in vals if v])
        space = sum(comb(d * d, k) * nz ** k for k in range(0, max_nonzeros + 1))
    if space > limit:
        raise GuardError(f"search space {space} exceeds the limit {limit}")
    for g in A.alphabet:
        guard(d, g.arity, "operator search")
    gens = [(g, _parts(C, g.arity, lam)) for g in A.alphabet]
    # tuples grouped by their largest index so each depth sees new tuples only
    by_depth = [[] for _ in range(d)]
    for g, parts in gens:
        for idx in itertools.product(range(d), repeat=g.arity):
            by_depth[max(idx)].append((g, idx, parts))
    results: list[LinearOperator] = []
    cols: list[dict] = []

    def passes(item) -> bool | None:
        g, idx, parts = item
        lhs, inner = _rb_sides(A, g, idx, cols, parts, lam)
        if any(k >= len(cols) for k in inner):
            return None
        rhs: dict = {}
        for j, x in inner.items():
            vec_add(rhs, cols[j], x)
        return lhs == rhs

    def rec(j: int, pending: list, used: int):
        if len(results) >= max_results:
            return
        if j == d:
            results.append(LinearOperator(tuple(tuple(c[i] for c in colvals) for i in range(d))))
            return
        for c in per_col:
            nz = sum(1 for x in c if x)
            if max_nonzeros is not None and used + nz > max_nonzeros:
                continue
            cols.append({i: x for i, x in enumerate(c) if x})
            colvals.append(c)
            later, ok = [], True
            for item in itertools.chain(pending, by_depth[j]):
                r = passes(item)
                if r is None:
                    later.append(item)
                elif not r:
                    ok = False
                    break
            if ok:
                rec(j + 1, later, used + nz)
            cols.pop()
            colvals.pop()
            if len(results) >= max_results:
                return

    colvals: list[tuple] = []
    rec(0, [], 0)
    verified = [op for op in results if check_crb_operator(A, op, C, lam).passed]
    if len(verified) != len(results):
        raise TheoremViolation("search returned an operator that fails re-verification")
    return verified


# ---------------------------------------------------------------- induced split structure


def split_operation_table(A: MultilinearAlgebra, op: LinearOperator, C: Configuration) -> MultilinearAlgebra:
    """``(w, e_I)(x1..xn) = w(x with P applied at every position off I)``."""
    cols = [op.column(j) for j in range(A.dim)]
    gens, st = [], {}
    for g in A.alphabet:
        for I in C.sets_for(g.arity):
            s = split_generator(g, I)
            keep = set(I)
            table = {}
            for idx in itertools.product(range(A.dim), repeat=g.arity):
                v = A.apply(g.id, [basis(i) if k in keep else cols[i] for k, i in enumerate(idx, 1)])
                if v:
                    table[idx] = v
            gens.append(s)
            st[s.id] = table
    return MultilinearAlgebra(A.dim, gens, st)


def induce_split_algebra(A: MultilinearAlgebra, op: LinearOperator, C: Configuration,
                         presentation: OperadPresentation | None = None, weight=1) -> MultilinearAlgebra:
    """The split algebra induced by a Rota-Baxter operator.  With a
    ``presentation`` the precondition (operator identity, algebra relations)
    is checked first and the result is verified against the split
    presentation; a failure there raises :class:`TheoremViolation`."""
    lam = as_fraction(weight)
    if C.kind != "arity" and lam != 1:
        raise PreconditionError("outside the arity configuration the operator must have weight one")
    pre = check_crb_operator(A, op, C, lam)
    if not pre.passed:
        raise PreconditionError("operator fails the Rota-Baxter identity:\n" + pre.to_text())
    if presentation is not None:
        base = check_algebra(A, presentation)
        if not base.passed:
            raise PreconditionError(f"algebra fails the {presentation.name} relations:\n" + base.to_text())
    B = split_operation_table(A, op, C)
    if presentation is not None:
        rep = check_algebra(B, split_presentation(presentation, C))
        if not rep.passed:
            raise TheoremViolation("induced split algebra fails the split relations:\n" + rep.to_text())
    return B


__all__ = [
    "PreconditionError",
    "TheoremViolation",
    "check_crb_operator",
    "search_rb_operators",
    "split_operation_table",
    "induce_split_algebra",
    "GUARD",
]
