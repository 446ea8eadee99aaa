"""Finite-dimensional algebras given by exact structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..poly import TreePoly, as_fraction, fraction_str
from ..presentations import OperadPresentation
from ..report import Report
from ..trees import Generator, Tree

GUARD = 10**6

Vec = dict  # sparse vector: coordinate -> nonzero Fraction


class GuardError(ValueError):
    """An exhaustive evaluation would exceed the tuple budget."""


class AlgebraError(ValueError):
    pass


def vec_add(acc: dict, v: Mapping[int, Fraction], c: Fraction = Fraction(1)) -> dict:
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def basis(i: int) -> dict:
    return {i: Fraction(1)}


def dense(v: Mapping[int, Fraction], dim: int) -> list[Fraction]:
    return [Fraction(v.get(i, 0)) for i in range(dim)]


def sparse(values: Sequence) -> dict:
    return {i: as_fraction(x) for i, x in enumerate(values) if as_fraction(x)}


@dataclass(frozen=True)
class LinearMap:
    """A matrix acting on column vectors (``matrix[row][col]``)."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(as_fraction(x) for x in row) for row in self.matrix)
        if not m or not m[0] or any(len(row) != len(m[0]) for row in m):
            raise AlgebraError("matrix must be rectangular and nonempty")
        object.__setattr__(self, "matrix", m)

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0])

    def column(self, j: int) -> dict:
        return {i: row[j] for i, row in enumerate(self.matrix) if row[j]}

    def __call__(self, v: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for j, x in v.items():
            vec_add(out, self.column(j), x)
        return out

    def is_zero(self) -> bool:
        return not any(x for row in self.matrix for x in row)

    def with_entry(self, i: int, j: int, value) -> LinearMap:
        m = [list(row) for row in self.matrix]
        m[i][j] = as_fraction(value)
        return type(self)(tuple(map(tuple, m)))

    def to_json(self) -> dict:
        return {"matrix": [[fraction_str(x) for x in row] for row in self.matrix]}

    @classmethod
    def from_json(cls, obj: Mapping):
        return cls(tuple(tuple(row) for row in obj["matrix"]))

    def __repr__(self):
        rows = "; ".join(" ".join(str(x) for x in row) for row in self.matrix)
        return f"{type(self).__name__}[{rows}]"


@dataclass(frozen=True, repr=False)
class LinearOperator(LinearMap):
    """A square matrix."""

    def __post_init__(self):
        super().__post_init__()
        if self.rows != self.cols:
            raise AlgebraError("operator matrix must be square")

    @property
    def dim(self) -> int:
        return self.rows

    @classmethod
    def zero(cls, dim: int) -> LinearOperator:
        return cls(tuple((0,) * dim for _ in range(dim)))

    @classmethod
    def identity(cls, dim: int) -> LinearOperator:
        return cls(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))


@dataclass
class MultilinearAlgebra:
    """Structure constants: ``structure[g][(i1..in)]`` is the sparse output of
    ``g(e_i1, ..., e_in)``; absent tuples are zero."""

    dim: int
    alphabet: list[Generator]
    structure: dict[str, dict[tuple[int, ...], dict]] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise AlgebraError("dimension must be positive")
        for g in self.alphabet:
            table = self.structure.setdefault(g.id, {})
            for idx, v in table.items():
                if len(idx) != g.arity or any(not 0 <= i < self.dim for i in idx):
                    raise AlgebraError(f"bad input tuple {idx} for {g.id}")
                if any(not 0 <= k < self.dim for k in v):
                    raise AlgebraError(f"output coordinate out of range for {g.id}{idx}")
        extra = set(self.structure) - {g.id for g in self.alphabet}
        if extra:
            raise AlgebraError(f"structure constants for unknown generators {sorted(extra)}")

    # -- access

    def gen(self, gid: str) -> Generator:
        for g in self.alphabet:
            if g.id == gid:
                return g
        raise AlgebraError(f"algebra has no operation {gid!r}")

    def value(self, gid: str, idx: tuple[int, ...]) -> dict:
        return self.structure[gid].get(idx, {})

    def apply(self, gid: str, args: Sequence[Mapping[int, Fraction]]) -> dict:
        table = self.structure[gid]
        out: dict = {}
        for combo in itertools.product(*(a.items() for a in args)):
            out_v = table.get(tuple(k for k, _ in combo))
            if out_v:
                c = Fraction(1)
                for _, x in combo:
                    c *= x
                vec_add(out, out_v, c)
        return out

    def is_zero(self) -> bool:
        return not any(v for t in self.structure.values() for v in t.values())

    def same_constants(self, other: MultilinearAlgebra) -> bool:
        if self.dim != other.dim or {g.id: g.arity for g in self.alphabet} != {g.id: g.arity for g in other.alphabet}:
            return False
        return all(_clean(self.structure[g]) == _clean(other.structure[g]) for g in self.structure)

    def renamed(self, mapping: Mapping[str, Generator]) -> MultilinearAlgebra:
        gens = [mapping.get(g.id, g) for g in self.alphabet]
        st = {mapping[g].id if g in mapping else g: dict(t) for g, t in self.structure.items()}
        return MultilinearAlgebra(self.dim, gens, st)

    # -- construction

    @classmethod
    def from_function(cls, dim: int, alphabet: Sequence[Generator], f) -> MultilinearAlgebra:
        """``f(gid, idx) -> sparse vector`` evaluated on every basis tuple."""
        st = {}
        for g in alphabet:
            table = {}
            for idx in itertools.product(range(dim), repeat=g.arity):
                v = {k: x for k, x in f(g.id, idx).items() if x}
                if v:
                    table[idx] = v
            st[g.id] = table
        return cls(dim, list(alphabet), st)

    @classmethod
    def zero(cls, dim: int, alphabet: Sequence[Generator]) -> MultilinearAlgebra:
        return cls(dim, list(alphabet), {g.id: {} for g in alphabet})

    # -- JSON: nested arrays, innermost list = output coordinates

    def to_json(self) -> dict:
        ops = {}
        for g in self.alphabet:
            ops[g.id] = _nest(self.dim, g.arity, lambda idx, g=g: [fraction_str(x) for x in dense(self.value(g.id, idx), self.dim)])
        return {"dim": self.dim, "ops": ops}

    @classmethod
    def from_json(cls, obj: Mapping, alphabet: Iterable[Generator] | None = None) -> MultilinearAlgebra:
        dim = int(obj["dim"])
        known = {g.id: g for g in alphabet or ()}
        gens, st = [], {}
        for gid, arr in obj["ops"].items():
            arity = _depth(arr) - 1
            g = known.get(gid) or Generator(gid, arity)
            if g.arity != arity:
                raise AlgebraError(f"operation {gid} has arity {g.arity} but the array has depth {arity}")
            gens.append(g)
            st[gid] = {idx: sparse(vals) for idx, vals in _unnest(arr, arity, dim) if any(as_fraction(x) for x in vals)}
        return cls(dim, gens, st)


def _clean(table):
    return {k: v for k, v in table.items() if v}


def _nest(dim: int, depth: int, leaf, prefix=()):
    if depth == 0:
        return leaf(prefix)
    return [_nest(dim, depth - 1, leaf, prefix + (i,)) for i in range(dim)]


def _depth(arr) -> int:
    d = 0
    while isinstance(arr, list):
        if not arr:
            raise AlgebraError("empty array in structure constants")
        arr = arr[0]
        d += 1
    return d


def _unnest(arr, depth: int, dim: int, prefix=()):
    if len(arr) != dim:
        raise AlgebraError(f"expected {dim} entries at index {prefix}, got {len(arr)}")
    if depth == 0:
        yield prefix, arr
        return
    for i, sub in enumerate(arr):
        yield from _unnest(sub, depth - 1, dim, prefix + (i,))


# ---------------------------------------------------------------- evaluation


class Evaluator:
    """Bottom-up evaluation of trees on basis tuples with subtree memoization."""

    def __init__(self, A: MultilinearAlgebra, operator: LinearOperator | None = None):
        self.A = A
        self.op = operator
        self._memo: dict = {}

    def tree(self, t: Tree, at: Mapping[int, int]) -> dict:
        if t.is_leaf:
            return basis(at[t.label])
        key = (t, tuple(at[x] for x in t.leaves))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        kids = [self.tree(c, at) for c in t.children]
        if t.gen.unary:
            if self.op is None:
                raise AlgebraError(f"unary symbol {t.gen.id!r} is not bound to an operator")
            v = self.op(kids[0])
        else:
            if t.gen.id not in self.A.structure:
                raise AlgebraError(f"operation {t.gen.id!r} is not defined on the algebra")
            v = self.A.apply(t.gen.id, kids)
        if len(self._memo) > 2_000_000:
            self._memo.clear()
        self._memo[key] = v
        return v

    def poly(self, p: TreePoly, at: Mapping[int, int]) -> dict:
        out: dict = {}
        for t, c in p.items():
            vec_add(out, self.tree(t, at), c)
        return out


def eval_tree(A: MultilinearAlgebra, p: TreePoly | Tree, assignment: Mapping[int, Sequence],
              operator: LinearOperator | None = None) -> list[Fraction]:
    """Evaluate ``p`` with leaf ``k`` bound to the dense vector ``assignment[k]``."""
    if isinstance(p, Tree):
        p = TreePoly.of(p)
    vecs = {k: sparse(v) for k, v in assignment.items()}

    def ev(t: Tree) -> dict:
        if t.is_leaf:
            if t.label not in vecs:
                raise AlgebraError(f"leaf {t.label} has no assigned vector")
            return vecs[t.label]
        kids = [ev(c) for c in t.children]
        if t.gen.unary:
            if operator is None:
                raise AlgebraError(f"unary symbol {t.gen.id!r} is not bound to an operator")
            return operator(kids[0])
        if t.gen.id not in A.structure:
            raise AlgebraError(f"operation {t.gen.id!r} is not defined on the algebra")
        return A.apply(t.gen.id, kids)

    out: dict = {}
    for t, c in p.items():
        vec_add(out, ev(t), c)
    return dense(out, A.dim)


def guard(dim: int, n: int, what: str = "evaluation"):
    if dim ** n > GUARD:
        raise GuardError(f"{what} needs {dim}^{n} = {dim ** n} basis tuples, above the limit {GUARD}")


def _witness_vec(v, dim):
    return [fraction_str(x) for x in dense(v, dim)]


def check_algebra(A: MultilinearAlgebra, P: OperadPresentation) -> Report:
    """Exhaustive check on basis tuples: action tables (symmetric case) and
    every relation.  Relabeled relations need no separate pass because all
    basis tuples are tried."""
    rep = Report(f"{P.name}-algebra check (dim {A.dim})")
    missing = [g.id for g in P.generators if g.id not in A.structure or A.gen(g.id).arity != g.arity]
    if missing:
        rep.add("operations present", False, f"missing or wrong arity: {missing}")
        return rep
    for r in P.relations:
        guard(A.dim, r.leaf_count(), f"relation check for {P.name}")
    ev = Evaluator(A)
    if P.symmetric:
        bad = None
        for g in P.generators:
            for i, (h, s) in sorted(P.actions.row(g).items()):
                for idx in itertools.product(range(A.dim), repeat=g.arity):
                    sw = list(idx)
                    sw[i - 1], sw[i] = sw[i], sw[i - 1]
                    lhs = A.value(g.id, tuple(sw))
                    rhs = {k: s * x for k, x in A.value(h.id, idx).items()}
                    if lhs != rhs:
                        bad = {"generator": g.id, "transposition": [i, i + 1], "tuple": list(idx)}
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("action tables hold", bad is None, "symmetry of an operation fails" if bad else "", witness=bad)
    for k, r in enumerate(P.relations, 1):
        n = r.leaf_count()
        bad = None
        for idx in itertools.product(range(A.dim), repeat=n):
            v = ev.poly(r, dict(zip(range(1, n + 1), idx)))
            if v:
                bad = {"tuple": list(idx), "value": _witness_vec(v, A.dim)}
                break
        rep.add(f"relation {k}", bad is None, f"{A.dim ** n} basis tuples" if bad is None else "nonzero value",
                witness=bad)
    return rep


__all__ = [
    "GUARD",
    "GuardError",
    "AlgebraError",
    "LinearMap",
    "LinearOperator",
    "MultilinearAlgebra",
    "Evaluator",
    "eval_tree",
    "check_algebra",
    "guard",
    "vec_add",
    "basis",
    "dense",
    "sparse",
]
