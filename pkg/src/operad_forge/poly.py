"""Exact rational tree polynomials, signed symmetric-group actions and
normal forms."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .trees import (
    Generator,
    Leaf,
    Permutation,
    Tree,
    TreeError,
    Vertex,
    generators_of,
    parse_tree,
    relabel_leaves,
    tree_from_json,
    tree_to_json,
    _Parser,
    _relabel,
)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class TreePoly:
    """Finite formal linear combination of trees with rational coefficients.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Tree, Fraction] | Iterable[tuple[Fraction, Tree]] = ()):
        acc: dict[Tree, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((t, c) for c, t in terms)
        for t, c in items:
            c = as_fraction(c)
            if c:
                v = acc.get(t, 0) + c
                if v:
                    acc[t] = v
                else:
                    acc.pop(t, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> TreePoly:
        """Trusted constructor: ``terms`` holds nonzero Fractions only."""
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def of(cls, t: Tree, c=1) -> TreePoly:
        return cls({t: as_fraction(c)})

    @classmethod
    def zero(cls) -> TreePoly:
        return cls()

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Tree, Fraction]]:
        return iter(self.items())

    def items(self) -> list[tuple[Tree, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].key)

    def trees(self) -> list[Tree]:
        return [t for t, _ in self.items()]

    def coeff(self, t: Tree) -> Fraction:
        return self._terms.get(t, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, TreePoly) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: TreePoly) -> TreePoly:
        acc = dict(self._terms)
        for t, c in other._terms.items():
            acc[t] = acc.get(t, 0) + c
        return TreePoly(acc)

    def __neg__(self) -> TreePoly:
        return TreePoly({t: -c for t, c in self._terms.items()})

    def __sub__(self, other: TreePoly) -> TreePoly:
        return self + (-other)

    def scale(self, c) -> TreePoly:
        c = as_fraction(c)
        return TreePoly({t: c * v for t, v in self._terms.items()})

    __rmul__ = scale

    def map_trees(self, f: Callable[[Tree], Tree]) -> TreePoly:
        return TreePoly([(c, f(t)) for t, c in self._terms.items()])

    def relabel(self, sigma) -> TreePoly:
        return self.map_trees(lambda t: relabel_leaves(t, sigma))

    def generators(self) -> set[Generator]:
        out: set[Generator] = set()
        for t in self._terms:
            out |= generators_of(t)
        return out

    def leaf_sets(self) -> set[frozenset[int]]:
        return {frozenset(t.leaves) for t in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.leaf_sets()) <= 1

    def leaf_count(self) -> int | None:
        for t in self._terms:
            return len(t.leaves)
        return None

    def leading(self) -> tuple[Tree, Fraction]:
        return self.items()[0]

    def monic(self) -> TreePoly:
        """Scaled so that the smallest term has coefficient 1."""
        if not self:
            return self
        return self.scale(1 / self.leading()[1])

    def __repr__(self):
        if not self:
            return "0"
        parts = []
        for t, c in self.items():
            if c == 1:
                parts.append(f"+ {t!r}")
            elif c == -1:
                parts.append(f"- {t!r}")
            elif c < 0:
                parts.append(f"- {-c}*{t!r}")
            else:
                parts.append(f"+ {c}*{t!r}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def combine(terms: Iterable[tuple[object, TreePoly]]) -> TreePoly:
    acc: dict[Tree, Fraction] = {}
    for c, p in terms:
        c = as_fraction(c)
        if not c:
            continue
        for t, v in p._terms.items():
            acc[t] = acc.get(t, 0) + c * v
    return TreePoly(acc)


def parse_poly(text: str, alphabet) -> TreePoly:
    """Parse ``mu(mu(1,2),3) - 2/3*mu(1,mu(2,3))``."""
    if not isinstance(alphabet, Mapping):
        alphabet = {g.id: g for g in alphabet}
    return TreePoly(_Parser(text, alphabet).poly())


def corolla(g: Generator) -> Tree:
    return Vertex(g, [Leaf(i) for i in range(1, g.arity + 1)])


# ---------------------------------------------------------------- substitution


def substitute_generators(p: TreePoly, gmap: Mapping[str, TreePoly], keep_missing: bool = False) -> TreePoly:
    """Replace every vertex ``g`` by ``gmap[g.id]``, grafting the children into
    its placeholder leaves ``1..arity``; multilinear expansion."""
    cache: dict[Tree, TreePoly] = {}

    def sub(t: Tree) -> TreePoly:
        if t.is_leaf:
            return TreePoly.of(t)
        hit = cache.get(t)
        if hit is not None:
            return hit
        kids = [sub(c) for c in t.children]
        img = gmap.get(t.gen.id)
        if img is None:
            if not keep_missing:
                raise TreeError(f"generator {t.gen.id!r} missing from substitution map")
            img = TreePoly.of(corolla(t.gen))
        out: dict[Tree, Fraction] = {}
        for shape, c in img._terms.items():
            if set(shape.leaves) != set(range(1, t.gen.arity + 1)):
                raise TreeError(f"image of {t.gen.id!r} must use placeholder leaves 1..{t.gen.arity}")
            for kt, kc in _graft_products(shape, kids):
                out[kt] = out.get(kt, 0) + c * kc
        res = TreePoly(out)
        cache[t] = res
        return res

    return combine((c, sub(t)) for t, c in p._terms.items())


def _graft_products(shape: Tree, kids: Sequence[TreePoly]) -> Iterator[tuple[Tree, Fraction]]:
    if shape.is_leaf:
        yield from ((t, c) for t, c in kids[shape.label - 1]._terms.items())
        return
    parts = [list(_graft_products(c, kids)) for c in shape.children]

    def rec(i, chosen, coef):
        if i == len(parts):
            yield Vertex(shape.gen, chosen), coef
            return
        for t, c in parts[i]:
            yield from rec(i + 1, chosen + [t], coef * c)

    yield from rec(0, [], Fraction(1))


def rename_generators(p: TreePoly, mapping: Mapping[str, Generator]) -> TreePoly:
    def ren(t: Tree) -> Tree:
        if t.is_leaf:
            return t
        g = mapping.get(t.gen.id, t.gen)
        return Vertex(g, [ren(c) for c in t.children])

    return p.map_trees(ren)


# ---------------------------------------------------------------- actions


class ActionError(ValueError):
    pass


class Actions:
    """Signed monomial actions of adjacent transpositions on generators.

    ``table[g][i] = (h, s)`` means swapping argument positions ``i`` and
    ``i+1`` of ``g`` gives ``s`` times ``h``:
    ``g(c_1,..,c_{i+1},c_i,..) = s * h(c_1,..,c_i,c_{i+1},..)``.
    """

    def __init__(self, table: Mapping[Generator, Mapping[int, tuple[Generator, int]]]):
        self.table: dict[str, dict[int, tuple[Generator, int]]] = {}
        self.gens: dict[str, Generator] = {}
        for g, row in table.items():
            self.gens[g.id] = g
            self.table[g.id] = {int(i): (h, int(s)) for i, (h, s) in row.items()}
        self._nf_cache: dict[Tree, tuple[int, Tree]] = {}

    def __contains__(self, g: Generator) -> bool:
        return g.id in self.table

    def row(self, g: Generator) -> dict[int, tuple[Generator, int]]:
        return self.table[g.id]

    def swap(self, g: Generator, i: int) -> tuple[Generator, int]:
        try:
            return self.table[g.id][i]
        except KeyError:
            raise ActionError(f"no action of transposition ({i},{i + 1}) on {g.id!r}") from None

    def merged(self, other: Actions) -> Actions:
        t = {self.gens[k]: v for k, v in self.table.items()}
        t.update({other.gens[k]: v for k, v in other.table.items()})
        return Actions(t)

    def word(self, g: Generator, word: Sequence[int]) -> tuple[Generator, int]:
        """Apply the transpositions ``s_{word[0]}, s_{word[1]}, ...`` in turn."""
        sign = 1
        for i in word:
            g, s = self.swap(g, i)
            sign *= s
        return g, sign

    def check(self) -> list[str]:
        """Check totality and the Coxeter relations of S_n.

        The adjacent transpositions satisfy s_i^2 = 1, (s_i s_{i+1})^3 = 1
        and (s_i s_j)^2 = 1 for |i-j| >= 2; these relations present S_n, so a
        signed monomial assignment satisfying them on every generator defines
        a well-defined action of all of S_n.
        """
        problems = []
        for gid, row in self.table.items():
            g = self.gens[gid]
            n = g.arity
            missing = [i for i in range(1, n) if i not in row]
            if missing:
                problems.append(f"{gid}: missing transpositions {missing}")
                continue
            for i, (h, s) in row.items():
                if h.arity != n:
                    problems.append(f"{gid}: target {h.id} of ({i},{i+1}) has arity {h.arity}")
                if h.id not in self.table:
                    problems.append(f"{gid}: target {h.id} has no action table")
                if s not in (1, -1):
                    problems.append(f"{gid}: sign {s} not +-1")
        if problems:
            return problems
        for gid in self.table:
            g = self.gens[gid]
            n = g.arity
            words = []
            for i in range(1, n):
                words.append((i, i))
                if i + 1 < n:
                    words.append((i, i + 1) * 3)
                for j in range(i + 2, n):
                    words.append((i, j) * 2)
            for w in words:
                h, s = self.word(g, w)
                if h.id != gid or s != 1:
                    problems.append(f"{gid}: relation word {list(w)} acts as {s:+d}*{h.id}")
        return problems

    def act(self, g: Generator, sigma: Permutation) -> tuple[Generator, int]:
        """``(h, s)`` with ``g(c_{sigma(1)},...,c_{sigma(n)}) = s*h(c_1,...,c_n)``."""
        # bubble-sort the argument order back to the identity
        order = list(sigma.images)
        sign = 1
        changed = True
        while changed:
            changed = False
            for i in range(len(order) - 1):
                if order[i] > order[i + 1]:
                    order[i], order[i + 1] = order[i + 1], order[i]
                    g, s = self.swap(g, i + 1)
                    sign *= s
                    changed = True
        return g, sign

    def orbit_closure(self, g: Generator, image: TreePoly) -> dict[str, TreePoly]:
        """Extend ``g -> image`` equivariantly to every generator reachable
        from ``g`` by the action: ``h(c) = s * g(c with i,i+1 swapped)``."""
        out = {g.id: image}
        queue = deque([g])
        while queue:
            cur = queue.popleft()
            for i, (h, s) in self.table[cur.id].items():
                swap = list(range(1, cur.arity + 1))
                swap[i - 1], swap[i] = swap[i], swap[i - 1]
                img = out[cur.id].relabel(Permutation(tuple(swap))).scale(s)
                if h.id in out:
                    if out[h.id] != img:
                        raise ActionError(f"image of {g.id} is not compatible with the action at {cur.id} ({i},{i + 1})")
                    continue
                out[h.id] = img
                queue.append(h)
        return out

    def to_json(self) -> dict:
        return {
            gid: [
                {"transposition": [i, i + 1], "target": h.id, "sign": s}
                for i, (h, s) in sorted(row.items())
            ]
            for gid, row in self.table.items()
        }

    # -- normal form

    def nf_relabeled(self, t: Tree, images: Sequence[int]) -> tuple[int, Tree]:
        """Normal form of ``t`` with leaf ``l`` renamed ``images[l-1]``."""
        if t.is_leaf:
            return 1, Leaf(images[t.label - 1])
        sign = 1
        kids = []
        for c in t.children:
            s, nc = self.nf_relabeled(c, images)
            sign *= s
            kids.append(nc)
        g = t.gen
        n = len(kids)
        for end in range(n - 1, 0, -1):
            for i in range(end):
                if kids[i].min_leaf > kids[i + 1].min_leaf:
                    kids[i], kids[i + 1] = kids[i + 1], kids[i]
                    g, s = self.swap(g, i + 1)
                    sign *= s
        return sign, Vertex(g, kids)

    def nf_tree(self, t: Tree) -> tuple[int, Tree]:
        if t.is_leaf:
            return 1, t
        hit = self._nf_cache.get(t)
        if hit is not None:
            return hit
        sign = 1
        kids = []
        for c in t.children:
            s, nc = self.nf_tree(c)
            sign *= s
            kids.append(nc)
        g = t.gen
        if g.id not in self.table:
            raise ActionError(f"generator {g.id!r} has no action table")
        n = len(kids)
        for end in range(n - 1, 0, -1):
            for i in range(end):
                if kids[i].min_leaf > kids[i + 1].min_leaf:
                    kids[i], kids[i + 1] = kids[i + 1], kids[i]
                    g, s = self.swap(g, i + 1)
                    sign *= s
        res = (sign, Vertex(g, kids))
        if len(self._nf_cache) > 500_000:
            self._nf_cache.clear()
        self._nf_cache[t] = res
        return res


def relabel_nf(p: TreePoly, images: Sequence[int], actions: Actions | None) -> TreePoly:
    """``normal_form(p.relabel(sigma), actions)`` in one pass, with
    ``images[i-1] = sigma(i)``."""
    acc: dict[Tree, Fraction] = {}
    for t, c in p._terms.items():
        if actions is None:
            s, nt = 1, _relabel(t, images, 1)
        else:
            s, nt = actions.nf_relabeled(t, images)
        v = acc.get(nt, 0) + (c if s > 0 else -c)
        if v:
            acc[nt] = v
        else:
            acc.pop(nt, None)
    return TreePoly._raw(acc)


def normal_form(p: TreePoly, actions: Actions | None) -> TreePoly:
    """Canonical representative: identity without actions; otherwise children
    sorted by minimum leaf, signs accumulated bottom-up."""
    if actions is None:
        return p
    acc: dict[Tree, Fraction] = {}
    for t, c in p._terms.items():
        s, nt = actions.nf_tree(t)
        acc[nt] = acc.get(nt, 0) + s * c
    return TreePoly(acc)


# ---------------------------------------------------------------- JSON


def poly_to_json(p: TreePoly) -> list:
    return [{"coeff": fraction_str(c), "tree": tree_to_json(t)} for t, c in p.items()]


def poly_from_json(obj: list, alphabet: Mapping[str, Generator]) -> TreePoly:
    return TreePoly([(as_fraction(term["coeff"]), tree_from_json(term["tree"], alphabet)) for term in obj])


__all__ = [
    "TreePoly",
    "combine",
    "parse_poly",
    "parse_tree",
    "corolla",
    "substitute_generators",
    "rename_generators",
    "Actions",
    "ActionError",
    "normal_form",
    "poly_to_json",
    "poly_from_json",
    "as_fraction",
    "fraction_str",
]
