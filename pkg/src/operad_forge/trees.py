"""Decorated planar rooted trees.

A tree is either a :class:`Leaf` carrying a positive integer label or a
:class:`Vertex` carrying a :class:`Generator` and an ordered tuple of
children.  Trees are immutable and hashable; structural equality is the
contract.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    """An operation symbol of fixed arity.

    ``base`` and ``part`` are set on generators produced by splitting:
    ``part`` is the sorted subset ``I`` of the split label ``(base, e_I)``.
    An empty ``part`` marks the formal star sum (only used for display).
    """

    id: str
    arity: int
    unary: bool = False
    base: str | None = None
    part: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.unary:
            if self.arity != 1:
                raise TreeError(f"unary generator {self.id!r} must have arity 1")
        elif self.arity < 2:
            raise TreeError(f"generator {self.id!r} has arity {self.arity} < 2")

    def __repr__(self):
        return f"Generator({self.id!r}/{self.arity})"

    @property
    def is_split(self) -> bool:
        return self.base is not None

    @property
    def is_star(self) -> bool:
        return self.part == ()


def split_id(base: str, part: Sequence[int]) -> str:
    if not part:
        return f"{base}[*]"
    return f"{base}[{','.join(map(str, part))}]"


_SPLIT_RE = re.compile(r"^(.*)\[([0-9,]+|\*)\]$")


def parse_split_id(gid: str) -> tuple[str, tuple[int, ...]] | None:
    m = _SPLIT_RE.match(gid)
    if m is None:
        return None
    if m.group(2) == "*":
        return m.group(1), ()
    return m.group(1), tuple(int(x) for x in m.group(2).split(","))


class Tree:
    __slots__ = ()

    is_leaf = False


class Leaf(Tree):
    __slots__ = ("label", "_hash")

    is_leaf = True

    def __init__(self, label: int):
        if not isinstance(label, int) or label < 1:
            raise TreeError(f"leaf label must be a positive integer, got {label!r}")
        self.label = label
        self._hash = hash(("leaf", label))

    @property
    def leaves(self) -> tuple[int, ...]:
        return (self.label,)

    @property
    def min_leaf(self) -> int:
        return self.label

    @property
    def key(self) -> tuple:
        return ((1, "", self.label),)

    def __eq__(self, other):
        return isinstance(other, Leaf) and other.label == self.label

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return str(self.label)


class Vertex(Tree):
    """Internal vertex.  Use :func:`graft` for validated construction."""

    __slots__ = ("gen", "children", "leaves", "min_leaf", "_hash", "_key")

    def __init__(self, gen: Generator, children: Sequence[Tree]):
        self.gen = gen
        self.children = tuple(children)
        self.leaves = tuple(itertools.chain.from_iterable(c.leaves for c in self.children))
        self.min_leaf = min(self.leaves)
        self._hash = hash((gen.id, self.children))
        self._key = None

    @property
    def key(self) -> tuple:
        # preorder token sequence; vertices sort before leaves at equal depth
        if self._key is None:
            toks = [(0, self.gen.id, 0)]
            for c in self.children:
                toks.extend(c.key)
            self._key = tuple(toks)
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Vertex)
            and self._hash == other._hash
            and self.gen == other.gen
            and self.children == other.children
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.gen.id}({', '.join(map(repr, self.children))})"


def graft(gen: Generator, children: Sequence[Tree]) -> Vertex:
    if len(children) != gen.arity:
        raise TreeError(f"{gen.id} has arity {gen.arity}, got {len(children)} children")
    seen: set[int] = set()
    for c in children:
        for lab in c.leaves:
            if lab in seen:
                raise TreeError(f"duplicate leaf label {lab}")
            seen.add(lab)
    return Vertex(gen, children)


def decompose(t: Tree) -> tuple[Generator, tuple[Tree, ...]]:
    if t.is_leaf:
        raise TreeError("a leaf has no grafting decomposition")
    return t.gen, t.children


def vertices(t: Tree, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Vertex]]:
    """Yield ``(path, vertex)`` in preorder; a path lists child positions (1-based)."""
    if t.is_leaf:
        return
    yield path, t
    for i, c in enumerate(t.children, 1):
        yield from vertices(c, path + (i,))


def subtree(t: Tree, path: Sequence[int]) -> Tree:
    for i in path:
        if t.is_leaf or not 1 <= i <= len(t.children):
            raise TreeError(f"no vertex at path {tuple(path)}")
        t = t.children[i - 1]
    return t


def generators_of(t: Tree) -> set[Generator]:
    return {v.gen for _, v in vertices(t)}


# ---------------------------------------------------------------- permutations


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``[n]``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise TreeError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
                img[a - 1] = b
        return cls(tuple(img))

    @classmethod
    def all(cls, n: int) -> Iterator[Permutation]:
        for p in itertools.permutations(range(1, n + 1)):
            yield cls(p)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: Permutation) -> Permutation:
        """``self ∘ other`` (apply ``other`` first)."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.images, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def sign(self) -> int:
        s, seen = 1, set()
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            j, length = i, 0
            while j not in seen:
                seen.add(j)
                j = self(j)
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def apply_set(self, subset: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self(i) for i in subset))


def relabel_leaves(t: Tree, sigma: Permutation | Mapping[int, int]) -> Tree:
    """Same shape with every leaf ``l`` relabeled ``sigma(l)``."""
    if isinstance(sigma, Permutation):
        n = sigma.n
        for lab in t.leaves:
            if lab > n:
                raise TreeError(f"leaf {lab} outside permutation domain [1..{n}]")
        return _relabel(t, sigma.images, offset=1)
    for lab in t.leaves:
        if lab not in sigma:
            raise TreeError(f"leaf {lab} not in relabeling domain")
    return _relabel_map(t, sigma)


def _relabel(t: Tree, images, offset) -> Tree:
    if t.is_leaf:
        return Leaf(images[t.label - offset])
    return Vertex(t.gen, [_relabel(c, images, offset) for c in t.children])


def _relabel_map(t: Tree, m) -> Tree:
    if t.is_leaf:
        return Leaf(m[t.label])
    return Vertex(t.gen, [_relabel_map(c, m) for c in t.children])


def shift_leaves(t: Tree, by: int) -> Tree:
    if by == 0:
        return t
    if t.is_leaf:
        return Leaf(t.label + by)
    return Vertex(t.gen, [shift_leaves(c, by) for c in t.children])


# ---------------------------------------------------------------- enumeration


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def decorated_trees(n: int, alphabet: Sequence[Generator]) -> list[Tree]:
    """All planar trees with ``n`` leaves labeled ``1..n`` left to right,
    each vertex decorated by a generator of ``alphabet`` of matching arity.
    Unary generators are ignored (trees are reduced)."""
    gens = tuple(sorted({g for g in alphabet if not g.unary}, key=lambda g: (g.arity, g.id)))
    return list(_decorated(n, gens))


@lru_cache(maxsize=256)
def _decorated(n: int, gens: tuple[Generator, ...]) -> tuple[Tree, ...]:
    if n == 1:
        return (Leaf(1),)
    out = []
    for g in gens:
        if g.arity > n:
            continue
        for comp in _compositions(n, g.arity):
            pools = []
            offset = 0
            for size in comp:
                pools.append([shift_leaves(s, offset) for s in _decorated(size, gens)])
                offset += size
            for kids in itertools.product(*pools):
                out.append(Vertex(g, kids))
    return tuple(out)


def shape_generator(arity: int) -> Generator:
    return Generator(f"v{arity}", arity)


def enumerate_reduced_trees(n: int, arities: Iterable[int]) -> list[Tree]:
    """All planar reduced rooted trees with ``n`` leaves and vertex arities in
    ``arities``; vertices carry the anonymous generator ``v<arity>``."""
    if n < 1:
        raise TreeError("n must be positive")
    ars = sorted(set(arities))
    if not ars or min(ars) < 2:
        raise TreeError("arities must be a nonempty set of integers >= 2")
    return decorated_trees(n, [shape_generator(a) for a in ars])


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][\w@']*(?:\[(?:[\d,]+|\*)\])?)|(.))")


def _tokenize(s: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1) is not None:
            toks.append(("int", m.group(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2)))
        elif m.group(3).strip():
            toks.append(("sym", m.group(3)))
    return toks


class _Parser:
    def __init__(self, text: str, alphabet: Mapping[str, Generator]):
        self.toks = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise TreeError(f"parse error near token {self.i} in {self.text!r}")
        self.i += 1
        return tok[1]

    def tree(self) -> Tree:
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return Leaf(int(val))
        name = self.take("name")
        if name not in self.alphabet:
            raise TreeError(f"unknown generator {name!r}")
        self.take("sym", "(")
        kids = [self.tree()]
        while self.peek() == ("sym", ","):
            self.take()
            kids.append(self.tree())
        self.take("sym", ")")
        return graft(self.alphabet[name], kids)

    def coeff(self):
        from fractions import Fraction

        kind, val = self.peek()
        nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else (None, None)
        if kind == "int" and nxt in (("sym", "*"), ("sym", "/")):
            num = int(self.take())
            den = 1
            if self.peek() == ("sym", "/"):
                self.take()
                den = int(self.take("int"))
            self.take("sym", "*")
            return Fraction(num, den)
        return Fraction(1)

    def poly(self):
        terms = []
        sign = 1
        if self.peek() in (("sym", "-"), ("sym", "+")):
            sign = -1 if self.take() == "-" else 1
        while True:
            c = self.coeff()
            terms.append((sign * c, self.tree()))
            if self.peek() in (("sym", "-"), ("sym", "+")):
                sign = -1 if self.take() == "-" else 1
            else:
                break
        if self.i != len(self.toks):
            raise TreeError(f"trailing input in {self.text!r}")
        return terms


def parse_tree(text: str, alphabet: Mapping[str, Generator] | Iterable[Generator]) -> Tree:
    """Parse ``mu(mu(1,2),3)``-style notation."""
    if not isinstance(alphabet, Mapping):
        alphabet = {g.id: g for g in alphabet}
    p = _Parser(text, alphabet)
    t = p.tree()
    if p.i != len(p.toks):
        raise TreeError(f"trailing input in {text!r}")
    return t


# ---------------------------------------------------------------- JSON


def tree_to_json(t: Tree) -> dict:
    if t.is_leaf:
        return {"leaf": t.label}
    return {"gen": t.gen.id, "children": [tree_to_json(c) for c in t.children]}


def tree_from_json(obj: dict, alphabet: Mapping[str, Generator]) -> Tree:
    if "leaf" in obj:
        return Leaf(int(obj["leaf"]))
    gid = obj["gen"]
    if gid not in alphabet:
        raise TreeError(f"unknown generator {gid!r}")
    return graft(alphabet[gid], [tree_from_json(c, alphabet) for c in obj["children"]])
