"""Configurations: per-arity families of nonempty subsets closed under meets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .report import Report
from .trees import Tree, TreeError, enumerate_reduced_trees, subtree, vertices

INFINITE = "infinite"
KINDS = ("arity", "power", "capped", "trivial", "singletons_below", "explicit")

Subset = tuple[int, ...]


class ConfigError(ValueError):
    pass


def _power(n: int, max_size: int | None = None) -> tuple[Subset, ...]:
    top = n if max_size is None else min(n, max_size)
    return tuple(s for k in range(1, top + 1) for s in itertools.combinations(range(1, n + 1), k))


def _canon(sets: Iterable[Iterable[int]]) -> tuple[Subset, ...]:
    return tuple(sorted({tuple(sorted(set(s))) for s in sets}, key=lambda s: (len(s), s)))


@dataclass(frozen=True)
class Configuration:
    """A configuration ``C = (C_n)``.

    Named kinds compute ``C_n`` lazily for any ``n``; ``n_max`` bounds the
    exhaustive checks.  For ``explicit`` configurations ``sets`` lists
    ``C_n`` for ``n <= n_max`` and missing arities are empty.
    """

    kind: str
    n_max: int = 7
    m: int | None = None
    sets: Mapping[int, tuple[Subset, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown configuration kind {self.kind!r}")
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")
        if self.kind in ("capped", "singletons_below"):
            if self.m is None or self.m < 1:
                raise ConfigError(f"kind {self.kind} needs a parameter m >= 1")
        if self.kind == "explicit":
            clean = {}
            for n, ss in self.sets.items():
                n = int(n)
                for s in ss:
                    s = tuple(s)
                    if not s:
                        raise ConfigError(f"empty subset in C_{n}")
                    if list(s) != sorted(set(s)) or s[0] < 1 or s[-1] > n:
                        raise ConfigError(f"subset {s} of C_{n} is not a sorted subset of [{n}]")
                clean[n] = _canon(ss)
            object.__setattr__(self, "sets", clean)

    @property
    def name(self) -> str:
        if self.kind in ("capped", "singletons_below"):
            return f"{self.kind}:{self.m}"
        return self.kind

    def sets_for(self, n: int) -> tuple[Subset, ...]:
        return _sets_for(self, n)

    def contains(self, n: int, subset: Iterable[int]) -> bool:
        return tuple(sorted(subset)) in _set_index(self, n)

    def index(self):
        """``sup{n : C_n = B_n}``; analytic for named kinds."""
        if self.kind == "arity":
            return 1
        if self.kind == "power":
            return INFINITE
        if self.kind == "capped":
            return self.m
        if self.kind == "trivial":
            return None
        if self.kind == "singletons_below":
            return 2 if self.m > 2 else 1
        best = None
        for n in range(1, self.n_max + 1):
            if set(self.sets_for(n)) == set(_power(n)):
                best = n
        if best == self.n_max:
            return f">= {self.n_max}"
        return best

    def index_at_least(self, n: int) -> bool:
        idx = self.index()
        if idx is None:
            return False
        if idx == INFINITE:
            return True
        if isinstance(idx, str):
            return n <= self.n_max
        return n <= idx

    def to_json(self) -> dict:
        out = {"kind": self.kind, "n_max": self.n_max}
        if self.m is not None:
            out["m"] = self.m
        if self.kind == "explicit":
            out["sets"] = {str(n): [list(s) for s in ss] for n, ss in sorted(self.sets.items())}
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> Configuration:
        return cls(kind=obj["kind"], n_max=int(obj.get("n_max", 7)), m=obj.get("m"),
                   sets={int(k): [tuple(s) for s in v] for k, v in obj.get("sets", {}).items()})

    def __hash__(self):
        return hash((self.kind, self.n_max, self.m, tuple(sorted(self.sets.items()))))

    def __repr__(self):
        return f"Configuration({self.name}, n_max={self.n_max})"


@lru_cache(maxsize=None)
def _sets_for(c: Configuration, n: int) -> tuple[Subset, ...]:
    if n < 1:
        return ()
    k = c.kind
    if k == "arity":
        return tuple((i,) for i in range(1, n + 1))
    if k == "power":
        return _power(n)
    if k == "capped":
        return _power(n) if n <= c.m else _power(n, c.m)
    if k == "trivial":
        return (tuple(range(1, n + 1)),)
    if k == "singletons_below":
        full = (tuple(range(1, n + 1)),)
        if n >= c.m:
            return full
        return _canon([(i,) for i in range(1, n + 1)] + list(full))
    return c.sets.get(n, ())


@lru_cache(maxsize=None)
def _set_index(c: Configuration, n: int) -> frozenset:
    return frozenset(_sets_for(c, n))


def builtin_config(kind: str, m: int | None = None, n_max: int = 7) -> Configuration:
    if kind == "explicit":
        raise ConfigError("explicit configurations need their sets; use Configuration(...)")
    return Configuration(kind=kind, n_max=n_max, m=m)


def parse_config(spec: str, n_max: int = 7) -> Configuration:
    """``arity``, ``power``, ``trivial``, ``capped:m`` or ``singletons_below:m``
    (an optional ``builtin:`` prefix is accepted)."""
    if spec.startswith("builtin:"):
        spec = spec[len("builtin:"):]
    if ":" in spec:
        kind, m = spec.split(":", 1)
        return builtin_config(kind, int(m), n_max)
    return builtin_config(spec, None, n_max)


# ---------------------------------------------------------------- meets


def meet(J: Iterable[int], tau: Tree, v: Sequence[int]) -> Subset:
    """Positions ``i`` of children of the vertex at path ``v`` whose subtree
    contains a leaf of ``J``."""
    node = subtree(tau, v)
    if node.is_leaf:
        raise TreeError(f"path {tuple(v)} names a leaf, not a vertex")
    J = set(J)
    return tuple(i for i, c in enumerate(node.children, 1) if J.intersection(c.leaves))


def all_meets(J: Iterable[int], tau: Tree) -> dict[tuple[int, ...], Subset]:
    return {path: meet(J, tau, path) for path, _ in vertices(tau)}


# ---------------------------------------------------------------- validation


def _shape_masks(n: int) -> list[tuple[Tree, list[tuple[tuple[int, ...], list[int]]]]]:
    out = []
    for t in enumerate_reduced_trees(n, range(2, n + 1)):
        info = []
        for path, v in vertices(t):
            info.append((path, [sum(1 << (l - 1) for l in c.leaves) for c in v.children]))
        out.append((t, info))
    return out


_SHAPES: dict[int, list] = {}


def _shapes(n: int):
    if n not in _SHAPES:
        _SHAPES[n] = _shape_masks(n)
    return _SHAPES[n]


def validate_closure(c: Configuration, n_max: int | None = None) -> Report:
    """Exhaustive closure check over all reduced trees with at most ``n_max``
    leaves and vertex arities ``2..n_max``; stops at the first violation."""
    n_max = c.n_max if n_max is None else n_max
    rep = Report(f"closure of {c.name} configuration (n <= {n_max})")
    member = {k: {sum(1 << (i - 1) for i in s) for s in c.sets_for(k)} for k in range(1, n_max + 1)}
    for n in range(2, n_max + 1):
        Jmasks = [(J, sum(1 << (i - 1) for i in J)) for J in c.sets_for(n)]
        for t, info in _shapes(n):
            for path, kids in info:
                for J, jm in Jmasks:
                    mm = 0
                    for i, km in enumerate(kids):
                        if km & jm:
                            mm |= 1 << i
                    if mm and mm not in member[len(kids)]:
                        got = tuple(i + 1 for i in range(len(kids)) if mm >> i & 1)
                        rep.add("closure", False,
                                f"J={list(J)} at vertex {list(path)} of {t!r} meets to {list(got)} not in C_{len(kids)}",
                                witness={"J": list(J), "tree": repr(t), "vertex": list(path), "meet": list(got)})
                        return rep
    rep.add("closure", True, f"all trees with <= {n_max} leaves")
    return rep


def s_invariant(c: Configuration, n_max: int | None = None) -> bool:
    n_max = c.n_max if n_max is None else n_max
    for n in range(2, n_max + 1):
        members = set(c.sets_for(n))
        for J in members:
            for i in range(1, n):
                img = tuple(sorted(i + 1 if x == i else i if x == i + 1 else x for x in J))
                if img not in members:
                    return False
    return True


__all__ = [
    "Configuration",
    "ConfigError",
    "INFINITE",
    "builtin_config",
    "parse_config",
    "meet",
    "all_meets",
    "validate_closure",
    "s_invariant",
]
