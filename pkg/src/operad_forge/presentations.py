"""Operad presentations by generators, signed actions and tree relations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .linalg import RowSpace
from .poly import Actions, TreePoly, normal_form, relabel_nf, poly_from_json, poly_to_json, substitute_generators
from .report import Report
from .trees import Generator, Leaf, Permutation, TreeError, Vertex, decorated_trees, relabel_leaves

MAX_IDEAL_LEAVES = 7


class PresentationError(ValueError):
    pass


@dataclass
class OperadPresentation:
    name: str
    symmetric: bool
    generators: list[Generator]
    relations: list[TreePoly]
    actions: Actions | None = None
    absorbed: list[str] = field(default_factory=list)

    @property
    def alphabet(self) -> dict[str, Generator]:
        return {g.id: g for g in self.generators}

    def generator(self, gid: str) -> Generator:
        try:
            return self.alphabet[gid]
        except KeyError:
            raise PresentationError(f"{self.name} has no generator {gid!r}") from None

    def nf(self, p: TreePoly) -> TreePoly:
        return normal_form(p, self.actions if self.symmetric else None)

    @property
    def max_relation_leaves(self) -> int:
        return max((r.leaf_count() or 0 for r in self.relations), default=0)

    def to_json(self) -> dict:
        gens = []
        for g in self.generators:
            d = {"id": g.id, "arity": g.arity}
            if g.base is not None:
                d["base"] = g.base
                d["part"] = list(g.part)
            if self.symmetric and self.actions is not None and g in self.actions:
                d["action"] = self.actions.to_json()[g.id]
            gens.append(d)
        out = {"name": self.name, "symmetric": self.symmetric, "generators": gens,
               "relations": [poly_to_json(r) for r in self.relations]}
        if self.absorbed:
            out["absorbed"] = list(self.absorbed)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> OperadPresentation:
        gens = []
        for d in obj["generators"]:
            part = d.get("part")
            gens.append(Generator(d["id"], int(d["arity"]), base=d.get("base"),
                                  part=None if part is None else tuple(part)))
        alpha = {g.id: g for g in gens}
        actions = None
        if obj.get("symmetric"):
            table = {}
            for d in obj["generators"]:
                row = {}
                for a in d.get("action", []):
                    i, j = a["transposition"]
                    if j != i + 1:
                        raise PresentationError(f"transposition {a['transposition']} is not adjacent")
                    if a["target"] not in alpha:
                        raise PresentationError(f"unknown action target {a['target']!r}")
                    row[i] = (alpha[a["target"]], int(a["sign"]))
                table[alpha[d["id"]]] = row
            actions = Actions(table)
        rels = [poly_from_json(r, alpha) for r in obj["relations"]]
        return cls(obj["name"], bool(obj.get("symmetric")), gens, rels, actions, list(obj.get("absorbed", [])))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, ensure_ascii=False)


def load_presentation(path: str | Path) -> OperadPresentation:
    return OperadPresentation.from_json(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------- validation


def validate(P: OperadPresentation) -> Report:
    rep = Report(f"presentation {P.name}")
    ids = [g.id for g in P.generators]
    dup = sorted({i for i in ids if ids.count(i) > 1})
    rep.add("unique generator ids", not dup, f"duplicates {dup}" if dup else f"{len(ids)} generators")
    alpha = set(ids)
    if P.symmetric:
        if P.actions is None:
            rep.add("action tables", False, "symmetric presentation without actions")
        else:
            missing = [g.id for g in P.generators if g not in P.actions]
            problems = P.actions.check() if not missing else [f"no table for {missing}"]
            rep.add("action tables", not problems, "; ".join(problems[:5]) or "Coxeter relations hold")
    else:
        rep.add("no actions (nonsymmetric)", P.actions is None)
    for k, r in enumerate(P.relations, 1):
        name = f"relation {k}"
        if r.is_zero():
            rep.add(name, False, "zero relation")
            continue
        if not r.is_homogeneous():
            rep.add(name, False, "inhomogeneous: terms have different leaf sets",
                    witness=[sorted(s) for s in r.leaf_sets()])
            continue
        n = r.leaf_count()
        (ls,) = r.leaf_sets()
        if ls != frozenset(range(1, n + 1)):
            rep.add(name, False, f"leaf labels {sorted(ls)} are not 1..{n}")
            continue
        unknown = {g.id for g in r.generators()} - alpha
        if unknown:
            rep.add(name, False, f"unknown generators {sorted(unknown)}")
            continue
        if not P.symmetric:
            bad = [t for t in r.trees() if t.leaves != tuple(range(1, n + 1))]
            if bad:
                rep.add(name, False, "leaves not in planar order", witness=repr(bad[0]))
                continue
        elif P.actions is not None and rep.passed:
            if P.nf(r) != r:
                rep.add(name, False, "not in normal form", witness=repr(r))
                continue
        rep.add(name, True, f"{len(r)} terms, {n} leaves")
    return rep


# ---------------------------------------------------------------- orbits and ideals


def _dedupe(polys: Iterable[TreePoly]) -> list[TreePoly]:
    seen, out = set(), []
    for p in polys:
        if p.is_zero():
            continue
        lead = min(p._terms, key=lambda t: t.key)  # dedupe up to scalar
        c = p._terms[lead]
        key = frozenset((t, v / c) for t, v in p._terms.items())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def relation_orbit(P: OperadPresentation, r: TreePoly) -> list[TreePoly]:
    """All leaf relabelings of ``r`` in normal form, deduplicated up to scalar."""
    if not P.symmetric:
        raise PresentationError(f"{P.name} is nonsymmetric; relation orbits need actions")
    n = r.leaf_count()
    return _dedupe(relabel_nf(r, s.images, P.actions) for s in Permutation.all(n))


def orbit_closure(polys: Iterable[TreePoly], actions: Actions | None) -> list[TreePoly]:
    """All relabelings of each poly (normal form when ``actions`` is given)."""
    out = []
    for r in polys:
        n = r.leaf_count()
        if n is None:
            continue
        out.extend(relabel_nf(r, s.images, actions) for s in Permutation.all(n))
    return _dedupe(out)


def ideal_component(P: OperadPresentation, n: int, relabel: bool | None = None) -> list[TreePoly]:
    """A spanning set of the ``n``-leaf component of the ideal generated by
    the relations: every tree context with one hole, the hole filled by a
    relation.  Symmetric presentations (or ``relabel=True``) also get all
    leaf relabelings."""
    if n > MAX_IDEAL_LEAVES:
        raise PresentationError(f"ideal components limited to {MAX_IDEAL_LEAVES} leaves")
    relabel = P.symmetric if relabel is None else relabel
    acts = P.actions if P.symmetric else None
    gens = [g for g in P.generators if not g.unary]
    ident = {g.id: TreePoly.of(Vertex(g, [Leaf(i) for i in range(1, g.arity + 1)])) for g in gens}
    whole: list[TreePoly] = []
    composites: list[TreePoly] = []
    for r in P.relations:
        m = r.leaf_count()
        if m is None or m > n or m < 2:
            continue
        fills = relation_orbit(P, r) if P.symmetric else [r]
        if m == n:
            # no room for padding: the hole is the whole tree
            whole.extend(fills)
            continue
        hole = Generator(f"__hole{m}", m)
        contexts = [t for t in decorated_trees(n, gens + [hole]) if _count_gen(t, hole.id) == 1]
        for f in fills:
            gmap = dict(ident)
            gmap[hole.id] = f
            composites.extend(substitute_generators(TreePoly.of(ctx), gmap) for ctx in contexts)
    composites = _dedupe(composites)
    if relabel:
        perms = list(Permutation.all(n))
        composites = [relabel_nf(p, s.images, acts) for p in composites for s in perms]
        if not P.symmetric:
            whole = [p.relabel(s) for p in whole for s in perms]
    return _dedupe(whole + composites)


def _count_gen(t, gid) -> int:
    if t.is_leaf:
        return 0
    return (t.gen.id == gid) + sum(_count_gen(c, gid) for c in t.children)


def free_dimension(P: OperadPresentation, n: int) -> int:
    """Dimension of the ``n``-leaf component of the free operad (nonsymmetric:
    planar trees; symmetric: normal-form trees over all labelings)."""
    gens = [g for g in P.generators if not g.unary]
    planar = decorated_trees(n, gens)
    if not P.symmetric:
        return len(planar)
    seen = set()
    for t in planar:
        for s in Permutation.all(n):
            _, nt = P.actions.nf_tree(relabel_leaves(t, s))
            seen.add(nt)
    return len(seen)


def span_rank(polys: Sequence[TreePoly]) -> int:
    return RowSpace(polys).rank


__all__ = [
    "OperadPresentation",
    "PresentationError",
    "load_presentation",
    "validate",
    "relation_orbit",
    "orbit_closure",
    "ideal_component",
    "free_dimension",
    "span_rank",
    "TreeError",
]
