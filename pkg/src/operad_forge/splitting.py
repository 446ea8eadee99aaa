"""Configuration splittings of trees and presentations, and the morphism
checks built on them."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .configurations import Configuration, s_invariant
from .linalg import RowSpace, not_contained
from .poly import Actions, TreePoly, corolla, normal_form, rename_generators, substitute_generators
from .presentations import OperadPresentation, PresentationError, ideal_component, orbit_closure
from .report import Report
from .trees import Generator, Leaf, Tree, Vertex, decorated_trees, split_id


class SplitError(ValueError):
    pass


# ---------------------------------------------------------------- alphabet


def split_generator(g: Generator, part: Sequence[int]) -> Generator:
    part = tuple(sorted(part))
    return Generator(split_id(g.id, part), g.arity, base=g.id, part=part)


def star_generator(g: Generator) -> Generator:
    """Display-only symbol for the formal sum over all parts."""
    return Generator(split_id(g.id, ()), g.arity, base=g.id, part=())


def split_alphabet(P: OperadPresentation, C: Configuration) -> tuple[list[Generator], Actions | None]:
    gens = []
    for g in P.generators:
        gens.extend(split_generator(g, I) for I in C.sets_for(g.arity))
    if not P.symmetric:
        return gens, None
    if not s_invariant(C, max(C.n_max, max(g.arity for g in P.generators))):
        raise SplitError(f"configuration {C.name} is not S-invariant; cannot split symmetric {P.name}")
    table = {}
    for g in P.generators:
        for I in C.sets_for(g.arity):
            row = {}
            for i in range(1, g.arity):
                h, s = P.actions.swap(g, i)
                img = tuple(sorted(i + 1 if x == i else i if x == i + 1 else x for x in I))
                row[i] = (split_generator(h, img), s)
            table[split_generator(g, I)] = row
    return gens, Actions(table)


# ---------------------------------------------------------------- trees


def _check_J(tau: Tree, J, C: Configuration) -> frozenset:
    J = frozenset(J or ())
    if not J:
        return J
    lin = sorted(tau.leaves)
    if not J <= set(lin):
        raise SplitError(f"J={sorted(J)} is not a subset of the leaves {lin}")
    rank = {lab: k for k, lab in enumerate(lin, 1)}
    if not C.contains(len(lin), [rank[x] for x in J]):
        raise SplitError(f"J={sorted(J)} is not in C_{len(lin)} of the {C.name} configuration")
    return J


def split_tree_symbolic(tau: Tree, J: Iterable[int] | None, C: Configuration) -> Tree:
    """Relabel each vertex by its meet part, or by a star symbol when the
    meet is empty (no expansion)."""
    J = _check_J(tau, J, C)

    def rec(t: Tree) -> Tree:
        if t.is_leaf:
            return t
        part = tuple(i for i, c in enumerate(t.children, 1) if J.intersection(c.leaves))
        g = split_generator(t.gen, part) if part else star_generator(t.gen)
        if part and not C.contains(t.gen.arity, part):
            raise SplitError(f"meet {part} at {t.gen.id} is not in C_{t.gen.arity}: configuration not closed")
        return Vertex(g, [rec(c) for c in t.children])

    return rec(tau)


def expand_stars(t: Tree, C: Configuration) -> TreePoly:
    if t.is_leaf:
        return TreePoly.of(t)
    kids = [expand_stars(c, C) for c in t.children]
    if t.gen.is_star:
        base = Generator(t.gen.base, t.gen.arity)
        heads = [split_generator(base, I) for I in C.sets_for(t.gen.arity)]
    else:
        heads = [t.gen]
    out: dict[Tree, Fraction] = {}
    for h in heads:
        for kt, kc in _products(kids):
            v = Vertex(h, kt)
            out[v] = out.get(v, 0) + kc
    return TreePoly(out)


def _products(kids: Sequence[TreePoly]):
    acc = [((), Fraction(1))]
    for k in kids:
        acc = [(ts + (t,), c * v) for ts, c in acc for t, v in k.items()]
    return acc


def split_tree(tau: Tree, J: Iterable[int] | None, C: Configuration) -> TreePoly:
    """``Sp_J(tau)``; ``J`` empty or None gives ``Sp(tau)`` (every vertex starred)."""
    return expand_stars(split_tree_symbolic(tau, J, C), C)


def split_poly(p: TreePoly, J: Iterable[int] | None, C: Configuration) -> TreePoly:
    out = TreePoly()
    for t, c in p.items():
        out = out + split_tree(t, J, C).scale(c)
    return out


def _relation_Js(r: TreePoly, C: Configuration) -> list[tuple[int, ...]]:
    n = r.leaf_count()
    (lin,) = r.leaf_sets()
    lin = sorted(lin)
    return [tuple(lin[i - 1] for i in I) for I in C.sets_for(n)]


def split_presentation(P: OperadPresentation, C: Configuration, name: str | None = None) -> OperadPresentation:
    gens, acts = split_alphabet(P, C)
    rels = []
    for r in P.relations:
        for J in _relation_Js(r, C):
            s = normal_form(split_poly(r, J, C), acts)
            if s:
                rels.append(s)
    return OperadPresentation(name or f"{C.name}Sp({P.name})", P.symmetric, gens, rels, acts)


def split_relation_count(P: OperadPresentation, C: Configuration) -> int:
    """``|R| x |C_n|`` summed over relations, before zero-drop."""
    return sum(len(C.sets_for(r.leaf_count())) for r in P.relations)


def align_to(p: TreePoly, target: OperadPresentation) -> TreePoly:
    """Rename split generators ``(w, e_I)`` to the generator of ``target``
    carrying the same part and arity (catalog names such as prec/succ)."""
    by_part = {}
    for g in target.generators:
        if g.part is not None:
            by_part[(g.arity, g.part)] = g
    mapping = {}
    for g in p.generators():
        if g.part is None:
            continue
        key = (g.arity, g.part)
        if key not in by_part:
            raise SplitError(f"{target.name} has no generator for part {g.part} of arity {g.arity}")
        mapping[g.id] = by_part[key]
    return rename_generators(p, mapping)


def aligned_relations(S: OperadPresentation, target: OperadPresentation) -> list[TreePoly]:
    return [target.nf(align_to(r, target)) for r in S.relations]


# ---------------------------------------------------------------- splitting sum


def _applicable(C: Configuration, n: int) -> bool:
    if C.kind in ("arity", "trivial"):
        return True
    return C.index_at_least(n)


def check_splitting_sum(P: OperadPresentation, C: Configuration, leaf_max: int = 6) -> Report:
    """``sum_J Sp_J(tau) = Sp(tau)`` for every tree over the generators with at
    most ``leaf_max`` leaves.  Trees beyond the index hypothesis are reported
    as SKIP together with whether the identity happens to hold."""
    if leaf_max > 7:
        raise SplitError("leaf_max is limited to 7")
    rep = Report(f"splitting sum for {P.name} with {C.name} configuration")
    gens = [g for g in P.generators if not g.unary]
    for n in range(1, leaf_max + 1):
        trees = decorated_trees(n, gens)
        if not trees:
            continue
        ok, bad, out_ok, out_bad = 0, [], 0, 0
        applicable = _applicable(C, n)
        for t in trees:
            lhs = TreePoly()
            for J in C.sets_for(n):
                lhs = lhs + split_tree(t, J, C)
            holds = lhs == split_tree(t, None, C)
            if applicable:
                if holds:
                    ok += 1
                else:
                    bad.append(repr(t))
            else:
                out_ok += holds
                out_bad += not holds
        if applicable:
            rep.add(f"n={n}", not bad, f"{ok}/{len(trees)} trees", witness=bad[:3] or None)
        else:
            rep.add(f"n={n}", None,
                    f"outside the index hypothesis; identity holds on {out_ok}/{len(trees)} trees")
    return rep


# ---------------------------------------------------------------- canonical morphisms


def _star_image(g: Generator, C: Configuration, parts: Iterable[Sequence[int]] | None = None) -> TreePoly:
    parts = C.sets_for(g.arity) if parts is None else parts
    out = TreePoly()
    for I in parts:
        out = out + TreePoly.of(corolla(split_generator(g, I)))
    return out


def _all_parts(n: int):
    from .configurations import _power

    return _power(n)


_SPACES: dict = {}


def _relation_spaces(P: OperadPresentation, C: Configuration, S: OperadPresentation):
    """``(plain, closed)``: the span of the split relations as listed, and a
    thunk for the span of all their relabelings (symmetric case; computed on
    first use).  Cached for named configurations."""
    key = None if C.kind == "explicit" else (id(P), C.kind, C.m, C.n_max)
    hit = _SPACES.get(key)
    if hit is not None and hit[0] is P:
        return hit[1], hit[2]
    plain = RowSpace(S.relations)
    box: list = []

    def closed() -> RowSpace:
        if not box:
            box.append(RowSpace(orbit_closure(S.relations, S.actions)) if P.symmetric else plain)
        return box[0]
    if key is not None:
        _SPACES[key] = (P, plain, closed)
    return plain, closed


def check_canonical_morphisms(P: OperadPresentation, C: Configuration, variant: str) -> Report:
    """Images of the relations under ``w -> (w,*)`` (sum_arity), ``w -> sum
    over all nonempty parts`` (sum_full) or ``w -> (w, e_[n])`` (top)."""
    if variant not in ("sum_arity", "sum_full", "top"):
        raise SplitError(f"unknown variant {variant!r}")
    rep = Report(f"canonical morphism {variant} for {P.name} with {C.name} configuration")
    S = split_presentation(P, C)
    acts = S.actions
    m = P.max_relation_leaves
    if variant == "sum_arity":
        hyp = all(set(C.sets_for(k)) == {(i,) for i in range(1, k + 1)} for k in range(1, m + 1))
        hyp_text = "configuration is the arity configuration"
    else:
        hyp = C.index_at_least(m)
        hyp_text = f"max relation leaves {m} <= index {C.index()}"
    if not hyp:
        rep.add("hypothesis", None, f"not applicable: {hyp_text} fails")
        return rep
    if variant == "top":
        missing = [g.id for g in P.generators if not C.contains(g.arity, range(1, g.arity + 1))]
        if missing:
            rep.add("top part available", False, f"[n] not in C_n for generators {missing}")
            return rep
    gmap = {}
    for g in P.generators:
        if variant == "sum_arity":
            gmap[g.id] = _star_image(g, C)
        elif variant == "sum_full":
            gmap[g.id] = _star_image(g, C, _all_parts(g.arity))
        else:
            gmap[g.id] = TreePoly.of(corolla(split_generator(g, range(1, g.arity + 1))))
    plain, closed = _relation_spaces(P, C, S)
    for k, r in enumerate(P.relations, 1):
        try:
            img = normal_form(substitute_generators(r, gmap), acts)
        except Exception as exc:  # generator image outside the split alphabet
            rep.add(f"relation {k}", False, f"image undefined: {exc}")
            continue
        if variant == "top":
            (lin,) = r.leaf_sets()
            if not C.contains(len(lin), range(1, len(lin) + 1)):
                rep.add(f"relation {k}", False, f"[{len(lin)}] not in C_{len(lin)}, so Sp_[n](r) is undefined")
                continue
            expected = normal_form(split_poly(r, sorted(lin), C), acts)
        else:
            expected = TreePoly()
            for J in _relation_Js(r, C):
                expected = expected + split_poly(r, J, C)
            expected = normal_form(expected, acts)
        identity = img == expected
        # the smaller span is a subspace of the closed one, so a hit is conclusive
        member = plain.contains(img) or closed().contains(img)
        verdict = identity and member
        detail = f"image {'=' if identity else '!='} {'Sp_[n](r)' if variant == 'top' else 'sum_J Sp_J(r)'}; " \
                 f"{'in' if member else 'not in'} the split relation span"
        rep.add(f"relation {k}", verdict, detail, witness=None if verdict else repr(img))
    return rep


# ---------------------------------------------------------------- functoriality


def _signed_map(eta: Mapping[str, tuple[Generator, int]]) -> dict[str, TreePoly]:
    return {gid: TreePoly.of(corolla(h)).scale(s) for gid, (h, s) in eta.items()}


def _ideal_space(P: OperadPresentation, n: int) -> RowSpace:
    return RowSpace(ideal_component(P, n))


def check_morphism(eta: Mapping[str, tuple[Generator, int]], Psrc: OperadPresentation,
                   Pdst: OperadPresentation) -> Report:
    """Every source relation maps into the ideal of the destination."""
    rep = Report(f"{Psrc.name} -> {Pdst.name} is a morphism")
    gmap = _signed_map(eta)
    spaces: dict[int, RowSpace] = {}
    if Psrc.symmetric and Pdst.symmetric:
        for g in Psrc.generators:
            h, s = eta[g.id]
            for i in range(1, g.arity):
                g2, s2 = Psrc.actions.swap(g, i)
                h2, t2 = Pdst.actions.swap(h, i)
                img = eta[g2.id]
                ok = img[0].id == h2.id and img[1] * s2 == s * t2
                if not ok:
                    rep.add(f"equivariance {g.id} ({i},{i+1})", False,
                            f"eta({g2.id}) = {img[1]:+d}{img[0].id}, expected {s * s2 * t2:+d}{h2.id}")
    for k, r in enumerate(Psrc.relations, 1):
        n = r.leaf_count()
        img = Pdst.nf(substitute_generators(r, gmap))
        sp = spaces.get(n) or spaces.setdefault(n, _ideal_space(Pdst, n))
        ok = sp.contains(img)
        rep.add(f"relation {k}", ok, f"image in the {n}-leaf ideal of {Pdst.name}", witness=None if ok else repr(r))
    return rep


def induced_split_morphism(eta: Mapping[str, tuple[Generator, int]], Psrc: OperadPresentation,
                           Pdst: OperadPresentation, C: Configuration) -> Report:
    """Lift ``eta`` to ``theta: (w, e_I) -> s (eta(w), e_I)`` and verify it maps
    the split relations of the source into the split ideal of the target,
    together with the square ``theta o alpha = alpha o eta`` on generators."""
    rep = Report(f"induced split morphism {C.name}Sp({Psrc.name}) -> {C.name}Sp({Pdst.name})")
    pre = check_morphism(eta, Psrc, Pdst)
    rep.extend(pre, "precondition: ")
    if not pre.passed:
        return rep
    Ssrc = split_presentation(Psrc, C)
    Sdst = split_presentation(Pdst, C)
    theta = {}
    for g in Psrc.generators:
        h, s = eta[g.id]
        for I in C.sets_for(g.arity):
            theta[split_generator(g, I).id] = (split_generator(h, I), s)
    tmap = _signed_map(theta)
    spaces: dict[int, RowSpace] = {}
    bad = []
    for r in Ssrc.relations:
        n = r.leaf_count()
        img = Sdst.nf(substitute_generators(r, tmap))
        sp = spaces.get(n) or spaces.setdefault(n, _ideal_space(Sdst, n))
        if not sp.contains(img):
            bad.append(repr(r))
    rep.add("split relations map into the split ideal", not bad,
            f"{len(Ssrc.relations) - len(bad)}/{len(Ssrc.relations)} relations", witness=bad[:2] or None)
    square_bad = []
    for g in Psrc.generators:
        h, s = eta[g.id]
        lhs = substitute_generators(_star_image(g, C), tmap)
        rhs = _star_image(h, C).scale(s)
        if lhs != rhs:
            square_bad.append(g.id)
    rep.add("theta o alpha = alpha o eta on generators", not square_bad, witness=square_bad or None)
    return rep


# ---------------------------------------------------------------- restriction


def restriction_morphism(P: OperadPresentation, C: Configuration, Cbig: Configuration) -> Report:
    """Zero the parts of ``Cbig`` outside ``C`` and check that split relations
    for ``Cbig`` map to 0 or into the span of the split relations for ``C``."""
    rep = Report(f"restriction {Cbig.name}Sp({P.name}) -> {C.name}Sp({P.name})")
    n_top = max(C.n_max, P.max_relation_leaves)
    for n in range(1, n_top + 1):
        if not set(C.sets_for(n)) <= set(Cbig.sets_for(n)):
            rep.add("containment", False, f"C_{n} not contained in C'_{n}")
            return rep
    if P.symmetric and not (s_invariant(C) and s_invariant(Cbig)):
        rep.add("S-invariance", False, "both configurations must be S-invariant")
        return rep
    Big = split_presentation(P, Cbig)
    Small = split_presentation(P, C)
    acts = Small.actions
    space = RowSpace(orbit_closure(Small.relations, acts) if P.symmetric else Small.relations)
    images = restriction_images(P, C, Cbig, Big)
    zero = kept = 0
    bad = []
    for img in images:
        if img.is_zero():
            zero += 1
        elif space.contains(img):
            kept += 1
        else:
            bad.append(repr(img))
    rep.add("zeroing map sends relations into the target span", not bad,
            f"{zero} relations to 0, {kept} into the span", witness=bad[:2] or None)
    back = RowSpace(orbit_closure([p for p in images if p], acts) if P.symmetric else [p for p in images if p])
    onto = all(back.contains(s) for s in Small.relations)
    rep.add("images span the target relations", onto)
    return rep


def restriction_images(P: OperadPresentation, C: Configuration, Cbig: Configuration,
                       Big: OperadPresentation | None = None) -> list[TreePoly]:
    """Images of the ``Cbig``-split relations after zeroing every operation
    whose part is outside ``C``."""
    Big = split_presentation(P, Cbig) if Big is None else Big
    _, acts = split_alphabet(P, C)
    gmap = {g.id: TreePoly.of(corolla(g)) if C.contains(g.arity, g.part) else TreePoly() for g in Big.generators}
    return [normal_form(substitute_generators(r, gmap), acts) for r in Big.relations]


# ---------------------------------------------------------------- symmetric sources in nonsymmetric targets


def check_symmetric_image(Psym: OperadPresentation, images: Mapping[str, TreePoly], Pns: OperadPresentation,
                          n: int) -> Report:
    """Send each generator of the symmetric ``Psym`` to a poly of the
    nonsymmetric ``Pns`` (extended to the whole orbit through the action
    tables) and check every relabeled relation lands in the ``n``-leaf
    component of the ideal, closed under leaf relabelings."""
    rep = Report(f"{Psym.name} -> {Pns.name} through chosen generator images")
    gmap = {}
    for g in Psym.generators:
        if g.id in images:
            gmap.update(Psym.actions.orbit_closure(g, images[g.id]))
    missing = [g.id for g in Psym.generators if g.id not in gmap]
    if missing:
        rep.add("generator images", False, f"no image for {missing}")
        return rep
    space = RowSpace(ideal_component(Pns, n, relabel=True))
    rels = [r for r in orbit_closure(Psym.relations, Psym.actions) if r.leaf_count() == n]
    bad = [repr(r) for r in rels if not space.contains(substitute_generators(r, gmap))]
    rep.add(f"relations map into the {n}-leaf ideal", not bad,
            f"{len(rels) - len(bad)}/{len(rels)} relabeled relations; ideal rank {space.rank}", witness=bad[:2] or None)
    return rep


# ---------------------------------------------------------------- A-infinity bookkeeping


def _ainf_terms(n: int):
    for q in range(2, n + 1):
        for p in range(0, n - q + 1):
            r = n - p - q
            k = p + 1 + r
            if k >= 2:
                yield p, q, r, (-1) ** (p + q * r)


def ainf_split_bookkeeping(n: int) -> Report:
    """Compare three computations of the arity splitting of the quadratic part
    of the A-infinity relation in arity ``n``: the case table, the splitting
    of the actual trees, and the quintuple enumeration of the Dend-infinity
    relation.  Terms are ``(p, q, r, l, j, sign)`` multisets."""
    if not 2 <= n <= 6:
        raise SplitError("n must be in 2..6")
    rep = Report(f"A-infinity split bookkeeping, n={n}")
    arity = Configuration("arity", n_max=max(n, 2))
    for i in range(1, n + 1):
        table: Counter = Counter()
        trees: Counter = Counter()
        quint: Counter = Counter()
        for p, q, r, sign in _ainf_terms(n):
            k = p + 1 + r
            if i <= p:
                cases = [(i, j) for j in range(1, q + 1)]
            elif i <= p + q:
                cases = [(p + 1, i - p)]
            else:
                cases = [(i - q + 1, j) for j in range(1, q + 1)]
            for l, j in cases:
                table[(p, q, r, l, j, sign)] += 1
            wk, wq = Generator(f"w{k}", k), Generator(f"w{q}", q)
            inner = Vertex(wq, [Leaf(x) for x in range(p + 1, p + q + 1)])
            tau = Vertex(wk, [Leaf(x) for x in range(1, p + 1)] + [inner] + [Leaf(x) for x in range(p + q + 1, n + 1)])
            for t, c in split_tree(tau, [i], arity).items():
                l = t.gen.part[0]
                j = t.children[p].gen.part[0]
                trees[(p, q, r, l, j, sign * int(c))] += 1
        for q in range(2, n + 1):
            for p in range(0, n - q + 1):
                r = n - p - q
                for l in range(1, p + 2 + r):
                    for j in range(1, q + 1):
                        if p + 1 <= l - 1:
                            hit = i == q + l - 1
                        elif p + 1 == l:
                            hit = i == l - 1 + j
                        else:
                            hit = i == l
                        if hit and p + 1 + r >= 2:
                            quint[(p, q, r, l, j, (-1) ** (p + q * r))] += 1
        ok = table == trees == quint
        rep.add(f"i={i}", ok, f"{sum(quint.values())} signed terms",
                witness=None if ok else {"table": sorted(table), "trees": sorted(trees), "quintuples": sorted(quint)})
    if n == 2:
        rep.add("empty quadratic part", not list(_ainf_terms(2)), "no composite with k>=2 and q>=2")
    return rep


__all__ = [
    "SplitError",
    "split_generator",
    "split_alphabet",
    "split_tree",
    "split_tree_symbolic",
    "split_poly",
    "split_presentation",
    "split_relation_count",
    "align_to",
    "aligned_relations",
    "check_splitting_sum",
    "check_canonical_morphisms",
    "check_morphism",
    "induced_split_morphism",
    "restriction_morphism",
    "restriction_images",
    "check_symmetric_image",
    "ainf_split_bookkeeping",
    "not_contained",
    "PresentationError",
]
