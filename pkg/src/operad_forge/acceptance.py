"""The fourteen acceptance checks, each returning a :class:`Report` that
ends with a wall-clock budget check."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from .catalog import CATALOG, builtin, tridend_axioms
from .configurations import Configuration, parse_config, validate_closure
from .linalg import RowSpace, not_contained, span_relate
from .poly import TreePoly, corolla, normal_form
from .presentations import orbit_closure
from .report import Report
from .splitting import (
    align_to,
    aligned_relations,
    ainf_split_bookkeeping,
    check_canonical_morphisms,
    check_splitting_sum,
    check_symmetric_image,
    induced_split_morphism,
    restriction_images,
    restriction_morphism,
    split_generator,
    split_presentation,
    star_generator,
)
from .trees import Leaf, Permutation, Vertex, enumerate_reduced_trees
from .rota_baxter.algebra import LinearOperator, MultilinearAlgebra, check_algebra
from .rota_baxter.examples import three_lie_4, upper_triangular
from .rota_baxter.modules import canonical_module_from_split, relative_verdicts
from .rota_baxter.operators import induce_split_algebra, search_rb_operators, split_operation_table

BUDGETS = {1: 1, 2: 1, 3: 1, 4: 5, 5: 30, 6: 60, 7: 30, 8: 60, 9: 5, 10: 5, 11: 60, 12: 120, 13: 60, 14: 60}

TITLES = {
    1: "associative, arity splitting = dendriform",
    2: "associative, power splitting = tridendriform",
    3: "associative, index-2 splitting against the first two axiom groups",
    4: "partially and totally associative 3-algebras, arity splitting",
    5: "3-Lie and generalized 3-Lie, arity splitting",
    6: "splitting-sum identity on all trees up to 6 leaves",
    7: "canonical morphisms for every builtin presentation",
    8: "functoriality and the local commutator square",
    9: "restriction from the power to the arity splitting",
    10: "A-infinity split bookkeeping, n = 2..6",
    11: "Rota-Baxter search and induced dendriform algebras",
    12: "3-Lie Rota-Baxter operator and induced 3-pre-Lie algebra",
    13: "round trip through the canonical module, with corrupted variants",
    14: "configuration closure, tree counts and normal forms",
}


def _timed(n: int, body: Callable[[Report], None]) -> Report:
    rep = Report(f"criterion {n}: {TITLES[n]}")
    t0 = time.perf_counter()
    try:
        body(rep)
    except Exception as exc:  # reported as a failure, never swallowed silently
        rep.add("completed without error", False, f"{type(exc).__name__}: {exc}")
    dt = time.perf_counter() - t0
    rep.add("time budget", dt < BUDGETS[n], f"{dt:.2f} s (limit {BUDGETS[n]} s)")
    return rep


def _span_check(rep: Report, name: str, mine, target, actions=None):
    rel = span_relate(mine, target, actions)
    rep.add(name, rel == "equal", f"span relation: {rel}")


def _aligned(P: str, C: str, T: str, symmetric: bool = False):
    S = split_presentation(builtin(P), parse_config(C))
    Tp = builtin(T)
    mine = aligned_relations(S, Tp)
    if symmetric:
        return orbit_closure(mine, Tp.actions), orbit_closure(Tp.relations, Tp.actions), Tp.actions
    return mine, Tp.relations, None


# ---------------------------------------------------------------- symbolic criteria


def criterion_1() -> Report:
    def body(rep):
        mine, target, _ = _aligned("As", "arity", "Dend")
        rep.add("relation count", len(mine) == 3, f"{len(mine)} split relations")
        _span_check(rep, "span equals the dendriform axioms", mine, target)
    return _timed(1, body)


def criterion_2() -> Report:
    def body(rep):
        mine, target, _ = _aligned("As", "power", "TriDend")
        rep.add("relation count", len(mine) == 7, f"{len(mine)} split relations")
        _span_check(rep, "span equals the seven tridendriform axioms", mine, target)
    return _timed(2, body)


def criterion_3() -> Report:
    def body(rep):
        S = split_presentation(builtin("As"), parse_config("capped:2"))
        mine = aligned_relations(S, builtin("TriDend"))
        d12 = tridend_axioms(("d1", "d2"))
        (d3,) = tridend_axioms(("d3",))
        rep.add("relation count", len(mine) == 6, f"{len(mine)} split relations")
        missing = not_contained(d12, mine)
        extra = not_contained(mine, d12)
        rep.add("first two groups lie in the split span", not missing, f"{len(missing)} axioms outside")
        rep.add("split span lies in the first two groups", not extra, f"{len(extra)} relations outside")
        inside = RowSpace(mine).contains(d3)
        rep.add("third group (the dot-dot axiom) is absent", not inside,
                "in the split span" if inside else "not in the split span: absent, not merely redundant")
    return _timed(3, body)


def criterion_4() -> Report:
    def body(rep):
        for P, T in (("PAs3", "PartDend3"), ("TAs3", "TotDend3")):
            mine, target, _ = _aligned(P, "arity", T)
            _span_check(rep, f"{P} arity splitting = {T}", mine, target)
    return _timed(4, body)


def criterion_5() -> Report:
    def body(rep):
        for P, T in (("3Lie", "3PreLie"), ("GenLie3", "GenPreLie3")):
            mine, target, acts = _aligned(P, "arity", T, symmetric=True)
            _span_check(rep, f"{P} arity splitting = {T} (orbit closures)", mine, target, acts)
    return _timed(5, body)


SPLITTING_SUM_CASES = ("As", "Lie", "3Lie", "PAs3", "GenLie3")


def criterion_6() -> Report:
    def body(rep):
        for name in SPLITTING_SUM_CASES:
            for c in ("arity", "power", "trivial"):
                r = check_splitting_sum(builtin(name), parse_config(c), 6)
                rep.add(f"{name}, {c}", r.passed, f"{len(r.checks)} checks",
                        witness=None if r.passed else r.failures[0].witness)
    return _timed(6, body)


def builtin_names() -> list[str]:
    fixed = [n for n in CATALOG if "<" not in n]
    return fixed + [f"{fam}{k}" for fam in ("PAs", "TAs", "nLie", "nPreLie") for k in (2, 3)]


CANONICAL_CONFIGS = ("arity", "power", "trivial", "capped:2")
CANONICAL_VARIANTS = ("sum_arity", "sum_full", "top")


def cyclic_bracket_check() -> tuple[bool, str]:
    """The summed 3-Lie bracket is the cyclic sum of the 3-pre-Lie operation."""
    L = builtin("3Lie")
    S = split_presentation(L, parse_config("arity"))
    br = L.generator("br")
    star = TreePoly()
    for g in S.generators:
        star = star + TreePoly.of(corolla(g))
    b1 = split_generator(br, (1,))
    cyc = TreePoly()
    for lab in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        cyc = cyc + TreePoly.of(Vertex(b1, [Leaf(i) for i in lab]))
    lhs, rhs = S.nf(star), S.nf(cyc)
    return lhs == rhs, f"{star_generator(br).id}(1,2,3) = {b1.id}(1,2,3) + {b1.id}(2,3,1) + {b1.id}(3,1,2)"


def criterion_7() -> Report:
    def body(rep):
        applicable = skipped = 0
        for name in builtin_names():
            P = builtin(name)
            for c in CANONICAL_CONFIGS:
                C = parse_config(c)
                for v in CANONICAL_VARIANTS:
                    r = check_canonical_morphisms(P, C, v)
                    if any(ch.passed is not None for ch in r.checks):
                        applicable += 1
                    else:
                        skipped += 1
                    if not r.passed:
                        rep.add(f"{name}, {c}, {v}", False, witness=r.failures[0].detail)
        rep.add("all applicable cases", rep.passed, f"{applicable} applicable, {skipped} outside the hypotheses")
        ok, detail = cyclic_bracket_check()
        rep.add("3-Lie bracket is the cyclic sum", ok, detail)
    return _timed(7, body)


def local_commutator_images(P) -> TreePoly:
    """``{x,y,z} -> S(x,y,z) - S(x,z,y)`` with ``S`` the sum of the generators."""
    S = TreePoly()
    for g in P.generators:
        S = S + TreePoly.of(corolla(g))
    return S - S.relabel(Permutation((1, 3, 2)))


def criterion_8() -> Report:
    def body(rep):
        G, L = builtin("GenLie3"), builtin("3Lie")
        eta = {"br": (L.generator("br"), 1)}
        rep.extend(induced_split_morphism(eta, G, L, parse_config("arity")), "GenLie3 -> 3Lie: ")
        T3, GP = builtin("3PreLie"), builtin("GenPreLie3")
        span = RowSpace(orbit_closure(T3.relations, T3.actions))
        bad = [r for r in orbit_closure(GP.relations, GP.actions) if not span.contains(r)]
        rep.add("GenPreLie3 -> 3PreLie inclusion at 5 leaves", not bad, f"{len(bad)} relations outside")
        pl = GP.generators[0].id
        for target in ("PAs3", "PartDend3"):
            P = builtin(target)
            rep.extend(check_symmetric_image(GP, {pl: local_commutator_images(P)}, P, 5), "local commutator: ")
    return _timed(8, body)


def criterion_9() -> Report:
    def body(rep):
        arity, power = parse_config("arity"), parse_config("power")
        for P, T, ops in (("As", "Dend", 3), ("PAs3", "PartDend3", 7)):
            Pp, Tp = builtin(P), builtin(T)
            n_ops = len(split_presentation(Pp, power).generators)
            rep.add(f"{P}: power splitting operation count", n_ops == ops, f"{n_ops} operations")
            rep.extend(restriction_morphism(Pp, arity, power), f"{P}: ")
            imgs = [align_to(p, Tp) for p in restriction_images(Pp, arity, power) if not p.is_zero()]
            _span_check(rep, f"{P}: restricted relations span {T}", imgs, Tp.relations)
    return _timed(9, body)


def criterion_10() -> Report:
    def body(rep):
        for n in range(2, 7):
            r = ainf_split_bookkeeping(n)
            rep.add(f"n = {n}", r.passed, f"{len(r.checks)} positions",
                    witness=None if r.passed else r.failures[0].witness)
    return _timed(10, body)


# ---------------------------------------------------------------- semantic criteria


@dataclass
class SplitInstance:
    label: str
    algebra: MultilinearAlgebra  # split algebra with ids like "mu[1]"
    presentation: str
    config: str


def _renamed_to(B: MultilinearAlgebra, target) -> MultilinearAlgebra:
    by_part = {(g.arity, g.part): g for g in target.generators}
    return B.renamed({g.id: by_part[(g.arity, g.part)] for g in B.alphabet})


def dendriform_instances() -> list[tuple[LinearOperator, MultilinearAlgebra]]:
    A = upper_triangular()
    C = parse_config("arity")
    ops = search_rb_operators(A, C, 0, (-1, 0, 1), max_results=10**4)
    return [(op, induce_split_algebra(A, op, C, builtin("As"), weight=0)) for op in ops if not op.is_zero()]


def criterion_11(instances=None) -> Report:
    return _timed(11, lambda rep: _body_11(rep, dendriform_instances() if instances is None else instances))


def _body_11(rep: Report, found) -> None:
    rep.add("nonzero operators found", len(found) >= 1, f"{len(found)} nonzero operators")
    D = builtin("Dend")
    bad = [str(op.matrix) for op, B in found if not check_algebra(_renamed_to(B, D), D).passed]
    rep.add("induced algebras are dendriform (27 basis triples each)", not bad,
            f"{len(found) - len(bad)}/{len(found)} pass", witness=bad[:1] or None)


def three_lie_family():
    """Coefficient vectors in search order: all ones first, then the rest
    in lexicographic order."""
    first = (1, 1, 1, 1)
    return [first] + [c for c in itertools.product((-1, 0, 1), repeat=4) if c != first]


def three_lie_instance():
    """First structure in :func:`three_lie_family` that is 3-Lie and carries a
    weight-zero operator (at most two nonzero entries) with nonzero induced
    algebra.  Falls back to ``P = 0`` on the first 3-Lie structure."""
    L = builtin("3Lie")
    C = parse_config("arity")
    first = None
    for c in three_lie_family():
        A = three_lie_4(c)
        if not check_algebra(A, L).passed:
            continue
        first = first or (c, A)
        for op in search_rb_operators(A, C, 0, (-1, 0, 1), max_results=10**4, max_nonzeros=2):
            if not split_operation_table(A, op, C).is_zero():
                return c, A, op, "nonzero induced algebra"
    c, A = first
    return c, A, LinearOperator.zero(4), "fallback P = 0"


def criterion_12(instance=None) -> Report:
    return _timed(12, lambda rep: _body_12(rep, three_lie_instance() if instance is None else instance))


def _body_12(rep: Report, instance) -> None:
    c, A, op, how = instance
    L, T = builtin("3Lie"), builtin("3PreLie")
    rep.add("4-dimensional structure is 3-Lie", check_algebra(A, L).passed, f"coefficients {c}")
    B = induce_split_algebra(A, op, parse_config("arity"), L, weight=0)
    rep.add("operator", True, f"{how}: {[[str(x) for x in row] for row in op.matrix]}")
    r = check_algebra(_renamed_to(B, T), T)
    rep.add("{x,y,z} = [x,Py,Pz] is 3-pre-Lie", r.passed, f"{len(r.checks)} checks",
            witness=None if r.passed else r.failures[0].witness)


MUTATIONS = 10


def mutation_trials(instances, seed: int = 0, wanted: int = MUTATIONS, cap: int = 400):
    """Identity maps with one entry shifted by +-1, drawn at random over the
    instances.  Only mutations that break the direct identity count towards
    ``wanted``; all examined ones are returned with both verdicts."""
    rng = random.Random(seed)
    trials, corrupted = [], 0
    while corrupted < wanted and len(trials) < cap:
        label, A, M = instances[rng.randrange(len(instances))]
        d = A.dim
        i, j, delta = rng.randrange(d), rng.randrange(d), rng.choice((-1, 1))
        alpha = LinearOperator.identity(d)
        alpha = alpha.with_entry(i, j, alpha.matrix[i][j] + delta)
        direct, lifted = relative_verdicts(alpha, A, M, parse_config("arity"))
        trials.append((label, (i, j, delta), direct.passed, lifted.passed))
        corrupted += not direct.passed
    return trials


def criterion_13(dend=None, three=None) -> Report:
    def body(rep):
        arity = parse_config("arity")
        found = dendriform_instances() if dend is None else dend
        c, A4, op4, _ = three_lie_instance() if three is None else three
        pairs = [(f"dendriform #{k}", B, "As") for k, (_, B) in enumerate(found, 1)]
        pairs.append(("3-pre-Lie", induce_split_algebra(A4, op4, arity, builtin("3Lie"), weight=0), "3Lie"))
        modules, bad = [], []
        for label, B, P in pairs:
            A, M, r = canonical_module_from_split(B, builtin(P), arity)
            if not r.passed:
                bad.append(label)
            modules.append((label, A, M))
        rep.add("round trips reproduce the structure constants", not bad,
                f"{len(pairs) - len(bad)}/{len(pairs)} instances", witness=bad or None)
        trials = mutation_trials(modules)
        corrupted = [t for t in trials if not t[2]]
        rep.add("corrupted variants found", len(corrupted) >= MUTATIONS,
                f"{len(corrupted)} of {len(trials)} random mutations break the direct identity")
        flipped = [t for t in corrupted if not t[3]]
        rep.add("corrupted variants fail on both sides", len(flipped) == len(corrupted),
                f"{len(flipped)}/{len(corrupted)}", witness=[t for t in corrupted if t[3]][:2] or None)
        agree = [t for t in trials if t[2] == t[3]]
        rep.add("direct and lifted verdicts agree on every mutation", len(agree) == len(trials),
                f"{len(agree)}/{len(trials)}")
    return _timed(13, body)


SCHROEDER = (1, 1, 3, 11, 45, 197, 903)
CLOSURE_COUNTEREXAMPLE = {1: [(1,)], 2: [(1, 2)], 3: [(2,), (1, 2, 3)]}


def random_tree(rng: random.Random, gens, n: int):
    """Random tree with leaves ``1..n`` in a random order; ``gens`` should
    share one arity ``k`` with ``k - 1`` dividing ``n - 1``."""
    nodes: list = [Leaf(i) for i in rng.sample(range(1, n + 1), n)]
    while len(nodes) > 1:
        g = rng.choice([h for h in gens if h.arity <= len(nodes)])
        at = rng.randrange(len(nodes) - g.arity + 1)
        nodes[at:at + g.arity] = [Vertex(g, nodes[at:at + g.arity])]
    return nodes[0]


def _swap_somewhere(rng, t, actions):
    """Swap two adjacent children at a random vertex and apply the action
    table, so the result equals ``sign * t`` in the free operad."""
    verts = []

    def walk(x, path):
        if not x.is_leaf:
            verts.append(path)
            for k, c in enumerate(x.children):
                walk(c, path + (k,))
    walk(t, ())
    path = rng.choice(verts)

    def rebuild(x, p):
        if p:
            kids = list(x.children)
            kids[p[0]], s = rebuild(kids[p[0]], p[1:])
            return Vertex(x.gen, kids), s
        i = rng.randrange(1, x.gen.arity)
        h, s = actions.swap(x.gen, i)
        kids = list(x.children)
        kids[i - 1], kids[i] = kids[i], kids[i - 1]
        return Vertex(h, kids), s
    return rebuild(t, path)


def normal_form_properties(count: int = 10**4, seed: int = 0) -> tuple[int, int]:
    rng = random.Random(seed)
    pres = [builtin(n) for n in ("Lie", "PreLie", "3Lie", "GenPreLie3", "3PreLie")]
    idem = signs = 0
    for _ in range(count):
        P = rng.choice(pres)
        gens = [g for g in P.generators if not g.unary]
        sizes = [m for m in range(2, 8) if all((m - 1) % (g.arity - 1) == 0 for g in gens)]
        t = random_tree(rng, gens, rng.choice(sizes))
        p = TreePoly.of(t)
        nf = normal_form(p, P.actions)
        idem += normal_form(nf, P.actions) == nf
        t2, s = _swap_somewhere(rng, t, P.actions)
        signs += normal_form(TreePoly.of(t2), P.actions) == nf.scale(s)
    return idem, signs


def criterion_14(count: int = 10**4) -> Report:
    def body(rep):
        C = Configuration("explicit", n_max=3, sets=CLOSURE_COUNTEREXAMPLE)
        r = validate_closure(C, 3)
        rep.add("closure counterexample detected", not r.passed,
                r.checks[0].detail if r.checks else "")
        counts = tuple(len(enumerate_reduced_trees(n, range(2, max(n, 2) + 1))) for n in range(1, 8))
        rep.add("reduced planar tree counts", counts == SCHROEDER, f"{list(counts)}")
        idem, signs = normal_form_properties(count)
        rep.add("normal form is idempotent", idem == count, f"{idem}/{count} random trees")
        rep.add("swaps change the normal form by the table sign", signs == count, f"{signs}/{count} random trees")
    return _timed(14, body)


CRITERIA: dict[int, Callable[[], Report]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
    13: criterion_13, 14: criterion_14,
}


def run_all(which=None) -> dict[int, Report]:
    """Run the selected criteria.  Criteria 11 and 12 time their own
    searches; criterion 13 reuses the instances they found."""
    which = sorted(CRITERIA) if which is None else sorted(which)
    out = {}
    shared: dict = {}
    for n in which:
        if n == 11:
            out[n] = _timed(11, lambda rep: _body_11(rep, shared.setdefault("dend", dendriform_instances())))
        elif n == 12:
            out[n] = _timed(12, lambda rep: _body_12(rep, shared.setdefault("three", three_lie_instance())))
        elif n == 13:
            out[n] = criterion_13(shared.get("dend"), shared.get("three"))
        else:
            out[n] = CRITERIA[n]()
    return out


__all__ = ["CRITERIA", "BUDGETS", "TITLES", "run_all", "builtin_names", "three_lie_instance",
           "dendriform_instances", "mutation_trials", "normal_form_properties", "random_tree"]
