"""Built-in presentations of the operads used throughout the package.

Relations are written in the bracket notation of :mod:`operad_forge.trees`.
Symmetric presentations may use arguments in any order; they are brought to
normal form on construction.  ``S`` (arity 2 or 3) is a temporary symbol for
the sum of all operations of that arity; ``O`` is the cyclic sum used by the
ternary pre-Lie families.
"""

from __future__ import annotations

import re
from typing import Callable, Mapping, Sequence

from .poly import Actions, TreePoly, corolla, normal_form, parse_poly, substitute_generators
from .presentations import OperadPresentation, PresentationError
from .trees import Generator, Permutation, split_id


def _parse_all(texts: Sequence[str], gens: Sequence[Generator], extra: Mapping[str, TreePoly] | None = None,
               alias: Mapping[str, Generator] | None = None) -> list[TreePoly]:
    """Parse relation strings.  ``extra`` maps auxiliary symbols to their
    expansions (placeholder leaves ``1..arity``); ``alias`` adds names."""
    alphabet = {g.id: g for g in gens}
    alphabet.update(alias or {})
    aux = {}
    for name, img in (extra or {}).items():
        aux[name] = Generator(name, img.leaf_count())
    alphabet.update(aux)
    gmap = {g.id: TreePoly.of(corolla(g)) for g in gens}
    for name, g in (alias or {}).items():
        gmap[g.id] = TreePoly.of(corolla(g))
    gmap.update(extra or {})
    return [substitute_generators(parse_poly(t, alphabet), gmap) for t in texts]


def _sum_of(gens: Sequence[Generator]) -> TreePoly:
    out = TreePoly()
    for g in gens:
        out = out + TreePoly.of(corolla(g))
    return out


def skew_actions(g: Generator) -> Actions:
    return Actions({g: {i: (g, -1) for i in range(1, g.arity)}})


def part_family(base: str, arity: int, parts: Sequence[tuple[int, ...]], base_sign: int,
                ids: Mapping[tuple[int, ...], str] | None = None) -> tuple[list[Generator], Actions]:
    """Generators indexed by subsets of argument positions, permuted by the
    symmetric group with a constant sign (the signed-monomial action of a
    base operation with ``g^(i,i+1) = base_sign * g``)."""
    ids = ids or {}
    gens = {p: Generator(ids.get(p, split_id(base, p)), arity, base=base, part=p) for p in parts}
    table = {}
    for p, g in gens.items():
        row = {}
        for i in range(1, arity):
            img = tuple(sorted(i + 1 if x == i else i if x == i + 1 else x for x in p))
            row[i] = (gens[img], base_sign)
        table[g] = row
    return list(gens.values()), Actions(table)


# ---------------------------------------------------------------- nonsymmetric


def _as() -> OperadPresentation:
    mu = Generator("mu", 2)
    return OperadPresentation("As", False, [mu], _parse_all(["mu(mu(1,2),3) - mu(1,mu(2,3))"], [mu]))


def _as_sym() -> OperadPresentation:
    mu = Generator("mu", 2)
    op = Generator("mu_op", 2)
    acts = Actions({mu: {1: (op, 1)}, op: {1: (mu, 1)}})
    rels = [normal_form(r, acts) for r in _parse_all(["mu(mu(1,2),3) - mu(1,mu(2,3))"], [mu, op])]
    return OperadPresentation("AsSym", True, [mu, op], rels, acts)


def _dend() -> OperadPresentation:
    prec = Generator("prec", 2, base="mu", part=(1,))
    succ = Generator("succ", 2, base="mu", part=(2,))
    gens = [prec, succ]
    rels = _parse_all([
        "prec(prec(1,2),3) - prec(1,S(2,3))",
        "prec(succ(1,2),3) - succ(1,prec(2,3))",
        "succ(S(1,2),3) - succ(1,succ(2,3))",
    ], gens, {"S": _sum_of(gens)})
    return OperadPresentation("Dend", False, gens, rels)


def _tridend_rel_texts() -> list[str]:
    return [
        "prec(prec(1,2),3) - prec(1,S(2,3))",
        "prec(succ(1,2),3) - succ(1,prec(2,3))",
        "succ(S(1,2),3) - succ(1,succ(2,3))",
        "prec(dot(1,2),3) - dot(1,prec(2,3))",
        "dot(prec(1,2),3) - dot(1,succ(2,3))",
        "dot(succ(1,2),3) - succ(1,dot(2,3))",
        "dot(dot(1,2),3) - dot(1,dot(2,3))",
    ]


def _tridend_gens():
    return [Generator("prec", 2, base="mu", part=(1,)), Generator("succ", 2, base="mu", part=(2,)),
            Generator("dot", 2, base="mu", part=(1, 2))]


def _tridend() -> OperadPresentation:
    gens = _tridend_gens()
    return OperadPresentation("TriDend", False, gens, _parse_all(_tridend_rel_texts(), gens, {"S": _sum_of(gens)}))


def _dend_rel_names():
    return ["d1a", "d1b", "d1c", "d2a", "d2b", "d2c", "d3"]


def tridend_axioms(groups: Sequence[str] = ("d1", "d2", "d3")) -> list[TreePoly]:
    """Subsets of the tridendriform axioms, by display group."""
    gens = _tridend_gens()
    rels = _parse_all(_tridend_rel_texts(), gens, {"S": _sum_of(gens)})
    return [r for r, nm in zip(rels, _dend_rel_names()) if nm[:2] in groups]


def _leaves_text(labels) -> list[str]:
    return [str(x) for x in labels]


def _pas(n: int) -> OperadPresentation:
    w = Generator("w", n)
    terms = []
    for i in range(n):
        args = _leaves_text(range(1, i + 1)) + [f"w({','.join(_leaves_text(range(i + 1, i + n + 1)))})"] \
            + _leaves_text(range(i + n + 1, 2 * n))
        sign = "-" if (i * (n - 1)) % 2 else "+"
        terms.append(f"{sign} w({','.join(args)})")
    return OperadPresentation(f"PAs{n}", False, [w], _parse_all([" ".join(terms)], [w]))


def _tas_term(n: int, i: int) -> str:
    args = _leaves_text(range(1, i + 1)) + [f"w({','.join(_leaves_text(range(i + 1, i + n + 1)))})"] \
        + _leaves_text(range(i + n + 1, 2 * n))
    return f"w({','.join(args)})"


def _tas(n: int) -> OperadPresentation:
    w = Generator("w", n)
    texts = [f"{_tas_term(n, 0)} - {_tas_term(n, i)}" for i in range(1, n)]
    return OperadPresentation(f"TAs{n}", False, [w], _parse_all(texts, [w]))


def _dend3_gens():
    return [Generator("nw", 3, base="w", part=(1,)), Generator("up", 3, base="w", part=(2,)),
            Generator("ne", 3, base="w", part=(3,))]


def _partdend3() -> OperadPresentation:
    gens = _dend3_gens()
    rels = _parse_all([
        "nw(nw(1,2,3),4,5) + nw(1,S(2,3,4),5) + nw(1,2,S(3,4,5))",
        "nw(up(1,2,3),4,5) + up(1,nw(2,3,4),5) + up(1,2,S(3,4,5))",
        "nw(ne(1,2,3),4,5) + up(1,up(2,3,4),5) + ne(1,2,nw(3,4,5))",
        "up(S(1,2,3),4,5) + up(1,ne(2,3,4),5) + ne(1,2,up(3,4,5))",
        "ne(S(1,2,3),4,5) + ne(1,S(2,3,4),5) + ne(1,2,ne(3,4,5))",
    ], gens, {"S": _sum_of(gens)})
    return OperadPresentation("PartDend3", False, gens, rels)


def _totdend3() -> OperadPresentation:
    gens = _dend3_gens()
    rels = _parse_all([
        "nw(nw(1,2,3),4,5) - nw(1,S(2,3,4),5)",
        "nw(nw(1,2,3),4,5) - nw(1,2,S(3,4,5))",
        "nw(up(1,2,3),4,5) - up(1,nw(2,3,4),5)",
        "nw(up(1,2,3),4,5) - up(1,2,S(3,4,5))",
        "nw(ne(1,2,3),4,5) - up(1,up(2,3,4),5)",
        "nw(ne(1,2,3),4,5) - ne(1,2,nw(3,4,5))",
        "up(S(1,2,3),4,5) - up(1,ne(2,3,4),5)",
        "up(S(1,2,3),4,5) - ne(1,2,up(3,4,5))",
        "ne(S(1,2,3),4,5) - ne(1,S(2,3,4),5)",
        "ne(S(1,2,3),4,5) - ne(1,2,ne(3,4,5))",
    ], gens, {"S": _sum_of(gens)})
    return OperadPresentation("TotDend3", False, gens, rels)


# ---------------------------------------------------------------- symmetric


def _symmetric(name, gens, acts, texts, extra=None, alias=None, absorbed=()):
    rels = [normal_form(r, acts) for r in _parse_all(texts, gens, extra, alias)]
    return OperadPresentation(name, True, list(gens), rels, acts, list(absorbed))


def _lie() -> OperadPresentation:
    br = Generator("br", 2)
    return _symmetric("Lie", [br], skew_actions(br), ["br(br(1,2),3) + br(br(2,3),1) + br(br(3,1),2)"],
                      absorbed=["antisymmetry [x,y] = -[y,x]"])


def _prelie() -> OperadPresentation:
    gens, acts = part_family("pl", 2, [(1,), (2,)], -1)
    pl = gens[0]
    return _symmetric("PreLie", gens, acts,
                      ["pl(pl(1,2),3) - pl(1,pl(2,3)) - pl(pl(1,3),2) + pl(1,pl(3,2))"],
                      alias={"pl": pl},
                      absorbed=["pl[2](x,y) = -pl[1](y,x)"])


def _postlie() -> OperadPresentation:
    gens, acts = part_family("post", 2, [(1,), (2,), (1, 2)], -1)
    by_part = {g.part: g for g in gens}
    return _symmetric("PostLie", gens, acts, [
        "lb(lb(1,2),3) + lb(lb(2,3),1) + lb(lb(3,1),2)",
        "tri(1,lb(2,3)) - lb(tri(1,2),3) - lb(2,tri(1,3))",
        "tri(lb(1,2),3) - tri(1,tri(2,3)) + tri(tri(1,2),3) + tri(2,tri(1,3)) - tri(tri(2,1),3)",
    ], alias={"tri": by_part[(2,)], "lb": by_part[(1, 2)]},
        absorbed=["[x,y] = -[y,x]", "post[1](x,y) = -post[2](y,x)"])


def _nlie(n: int) -> OperadPresentation:
    br = Generator("br", n)
    xs = list(range(1, n + 1))
    tail = list(range(n + 1, 2 * n))
    lhs = f"br(br({','.join(map(str, xs))}),{','.join(map(str, tail))})"
    terms = [lhs]
    for i in range(1, n + 1):
        inner = f"br({','.join(map(str, [i] + tail))})"
        args = [str(x) if x != i else inner for x in xs]
        terms.append(f"- br({','.join(args)})")
    name = "3Lie" if n == 3 else ("Lie" if n == 2 else f"{n}Lie")
    return _symmetric(name, [br], skew_actions(br), [" ".join(terms)],
                      absorbed=["skew-symmetry of the bracket"])


def _genlie3() -> OperadPresentation:
    br = Generator("br", 3)
    text = (
        "br(br(1,2,3),4,5) - br(br(1,2,4),3,5) + br(br(1,3,4),2,5) - br(br(2,3,4),1,5)"
        " + br(br(1,2,5),3,4) + br(br(3,4,5),1,2) - br(br(1,3,5),2,4) - br(br(2,4,5),1,3)"
        " + br(br(1,4,5),2,3) + br(br(2,3,5),1,4)"
    )
    return _symmetric("GenLie3", [br], skew_actions(br), [text], absorbed=["skew-symmetry of the bracket"])


def _cyclic_sum(pl: Generator, n: int) -> TreePoly:
    """Signed sum of the cyclic rotations of ``pl``; sign ``(-1)^((1+i)(n+1-i))``."""
    out = TreePoly()
    for i in range(1, n + 1):
        rot = list(range(i, n + 1)) + list(range(1, i))
        sign = -1 if ((1 + i) * (n + 1 - i)) % 2 else 1
        out = out + TreePoly.of(corolla(pl)).relabel(_perm_from_positions(rot)).scale(sign)
    return out


def _perm_from_positions(rot: list[int]) -> Permutation:
    # corolla leaf at position k gets label rot[k-1]
    return Permutation(tuple(rot))


def _nprelie(n: int) -> OperadPresentation:
    gens, acts = part_family("pl", n, [(k,) for k in range(1, n + 1)], -1)
    pl = gens[0]
    xs = list(range(1, n + 1))
    tail = list(range(n + 1, 2 * n))
    s = lambda xs_: ",".join(map(str, xs_))
    r1 = [f"pl(pl({s(xs)}),{s(tail)})", f"- pl(pl({s([1] + tail)}),{s(xs[1:])})"]
    for i in range(2, n + 1):
        args = [str(x) if x != i else f"O({s([i] + tail)})" for x in xs]
        r1.append(f"- pl({','.join(args)})")
    r2 = [f"pl({n + 1},O({s(xs)}),{s(tail[1:])})" if n > 2 else f"pl({n + 1},O({s(xs)}))"]
    for i in range(1, n + 1):
        sign = "-" if ((1 + i) * (n + 1 - i)) % 2 == 0 else "+"
        first = f"pl({s([n + 1, i] + tail[1:])})"
        rest = list(range(i + 1, n + 1)) + list(range(1, i))
        r2.append(f"{sign} pl({first},{s(rest)})")
    name = "3PreLie" if n == 3 else ("PreLie2" if n == 2 else f"{n}PreLie")
    return _symmetric(name, gens, acts, [" ".join(r1), " ".join(r2)],
                      extra={"O": _cyclic_sum(pl, n)}, alias={"pl": pl},
                      absorbed=["{x1,x2,...} skew in the last n-1 arguments"])


def _genprelie3() -> OperadPresentation:
    gens, acts = part_family("pl", 3, [(1,), (2,), (3,)], -1)
    pl = gens[0]
    text = (
        "pl(pl(1,2,3),4,5) - pl(pl(1,2,4),3,5) + pl(pl(1,2,5),3,4) + pl(pl(1,3,4),2,5)"
        " - pl(pl(1,3,5),2,4) + pl(pl(1,4,5),2,3) + pl(1,O(2,3,4),5)"
        " - pl(1,O(2,3,5),4) + pl(1,O(2,4,5),3) - pl(1,O(3,4,5),2)"
    )
    return _symmetric("GenPreLie3", gens, acts, [text], extra={"O": _cyclic_sum(pl, 3)}, alias={"pl": pl},
                      absorbed=["{x1,x2,x3} = -{x1,x3,x2}"])


# ---------------------------------------------------------------- lookup

_FIXED: dict[str, Callable[[], OperadPresentation]] = {
    "As": _as,
    "AsSym": _as_sym,
    "Dend": _dend,
    "TriDend": _tridend,
    "Lie": _lie,
    "PreLie": _prelie,
    "PostLie": _postlie,
    "3Lie": lambda: _nlie(3),
    "GenLie3": _genlie3,
    "3PreLie": lambda: _nprelie(3),
    "GenPreLie3": _genprelie3,
    "PartDend3": _partdend3,
    "TotDend3": _totdend3,
}

_FAMILIES: dict[str, Callable[[int], OperadPresentation]] = {
    "PAs": _pas,
    "TAs": _tas,
    "nLie": _nlie,
    "nPreLie": _nprelie,
}

CATALOG = sorted(_FIXED) + [f"{f}<n>" for f in sorted(_FAMILIES)]

_cache: dict[tuple[str, int | None], OperadPresentation] = {}


def builtin(name: str, n: int | None = None) -> OperadPresentation:
    """Catalog lookup.  Families accept ``PAs3``, ``PAs:3`` or ``n=3``."""
    key = (name, n)
    if key in _cache:
        return _cache[key]
    if name in _FIXED and n is None:
        P = _FIXED[name]()
    else:
        m = re.fullmatch(r"(PAs|TAs|nLie|nPreLie):?(\d+)?", name)
        if m is None:
            raise PresentationError(f"unknown builtin presentation {name!r}; known: {', '.join(CATALOG)}")
        fam, num = m.group(1), m.group(2)
        if num is not None:
            if n is not None and int(num) != n:
                raise PresentationError(f"conflicting arities in {name!r} and n={n}")
            n = int(num)
        if n is None:
            raise PresentationError(f"{fam} needs an arity n")
        if not 2 <= n <= 4:
            raise PresentationError(f"{fam}: n={n} outside the supported range 2..4")
        P = _FAMILIES[fam](n)
    _cache[key] = P
    return P


__all__ = ["builtin", "CATALOG", "tridend_axioms", "part_family", "skew_actions"]
