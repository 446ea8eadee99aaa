"""Text, JSON and LaTeX rendering of presentations and reports."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from .poly import TreePoly
from .presentations import OperadPresentation
from .report import Report
from .trees import Generator, Leaf, Tree, Vertex, parse_split_id

FORMATS = ("text", "json", "latex")

BINARY_GLYPHS = {(1,): "≺", (2,): "≻", (1, 2): "·", (): "∗"}
STAR = "∗"

LATEX = {"≺": r"\prec", "≻": r"\succ", "·": r"\cdot", "∗": r"\ast", "↖": r"\nwarrow", "↑": r"\uparrow",
         "↗": r"\nearrow", "→": r"\to", "←": r"\leftarrow", "↓": r"\downarrow"}


def parse_glyphs(spec: str | None) -> dict[tuple[int, ...], str]:
    """``"1=↖,2=↑,3=↗"``; a part with several elements is written ``1+2``
    and the star sum as ``*``."""
    if not spec:
        return {}
    out = {}
    for item in spec.split(","):
        key, sep, glyph = item.partition("=")
        if not sep or not glyph:
            raise ValueError(f"bad glyph entry {item!r}; expected part=glyph")
        key = key.strip()
        part = () if key == "*" else tuple(sorted(int(x) for x in key.split("+")))
        out[part] = glyph.strip()
    return out


def _part_of(g: Generator) -> tuple[int, ...] | None:
    if g.part is not None:
        return g.part
    parsed = parse_split_id(g.id)
    return None if parsed is None else parsed[1]


class Renderer:
    def __init__(self, glyphs: Mapping[tuple[int, ...], str] | None = None, latex: bool = False):
        self.user = dict(glyphs or {})
        self.latex = latex

    def glyph(self, g: Generator) -> str | None:
        part = _part_of(g)
        if part is None:
            return None
        if part in self.user:
            return self.user[part]
        if g.arity == 2 and part in BINARY_GLYPHS and (not self.user or part == ()):
            return BINARY_GLYPHS[part]
        if part == () and self.user:
            return STAR
        return None

    def _sym(self, s: str) -> str:
        if not self.latex:
            return s
        return LATEX.get(s, s if s.isascii() else rf"\text{{{s}}}")

    def var(self, label: int, n: int) -> str:
        if n <= 3:
            return "xyz"[label - 1] if label <= 3 else f"x_{label}"
        return f"x_{{{label}}}" if self.latex else f"x{label}"

    def tree(self, t: Tree, n: int, top: bool = True) -> str:
        if isinstance(t, Leaf):
            return self.var(t.label, n)
        g = t.gen
        glyph = self.glyph(g)
        kids = [self.tree(c, n, False) for c in t.children]
        if glyph is not None and g.arity == 2:
            body = f"{kids[0]} {self._sym(glyph)} {kids[1]}"
            return body if top else f"({body})"
        if glyph is not None:
            return f"{self._sym(glyph)}({', '.join(kids)})"
        part = _part_of(g)
        if part is not None:
            base = g.base or parse_split_id(g.id)[0]
            label = "*" if part == () else ",".join(map(str, part))
            name = rf"({base},e_{{{label}}})" if self.latex else f"({base},e_{{{label}}})"
            return f"{name}({', '.join(kids)})"
        name = rf"\mathrm{{{_tex_escape(g.id)}}}" if self.latex else g.id
        return f"{name}({', '.join(kids)})"

    def side(self, terms: list[tuple[Tree, Fraction]], n: int) -> str:
        if not terms:
            return "0"
        out = []
        for i, (t, c) in enumerate(terms):
            s = self.tree(t, n)
            mag = abs(c)
            coef = "" if mag == 1 else (f"\\tfrac{{{mag.numerator}}}{{{mag.denominator}}}" if self.latex and mag.denominator != 1 else str(mag))
            sep = " " if coef else ""
            body = f"{coef}{sep}{s}" if coef else s
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def relation(self, p: TreePoly, siblings: Mapping[tuple[str, int], list[Generator]]) -> str:
        p = collapse_stars(p, siblings)
        n = p.leaf_count() or 0
        items = p.items()
        lhs = [(t, c) for t, c in items if c > 0]
        rhs = [(t, -c) for t, c in items if c < 0]
        if not lhs:
            lhs, rhs = rhs, []
        return f"{self.side(lhs, n)} = {self.side(rhs, n)}"


def _tex_escape(s: str) -> str:
    return s.replace("_", r"\_")


def _siblings(P: OperadPresentation) -> dict[tuple[str, int], list[Generator]]:
    out: dict[tuple[str, int], list[Generator]] = {}
    for g in P.generators:
        part = _part_of(g)
        if part:
            base = g.base or parse_split_id(g.id)[0]
            out.setdefault((base, g.arity), []).append(g)
    return out


def _star_of(g: Generator) -> Generator:
    base = g.base or parse_split_id(g.id)[0]
    return Generator(f"{base}[*]", g.arity, base=base, part=())


def collapse_stars(p: TreePoly, siblings: Mapping[tuple[str, int], list[Generator]]) -> TreePoly:
    """Fold groups of terms that differ only by the part at one vertex and
    run over every part into a single term with the star symbol."""
    changed = True
    while changed:
        changed = False
        for t, c in p.items():
            for path, g in _split_vertices(t):
                key = (g.base or parse_split_id(g.id)[0], g.arity)
                fam = siblings.get(key, [])
                if len(fam) < 2:
                    continue
                variants = [_replace_at(t, path, h) for h in fam]
                if all(p.coeff(v) == c for v in variants):
                    rest = p - TreePoly({v: c for v in variants})
                    p = rest + TreePoly.of(_replace_at(t, path, _star_of(g)), c)
                    changed = True
                    break
            if changed:
                break
    return p


def _split_vertices(t: Tree, path=()):
    if t.is_leaf:
        return
    part = _part_of(t.gen)
    if part:
        yield path, t.gen
    for i, c in enumerate(t.children):
        yield from _split_vertices(c, path + (i,))


def _replace_at(t: Tree, path, g: Generator) -> Tree:
    if not path:
        return Vertex(g, t.children)
    kids = list(t.children)
    kids[path[0]] = _replace_at(kids[path[0]], path[1:], g)
    return Vertex(t.gen, kids)


# ---------------------------------------------------------------- entry points


def render_presentation(P: OperadPresentation, fmt: str = "text",
                        glyphs: Mapping[tuple[int, ...], str] | None = None) -> str:
    if fmt == "json":
        return P.dumps()
    sib = _siblings(P)
    if fmt == "text":
        r = Renderer(glyphs)
        return "\n".join(r.relation(p, sib) for p in P.relations)
    if fmt == "latex":
        r = Renderer(glyphs, latex=True)
        lines = [r.relation(p, sib) for p in P.relations]
        return _latex_doc([ln.replace(" = ", " &= ", 1) for ln in lines])
    raise ValueError(f"unknown format {fmt!r}")


def _latex_doc(rows: list[str]) -> str:
    body = " \\\\\n".join(rows) if rows else r"\text{no relations}"
    return "\n".join([
        r"\documentclass{article}",
        r"\usepackage{amsmath,amssymb}",
        r"\begin{document}",
        r"\begin{align*}",
        body,
        r"\end{align*}",
        r"\end{document}",
        "",
    ])


def render_report(rep: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(rep.to_json(), ensure_ascii=False, indent=1, default=str)
    if fmt == "text":
        return rep.to_text()
    if fmt == "latex":
        rows = [r"\begin{tabular}{lll}", r"\textbf{status} & \textbf{check} & \textbf{detail} \\ \hline"]
        for c in rep.checks:
            rows.append(f"{c.status} & {_tex_text(c.name)} & {_tex_text(c.detail)} \\\\")
        rows.append(r"\end{tabular}")
        return "\n".join([r"\documentclass{article}", r"\usepackage{amsmath,amssymb}", r"\begin{document}",
                          *rows, r"\end{document}", ""])
    raise ValueError(f"unknown format {fmt!r}")


_TEX_SPECIAL = {"\\": r"\textbackslash{}", "_": r"\_", "&": r"\&", "%": r"\%", "#": r"\#",
                "{": r"\{", "}": r"\}", "$": r"\$"}


def _tex_text(s: str) -> str:
    return "".join(_TEX_SPECIAL.get(ch, ch) for ch in s)


__all__ = ["FORMATS", "parse_glyphs", "render_presentation", "render_report", "collapse_stars", "Renderer"]
