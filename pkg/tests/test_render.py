import json

import pytest

from operad_forge.catalog import builtin
from operad_forge.configurations import parse_config
from operad_forge.render import parse_glyphs, render_presentation, render_report
from operad_forge.report import Report
from operad_forge.splitting import split_presentation

DEND = [
    "(x ≺ y) ≺ z = x ≺ (y ∗ z)",
    "(x ≻ y) ≺ z = x ≻ (y ≺ z)",
    "(x ∗ y) ≻ z = x ≻ (y ≻ z)",
]


def test_dend_text():
    assert render_presentation(builtin("Dend")).splitlines() == DEND
    assert render_presentation(split_presentation(builtin("As"), parse_config("arity"))).splitlines() == DEND


def test_trivial_split_is_associativity():
    (line,) = render_presentation(split_presentation(builtin("As"), parse_config("trivial"))).splitlines()
    assert line == "(x · y) · z = x · (y · z)"


def test_partdend3_glyphs():
    lines = render_presentation(builtin("PartDend3"), "text", parse_glyphs("1=↖,2=↑,3=↗")).splitlines()
    assert len(lines) == 5
    assert lines[0] == "↖(↖(x1, x2, x3), x4, x5) + ↖(x1, ∗(x2, x3, x4), x5) + ↖(x1, x2, ∗(x3, x4, x5)) = 0"


def test_missing_glyph_falls_back():
    S = split_presentation(builtin("PAs3"), parse_config("arity"))
    text = render_presentation(S, "text", parse_glyphs("1=↖"))
    assert "(w,e_{2})" in text and "↖" in text


def test_latex_document():
    tex = render_presentation(builtin("Dend"), "latex")
    assert tex.startswith("\\documentclass") and tex.count("&=") == 3
    assert "\\prec" in tex and "\\succ" in tex


def test_json_format():
    obj = json.loads(render_presentation(builtin("Dend"), "json"))
    assert obj["name"] == "Dend" and len(obj["relations"]) == 3


def test_empty_report_json():
    assert json.loads(render_report(Report(), "json")) == {"checks": []}


def test_report_latex_escapes():
    rep = Report("x")
    rep.add("a_b & c", False, "50% {x}")
    tex = render_report(rep, "latex")
    assert "a\\_b \\& c" in tex and "50\\% \\{x\\}" in tex


def test_bad_glyphs():
    with pytest.raises(ValueError):
        parse_glyphs("1")
