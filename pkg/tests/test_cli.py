"""Integration tests for the command line: every verb and every
verification check is exercised."""

import json

import pytest

from operad_forge.cli import CHECKS, VERBS, build_parser, run

E12 = "[[0,0,0],[1,0,0],[0,0,0]]"
COVERED_VERBS = set()
COVERED_CHECKS = set()


def cli(capsys, *argv):
    COVERED_VERBS.add(argv[0])
    if argv[0] == "verify":
        COVERED_CHECKS.add(argv[1])
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_show(capsys):
    code, out, _ = cli(capsys, "show", "--presentation", "builtin:Dend")
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = cli(capsys, "show", "--list")
    assert code == 0 and "PartDend3" in out


def test_split_latex(capsys):
    code, out, _ = cli(capsys, "split", "--presentation", "builtin:As", "--config", "arity", "--format", "latex")
    assert code == 0 and out.count("&=") == 3 and "(x \\ast y) \\succ z &= x \\succ (y \\succ z)" in out


def test_split_trivial(capsys):
    code, out, _ = cli(capsys, "split", "--presentation", "builtin:As", "--config", "builtin:trivial")
    assert code == 0 and out.strip() == "(x · y) · z = x · (y · z)"


def test_split_json_and_out(capsys, tmp_path):
    target = tmp_path / "s.json"
    code, out, _ = cli(capsys, "split", "--presentation", "builtin:PAs3", "--config", "power", "--format", "json",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert len(json.loads(target.read_text())["generators"]) == 7


def test_presentation_from_file(capsys, tmp_path):
    from operad_forge.catalog import builtin

    f = tmp_path / "p.json"
    f.write_text(builtin("As").dumps())
    code, out, _ = cli(capsys, "split", "--presentation", str(f), "--config", "arity")
    assert code == 0 and len(out.splitlines()) == 3


def test_verify_splitting_sum(capsys):
    code, out, _ = cli(capsys, "verify", "splitting-sum", "--presentation", "builtin:3Lie", "--config", "arity",
                       "--leaf-max", "6")
    assert code == 0 and out.strip().endswith("overall: PASS")


def test_verify_canonical(capsys):
    code, _, _ = cli(capsys, "verify", "canonical", "--presentation", "builtin:As", "--config", "power",
                     "--variant", "top")
    assert code == 0


def test_verify_restriction(capsys):
    code, _, _ = cli(capsys, "verify", "restriction", "--presentation", "builtin:PAs3", "--config", "arity",
                     "--config-big", "power")
    assert code == 0
    code, _, _ = cli(capsys, "verify", "restriction", "--presentation", "builtin:As", "--config", "power",
                     "--config-big", "arity")
    assert code == 1


def test_verify_functoriality(capsys):
    code, _, _ = cli(capsys, "verify", "functoriality", "--presentation", "builtin:GenLie3", "--target",
                     "builtin:3Lie", "--config", "arity", "--map", "br=br")
    assert code == 0
    code, _, _ = cli(capsys, "verify", "functoriality", "--presentation", "builtin:PreLie", "--target",
                     "builtin:Lie", "--config", "arity", "--map", "pl[1]=br,pl[2]=br")
    assert code == 1


def test_verify_ainf(capsys):
    code, out, _ = cli(capsys, "verify", "ainf", "--n", "3", "--n", "5", "--format", "json")
    assert code == 0 and all(c["status"] == "PASS" for c in json.loads(out)["checks"])


def test_verify_closure(capsys, tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"kind": "explicit", "n_max": 3, "sets": {"1": [[1]], "2": [[1, 2]], "3": [[2], [1, 2, 3]]}}))
    code, out, _ = cli(capsys, "verify", "closure", "--config", str(f))
    assert code == 1 and "FAIL" in out
    code, _, _ = cli(capsys, "verify", "closure", "--config", "capped:2", "--n-max", "5")
    assert code == 0


def test_verify_presentation(capsys):
    code, _, _ = cli(capsys, "verify", "presentation", "--presentation", "builtin:GenPreLie3")
    assert code == 0


def test_verify_acceptance_subset(capsys):
    code, out, _ = cli(capsys, "verify", "acceptance", "--criteria", "1,10")
    assert code == 0 and "[1] span equals the dendriform axioms" in out
    code, _, err = cli(capsys, "verify", "acceptance", "--criteria", "99")
    assert code == 2 and "unknown criteria" in err


def test_rb_check(capsys):
    code, _, _ = cli(capsys, "rb-check", "--algebra", "builtin:upper3", "--config", "power", "--weight", "-1",
                     "--operator", "identity")
    assert code == 0
    code, out, _ = cli(capsys, "rb-check", "--algebra", "builtin:upper3", "--config", "arity", "--weight", "0",
                       "--operator", "identity")
    assert code == 1 and "witness" in out


def test_rb_search(capsys):
    code, out, _ = cli(capsys, "rb-search", "--algebra", "builtin:upper3", "--config", "arity", "--weight", "0",
                       "--format", "json", "--max-results", "100")
    assert code == 0
    mats = [o["matrix"] for o in json.loads(out)["operators"]]
    assert len(mats) == 21 and [["0/1", "0/1", "0/1"], ["1/1", "0/1", "0/1"], ["0/1", "0/1", "0/1"]] in mats


def test_rb_induce_and_roundtrip(capsys, tmp_path):
    code, out, _ = cli(capsys, "rb-induce", "--algebra", "builtin:upper3", "--config", "arity", "--weight", "0",
                       "--operator", E12, "--presentation", "builtin:As")
    assert code == 0
    f = tmp_path / "b.json"
    f.write_text(out)
    assert set(json.loads(out)["ops"]) == {"mu[1]", "mu[2]"}
    code, out, _ = cli(capsys, "roundtrip", "--split-algebra", str(f), "--presentation", "builtin:As",
                       "--config", "arity")
    assert code == 0 and "structure constants identical" in out
    code, _, _ = cli(capsys, "roundtrip", "--algebra", "builtin:upper3", "--operator", E12, "--weight", "0",
                     "--presentation", "builtin:As", "--config", "arity")
    assert code == 0


def test_rb_induce_precondition(capsys):
    code, _, err = cli(capsys, "rb-induce", "--algebra", "builtin:upper3", "--config", "arity", "--weight", "0",
                       "--operator", "identity", "--presentation", "builtin:As")
    assert code == 1 and "precondition" in err


def test_theorem_violation_exit_code(capsys, monkeypatch):
    from operad_forge.rota_baxter import operators

    def broken(*a, **k):
        raise operators.TheoremViolation("induced split algebra fails the split relations")
    monkeypatch.setattr("operad_forge.cli.induce_split_algebra", broken)
    code, _, err = cli(capsys, "rb-induce", "--algebra", "builtin:upper3", "--config", "arity", "--weight", "0",
                       "--operator", E12, "--presentation", "builtin:As")
    assert code == 3 and "theorem violation" in err


def test_module_check(capsys, tmp_path):
    code, _, _ = cli(capsys, "module-check", "--algebra", "builtin:upper3", "--presentation", "builtin:As",
                     "--config", "arity", "--module", "regular", "--map", E12)
    assert code == 0
    from operad_forge.configurations import parse_config
    from operad_forge.rota_baxter import ModuleData
    from operad_forge.rota_baxter.examples import upper_triangular

    A = upper_triangular()
    bad = ModuleData.regular(A, parse_config("arity")).with_entry("mu", (1,), (0, 0), 2, 1)
    f = tmp_path / "m.json"
    f.write_text(json.dumps(bad.to_json()))
    code, out, _ = cli(capsys, "module-check", "--algebra", "builtin:upper3", "--presentation", "builtin:As",
                       "--config", "arity", "--module", str(f))
    assert code == 1 and "witness" in out


def test_usage_errors(capsys, monkeypatch):
    assert cli(capsys, "show", "--presentation", "builtin:Nope")[0] == 2
    assert cli(capsys, "split", "--presentation", "builtin:As")[0] == 2
    assert cli(capsys, "split", "--presentation", "builtin:As", "--config", "wat")[0] == 2
    assert cli(capsys, "rb-check", "--algebra", "builtin:upper3", "--config", "arity", "--operator", "[[1]]")[0] == 1
    assert run(["frobnicate"]) == 2
    capsys.readouterr()
    monkeypatch.setenv("OPERAD_FORGE_THREADS", "0")
    assert cli(capsys, "show", "--list")[0] == 2
    monkeypatch.setenv("OPERAD_FORGE_THREADS", "4")
    assert cli(capsys, "show", "--list")[0] == 0


def test_guard_exit_code(capsys):
    code, _, err = cli(capsys, "rb-search", "--algebra", "builtin:3lie4", "--config", "arity", "--weight", "0",
                       "--entries=-2,-1,0,1,2")
    assert code == 2 and "exceeds" in err


def test_deterministic_output(capsys):
    argv = ["split", "--presentation", "builtin:PAs3", "--config", "power", "--format", "json"]
    first = cli(capsys, *argv)
    assert cli(capsys, *argv) == first


def test_every_verb_and_check_is_covered():
    """Runs last in this module: every verb and every check appears above."""
    parser_verbs = set(build_parser()._subparsers._group_actions[0].choices)
    assert parser_verbs == set(VERBS)
    assert COVERED_VERBS == set(VERBS)
    assert COVERED_CHECKS == set(CHECKS)
