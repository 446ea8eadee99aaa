"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a failed check or an unmet
precondition, 2 on usage, input or guard errors, 3 when a structure that
must satisfy the split relations does not.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .catalog import CATALOG, builtin
from .configurations import ConfigError, Configuration, parse_config, validate_closure
from .poly import as_fraction
from .presentations import OperadPresentation, PresentationError, load_presentation, validate
from .render import FORMATS, parse_glyphs, render_presentation, render_report
from .report import Report
from .rota_baxter.algebra import AlgebraError, GuardError, LinearMap, LinearOperator, MultilinearAlgebra
from .rota_baxter.examples import builtin_algebra
from .rota_baxter.modules import ModuleData, canonical_module_from_split, check_module, check_relative_rb, induce_on_module
from .rota_baxter.operators import (
    PreconditionError,
    TheoremViolation,
    check_crb_operator,
    induce_split_algebra,
    search_rb_operators,
)
from .splitting import (
    SplitError,
    ainf_split_bookkeeping,
    check_canonical_morphisms,
    check_splitting_sum,
    induced_split_morphism,
    restriction_morphism,
    split_presentation,
)
from .trees import TreeError

VERBS = ("show", "split", "verify", "rb-check", "rb-search", "rb-induce", "module-check", "roundtrip")
CHECKS = ("splitting-sum", "canonical", "restriction", "functoriality", "ainf", "closure", "presentation",
          "acceptance")
THREADS_ENV = "OPERAD_FORGE_THREADS"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- loading


def load_pres(spec: str | None) -> OperadPresentation:
    if not spec:
        raise UsageError("--presentation is required")
    if spec.startswith("builtin:"):
        return builtin(spec[len("builtin:"):])
    return load_presentation(spec)


def load_config(spec: str | None, n_max: int = 7) -> Configuration:
    if not spec:
        raise UsageError("--config is required")
    if not spec.startswith("builtin:") and Path(spec).is_file():
        return Configuration.from_json(json.loads(Path(spec).read_text()))
    return parse_config(spec, n_max)


def _json_arg(spec: str):
    """A path to a JSON file or an inline JSON value."""
    p = Path(spec)
    if p.is_file():
        return json.loads(p.read_text())
    try:
        return json.loads(spec)
    except json.JSONDecodeError:
        raise UsageError(f"{spec!r} is neither a file nor inline JSON") from None


def load_algebra(spec: str | None, P: OperadPresentation | None = None) -> MultilinearAlgebra:
    if not spec:
        raise UsageError("--algebra is required")
    if spec.startswith("builtin:"):
        return builtin_algebra(spec[len("builtin:"):])
    return MultilinearAlgebra.from_json(_json_arg(spec), P.generators if P is not None else None)


def load_operator(spec: str | None, dim: int) -> LinearOperator:
    if not spec:
        raise UsageError("--operator is required")
    if spec in ("identity", "zero"):
        return getattr(LinearOperator, spec)(dim)
    obj = _json_arg(spec)
    return LinearOperator.from_json(obj if isinstance(obj, dict) else {"matrix": obj})


def load_map(spec: str | None, rows: int, cols: int) -> LinearMap:
    if not spec or spec == "identity":
        if rows != cols:
            raise UsageError("the identity map needs dim A = dim U")
        return LinearOperator.identity(rows)
    obj = _json_arg(spec)
    return LinearMap.from_json(obj if isinstance(obj, dict) else {"matrix": obj})


def check_threads(env=os.environ) -> int:
    """Validate the thread cap.  Evaluation is sequential, so the value only
    has to be a positive integer."""
    raw = env.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="operad-forge", description="Splitting of operads by configurations.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, config=True):
        sp.add_argument("--presentation", help="builtin:<name> or a JSON file")
        if config:
            sp.add_argument("--config", help="arity, power, trivial, capped:m (builtin: prefix optional) or a JSON file")
        sp.add_argument("--format", choices=FORMATS, default="text")
        sp.add_argument("--out", help="write the output to this file")
        sp.add_argument("--n-max", type=int, default=7, help="largest arity the configuration covers")
        return sp

    sp = common(sub.add_parser("show", help="print a presentation"), config=False)
    sp.add_argument("--glyphs", help="glyph table such as 1=↖,2=↑,3=↗")
    sp.add_argument("--list", action="store_true", help="list the builtin presentations")

    sp = common(sub.add_parser("split", help="print the split presentation"))
    sp.add_argument("--glyphs")

    sp = common(sub.add_parser("verify", help="run a verification"))
    sp.add_argument("check", choices=CHECKS)
    sp.add_argument("--leaf-max", type=int, default=6)
    sp.add_argument("--variant", choices=("sum_arity", "sum_full", "top"), default="sum_arity")
    sp.add_argument("--config-big", help="larger configuration for restriction")
    sp.add_argument("--target", help="target presentation for functoriality")
    sp.add_argument("--map", help="generator map src=dst[:sign],... (default: equal ids)")
    sp.add_argument("--n", type=int, action="append", help="arity for ainf (repeatable; default 2..6)")
    sp.add_argument("--criteria", help="comma separated criterion numbers for acceptance")

    def rb(sp):
        common(sp)
        sp.add_argument("--algebra", help="builtin:upper3, builtin:3lie4[:c1,c2,c3,c4] or a JSON file")
        sp.add_argument("--weight", default="1", help="weight as p/q")
        return sp

    sp = rb(sub.add_parser("rb-check", help="check a Rota-Baxter operator"))
    sp.add_argument("--operator", help="identity, zero, a JSON file or inline JSON")
    sp = rb(sub.add_parser("rb-search", help="search Rota-Baxter operators"))
    sp.add_argument("--entries", default="-1,0,1")
    sp.add_argument("--max-results", type=int, default=100)
    sp.add_argument("--max-nonzeros", type=int)
    sp = rb(sub.add_parser("rb-induce", help="induced split algebra of a Rota-Baxter operator"))
    sp.add_argument("--operator")
    sp = rb(sub.add_parser("module-check", help="check a module and a relative Rota-Baxter map"))
    sp.add_argument("--module", help="module JSON file or inline JSON")
    sp.add_argument("--map", help="U -> A matrix (identity, JSON file or inline JSON)")
    sp = rb(sub.add_parser("roundtrip", help="split algebra -> module -> split algebra"))
    sp.add_argument("--operator", help="with --algebra: build the split algebra first")
    sp.add_argument("--split-algebra", help="split algebra JSON (operations named like mu[1])")
    return p


# ---------------------------------------------------------------- verbs


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _report(args, rep: Report) -> int:
    _emit(args, render_report(rep, args.format))
    return 0 if rep.passed else 1


def cmd_show(args) -> int:
    if args.list:
        _emit(args, "\n".join(CATALOG))
        return 0
    P = load_pres(args.presentation)
    _emit(args, render_presentation(P, args.format, parse_glyphs(args.glyphs)))
    return 0


def cmd_split(args) -> int:
    P = load_pres(args.presentation)
    S = split_presentation(P, load_config(args.config, args.n_max))
    _emit(args, render_presentation(S, args.format, parse_glyphs(args.glyphs)))
    return 0


def _parse_map(spec: str | None, src: OperadPresentation, dst: OperadPresentation):
    out = {}
    if not spec:
        for g in src.generators:
            out[g.id] = (dst.generator(g.id), 1)
        return out
    for item in spec.split(","):
        a, sep, b = item.partition("=")
        if not sep:
            raise UsageError(f"bad map entry {item!r}; expected src=dst[:sign]")
        b, _, sign = b.partition(":")
        out[a.strip()] = (dst.generator(b.strip()), int(sign or 1))
    missing = [g.id for g in src.generators if g.id not in out]
    if missing:
        raise UsageError(f"map misses generators {missing}")
    return out


def cmd_verify(args) -> int:
    c = args.check
    if c == "acceptance":
        from .acceptance import CRITERIA, run_all

        which = None
        if args.criteria:
            which = [int(x) for x in args.criteria.split(",")]
            bad = [n for n in which if n not in CRITERIA]
            if bad:
                raise UsageError(f"unknown criteria {bad}")
        rep = Report("acceptance")
        for n, r in run_all(which).items():
            rep.extend(r, f"[{n}] ")
        return _report(args, rep)
    if c == "ainf":
        rep = Report("A-infinity split bookkeeping")
        for n in args.n or range(2, 7):
            rep.extend(ainf_split_bookkeeping(n), f"n={n}: ")
        return _report(args, rep)
    if c == "closure":
        C = load_config(args.config, args.n_max)
        return _report(args, validate_closure(C, min(C.n_max, args.n_max)))
    P = load_pres(args.presentation)
    if c == "presentation":
        return _report(args, validate(P))
    C = load_config(args.config, args.n_max)
    if c == "splitting-sum":
        return _report(args, check_splitting_sum(P, C, args.leaf_max))
    if c == "canonical":
        return _report(args, check_canonical_morphisms(P, C, args.variant))
    if c == "restriction":
        big = load_config(args.config_big or "power", args.n_max)
        return _report(args, restriction_morphism(P, C, big))
    if c == "functoriality":
        T = load_pres(args.target)
        return _report(args, induced_split_morphism(_parse_map(args.map, P, T), P, T, C))
    raise UsageError(f"unknown check {c}")  # pragma: no cover


def _weight(args):
    try:
        return as_fraction(args.weight)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad weight {args.weight!r}") from None


def _opt_pres(args) -> OperadPresentation | None:
    return load_pres(args.presentation) if args.presentation else None


def cmd_rb_check(args) -> int:
    P = _opt_pres(args)
    A = load_algebra(args.algebra, P)
    op = load_operator(args.operator, A.dim)
    return _report(args, check_crb_operator(A, op, load_config(args.config, args.n_max), _weight(args)))


def cmd_rb_search(args) -> int:
    P = _opt_pres(args)
    A = load_algebra(args.algebra, P)
    try:
        entries = [as_fraction(x) for x in args.entries.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad entries {args.entries!r}") from None
    ops = search_rb_operators(A, load_config(args.config, args.n_max), _weight(args), entries,
                              max_results=args.max_results, max_nonzeros=args.max_nonzeros)
    if args.format == "json":
        _emit(args, json.dumps({"operators": [o.to_json() for o in ops]}, indent=1))
    else:
        lines = [f"{len(ops)} operators"] + [repr(o) for o in ops]
        _emit(args, "\n".join(lines))
    return 0 if ops else 1


def cmd_rb_induce(args) -> int:
    P = _opt_pres(args)
    A = load_algebra(args.algebra, P)
    C = load_config(args.config, args.n_max)
    B = induce_split_algebra(A, load_operator(args.operator, A.dim), C, P, _weight(args))
    _emit(args, json.dumps(B.to_json(), indent=1, ensure_ascii=False))
    return 0


def cmd_module_check(args) -> int:
    P = load_pres(args.presentation)
    A = load_algebra(args.algebra, P)
    C = load_config(args.config, args.n_max)
    if not args.module:
        raise UsageError("--module is required")
    if args.module == "regular":
        M = ModuleData.regular(A, C)
    else:
        M = ModuleData.from_json(_json_arg(args.module), A)
    rep = Report(f"module and map over {P.name}")
    rep.extend(check_module(A, M, C, P), "module: ")
    if args.map:
        alpha = load_map(args.map, A.dim, M.dim_u)
        rep.extend(check_relative_rb(alpha, A, M, C), "map: ")
        if rep.passed and C.kind in ("arity", "power"):
            induce_on_module(alpha, A, M, C, P)
            rep.add("induced operations on U satisfy the split relations", True)
    return _report(args, rep)


def cmd_roundtrip(args) -> int:
    P = load_pres(args.presentation)
    C = load_config(args.config, args.n_max)
    if args.split_algebra:
        B = MultilinearAlgebra.from_json(_json_arg(args.split_algebra), split_presentation(P, C).generators)
    else:
        A = load_algebra(args.algebra, P)
        B = induce_split_algebra(A, load_operator(args.operator, A.dim), C, P, _weight(args))
    _, _, rep = canonical_module_from_split(B, P, C)
    return _report(args, rep)


COMMANDS = {
    "show": cmd_show, "split": cmd_split, "verify": cmd_verify, "rb-check": cmd_rb_check,
    "rb-search": cmd_rb_search, "rb-induce": cmd_rb_induce, "module-check": cmd_module_check,
    "roundtrip": cmd_roundtrip,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        check_threads()
        return COMMANDS[args.verb](args)
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, GuardError, PresentationError, ConfigError, AlgebraError, SplitError, TreeError,
            KeyError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "VERBS", "CHECKS"]
