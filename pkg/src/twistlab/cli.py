"""Command-line interface.

Exit status: 0 when the checked property holds, 1 when it fails (a
counterexample is printed), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .algebra import (
    AlgebraError, Equation, QuasiEquation, check_equation, check_quasiequation, load_algebra,
)
from .classes import CLASS_NAMES, classify
from .definability import DEFAULT_CAP, binary_clone, check_definition, is_definable, target_table
from .formula import FormulaSyntaxError, parse, render
from .matrices import (
    MATRIX_NAMES, UnknownMatrixError, check_theses, entails, export_table, is_valid, matrix_json, named_matrix,
)
from .representation import roundtrip_check, verify_representation
from .twist import KINDS, TwistError, TwistSpec, enumerate_pi1_full_subalgebras, spec_from_json, twist_build, twist_to_json


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=False)


def _matrix(args):
    return named_matrix(args.matrix)


def _algebra(args):
    if getattr(args, "algebra", None):
        a = load_algebra(args.algebra)
    elif getattr(args, "matrix", None):
        a = named_matrix(args.matrix).algebra
    else:
        raise UsageError("give --matrix or --algebra")
    if getattr(args, "ops", None):
        a = a.reduct(_split(args.ops))
    return a


def _split(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def _valuation(m, cx) -> dict:
    return {k: m.algebra.label(v) for k, v in (cx or {}).items()}


def _spec(args) -> TwistSpec:
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"{args.spec}: malformed JSON ({exc.msg})") from None
        return spec_from_json(obj, os.path.dirname(os.path.abspath(args.spec)))
    if not args.kind or not args.factor1:
        raise UsageError("give --spec, or --kind and --factor1")
    obj = {"kind": args.kind, "factor1": args.factor1}
    if args.factor2:
        obj["factor2"] = args.factor2
    if args.rho:
        obj["rho"] = json.loads(args.rho)
    return spec_from_json(obj, os.getcwd())


# ---------------------------------------------------------------- commands


def cmd_table(args, out) -> int:
    m = _matrix(args)
    item = args.op if args.op else parse(args.formula) if args.formula else None
    if item is None:
        raise UsageError("give --op or --formula")
    fmt = "json" if args.json else args.format
    out.write(export_table(m, item, fmt).rstrip("\n") + "\n")
    return 0


def cmd_valid(args, out) -> int:
    m = _matrix(args)
    f = parse(args.formula)
    v = is_valid(m, f)
    if args.json:
        out.write(_dump({"matrix": m.name, "formula": render(f), "valid": v.valid,
                         "counter_valuation": _valuation(m, v.counter_valuation) if not v.valid else None}) + "\n")
    else:
        out.write(f"{m.name} {render(f)}: {v.describe(m)}\n")
    return 0 if v.valid else 1


def cmd_entail(args, out) -> int:
    m = _matrix(args)
    prem = [parse(p) for p in args.premise or []]
    concl = parse(args.conclusion)
    v = entails(m, prem, concl)
    if args.json:
        out.write(_dump({"matrix": m.name, "premises": [render(p) for p in prem], "conclusion": render(concl),
                         "valid": v.valid,
                         "counter_valuation": _valuation(m, v.counter_valuation) if not v.valid else None}) + "\n")
    else:
        lhs = ", ".join(render(p) for p in prem)
        out.write(f"{m.name} {{{lhs}}} |= {render(concl)}: {v.describe(m)}\n")
    return 0 if v.valid else 1


def cmd_theses(args, out) -> int:
    m = _matrix(args)
    report = check_theses(m)
    if args.json:
        out.write(_dump({"matrix": m.name, "theses": {
            k: {"valid": v.valid, "counter_valuation": _valuation(m, v.counter_valuation) if not v.valid else None}
            for k, v in report.items()}}) + "\n")
    else:
        for k, v in report.items():
            out.write(f"{m.name} {k}: {v.describe(m)}\n")
    return 0 if all(v.valid for v in report.values()) else 1


def cmd_classify(args, out) -> int:
    a = _algebra(args)
    r = classify(a, args.class_name)
    if args.json:
        out.write(_dump({"algebra": a.name, "class": args.class_name, "holds": r.holds, "law": r.law,
                         "counterexample": {k: a.label(v) for k, v in (r.counterexample or {}).items()}
                         if not r.holds else None}) + "\n")
    else:
        out.write(f"{a.name} as {args.class_name}: {r.describe(a)}\n")
    return 0 if r.holds else 1


def cmd_eq(args, out) -> int:
    a = _algebra(args)
    if args.equation:
        law = Equation.parse(args.equation)
        r = check_equation(a, law)
    elif args.quasi:
        law = QuasiEquation.parse(args.quasi)
        r = check_quasiequation(a, law)
    else:
        raise UsageError("give --equation or --quasi")
    if args.json:
        out.write(_dump({"algebra": a.name, "law": str(law), "holds": r.holds,
                         "counterexample": {k: a.label(v) for k, v in r.counterexample.items()}
                         if not r.holds else None}) + "\n")
    else:
        out.write(f"{a.name} {law}: {r.describe(a)}\n")
    return 0 if r.holds else 1


def cmd_twist(args, out) -> int:
    t = twist_build(_spec(args))
    if args.json or args.output == "json":
        out.write(_dump(twist_to_json(t)) + "\n")
    else:
        out.write(f"{t.algebra.name}: {len(t)} elements\n")
        out.write("  " + " ".join(t.algebra.elements) + "\n")
        out.write("  operations: " + ", ".join(t.algebra.signature) + "\n")
    return 0


def cmd_subalgebras(args, out) -> int:
    t = twist_build(_spec(args))
    subs = enumerate_pi1_full_subalgebras(t, args.limit)
    if args.json:
        out.write(_dump({"twist": t.algebra.name, "count": len(subs),
                         "subalgebras": [list(s.algebra.elements) for s in subs]}) + "\n")
    else:
        out.write(f"{t.algebra.name}: {len(subs)} π₁-full subalgebra(s)\n")
        for s in subs:
            tag = "full" if s.is_full() else "proper"
            out.write(f"  [{len(s)} {tag}] " + " ".join(s.algebra.elements) + "\n")
    return 0


def _report(rep, args, out) -> int:
    if args.json:
        out.write(_dump(rep.to_json()) + "\n")
    else:
        out.write(rep.summary() + "\n")
    return 0 if rep.overall else 1


def cmd_represent(args, out) -> int:
    a = _algebra(args)
    return _report(verify_representation(a, args.kind), args, out)


def cmd_roundtrip(args, out) -> int:
    return _report(roundtrip_check(_spec(args)), args, out)


def cmd_define(args, out) -> int:
    m = _matrix(args)
    if args.term:
        term = parse(args.term)
        r = check_definition(m, term, args.target)
        if args.json:
            out.write(_dump({"matrix": m.name, "term": render(term), "target": args.target, "holds": r.holds,
                             "counterexample": {k: m.algebra.label(v) for k, v in r.counterexample.items()}
                             if not r.holds else None}) + "\n")
        else:
            out.write(f"{m.name} {render(term)} defines {args.target}: {r.describe(m.algebra)}\n")
        return 0 if r.holds else 1
    if not args.basis:
        raise UsageError("give --term, or --basis for a clone search")
    basis = _split(args.basis)
    r = is_definable(m, args.target, basis, args.cap)
    if args.json:
        out.write(_dump({"matrix": m.name, "target": args.target, "basis": basis, "verdict": r.verdict,
                         "witness": render(r.witness) if r.witness is not None else None, "depth": r.depth,
                         "clone_size": r.clone_size, "closed": r.closed, "levels": r.level_sizes}) + "\n")
    else:
        out.write(f"{m.name} {args.target} from {{{', '.join(basis)}}}: {r.describe()}\n")
    return 0 if r.verdict == "yes" else 1


def cmd_clone(args, out) -> int:
    m = _matrix(args)
    basis = _split(args.basis) if args.basis else list(m.algebra.signature)
    frag = binary_clone(m, basis, args.cap, args.max_depth)
    contains = None
    if args.contains:
        t, _ = target_table(m, args.contains)
        idx = frag.find(t)
        contains = {"target": args.contains, "member": idx >= 0,
                    "witness": render(frag.witness(idx)) if idx >= 0 else None}
    if args.json:
        obj = {"matrix": m.name, "basis": basis, "size": frag.size, "closed": frag.closed,
               "levels": frag.level_sizes()}
        if contains is not None:
            obj["contains"] = contains
        out.write(_dump(obj) + "\n")
    else:
        state = "closed" if frag.closed else "stopped (cap or depth limit)"
        out.write(f"{m.name} clone over {{{', '.join(basis)}}}: {frag.size} binary operations, {state}\n")
        out.write(f"  per depth: {frag.level_sizes()}\n")
        if contains is not None:
            verdict = f"yes: {contains['witness']}" if contains["member"] else "no"
            out.write(f"  contains {args.contains}: {verdict}\n")
    if contains is not None and not contains["member"]:
        return 1
    return 0


def cmd_matrix(args, out) -> int:
    m = _matrix(args)
    out.write(_dump(matrix_json(m)) + "\n")
    return 0


def _add_twist_args(p):
    p.add_argument("--spec", help="TwistSpec JSON file")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--factor1", help="built-in factor name or algebra JSON file")
    p.add_argument("--factor2")
    p.add_argument("--rho", help='JSON object mapping factor1 labels to factor2 labels')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    matrix_help = f"one of {', '.join(MATRIX_NAMES)}"
    p = add("table", cmd_table, "print a connective or formula table")
    p.add_argument("--matrix", required=True, help=matrix_help)
    p.add_argument("--op")
    p.add_argument("--formula")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = add("valid", cmd_valid, "decide validity of a formula")
    p.add_argument("--matrix", required=True, help=matrix_help)
    p.add_argument("--formula", required=True)

    p = add("entail", cmd_entail, "decide an entailment")
    p.add_argument("--matrix", required=True, help=matrix_help)
    p.add_argument("--premise", action="append")
    p.add_argument("--conclusion", required=True)

    p = add("theses", cmd_theses, "check the connexive theses A1, A2, B1, B2")
    p.add_argument("--matrix", required=True, help=matrix_help)

    p = add("classify", cmd_classify, "check membership in an algebra class")
    p.add_argument("--class", dest="class_name", required=True, choices=CLASS_NAMES)
    p.add_argument("--matrix")
    p.add_argument("--algebra")
    p.add_argument("--ops", help="comma-separated reduct")

    p = add("eq", cmd_eq, "check an equation or quasi-equation")
    p.add_argument("--matrix")
    p.add_argument("--algebra")
    p.add_argument("--ops", help="comma-separated reduct")
    p.add_argument("--equation")
    p.add_argument("--quasi", help='e.g. "x & T = y & T, x | T = y | T => x = y"')

    p = add("twist", cmd_twist, "build a full twist algebra")
    _add_twist_args(p)
    p.add_argument("--output", choices=("summary", "json"), default="summary")

    p = add("subalgebras", cmd_subalgebras, "list π₁-full subalgebras of a twist")
    _add_twist_args(p)
    p.add_argument("--limit", type=int)

    p = add("represent", cmd_represent, "verify a twist representation")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--matrix")
    p.add_argument("--algebra")
    p.add_argument("--ops", help="comma-separated reduct")

    p = add("roundtrip", cmd_roundtrip, "build a twist and recover its factor")
    _add_twist_args(p)

    p = add("define", cmd_define, "check a defining term or search for one")
    p.add_argument("--matrix", required=True, help=matrix_help)
    p.add_argument("--target", required=True, help="connective name or formula")
    p.add_argument("--term")
    p.add_argument("--basis", help="comma-separated connectives")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = add("clone", cmd_clone, "compute the binary clone fragment of a basis")
    p.add_argument("--matrix", required=True, help=matrix_help)
    p.add_argument("--basis", help="comma-separated connectives (default: full signature)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--max-depth", type=int)
    p.add_argument("--contains", help="report membership of this connective or formula")

    p = add("matrix", cmd_matrix, "dump a named matrix as JSON")
    p.add_argument("--matrix", required=True, help=matrix_help)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"twistlab {args.command}: {exc}\n")
        return 2
    except (AlgebraError, FormulaSyntaxError, UnknownMatrixError, TwistError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"twistlab {args.command}: error: {msg}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
