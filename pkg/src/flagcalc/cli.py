"""Command-line entry point.

Exit codes: 0 success, 1 certificate rejected / search not found,
2 usage or parse error.  Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import (
    LinearForm,
    ParseError,
    StepGraphon,
    eval_expr,
    parse_expr,
    to_linear_form,
)
from .algebra.ast import ExprTypeError
from .density import density, labelled_density
from .downward import alpha_dagger
from .flags import enumerate_flags, format_flag, parse_flag, parse_type
from .graphs import GraphFormatError, enumerate_graphs, format_graph, parse_graph
from .prover import (
    Certificate,
    CertificateError,
    prove_goodman,
    prove_mantel,
    search_certificate,
    verify_certificate,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep stderr format
        raise UsageError(message)


def _parse_object(text: str):
    text = text.strip()
    if text.startswith("f:"):
        return parse_flag(text)
    return parse_graph(text)


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


def _form_table(lf: LinearForm) -> str:
    fmt = format_graph if lf.tau is None else format_flag
    rows = [f"{str(c):>10}  {fmt(x)}" for x, c in lf.items()]
    return "\n".join(rows)


def _read_json(path: str) -> dict:
    raw = sys.stdin.read() if path == "-" else Path(path).read_text()
    return json.loads(raw)


def cmd_enum(args) -> int:
    if args.type:
        items = [format_flag(f) for f in enumerate_flags(parse_type(args.type), args.n)]
    else:
        items = [format_graph(g) for g in enumerate_graphs(args.n)]
    _emit(args, {"n": args.n, "items": items}, "\n".join(items))
    return 0


def cmd_density(args) -> int:
    pattern, host = _parse_object(args.pattern), _parse_object(args.host)
    if type(pattern) is not type(host):
        raise UsageError("pattern and host must both be graphs or both be flags")
    value = labelled_density(pattern, host) if args.pattern.strip().startswith("f:") else density(pattern, host)
    _emit(args, {"density": str(value)}, str(value))
    return 0


def cmd_eval(args) -> int:
    e = parse_expr(args.expr)
    oracle = _parse_object(args.host) if args.host else StepGraphon.load(args.graphon)
    value = eval_expr(e, oracle)
    _emit(args, {"value": str(value)}, str(value))
    return 0


def cmd_flatten(args) -> int:
    tau = parse_type(args.type) if args.type else None
    lf = to_linear_form(parse_expr(args.expr), args.level, tau=tau)
    _emit(args, lf.to_json(), _form_table(lf))
    return 0


def cmd_downward(args) -> int:
    lf = LinearForm.from_json(_read_json(args.form))
    out = alpha_dagger(lf)
    _emit(args, out.to_json(), _form_table(out))
    return 0


def _verdict_payload(v) -> dict:
    return {
        "accepted": v.accepted,
        "reason": v.reason,
        "residual": None if v.residual is None else v.residual.to_json(),
        "trace": v.trace,
    }


def cmd_check_cert(args) -> int:
    cert = Certificate.from_json(_read_json(args.file))
    v = verify_certificate(cert)
    human = "\n".join(v.trace) if args.trace or not v.accepted else ("accepted" if v.accepted else "rejected")
    if not v.accepted:
        print(f"rejected: {v.reason}", file=sys.stderr)
    _emit(args, _verdict_payload(v), human)
    return 0 if v.accepted else 1


def cmd_search(args) -> int:
    types = [parse_type(t) for t in args.type] if args.type else None
    cert = search_certificate(
        args.target, args.level, types=types,
        max_denominator=args.max_denominator, max_iters=args.max_iters,
    )
    if cert is None:
        print("not found", file=sys.stderr)
        if args.json:
            print(json.dumps({"found": False}))
        return 1
    print(cert.dumps())
    return 0


def cmd_prove(args) -> int:
    verdict, bound = (prove_mantel(), "1/2") if args.which == "mantel" else (prove_goodman(), "1/4")
    lines = [f"{args.which}: {'accepted' if verdict.accepted else 'REJECTED'}", f"bound {bound}"]
    if args.trace:
        lines += verdict.trace
    payload = _verdict_payload(verdict) | {"bound": bound}
    _emit(args, payload, "\n".join(lines))
    return 0 if verdict.accepted else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flagcalc", description="Exact flag algebra calculus for simple graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is single threaded")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enum", parents=[common], help="list graphs or flags up to isomorphism")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--type")
    s.set_defaults(func=cmd_enum)

    s = sub.add_parser("density", parents=[common], help="induced density of a pattern in a host")
    s.add_argument("--pattern", required=True)
    s.add_argument("--host", required=True)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("eval", parents=[common], help="evaluate an expression on a host or step graphon")
    s.add_argument("--expr", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--host")
    g.add_argument("--graphon")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("flatten", parents=[common], help="flatten an expression to a level-n linear form")
    s.add_argument("--expr", required=True)
    s.add_argument("--level", type=int)
    s.add_argument("--type")
    s.set_defaults(func=cmd_flatten)

    s = sub.add_parser("downward", parents=[common], help="apply the downward operator to a labelled form")
    s.add_argument("--form", required=True, help="JSON file from `flatten --json`, or - for stdin")
    s.set_defaults(func=cmd_downward)

    s = sub.add_parser("check-cert", parents=[common], help="verify a certificate JSON file")
    s.add_argument("file")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_check_cert)

    s = sub.add_parser("search", parents=[common], help="search for a certificate")
    s.add_argument("--target", required=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--type", action="append", help="type to use (repeatable); default t:1:{}")
    s.add_argument("--max-denominator", type=int, default=10**4)
    s.add_argument("--max-iters", type=int, default=2000)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("prove", parents=[common], help="run a built-in proof")
    s.add_argument("which", choices=["mantel", "goodman"])
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_prove)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, GraphFormatError, ExprTypeError, CertificateError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
