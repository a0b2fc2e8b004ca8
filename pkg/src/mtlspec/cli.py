"""Command-line surface: ``mtlspec <verb>`` over spec files, formulas, traces.

Exit codes follow the usual convention: 0 success, 1 a well-formed "no"
(invalid structure, strict rejection, violated trace, failing corpus entry),
2 operational errors (unreadable files, syntax errors, bad arguments).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .corpus import run_corpus
from .errors import SpecError
from .exemplars import GeneratorConfig, synthesize
from .fragment import classify, recognize
from .model import validate_structure
from .monitor import evaluate
from .mtl import format_formula, parse_formula
from .persistence import load_spec, load_trace, save_trace
from .translate import template_formula, translate


def _cmd_validate(args) -> int:
    tree = load_spec(args.spec)
    diagnostics = validate_structure(tree)
    if not diagnostics:
        print("ok")
        return 0
    for diag in diagnostics:
        print(diag)
    return 1


def _cmd_translate(args) -> int:
    tree = load_spec(args.spec)
    formula = translate(tree)
    print(format_formula(formula))
    if args.strict:
        recognition = recognize(formula, "strict")
        if not recognition.accepted:
            reason = recognition.reason or "not derivable in the strict grammar"
            print(f"strict: rejected: {reason}", file=sys.stderr)
            return 1
    return 0


def _cmd_parse(args) -> int:
    formula = parse_formula(args.formula)
    print(format_formula(formula))
    return 0


def _cmd_classify(args) -> int:
    formula = parse_formula(args.formula)
    print(classify(formula))
    return 0


def _cmd_monitor(args) -> int:
    formula = parse_formula(args.formula)
    trace = load_trace(args.trace)
    verdict = evaluate(formula, trace, at=args.at)
    print("true" if verdict else "false")
    return 0 if verdict else 1


def _cmd_exemplar(args) -> int:
    tree = load_spec(args.spec)
    formula = template_formula(tree, args.template)
    config = GeneratorConfig(dt=args.dt, duration=args.duration)
    exemplars = synthesize(
        formula, args.count, args.seed, config, satisfy=not args.negative
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    kind = "counter" if args.negative else "exemplar"
    for ex in exemplars:
        path = out_dir / f"{args.template}-{kind}-{ex.index}.csv"
        save_trace(ex.trace, path)
        print(path)
    return 0


def _cmd_corpus(args) -> int:
    report = run_corpus()
    for line in report.lines():
        print(line)
    return 0 if report.all_passed else 1


def _cmd_serve(args) -> int:
    from .service import ServiceConfig, serve

    config = ServiceConfig(
        host=args.host,
        port=args.port,
        persistence_dir=args.persist,
        allowed_origins=tuple(args.origin) if args.origin else ("*",),
    )
    serve(config)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtlspec",
        description="Author, translate, classify, and monitor timed specifications.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", metavar="<command>")

    p = sub.add_parser("validate", help="check a spec file's structural invariants")
    p.add_argument("spec", help="path to a .vspec.json file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("translate", help="print the formula for a spec file")
    p.add_argument("spec", help="path to a .vspec.json file")
    p.add_argument(
        "--strict",
        action="store_true",
        help="also require the strict pattern grammar to accept the result",
    )
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("parse", help="parse formula text and echo its canonical form")
    p.add_argument("formula", help="formula text")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("classify", help="print the specification class of a formula")
    p.add_argument("formula", help="formula text")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("monitor", help="evaluate a formula over a trace CSV")
    p.add_argument("--formula", required=True, help="formula text")
    p.add_argument("--trace", required=True, help="path to a trace CSV")
    p.add_argument("--at", type=int, default=0, help="sample index to evaluate at")
    p.set_defaults(func=_cmd_monitor)

    p = sub.add_parser("exemplar", help="write CSV signals matching one template")
    p.add_argument("spec", help="path to a .vspec.json file")
    p.add_argument("--template", required=True, help="template id inside the spec")
    p.add_argument("-n", dest="count", type=int, default=3, help="number of traces")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--dt", type=float, default=0.5, help="sample step in seconds")
    p.add_argument(
        "--duration", type=float, default=None, help="trace length in seconds"
    )
    p.add_argument(
        "--negative",
        action="store_true",
        help="write violating traces instead of satisfying ones",
    )
    p.add_argument("--out", default=".", help="output directory for the CSV files")
    p.set_defaults(func=_cmd_exemplar)

    p = sub.add_parser("corpus", help="run the built-in reference corpus")
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("serve", help="start the HTTP authoring service")
    p.add_argument("--host", default="127.0.0.1", help="bind address")
    p.add_argument("--port", type=int, default=8000, help="bind port")
    p.add_argument(
        "--persist", default=None, help="directory for spec persistence"
    )
    p.add_argument(
        "--origin",
        action="append",
        default=None,
        help="allowed CORS origin (repeatable; default: any)",
    )
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
