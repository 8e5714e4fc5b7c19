"""Command line entry point: ``layered-coloring <subcommand> ...``.

Exit codes: 0 success, 1 usage, 2 parse error, 3 validation failure,
4 pipeline invariant failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import formats
from .bounds import compute_bounds, default_f_constant
from .errors import (
    InternalError,
    InvalidInputError,
    InvalidSpecError,
    ParseError,
    PipelineInvariantError,
    SizeError,
    ValidationError,
)
from .families import FAMILIES, FamilySpec, generate_family
from .graph import LayeredTreeDecomposition, validate_td
from .oracles import exact_three_color, exact_two_color, hex_check
from .pipeline import PipelineConfig, three_color
from .planar import RotationSystem, planar_ltd
from .verify import check_pipeline_invariants

EXIT_USAGE, EXIT_PARSE, EXIT_VALIDATION, EXIT_PIPELINE = 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("the f-model constant must be positive")
    return value


def _print_table(rows, out=None):
    out = out or sys.stdout
    width = max((len(str(k)) for k, _ in rows), default=0)
    for key, value in rows:
        print(f"{str(key):<{width}}  {value}", file=out)


def cmd_generate(args) -> int:
    g, ltd = generate_family(FamilySpec(args.family, args.n, args.crossings))
    paths = formats.write_bundle(args.output, g, ltd)
    _emit(args, {"n": g.n, "m": g.m, "max_degree": g.max_degree, "layered_width": ltd.layered_width,
                 "files": [str(p) for p in paths]})
    return 0


def cmd_decompose(args) -> int:
    rot = RotationSystem.from_json(Path(args.rotation).read_text())
    ltd = planar_ltd(rot, args.root - 1)
    g = rot.graph()
    paths = formats.write_bundle(args.output, g, ltd)
    _emit(args, {"n": g.n, "m": g.m, "bags": ltd.td.n_nodes, "layered_width": ltd.layered_width,
                 "files": [str(p) for p in paths]})
    return 0


def cmd_color(args) -> int:
    g, ltd = formats.read_bundle(args.graph, args.td, args.layers)
    report = three_color(g, ltd, PipelineConfig(f_model=args.f_model, threads=args.threads))
    Path(args.output).write_text(formats.write_report(report))
    data = report.to_dict()
    _emit(args, {
        "clustering": data["clustering"]["overall"],
        "per_color": data["clustering"]["per_color"],
        "f1": report.f1, "f2": report.f2, "f3": report.f3,
        "delta": report.delta, "layered_width": report.layered_width,
        "report": args.output,
    })
    return 0


def cmd_verify(args) -> int:
    g = formats.parse_gr(Path(args.graph).read_text(), args.graph)
    layering = formats.parse_layers(Path(args.layers).read_text(), args.layers, expected_n=g.n)
    if args.td:
        td = formats.parse_td(Path(args.td).read_text(), args.td, expected_n=g.n)
        problems = validate_td(g, td)
        if problems:
            raise ValidationError("invalid tree-decomposition", problems)
        target = LayeredTreeDecomposition(td, layering)
    else:
        target = layering
    report = formats.parse_report(Path(args.coloring).read_text(), args.coloring)
    problems = check_pipeline_invariants(g, target, report)
    for p in problems:
        print(p)
    _emit(args, {"ok": not problems, "violations": len(problems)})
    return 0 if not problems else EXIT_VALIDATION


def cmd_oracle(args) -> int:
    if args.kind == "hex":
        if args.n is None:
            raise SizeError("oracle hex needs --n")
        result = hex_check(args.n)
        _emit(args, {"n": args.n, "ok": result is None, "counterexample": result})
        return 0 if result is None else EXIT_VALIDATION
    if not args.graph:
        raise SizeError(f"oracle {args.kind} needs --graph")
    g = formats.parse_gr(Path(args.graph).read_text(), args.graph)
    if args.kind == "two-color":
        coloring, eta = exact_two_color(g)
        _emit(args, {"optimal_clustering": eta, "colors": coloring.as_list(g.n)})
    else:
        _emit(args, {"optimal_clustering": exact_three_color(g)})
    return 0


def cmd_bounds(args) -> int:
    constant = args.f_model if args.f_model is not None else default_f_constant()
    b = compute_bounds(args.w, args.delta, constant)
    _emit(args, {"w": args.w, "delta": args.delta, "f_model_constant": str(constant), **b.as_dict()})
    return 0


def _emit(args, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        _print_table(list(payload.items()))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="layered-coloring", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="print machine-readable output")
    parser.add_argument("-v", "--verbose", action="store_true")
    # accept --json after the subcommand too; SUPPRESS keeps the top-level value unless given
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", parents=[common], help="write a benchmark family as .gr/.td/.layers")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--crossings", type=int, default=1, help="stride between crossed faces (crossed-grid)")
    p.add_argument("-o", "--output", required=True, help="output prefix")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("decompose", parents=[common], help="layered decomposition of an embedded planar graph")
    p.add_argument("--rotation", required=True, help='JSON file {"rotations": [[...], ...]}, 1-based ids')
    p.add_argument("--root", type=int, default=1, help="BFS root (1-based)")
    p.add_argument("-o", "--output", required=True, help="output prefix")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("color", parents=[common], help="run the three-colour pipeline")
    p.add_argument("--graph", required=True)
    p.add_argument("--td", required=True)
    p.add_argument("--layers", required=True)
    p.add_argument("--f-model", type=_positive_fraction, default=None, help="constant C in f(w, D) = C (w+1) D")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", parents=[common], help="re-check a colouring report")
    p.add_argument("--graph", required=True)
    p.add_argument("--layers", required=True)
    p.add_argument("--td", default=None, help="optional; enables layered-width checks")
    p.add_argument("--coloring", required=True, help="report.json written by 'color'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive oracles for tiny inputs")
    p.add_argument("kind", choices=("two-color", "three-color", "hex"))
    p.add_argument("--graph")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bounds", parents=[common], help="evaluate the clustering bound cascade")
    p.add_argument("--w", required=True, type=int)
    p.add_argument("--delta", required=True, type=int)
    p.add_argument("--f-model", type=_positive_fraction, default=None, help="constant C in f(w, D) = C (w+1) D")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidSpecError, SizeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, InvalidInputError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        for v in getattr(exc, "violations", [])[:20]:
            print(f"  {v}", file=sys.stderr)
        return EXIT_VALIDATION
    except (PipelineInvariantError, InternalError) as exc:
        print(f"pipeline invariant failed: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
