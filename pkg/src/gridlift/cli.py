"""Command-line front end.

Subcommands: gen, balance, realize, verify, stats. Everything here is a
thin shell over the library; inputs and outputs are JSON documents (or OFF
meshes for 3-dimensional realizations). Exit codes: 0 success, 2 invalid
input, 3 certificate or stage failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .errors import GeometryError, InvalidInputError, StageInvariantError
from .pipeline import realize_graph, run_pipeline
from .serialize import emit_off, realization_from_json, realization_to_json, jsonable, report_to_json
from .trees import (
    balance_weights,
    gen_lowerbound_graph,
    gen_tree,
    parse_graph,
    parse_tree,
)
from .verify import make_certificate


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _cmd_gen(args) -> int:
    if args.shape in ("random", "serpentine", "balanced_rounds"):
        if args.shape == "balanced_rounds":
            size = args.n  # rounds, not vertices
        else:
            if args.n < args.dim + 1:
                raise InvalidInputError(
                    f"need at least {args.dim + 1} vertices, got n={args.n}"
                )
            size = args.n - args.dim  # one stacking per extra vertex
        tree = gen_tree(args.shape, args.dim, size, args.seed)
        _write_output(args.output, tree.to_json())
    elif args.shape in ("b3", "gamma"):
        if args.dim != 3:
            raise InvalidInputError(f"shape {args.shape} is 3-dimensional only")
        g = gen_lowerbound_graph(args.shape, args.n, gadget=args.gadget)
        _write_output(args.output, g.to_json())
    else:
        raise InvalidInputError(f"unknown shape {args.shape!r}")
    return 0


def _parse_tree_or_graph(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"invalid JSON: {e}") from None
    if isinstance(obj, dict) and "tree" in obj:
        return parse_tree(text), None
    if isinstance(obj, dict) and "edges" in obj:
        return None, parse_graph(text)
    raise InvalidInputError("input is neither a tree nor a graph document")


def _cmd_balance(args) -> int:
    tree = parse_tree(_read_input(args.input))
    wt = balance_weights(tree)
    doc = {
        "dim": tree.dim,
        "tree": tree.to_nested(),
        "weights": list(wt.weight),
        "root_weight": wt.root_weight,
    }
    _write_output(args.output, json.dumps(doc))
    return 0


def _cmd_realize(args) -> int:
    tree, graph = _parse_tree_or_graph(_read_input(args.input))
    if tree is not None:
        realization, report = run_pipeline(
            tree, threads=args.threads, cross_check=not args.no_cross_check
        )
    else:
        base = None
        if args.base:
            base = tuple(int(t) for t in args.base.split(","))
        realization, report, tree = realize_graph(
            graph,
            dim=args.dim,
            base=base,
            threads=args.threads,
            cross_check=not args.no_cross_check,
        )
    if args.report:
        _write_output(args.report, report_to_json(report))
    if args.format == "off":
        _write_output(args.output, emit_off(realization))
    else:
        doc = {
            "realization": json.loads(realization_to_json(realization)),
            "report": json.loads(report_to_json(report)),
        }
        _write_output(args.output, json.dumps(doc, sort_keys=True))
    return 0


def _cmd_verify(args) -> int:
    realization = realization_from_json(_read_input(args.input))
    tree = None
    if args.tree:
        tree = parse_tree(_read_input(args.tree))
    cert = make_certificate(realization, tree, threads=args.threads)
    _write_output(args.output, json.dumps(jsonable(cert), sort_keys=True))
    return 0 if cert.ok else 3


def _fmt_exp(x: float) -> str:
    s = f"{math.ceil(x * 100) / 100:.2f}"
    return s.rstrip("0").rstrip(".")


def _cmd_stats(args) -> int:
    lines = ["d coordinate_exponent height_exponent"]
    for d in range(3, 11):
        e = math.log2(2 * d)
        lines.append(f"{d} {_fmt_exp(2 * e)} {_fmt_exp(3 * e)}")
    _write_output(args.output, "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gridlift",
        description="Integer-coordinate realizations of stacked polytopes.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a stacking tree or lower-bound graph")
    g.add_argument("--shape", required=True,
                   choices=["random", "serpentine", "balanced_rounds", "b3", "gamma"])
    g.add_argument("--dim", type=int, default=3)
    g.add_argument("--n", type=int, default=0,
                   help="vertex count (random/serpentine/gamma); rounds for balanced_rounds")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--gadget", default="serpentine",
                   help="gadget tree shape for gamma")
    g.add_argument("--output", default=None)
    g.set_defaults(func=_cmd_gen)

    b = sub.add_parser("balance", help="compute balanced face weights for a tree")
    b.add_argument("--input", default=None)
    b.add_argument("--output", default=None)
    b.set_defaults(func=_cmd_balance)

    r = sub.add_parser("realize", help="run the full pipeline on a tree or graph")
    r.add_argument("--input", default=None)
    r.add_argument("--output", default=None)
    r.add_argument("--report", default=None, help="also write the report JSON here")
    r.add_argument("--format", choices=["json", "off"], default="json")
    r.add_argument("--dim", type=int, default=3, help="dimension for graph inputs")
    r.add_argument("--base", default=None,
                   help="comma-separated base facet vertex ids for graph inputs")
    r.add_argument("--threads", type=int, default=1)
    r.add_argument("--no-cross-check", action="store_true",
                   help="skip the redundant incremental stress recomputation")
    r.set_defaults(func=_cmd_realize)

    v = sub.add_parser("verify", help="re-certify a realization JSON")
    v.add_argument("--input", default=None)
    v.add_argument("--tree", default=None, help="tree JSON for the combinatorial check")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--output", default=None)
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("stats", help="print the coordinate-size exponent table")
    s.add_argument("--output", default=None)
    s.set_defaults(func=_cmd_stats)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (StageInvariantError, GeometryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
