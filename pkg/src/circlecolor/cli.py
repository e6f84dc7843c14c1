"""Command-line entry point.

Subcommands: solve, relax, mwis, stacks, gen, export, bench, verify.
Exit codes: 0 success, 1 usage error, 2 input format error, 3 solver
failure (or a failed verification).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .bnb import solve_chromatic, solve_stacks
from .errors import CircleColorError, InstanceFormatError, NumericalFailureError
from .instances import (
    GeneratorConfig,
    format_certificate,
    generate,
    generate_one,
    max_clique,
    rows_to_csv,
    run_experiment,
)
from .intervals import (
    build_clique_matrix,
    build_dag,
    build_graph,
    format_instance,
    load_instance,
    to_dimacs,
)
from .lpmodels import (
    build_as,
    build_cg,
    build_cl,
    export_model,
    metadata_sidecar,
)
from .mwis import solve_mwis
from .oracle import (
    DEFAULT_BUDGET,
    OracleBudget,
    chromatic_exact,
    fractional_chromatic_exact,
    mwis_exact,
)
from .simplex import SimplexOptions
from .stowage import build_cgh, build_layered_dag, effective_height

SCHEMA_VERSION = 1

USAGE_ERROR = 1
INPUT_ERROR = 2
SOLVER_ERROR = 3


def _options_from_args(args) -> SimplexOptions:
    default = float(os.environ.get("CIRCLECOLOR_TOL", "1e-9"))
    opts = SimplexOptions(feas_tol=default, opt_tol=default)
    if getattr(args, "feas_tol", None) is not None:
        opts.feas_tol = args.feas_tol
    if getattr(args, "opt_tol", None) is not None:
        opts.opt_tol = args.opt_tol
    if getattr(args, "int_tol", None) is not None:
        opts.int_tol = args.int_tol
    return opts


def _emit(args, payload: dict, human: str):
    if args.json:
        payload = dict(payload)
        payload["schema_version"] = SCHEMA_VERSION
        if getattr(args, "no_timing", False):
            payload.pop("timings", None)
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _node_log(args):
    if getattr(args, "verbose", False):
        return lambda line: print(line, file=sys.stderr)
    return None


def cmd_solve(args) -> int:
    rep = load_instance(args.instance)
    report = solve_chromatic(rep, _options_from_args(args), log=_node_log(args))
    graph = build_graph(rep)
    payload = {
        "command": "solve",
        "chi": report.chromatic_number,
        "chi_f": report.fractional_chromatic,
        "root_gap": report.root_gap,
        "nodes": report.nodes_explored,
        "omega": max_clique(graph) if args.clique else None,
        "coloring": {str(v): c for v, c in sorted(report.coloring.colors.items())},
        "timings": report.timings,
    }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(format_certificate(report.coloring))
    human = f"chi={report.chromatic_number} chi_f={report.fractional_chromatic:g}"
    if args.clique:
        human += f" omega={payload['omega']}"
    _emit(args, payload, human)
    return 0


def cmd_relax(args) -> int:
    rep = load_instance(args.instance)
    report = solve_chromatic(rep, _options_from_args(args))
    payload = {
        "command": "relax",
        "chi_f": report.fractional_chromatic,
        "timings": report.timings,
    }
    _emit(args, payload, f"chi_f={report.fractional_chromatic:g}")
    return 0


def cmd_mwis(args) -> int:
    rep = load_instance(args.instance)
    if args.weights:
        parts = [float(x) for x in args.weights.split(",")]
        if len(parts) != rep.n:
            raise InstanceFormatError(f"expected {rep.n} weights, got {len(parts)}")
        weights = {v: parts[v - 1] for v in rep.vertices}
    else:
        weights = {v: 1.0 for v in rep.vertices}
    value, labels, witness = solve_mwis(rep, weights)
    payload = {
        "command": "mwis",
        "value": value,
        "set": sorted(witness),
        "labels": {str(v): labels.ell[v] for v in sorted(labels.ell)},
    }
    human = f"value={value:g} set={','.join(str(v) for v in sorted(witness)) or '-'}"
    _emit(args, payload, human)
    return 0


def cmd_stacks(args) -> int:
    rep = load_instance(args.instance)
    report = solve_stacks(rep, args.height, _options_from_args(args), log=_node_log(args))
    payload = {
        "command": "stacks",
        "height": args.height,
        "stacks": report.chromatic_number,
        "relaxation": report.fractional_chromatic,
        "nodes": report.nodes_explored,
        "plan": [list(s) for s in report.plan.stacks],
        "timings": report.timings,
    }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report.plan.format())
    _emit(args, payload, f"stacks={report.chromatic_number} height={args.height}")
    return 0


def cmd_gen(args) -> int:
    reps = generate(GeneratorConfig(n=args.n, seed=args.seed, count=args.count))
    if args.output:
        for k, rep in enumerate(reps):
            path = args.output if args.count == 1 else f"{args.output}.{k:03d}"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(format_instance(rep))
        return 0
    if args.json:
        payload = {
            "command": "gen",
            "schema_version": SCHEMA_VERSION,
            "instances": [
                [[rep.left[v], rep.right[v]] for v in rep.vertices] for rep in reps
            ],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        chunks = [format_instance(rep).rstrip("\n") for rep in reps]
        print("\n\n".join(chunks))
    return 0


def _build_formulation(args, rep):
    graph = build_graph(rep)
    dag = build_dag(rep)
    matrix = build_clique_matrix(rep)
    if args.formulation == "cg":
        return build_cg(rep, dag, matrix, relax=args.relax)
    if args.formulation == "cl":
        from .bnb import first_fit
        from .intervals import topological_order
        num = args.colors or first_fit(graph, topological_order(rep)).num_colors
        model = build_cl(graph, num)
    elif args.formulation == "as":
        model = build_as(graph)
    else:  # cgh
        layered = build_layered_dag(rep, dag, effective_height(rep, args.height))
        model = build_cgh(rep, layered, matrix, relax=args.relax)
        return model
    return model.relaxed() if args.relax else model


def cmd_export(args) -> int:
    rep = load_instance(args.instance)
    if args.format == "dimacs":
        data = to_dimacs(build_graph(rep)).encode()
        sidecar = None
    else:
        model = _build_formulation(args, rep)
        data = export_model(model, args.format)
        sidecar = metadata_sidecar(model)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
        if sidecar is not None:
            with open(args.output + ".meta.json", "w", encoding="utf-8") as fh:
                fh.write(sidecar)
    else:
        sys.stdout.write(data.decode())
    return 0


def cmd_bench(args) -> int:
    n_values = [int(x) for x in args.n.split(",")]
    rows = run_experiment(n_values, args.samples, args.seed, _options_from_args(args))
    text = rows_to_csv(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    budget = OracleBudget(max_vertices=max(args.n_max, DEFAULT_BUDGET.max_vertices))
    rng = np.random.Generator(np.random.Philox(key=np.array([args.seed, 2**32], dtype=np.uint64)))
    opts = _options_from_args(args)
    failures = []
    for k in range(args.trials):
        n = int(rng.integers(1, args.n_max + 1))
        rep = generate_one(n, args.seed, k)
        graph = build_graph(rep)
        report = solve_chromatic(rep, opts)
        chi = chromatic_exact(graph, budget)
        if report.chromatic_number != chi:
            failures.append(f"trial {k}: chi {report.chromatic_number} != oracle {chi}")
        chi_f = fractional_chromatic_exact(graph, budget)
        if abs(report.fractional_chromatic - chi_f) > 1e-6:
            failures.append(
                f"trial {k}: chi_f {report.fractional_chromatic} != oracle {chi_f}"
            )
        weights = {v: int(rng.integers(-5, 6)) for v in rep.vertices}
        value, _, _ = solve_mwis(rep, weights)
        brute = mwis_exact(graph, weights, budget)
        if abs(value - brute) > 1e-6:
            failures.append(f"trial {k}: mwis {value} != oracle {brute}")
    for line in failures:
        print(f"FAIL {line}", file=sys.stderr)
    if failures:
        return SOLVER_ERROR
    print(f"verify: {args.trials} trials passed (n <= {args.n_max})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlecolor",
        description="Coloring and stack planning for circle graphs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("instance", help="instance file (n, then n lines 'l r')")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--no-timing", action="store_true", help="omit timing fields from JSON")
        p.add_argument("-v", "--verbose", action="store_true", help="log solver nodes to stderr")
        p.add_argument("--feas-tol", type=float, default=None)
        p.add_argument("--opt-tol", type=float, default=None)
        p.add_argument("--int-tol", type=float, default=None)

    p = sub.add_parser("solve", help="chromatic number, fractional bound, and a coloring")
    common(p)
    p.add_argument("--clique", action="store_true", help="also report the clique number")
    p.add_argument("-o", "--output", help="write the certificate file (vertex color parent)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("relax", help="fractional chromatic number only")
    common(p)
    p.set_defaults(func=cmd_relax)

    p = sub.add_parser("mwis", help="maximum weight independent set")
    common(p)
    p.add_argument("--weights", help="comma-separated per-vertex weights (default all 1)")
    p.set_defaults(func=cmd_mwis)

    p = sub.add_parser("stacks", help="minimum number of capacity-H stacks")
    common(p)
    p.add_argument("--height", type=int, required=True, help="stack capacity H")
    p.add_argument("-o", "--output", help="write the stack plan (one stack per line)")
    p.set_defaults(func=cmd_stacks)

    p = sub.add_parser("gen", help="generate random instances")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", help="output file (suffix .NNN added when count > 1)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export", help="write a formulation as LP/MPS (or the graph as DIMACS)")
    common(p)
    p.add_argument("--formulation", choices=["cg", "cl", "as", "cgh"], default="cg")
    p.add_argument("--format", choices=["lp", "mps", "dimacs"], default="lp")
    p.add_argument("--relax", action="store_true", help="export the continuous relaxation")
    p.add_argument("--height", type=int, default=1, help="capacity for cgh")
    p.add_argument("--colors", type=int, help="color slots for cl (default: first fit)")
    p.add_argument("-o", "--output", help="output path; a .meta.json sidecar is written too")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("bench", help="random-instance experiment summary (CSV)")
    p.add_argument("--n", required=True, help="comma-separated vertex counts")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--feas-tol", type=float, default=None)
    p.add_argument("--opt-tol", type=float, default=None)
    p.add_argument("--int-tol", type=float, default=None)
    p.add_argument("-o", "--output", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="cross-check the solvers against brute-force oracles")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--feas-tol", type=float, default=None)
    p.add_argument("--opt-tol", type=float, default=None)
    p.add_argument("--int-tol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the contract here is 1
        return 0 if exc.code == 0 else USAGE_ERROR
    try:
        return args.func(args)
    except (InstanceFormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (NumericalFailureError, CircleColorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return SOLVER_ERROR


if __name__ == "__main__":
    sys.exit(main())
