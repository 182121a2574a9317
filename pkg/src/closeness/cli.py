"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 input/parse error, 3 disconnected graph,
4 audit bound failure.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import report as fmt
from .audit import run_audit, run_bench
from .errors import DisconnectedGraphError, GenerationError, GraphFormatError, ParameterError
from .exact import exact_centrality
from .generators import generate, parse_spec, parse_weights
from .graph import dump, load_edge_list
from .rand import RNG_FAMILY, estimate_centrality, sample_size

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_DISCONNECTED, EXIT_AUDIT = 0, 1, 2, 3, 4

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_graph_input(p):
    p.add_argument("graph", nargs="?", help="edge-list file ('-' for stdin)")
    p.add_argument("--spec", help="generate the graph instead, e.g. ws:500,6,0.1")
    p.add_argument("--spec-seed", type=int, default=0,
                   help="seed for --spec random families (default 0)")
    p.add_argument("--directed", action="store_true", help="treat edges as directed arcs")
    p.add_argument("--labeled", action="store_true",
                   help="vertex tokens are arbitrary labels rather than integer ids")


def _add_output(p, choices=("csv", "json"), default="csv"):
    p.add_argument("--format", choices=choices, default=default)
    p.add_argument("-o", "--output", help="write here instead of stdout")


def build_parser():
    parser = _Parser(prog="closeness",
                     description="Exact and sampled closeness centrality for weighted graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", help="exact centrality of every vertex")
    _add_graph_input(p)
    _add_output(p)

    p = sub.add_parser("approx", help="sampled centrality estimate")
    _add_graph_input(p)
    p.add_argument("--epsilon", type=float, help="additive error as a fraction of the diameter")
    p.add_argument("--delta", type=float, help="per-vertex failure probability (default 1/n^2)")
    p.add_argument("--k", type=int, help="explicit sample count instead of --epsilon")
    p.add_argument("--seed", type=int, help="RNG seed (default: fresh entropy, reported)")
    p.add_argument("--sources", help=argparse.SUPPRESS)
    _add_output(p)

    p = sub.add_parser("audit", help="check estimation error against epsilon * diameter")
    _add_graph_input(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, help="per-vertex failure probability (default 1/n^2)")
    p.add_argument("--k", type=int, help="override the planned sample count")
    p.add_argument("--cap", type=int, default=5000, help="largest n the exact oracle accepts")
    _add_output(p, default="json")

    p = sub.add_parser("bench", help="time exact against sampled centrality")
    p.add_argument("specs", nargs="+", metavar="SPEC")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", default="unit", help="'unit' or 'uniform:lo,hi'")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--no-warmup", action="store_true")
    p.add_argument("-o", "--output")

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("spec")
    p.add_argument("--seed", type=int)
    p.add_argument("--weights", default="unit", help="'unit' or 'uniform:lo,hi'")
    p.add_argument("-o", "--output")

    p = sub.add_parser("sample-size", help="sample count for a given error target")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float)
    return parser


def _read_graph(args):
    if getattr(args, "spec", None):
        if args.graph:
            raise UsageError("give either a graph file or --spec, not both")
        return generate(parse_spec(args.spec, seed=args.spec_seed))
    if not args.graph:
        raise UsageError("a graph file or --spec is required")
    if args.graph == "-":
        return load_edge_list(sys.stdin, directed=args.directed, labeled=args.labeled)
    with open(args.graph, encoding="utf-8") as fh:
        return load_edge_list(fh, directed=args.directed, labeled=args.labeled)


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(report, meta, form):
    if form == "json":
        return fmt.to_json(report, meta)
    head = "".join(f"# {key}={_meta_text(val)}\n" for key, val in meta.items())
    return head + fmt.to_csv(report)


def _meta_text(val):
    if isinstance(val, (list, tuple)):
        return ",".join(str(v) for v in val)
    return repr(val) if isinstance(val, float) else str(val)


def cmd_exact(args):
    g = _read_graph(args)
    report = exact_centrality(g)
    meta = {"method": "exact", "n": g.n, "m": g.m}
    _emit(_render(report, meta, args.format), args.output)


def cmd_approx(args):
    sources = None
    if args.sources is not None:
        try:
            sources = [int(s) for s in args.sources.split(",") if s.strip()]
        except ValueError:
            raise UsageError("--sources takes comma-separated vertex ids") from None
        if args.epsilon is not None:
            raise UsageError("--sources cannot be combined with --epsilon")
    elif (args.epsilon is None) == (args.k is None):
        raise UsageError("give exactly one of --epsilon (with optional --delta) or --k")
    if args.delta is not None and args.epsilon is None:
        raise UsageError("--delta needs --epsilon")

    g = _read_graph(args)
    plan = None
    k = args.k
    if args.epsilon is not None:
        plan = sample_size(g.n, args.epsilon, args.delta)
        k = plan.k
    report, trace = estimate_centrality(g, k, args.seed, sources=sources)
    meta = {
        "method": "sampled",
        "n": g.n,
        "m": g.m,
        "k": trace.k,
        "seed": trace.seed,
        "rng": RNG_FAMILY,
        "epsilon": plan.epsilon if plan else None,
        "delta_vertex": plan.delta_vertex if plan else None,
        "delta_graph": plan.delta_graph if plan else None,
        "injected": trace.injected,
        "flagged": list(trace.flagged),
        "sources": list(trace.sources),
    }
    _emit(_render(report, meta, args.format), args.output)


def cmd_audit(args):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    g = _read_graph(args)
    audit = run_audit(g, args.epsilon, args.trials, args.seed, k=args.k,
                      delta_vertex=args.delta, cap=args.cap)
    _emit(audit.to_json() if args.format == "json" else audit.to_csv(), args.output)
    if not audit.passed:
        print(f"audit failed: {audit.violations}/{audit.trials} trials exceeded the "
              f"budget (allowed {audit.allowed:.3f})", file=sys.stderr)
        return EXIT_AUDIT
    return EXIT_OK


def cmd_bench(args):
    weights = parse_weights(args.weights)
    specs = [parse_spec(s, seed=args.seed, weights=weights) for s in args.specs]
    records = run_bench(specs, args.epsilon, args.seed, repeats=args.repeats,
                        warmup=not args.no_warmup)
    lines = ["spec,n,m,k,k_over_n,exact_s,approx_s,speedup\n"]
    for r in records:
        lines.append(f"{r.label},{r.n},{r.m},{r.k},{r.k_over_n:.4f},"
                     f"{r.exact_time:.6f},{r.approx_time:.6f},{r.speedup:.3f}\n")
        if r.exact_cheaper:
            print(f"warning: {r.label}: k={r.k} >= n={r.n}, exact computation is cheaper",
                  file=sys.stderr)
    _emit("".join(lines), args.output)


def cmd_gen(args):
    g = generate(parse_spec(args.spec, seed=args.seed, weights=parse_weights(args.weights)))
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            dump(g, fh)
    else:
        dump(g, sys.stdout)


def cmd_sample_size(args):
    plan = sample_size(args.n, args.epsilon, args.delta)
    for key, val in plan.as_dict().items():
        print(f"{key}={_meta_text(val)}")


COMMANDS = {
    "exact": cmd_exact,
    "approx": cmd_approx,
    "audit": cmd_audit,
    "bench": cmd_bench,
    "gen": cmd_gen,
    "sample-size": cmd_sample_size,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args) or EXIT_OK
    except (UsageError, ParameterError) as exc:
        print(f"closeness {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, OSError, GenerationError) as exc:
        print(f"closeness {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DisconnectedGraphError as exc:
        print(f"closeness {args.command}: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED


if __name__ == "__main__":
    sys.exit(main())
