"""Command-line front end: `lzn solve | simulate | verify | prune | build-export | bench`."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import suites
from .families import Family, build, materialize, parse_descriptor, truncate
from .game import GameError, play
from .graph import FiniteGraph, GraphError, correspondence_to_text, graph_to_dot, graph_to_text, read_graph
from .pruning import end_labels, labels_to_dot, labels_to_text, recursive_pruning
from .solver import BudgetExceeded, localization_number
from .strategies import RegistryError, make_cop, make_robber

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_BUDGET = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _source(args) -> tuple[Family | None, object]:
    if (args.family is None) == (args.graph is None):
        raise UsageError("give exactly one of --family or --graph")
    if args.graph is not None:
        g = read_graph(args.graph)
        fam = Family("finite", g)
        g.family = fam
        return fam, g
    fam = parse_descriptor(args.family)
    return fam, build(fam)


def _finite(g, radius: int | None) -> tuple[FiniteGraph, list | None]:
    if isinstance(g, FiniteGraph):
        return g, None
    if g.is_finite:
        return materialize(g)
    if radius is None:
        raise UsageError("infinite family: pass --radius to solve a truncation")
    return truncate(g, radius)


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


# --- commands -----------------------------------------------------------------

def cmd_solve(args) -> int:
    _, g = _source(args)
    t, _ = _finite(g, args.radius)
    k, table = localization_number(t, args.max_cops, method=args.method, budget=args.budget)
    print(f"zeta = {k}" if k is not None else f"zeta > {args.max_cops}")
    if table is not None:
        _write(args.table, table.to_text())
    return EXIT_OK


def cmd_simulate(args) -> int:
    _, g = _source(args)
    cop = make_cop(args.cops, g)
    robber = make_robber(args.robber, g)
    track = args.track or ("exact" if robber.kind == "phantom" else "auto")
    out, tr = play(g, cop, robber, args.rounds, seed=args.seed, track=track)
    fmt = getattr(g, "format_vertex", str)
    _write(args.transcript, tr.to_text(fmt))
    print(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    kwargs = {}
    if args.max_n is not None:
        if args.suite not in ("seager", "sn", "subdivision"):
            raise UsageError(f"--max-n does not apply to suite {args.suite}")
        kwargs["max_n"] = args.max_n
    if args.seeds is not None:
        if args.suite not in ("sn", "comb"):
            raise UsageError(f"--seeds does not apply to suite {args.suite}")
        kwargs["seeds"] = args.seeds
    failed = 0
    total = 0
    for check in suites.SUITES[args.suite](**kwargs):
        print(check.line(), flush=True)
        total += 1
        failed += not check.ok
    print(f"{args.suite}: {total - failed}/{total} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_prune(args) -> int:
    fam, g = _source(args)
    lab = recursive_pruning(g if isinstance(g, FiniteGraph) else fam, root=args.root)
    if isinstance(lab.tree, FiniteGraph):
        verts = range(lab.tree.n)
        fmt = str
        summary = "alpha none ends 0"
        dot_graph, names = lab.tree, None
    else:
        t, order = truncate(lab.tree, args.radius)
        verts, fmt = order, lab.tree.format_vertex
        info = end_labels(lab.desc, lab)
        summary = f"alpha {info.alpha} ends {len(info.attaining)}"
        dot_graph, names = t, [fmt(v) for v in order]
    sys.stdout.write(labels_to_text(verts, lab, fmt))
    print(summary)
    if args.dot:
        _write(args.dot, labels_to_dot(dot_graph, [lab[v] for v in verts], names))
    return EXIT_OK


def cmd_build_export(args) -> int:
    _, g = _source(args)
    t, labels = _finite(g, args.radius)
    fmt = getattr(g, "format_vertex", str)
    if args.out:
        _write(args.out, graph_to_text(t))
    else:
        sys.stdout.write(graph_to_text(t))
    if labels is not None:
        _write(args.correspondence, correspondence_to_text(labels, fmt))
    names = [fmt(v) for v in labels] if labels is not None else None
    _write(args.dot, graph_to_dot(t, names))
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import report, run

    sys.stdout.write(report(run(args.repeat)))
    return EXIT_OK


# --- parser -------------------------------------------------------------------

def _add_source(p) -> None:
    p.add_argument("--family", help="family descriptor, e.g. hat, comb, sn:2, file:g.txt, subdivided:file:g.txt")
    p.add_argument("--graph", help="graph file in lzn-graph v1 format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lzn", description="Localization game toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="localization number of a finite graph or truncation")
    _add_source(p)
    p.add_argument("--max-cops", type=int, default=3)
    p.add_argument("--radius", type=int, help="truncation radius for infinite families")
    p.add_argument("--method", choices=("auto", "exact", "prover"), default="auto")
    p.add_argument("--budget", type=int, help="state budget (default: LZN_BUDGET_STATES or 2000000)")
    p.add_argument("--table", help="write the win table here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="play one game and print the outcome")
    _add_source(p)
    p.add_argument("--cops", required=True, help="cop strategy name")
    p.add_argument("--robber", required=True, help="robber strategy name")
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--track", choices=("exact", "witness", "auto"))
    p.add_argument("--transcript", help="write the transcript here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--max-n", type=int)
    p.add_argument("--seeds", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prune", help="recursive pruning labels")
    _add_source(p)
    p.add_argument("--radius", type=int, default=4, help="listing radius for infinite trees")
    p.add_argument("--root", type=int, default=0, help="root of a finite tree")
    p.add_argument("--dot", help="write a label-coloured DOT file here")
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("build-export", help="export a graph or truncation")
    _add_source(p)
    p.add_argument("--radius", type=int)
    p.add_argument("--out", help="graph file (default: stdout)")
    p.add_argument("--correspondence", help="index-to-vertex file for lazy graphs")
    p.add_argument("--dot", help="DOT file")
    p.set_defaults(func=cmd_build_export)

    p = sub.add_parser("bench", help="compare the compiled and pure-Python kernels")
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("budget", "rounds", "max_cops", "repeat"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, RegistryError, GraphError, GameError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
