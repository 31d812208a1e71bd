"""Command line front end: distance, halve, verify, graph, gen, oracle.

Exit codes: 0 on success, 1 on domain errors (bad genome or scenario),
2 on usage errors.  Genome and scenario arguments accept ``-`` for stdin,
so the commands compose in shell pipelines.
"""

from __future__ import annotations

import argparse
import json
import sys

from .genome import (
    Genome,
    GenomeFormatError,
    InvalidGenomeError,
    format_genome,
    parse_genome,
)
from .graph import build_adjacency_graph, components_text, export_dot, halving_summary
from .intervals import SortingPairError, format_interval_table, interval_table
from .oracle import (
    OracleConfig,
    SearchBudgetExceeded,
    bfs_bi_distance,
    bfs_dcj_tandem_distance,
    random_duplicated,
    random_scrambled_tandem,
)
from .rearrange import (
    InvalidStepError,
    Scenario,
    format_steps,
    parse_scenario_steps,
    scenario_json,
    verify_scenario,
)
from .solver import halve

_DOMAIN_ERRORS = (
    GenomeFormatError,
    InvalidGenomeError,
    InvalidStepError,
    SortingPairError,
    SearchBudgetExceeded,
)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_genome(path: str) -> Genome:
    return parse_genome(_read_text(path))


def cmd_distance(args) -> int:
    s = halving_summary(_load_genome(args.genome))
    if s.bi_halving is None:
        raise InvalidGenomeError("distance needs a single linear chromosome")
    if args.json:
        print(json.dumps(s.as_dict()))
    else:
        print(f"n={s.n} C={s.cycles} d_dcj={s.dcj_halving} d_bi={s.bi_halving}")
    return 0


def cmd_halve(args) -> int:
    g = _load_genome(args.genome)
    result = halve(g, trace=args.trace)
    if args.json:
        payload = scenario_json(result.scenario)
        payload["distance"] = result.distance
        if result.trace:
            payload["trace"] = [
                {"reduced": str(t.reduced), "reduced_step": list(t.reduced_step)}
                for t in result.trace
            ]
        print(json.dumps(payload))
        return 0
    comments = None
    if result.trace:
        comments = {
            i: f"reduced: {t.reduced}" for i, t in enumerate(result.trace)
        }
    sys.stdout.write(format_steps(result.steps, comments))
    return 0


def cmd_verify(args) -> int:
    g = _load_genome(args.genome)
    steps = parse_scenario_steps(_read_text(args.scenario))
    report = verify_scenario(Scenario(g, steps))
    if args.json:
        print(
            json.dumps(
                {
                    "valid": report.valid,
                    "failed_step": report.failed_step,
                    "failure": report.failure,
                    "tandem": report.tandem,
                    "length": report.length,
                    "lower_bound": report.lower_bound,
                    "optimal": report.optimal,
                }
            )
        )
    else:
        print(report.summary())
    return 0 if report.valid and report.tandem else 1


def cmd_graph(args) -> int:
    g = _load_genome(args.genome)
    if args.intervals:
        if args.json:
            print(json.dumps(interval_table(g)))
        else:
            sys.stdout.write(format_interval_table(g))
        return 0
    graph = build_adjacency_graph(g)
    if args.dot:
        sys.stdout.write(export_dot(graph))
    else:
        print(components_text(graph))
    return 0


def cmd_gen(args) -> int:
    if args.shuffles is None:
        g = random_duplicated(args.markers, args.seed)
    else:
        g = random_scrambled_tandem(args.markers, args.shuffles, args.seed)
    sys.stdout.write(format_genome(g))
    return 0


def cmd_oracle(args) -> int:
    g = _load_genome(args.genome)
    cfg = OracleConfig(max_depth=args.max_depth, node_budget=args.budget)
    if args.dcj:
        print(bfs_dcj_tandem_distance(g, cfg))
    else:
        print(bfs_bi_distance(g, cfg))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bihalve",
        description=(
            "Shortest block-interchange scenarios turning a duplicated linear "
            "genome into a tandem duplication."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="halving distances of a genome")
    p.add_argument("genome", help="genome file, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("halve", help="emit an optimal scenario")
    p.add_argument("genome")
    p.add_argument("--trace", action="store_true", help="comment each step with the reduced genome")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_halve)

    p = sub.add_parser("verify", help="replay and certify a scenario")
    p.add_argument("genome")
    p.add_argument("scenario", help="scenario file, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="adjacency graph decomposition")
    p.add_argument("genome")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of the summary")
    p.add_argument("--intervals", action="store_true", help="dump the interval table instead")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("gen", help="generate a random duplicated genome")
    p.add_argument("--markers", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--shuffles",
        type=int,
        default=None,
        help="scramble a tandem genome with this many random interchanges",
    )
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force distance search")
    p.add_argument("genome")
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--dcj", action="store_true", help="cut-and-join moves instead of block interchanges")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
