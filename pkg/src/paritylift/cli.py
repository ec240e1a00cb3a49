"""Command-line entry point: solving, generation, verification, tracing."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .asymmetric import LiftPolicy, solve_asymmetric
from .attractor_algorithms import (pair_partition, solve_universal,
                                   solve_variant, solve_zielonka_classic)
from .game import (EVEN, ODD, ParityGameError, PositionalStrategy,
                   WinningPartition, normalization_notes, parse_pgsolver,
                   random_game, serialize_pgsolver, verify_strategy_wins)
from .harness import cross_check, spaces_for, trace_to_svg
from .symmetric import Trace, solve_symmetric

ALGORITHMS = ("symmetric", "asym-even", "asym-odd", "variant",
              "universal", "zielonka")


def _parse_tree_spec(spec: str):
    kind, _, arg = spec.partition(":")
    if kind not in ("complete", "succinct"):
        raise argparse.ArgumentTypeError(
            f"tree spec must be complete:<branching> or succinct:<n>, "
            f"got {spec!r}")
    try:
        val = int(arg) if arg else None
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tree parameter in {spec!r}")
    return kind, val


def _load_game(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_pgsolver(text)


def _emit_notes(game, path):
    notes = normalization_notes(game)
    if path and notes:
        with open(path, "w", encoding="utf-8") as fh:
            for line in notes:
                fh.write(line + "\n")


def _solve_with(game, algorithm, spaces, policy):
    """Return (partition, stats-dict, strategies-dict)."""
    se, so = spaces
    strategies = {}
    if algorithm == "zielonka":
        part = solve_zielonka_classic(game)
        strategies = {"even": part.even_strategy, "odd": part.odd_strategy}
        return part, {}, strategies
    if algorithm == "asym-even":
        lab, stats = solve_asymmetric(game, se, EVEN, policy=policy)
        even = lab.won_vertices()
        part = WinningPartition(even_wins=frozenset(even),
                                odd_wins=frozenset(range(game.n)) - even)
        strategies = {"even": lab.extract_strategy()}
        return part, {"lifts": stats.lifts}, strategies
    if algorithm == "asym-odd":
        lab, stats = solve_asymmetric(game, so, ODD, policy=policy)
        odd = lab.won_vertices()
        part = WinningPartition(even_wins=frozenset(range(game.n)) - odd,
                                odd_wins=frozenset(odd))
        strategies = {"odd": lab.extract_strategy()}
        return part, {"lifts": stats.lifts}, strategies
    if algorithm == "symmetric":
        pair, stats = solve_symmetric(game, se, so)
        part = pair_partition(pair, se, so)
        return part, {"calls": stats.calls,
                      "lifts": pair.total_lifts}, strategies
    if algorithm == "variant":
        pair, stats, _ = solve_variant(game, se, so)
        part = pair_partition(pair, se, so)
        return part, {"calls": stats.calls}, strategies
    if algorithm == "universal":
        d_set, stats, _ = solve_universal(game, se, so)
        part = WinningPartition(even_wins=frozenset(d_set),
                                odd_wins=frozenset(range(game.n)) - d_set)
        return part, {"calls": stats.calls}, strategies
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _partition_json(game, part, stats, strategies, with_strategies):
    out = {
        "n": game.n,
        "even_wins": sorted(part.even_wins),
        "odd_wins": sorted(part.odd_wins),
        "stats": stats,
    }
    if with_strategies:
        out["strategies"] = {
            name: {"player": s.player,
                   "edges": sorted([list(e) for e in s.edges])}
            for name, s in strategies.items() if s is not None
        }
    return json.dumps(out, sort_keys=True, indent=2) + "\n"


def cmd_solve(args) -> int:
    game = _load_game(args.input)
    _emit_notes(game, args.notes)
    spaces = spaces_for(game, kind=args.tree[0], branching=args.tree[1])
    policy = LiftPolicy(selection=args.selection, target=args.target)
    part, stats, strategies = _solve_with(game, args.algorithm, spaces,
                                          policy)
    text = _partition_json(game, part, stats, strategies, args.strategies)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_gen(args) -> int:
    game = random_game(args.n, args.max_out_degree, args.max_priority,
                       seed=args.seed)
    text = serialize_pgsolver(game)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    game = _load_game(args.input)
    with open(args.strategy, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    strat = PositionalStrategy(
        player=int(data["player"]),
        edges=set((int(u), int(v)) for u, v in data["edges"]))
    claimed = [int(v) for v in data["claimed"]]
    verdict = verify_strategy_wins(game, strat, claimed)
    sys.stdout.write(json.dumps(
        {"ok": bool(verdict), "reason": verdict.reason},
        sort_keys=True) + "\n")
    return 0 if verdict else 1


def cmd_crosscheck(args) -> int:
    worst = 0
    for i in range(args.count):
        game = random_game(args.n, args.max_out_degree, args.max_priority,
                           seed=args.seed + i)
        report = cross_check(game, with_oracle=not args.no_oracle)
        sys.stdout.write(report.to_json() + "\n")
        if not report.agreement:
            worst = 1
    return worst


def cmd_trace(args) -> int:
    game = _load_game(args.input)
    spaces = spaces_for(game, kind=args.tree[0], branching=args.tree[1])
    trace = Trace()
    if args.algorithm == "variant":
        solve_variant(game, spaces[0], spaces[1], trace=trace)
    else:
        solve_symmetric(game, spaces[0], spaces[1], trace=trace)
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            fh.write(trace.to_jsonl())
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(trace_to_svg(trace, spaces[0], spaces[1]))
    if not args.jsonl and not args.svg:
        sys.stdout.write(trace.to_jsonl())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="paritylift",
        description="Parity game solving via attractor-decomposition "
                    "lifting.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def add_tree(sp):
        sp.add_argument("--tree", type=_parse_tree_spec,
                        default=("complete", None),
                        help="tree spec: complete:<branching> or "
                             "succinct:<n> (default complete:|G|)")

    sp = sub.add_parser("solve", help="solve a game file")
    sp.add_argument("input", help="PGSolver file, or - for stdin")
    sp.add_argument("--algorithm", choices=ALGORITHMS, default="symmetric")
    sp.add_argument("--output", default="-")
    sp.add_argument("--notes", default=None,
                    help="sidecar path for normalization notes")
    sp.add_argument("--strategies", action="store_true")
    sp.add_argument("--selection", choices=("min-id", "max-id"),
                    default="min-id")
    sp.add_argument("--target", choices=("destination", "min-step"),
                    default="destination")
    add_tree(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("gen", help="generate a random game")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-out-degree", type=int, default=3)
    sp.add_argument("--max-priority", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", default="-")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="verify a strategy file")
    sp.add_argument("input")
    sp.add_argument("strategy", help="JSON with player/edges/claimed")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("crosscheck", help="cross-check solvers on "
                                           "random games")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--n", type=int, default=12)
    sp.add_argument("--max-out-degree", type=int, default=3)
    sp.add_argument("--max-priority", type=int, default=4)
    sp.add_argument("--no-oracle", action="store_true")
    sp.set_defaults(func=cmd_crosscheck)

    sp = sub.add_parser("trace", help="solve while recording a trace")
    sp.add_argument("input")
    sp.add_argument("--algorithm", choices=("symmetric", "variant"),
                    default="symmetric")
    sp.add_argument("--jsonl", default=None)
    sp.add_argument("--svg", default=None)
    add_tree(sp)
    sp.set_defaults(func=cmd_trace)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParityGameError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
