"""Ground-truth oracles, solver cross-checking, and trace rendering."""

from __future__ import annotations

import hashlib
import itertools
import json
import time
from dataclasses import dataclass, field

import numpy as np

from .asymmetric import LiftPolicy, solve_asymmetric
from .attractor_algorithms import (equivalence_report, pair_partition,
                                   solve_universal, solve_variant,
                                   solve_zielonka_classic)
from .game import (EVEN, ODD, ParityGame, ParityGameError, WinningPartition,
                   serialize_pgsolver, verify_strategy_wins)
from .game import _reachable, _sccs, _strategy_adjacency  # noqa: F401
from .labelling import Labelling
from .lazyspace import LazySpace, lazify
from .symmetric import Trace, solve_symmetric
from .trees import complete_tree, succinct_universal_tree

ORACLE_CAP = 10 ** 6

_space_cache: dict = {}


def spaces_for(game: ParityGame, kind: str = "complete",
               branching: int | None = None) -> tuple:
    """The pair of position spaces used to solve a game: by default the
    lazifications of complete trees with branching |G| (universal for the
    game size), cached across games of the same shape."""
    d = game.d
    if kind == "complete":
        b = branching if branching is not None else max(game.n, 1)
        key_e = (EVEN, d, "complete", b)
        key_o = (ODD, d, "complete", b)
        if key_e not in _space_cache:
            _space_cache[key_e] = lazify(complete_tree(EVEN, d // 2, b))
        if key_o not in _space_cache:
            _space_cache[key_o] = lazify(complete_tree(ODD, d // 2, b))
        return _space_cache[key_e], _space_cache[key_o]
    if kind == "succinct":
        b = branching if branching is not None else max(game.n, 1)
        key_e = (EVEN, d, "succinct", b)
        key_o = (ODD, d, "succinct", b)
        if key_e not in _space_cache:
            _space_cache[key_e] = lazify(
                succinct_universal_tree(EVEN, b, d // 2))
        if key_o not in _space_cache:
            _space_cache[key_o] = lazify(
                succinct_universal_tree(ODD, b, d // 2))
        return _space_cache[key_e], _space_cache[key_o]
    raise ValueError(f"unknown tree kind {kind!r}")


# ---------------------------------------------------------------------------
# Strategy-enumeration oracle

def _strategy_works_from(game: ParityGame, adj, player: int) -> set:
    """Vertices from which every cycle reachable in the fixed-strategy
    subgraph has its maximum priority on the player's side."""
    n = game.n
    bad = set()
    bad_parity = 1 - (0 if player == EVEN else 1)
    for p in range(1, game.d + 1):
        if p % 2 != bad_parity:
            continue
        sub = [v for v in range(n) if game.priority[v] <= p]
        subset = set(sub)
        radj = [[u for u in adj[v] if u in subset] if v in subset else []
                for v in range(n)]
        for comp in _sccs(sub, radj):
            if not any(game.priority[v] == p for v in comp):
                continue
            if len(comp) > 1 or comp[0] in radj[comp[0]]:
                bad.update(comp)
    # losing exactly when a bad cycle is reachable
    good = set()
    rev = [[] for _ in range(n)]
    for v in range(n):
        for u in adj[v]:
            rev[u].append(v)
    reach_bad = _reachable(rev, bad)
    for v in range(n):
        if v not in reach_bad:
            good.add(v)
    return good


def _enumerate_winning(game: ParityGame, player: int) -> frozenset:
    own = [v for v in range(game.n) if game.owner[v] == player]
    total = 1
    for v in own:
        total *= len(game.successors(v))
        if total > ORACLE_CAP:
            raise ParityGameError("oracle enumeration cap exceeded")
    winning = set()
    choices = [list(int(u) for u in game.successors(v)) for v in own]
    for combo in itertools.product(*choices):
        adj = [[] for _ in range(game.n)]
        pick = dict(zip(own, combo))
        for v in range(game.n):
            if v in pick:
                adj[v] = [pick[v]]
            else:
                adj[v] = [int(u) for u in game.successors(v)]
        winning |= _strategy_works_from(game, adj, player)
        if len(winning) == game.n:
            break
    return frozenset(winning)


def oracle_enumerate(game: ParityGame) -> WinningPartition:
    """Exhaustive positional-strategy enumeration for both players; the
    two enumerations must produce complementary sets."""
    even = _enumerate_winning(game, EVEN)
    odd = _enumerate_winning(game, ODD)
    if even & odd or even | odd != frozenset(range(game.n)):
        raise AssertionError(
            "the two strategy enumerations do not form a partition")
    return WinningPartition(even_wins=even, odd_wins=odd)


def oracle_partition(game: ParityGame) -> WinningPartition:
    """Strategy enumeration when affordable, the classic recursive solver
    otherwise."""
    own_product = 1
    for v in range(game.n):
        if game.owner[v] == EVEN:
            own_product *= len(game.successors(v))
        if own_product > ORACLE_CAP:
            return solve_zielonka_classic(game)
    return oracle_enumerate(game)


# ---------------------------------------------------------------------------
# Cross-checking

@dataclass
class CrossCheckReport:
    game_id: str
    solvers: dict = field(default_factory=dict)
    agreement: bool = False
    bounds: dict = field(default_factory=dict)
    strategy_verdicts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({
            "game_id": self.game_id,
            "solvers": self.solvers,
            "agreement": self.agreement,
            "bounds": self.bounds,
            "strategies": self.strategy_verdicts,
            "timings": self.timings,
        }, sort_keys=True)


def game_id_of(game: ParityGame) -> str:
    return hashlib.sha1(
        serialize_pgsolver(game).encode()).hexdigest()[:16]


def cross_check(game: ParityGame, space_even: LazySpace | None = None,
                space_odd: LazySpace | None = None,
                with_oracle: bool = True,
                verify_strategies: bool = True,
                check_equivalence: bool = True) -> CrossCheckReport:
    """Run every solver on one game and compare all winning partitions."""
    if space_even is None or space_odd is None:
        space_even, space_odd = spaces_for(game)
    report = CrossCheckReport(game_id=game_id_of(game))
    partitions = {}

    def note(name, even_wins, elapsed):
        partitions[name] = frozenset(even_wins)
        report.solvers[name] = sorted(even_wins)
        report.timings[name] = elapsed

    t0 = time.perf_counter()
    lab_e, stats_e = solve_asymmetric(game, space_even, EVEN)
    note("asym-even", lab_e.won_vertices(), time.perf_counter() - t0)
    report.bounds["asym_even_lifts_ok"] = \
        stats_e.lifts <= game.n * space_even.size

    t0 = time.perf_counter()
    lab_o, stats_o = solve_asymmetric(game, space_odd, ODD)
    odd_wins = lab_o.won_vertices()
    note("asym-odd", frozenset(range(game.n)) - odd_wins,
         time.perf_counter() - t0)
    report.bounds["asym_odd_lifts_ok"] = \
        stats_o.lifts <= game.n * space_odd.size

    t0 = time.perf_counter()
    pair, sym_stats = solve_symmetric(game, space_even, space_odd)
    sym_part = pair_partition(pair, space_even, space_odd)
    note("symmetric", sym_part.even_wins, time.perf_counter() - t0)
    d = int(space_even.tree.level[space_even.tree.root])
    delta = max(space_even.tree.max_degree, space_odd.tree.max_degree, 1)
    total_updates = sym_stats.total_updates(pair)
    report.bounds["symmetric_calls"] = sym_stats.calls
    report.bounds["symmetric_calls_ok"] = (
        sym_stats.calls <= 2 * d * delta * (total_updates + 1)
        and sym_stats.calls <= 2 * d * delta
        * (game.n * min(space_even.size, space_odd.size) + 1))
    report.bounds["symmetric_consecutive_accels_ok"] = \
        sym_stats.max_consecutive_accels <= d * delta
    # the symmetric pair never overtakes the asymmetric fixpoints
    report.bounds["symmetric_below_fixpoints"] = bool(
        np.all(pair.even.mu <= lab_e.mu) and np.all(pair.odd.mu <= lab_o.mu))

    t0 = time.perf_counter()
    vpair, vstats, _engine = solve_variant(game, space_even, space_odd)
    note("variant", pair_partition(vpair, space_even, space_odd).even_wins,
         time.perf_counter() - t0)

    t0 = time.perf_counter()
    d_set, ustats, _ = solve_universal(game, space_even, space_odd)
    note("universal", d_set, time.perf_counter() - t0)
    report.bounds["call_sandwich_ok"] = \
        vstats.calls <= ustats.calls <= (delta + 1) * vstats.calls

    t0 = time.perf_counter()
    zpart = solve_zielonka_classic(game)
    note("zielonka", zpart.even_wins, time.perf_counter() - t0)

    if with_oracle:
        t0 = time.perf_counter()
        opart = oracle_partition(game)
        note("oracle", opart.even_wins, time.perf_counter() - t0)

    report.agreement = len(set(partitions.values())) == 1

    if verify_strategies:
        even_claim = partitions["asym-even"]
        odd_claim = frozenset(range(game.n)) - even_claim
        sigma_e = lab_e.extract_strategy()
        sigma_o = lab_o.extract_strategy()
        report.strategy_verdicts["asym-even"] = bool(
            verify_strategy_wins(game, sigma_e, even_claim))
        report.strategy_verdicts["asym-odd"] = bool(
            verify_strategy_wins(game, sigma_o, odd_claim))
        zv_e = verify_strategy_wins(game, zpart.even_strategy,
                                    zpart.even_wins)
        zv_o = verify_strategy_wins(game, zpart.odd_strategy,
                                    zpart.odd_wins)
        report.strategy_verdicts["zielonka-even"] = bool(zv_e)
        report.strategy_verdicts["zielonka-odd"] = bool(zv_o)

    return report


# ---------------------------------------------------------------------------
# Trace rendering

def trace_to_svg(trace: Trace, space_even: LazySpace,
                 space_odd: LazySpace, max_panels: int = 40) -> str:
    """Render a solving trace as stacked grid panels, one per position
    update, with an arrow for the move performed."""
    cell = 10
    w = (space_even.size + 2) * cell
    h = (space_odd.size + 2) * cell
    panels = []
    positions = {}

    def xy(pe, po):
        return (pe + 1) * cell, h - (po + 1) * cell

    def panel(arrows):
        parts = [f'<rect x="0" y="0" width="{w}" height="{h}" '
                 f'fill="white" stroke="black"/>']
        for pe in range(space_even.size):
            x, _ = xy(pe, 0)
            parts.append(f'<line x1="{x}" y1="0" x2="{x}" y2="{h}" '
                         f'stroke="#eeeeee"/>')
        for po in range(space_odd.size):
            _, y = xy(0, po)
            parts.append(f'<line x1="0" y1="{y}" x2="{w}" y2="{y}" '
                         f'stroke="#eeeeee"/>')
        for v, (pe, po) in positions.items():
            x, y = xy(pe, po)
            parts.append(f'<circle cx="{x}" cy="{y}" r="3" fill="black">'
                         f'<title>v{v}</title></circle>')
        for (src, dst, color) in arrows:
            x1, y1 = xy(*src)
            x2, y2 = xy(*dst)
            parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                         f'stroke="{color}" stroke-width="2"/>')
        return "".join(parts)

    def move(v, axis, target):
        pe, po = positions.get(v, (0, 0))
        old = (pe, po)
        if axis == "even":
            positions[v] = (target, po)
        else:
            positions[v] = (pe, target)
        return old, positions[v]

    for event in trace.events:
        kind = event["kind"]
        arrows = []
        if kind == "init":
            for v, pe in enumerate(event["even"]):
                positions[v] = (pe, event["odd"][v])
        elif kind == "lift":
            src, dst = move(event["vertex"], event["axis"], event["target"])
            arrows = [(src, dst, "#cc3333")]
        elif kind == "acceleration":
            for v in event["vertices"]:
                src, dst = move(v, event["axis"], event["target"])
                arrows.append((src, dst, "#3333cc"))
        elif kind == "reset":
            for v in event["vertices"]:
                src, dst = move(v, event["axis"], event["target"])
                arrows.append((src, dst, "#33aa33"))
        else:
            continue
        if arrows and len(panels) < max_panels:
            panels.append(panel(arrows))
    if not panels:
        panels.append(panel([]))
    body = []
    for i, p in enumerate(panels):
        body.append(f'<g transform="translate(0,{i * (h + cell)})">{p}</g>')
    total_h = len(panels) * (h + cell)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" '
            f'height="{total_h}" version="1.1">' + "".join(body) + "</svg>")
