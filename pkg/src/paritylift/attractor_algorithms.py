"""Attractor-based solving and its equivalence with the lifting variant.

Three entry points live here: the deterministic short-lift-and-reset
variant of the symmetric engine, the generic recursive attractor solver
it simulates, and an independently-coded classic recursive solver used as
a reference.  The harness at the bottom cross-checks the first two call
for call and frame for frame.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .attractors import attractor
from .game import (EVEN, ODD, ParityGame, PositionalStrategy,
                   WinningPartition, opponent)
from .lazyspace import LazySpace
from .symmetric import SymmetricEngine, Trace


@dataclass
class RecursionStats:
    calls: int = 0
    delta: int = 1
    wall_time: float = 0.0


def _shape_ids(tree):
    """Canonical id per node such that equal subtree shapes share an id,
    plus the children-id list per id; keeps the interleaving-size memo
    small on trees with many identical subtrees."""
    ids = {}
    memo = {}
    kids_of = []

    def go(node):
        key = tuple(go(c) for c in tree.children[node])
        if key not in memo:
            memo[key] = len(memo)
            kids_of.append(key)
        ids[node] = memo[key]
        return memo[key]

    go(tree.root)
    return ids[tree.root], kids_of


def interleaving_size(space_p: LazySpace, space_q: LazySpace) -> int:
    """Number of nodes of the interleaving of the two trees."""
    p_root, p_kids = _shape_ids(space_p.tree)
    q_root, q_kids = _shape_ids(space_q.tree)
    kids = {True: q_kids, False: p_kids}

    @lru_cache(maxsize=None)
    def count(p_is_even: bool, p_shape: int, q_shape: int) -> int:
        total = 1
        for c in kids[p_is_even][q_shape]:
            total += count(not p_is_even, c, p_shape)
        return total

    return count(True, p_root, q_root)


def solve_variant(game: ParityGame, space_even: LazySpace,
                  space_odd: LazySpace, trace: Trace | None = None,
                  record_frames: bool = False):
    """The deterministic variant with short lifts and resets.

    Returns (pair, stats, engine); the engine carries recorded frames when
    requested.
    """
    engine = SymmetricEngine(game, space_even, space_odd, mode="variant",
                             policy="short", trace=trace,
                             record_frames=record_frames)
    pair, sym_stats = engine.solve()
    cap = interleaving_size(space_even, space_odd)
    if sym_stats.calls > cap:
        raise AssertionError(
            f"{sym_stats.calls} calls exceed the interleaving size {cap}")
    stats = RecursionStats(calls=sym_stats.calls, delta=engine.delta,
                           wall_time=sym_stats.wall_time)
    return pair, stats, engine


def solve_universal(game: ParityGame, space_even: LazySpace,
                    space_odd: LazySpace, record_frames: bool = False):
    """Generic attractor-based recursion parametrized by the two trees.

    Works over vertex masks of the original game so intermediate sets keep
    stable vertex ids.  Returns (winning-set-for-Even, stats, frames).
    """
    t0 = time.perf_counter()
    stats = RecursionStats(delta=max(space_even.tree.max_degree,
                                     space_odd.tree.max_degree, 1))
    frames: dict = {}
    spaces = {EVEN: space_even, ODD: space_odd}

    def solve(player: int, mask: np.ndarray, h: int, e_node: int,
              o_node: int, path: tuple) -> np.ndarray:
        # descends the opponent's tree: the Even solve steps through the
        # children of the current Odd node and vice versa
        stats.calls += 1
        if not mask.any():
            return mask
        q_tree = spaces[opponent(player)].tree
        q_node = o_node if player == EVEN else e_node
        current = mask
        for i, child in enumerate(q_tree.children[q_node]):
            if record_frames:
                frames[(path, i, "G")] = frozenset(
                    int(v) for v in np.flatnonzero(current))
            target = current & (game.priority == h)
            a = attractor(game, player, target.astype(np.uint8),
                          active=current).attracted
            if record_frames:
                frames[(path, i, "A")] = frozenset(
                    int(v) for v in np.flatnonzero(a))
            inner = current & (a == 0)
            if player == EVEN:
                u = solve(ODD, inner, h - 1, e_node, child, path + (i,))
            else:
                u = solve(EVEN, inner, h - 1, child, o_node, path + (i,))
            b = attractor(game, opponent(player), u,
                          active=current).attracted
            current = current & (b == 0)
        return current

    full = np.ones(game.n, bool)
    d = int(space_even.tree.level[space_even.tree.root])
    result = solve(EVEN, full, d, space_even.tree.root,
                   space_odd.tree.root, ())
    stats.wall_time = time.perf_counter() - t0
    return frozenset(int(v) for v in np.flatnonzero(result)), stats, frames


# ---------------------------------------------------------------------------
# Classic recursive solver (independent reference code path)

def solve_zielonka_classic(game: ParityGame) -> WinningPartition:
    """Standard recursive winning-set computation with witness strategies.

    Deliberately independent of the mask/tree machinery above: it only
    uses the attractor primitive and plain python sets.
    """
    n = game.n

    def rec(mask: np.ndarray):
        if not mask.any():
            return set(), set(), {}, {}
        p = int(game.priority[mask].max())
        player = EVEN if p % 2 == 0 else ODD
        target = mask & (game.priority == p)
        att = attractor(game, player, target.astype(np.uint8),
                        active=mask.astype(np.uint8))
        a = att.attracted.astype(bool)
        we, wo, se, so = rec(mask & ~a)
        wins = {EVEN: we, ODD: wo}
        strats = {EVEN: se, ODD: so}
        if not wins[opponent(player)]:
            w = set(int(v) for v in np.flatnonzero(mask))
            strat = dict(strats[player])
            for v in np.flatnonzero(a):
                v = int(v)
                if game.owner[v] != player:
                    continue
                if target[v]:
                    # any move staying in the current subgame keeps the
                    # maximal priority on our side
                    strat[v] = next(int(u) for u in game.successors(v)
                                    if mask[u])
                else:
                    strat[v] = int(att.witness[v])
            out = {player: (w, strat),
                   opponent(player): (set(), {})}
        else:
            opp_target = np.zeros(n, bool)
            for v in wins[opponent(player)]:
                opp_target[v] = True
            batt = attractor(game, opponent(player),
                             opp_target.astype(np.uint8),
                             active=mask.astype(np.uint8))
            b = batt.attracted.astype(bool)
            we2, wo2, se2, so2 = rec(mask & ~b)
            wins2 = {EVEN: we2, ODD: wo2}
            strats2 = {EVEN: se2, ODD: so2}
            opp_w = wins2[opponent(player)] | set(
                int(v) for v in np.flatnonzero(b))
            opp_s = dict(strats[opponent(player)])
            opp_s.update(strats2[opponent(player)])
            for v in np.flatnonzero(b):
                v = int(v)
                if game.owner[v] == opponent(player) and not opp_target[v]:
                    opp_s[v] = int(batt.witness[v])
            out = {player: (wins2[player], strats2[player]),
                   opponent(player): (opp_w, opp_s)}
        we, se = out[EVEN]
        wo, so = out[ODD]
        return we, wo, se, so

    we, wo, se, so = rec(np.ones(n, bool))

    def to_strategy(player, moves):
        edges = set()
        for v in range(n):
            if game.owner[v] == player:
                edges.add((v, moves.get(v, int(game.successors(v)[0]))))
            else:
                for u in game.successors(v):
                    edges.add((v, int(u)))
        return PositionalStrategy(player=player, edges=edges)

    return WinningPartition(even_wins=frozenset(we), odd_wins=frozenset(wo),
                            even_strategy=to_strategy(EVEN, se),
                            odd_strategy=to_strategy(ODD, so))


# ---------------------------------------------------------------------------
# Equivalence harness

def pair_partition(pair, space_even, space_odd) -> WinningPartition:
    """Read a winning partition off a solved pair: vertices pushed to the
    Odd top are won by Even and vice versa."""
    even_wins = frozenset(int(v) for v in
                          np.flatnonzero(pair.odd.mu == space_odd.top))
    odd_wins = frozenset(int(v) for v in
                         np.flatnonzero(pair.even.mu == space_even.top))
    return WinningPartition(even_wins=even_wins, odd_wins=odd_wins)


def equivalence_report(game: ParityGame, space_even: LazySpace,
                       space_odd: LazySpace,
                       check_frames: bool = False) -> dict:
    """Run the variant and the generic recursion side by side and compare
    outputs, call counts, and (optionally) per-iteration frames."""
    pair, vstats, engine = solve_variant(game, space_even, space_odd,
                                         record_frames=check_frames)
    d_set, ustats, uframes = solve_universal(game, space_even, space_odd,
                                             record_frames=check_frames)
    top_o = space_odd.top
    top_e = space_even.top
    d_by_pair = frozenset(int(v) for v in
                          np.flatnonzero(pair.odd.mu == top_o))
    complement_top = all(int(pair.even.mu[v]) == top_e
                         for v in range(game.n) if v not in d_set)
    t, tp = vstats.calls, ustats.calls
    delta = vstats.delta
    frames_checked = 0
    frames_ok = True
    if check_frames:
        common = set(engine.frames) & set(uframes)
        for key in common:
            frames_checked += 1
            if engine.frames[key] != uframes[key]:
                frames_ok = False
    return {
        "partition_equal": d_by_pair == d_set,
        "d_to_top_odd": d_by_pair >= d_set,
        "complement_to_top_even": complement_top,
        "t": t,
        "t_prime": tp,
        "delta": delta,
        "sandwich_ok": t <= tp <= (delta + 1) * t,
        "frames_checked": frames_checked,
        "frames_ok": frames_ok,
    }
