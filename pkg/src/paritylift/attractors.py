"""Attractor computations on parity games.

Thin, array-typed wrappers over the compiled kernels in ``_kernels``.  All
set arguments are uint8 masks over the full vertex range; results carry the
attracted mask together with a witness edge per attracting-player vertex
and the BFS rank (number of rounds until the fixpoint added the vertex).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .game import ParityGame


@dataclass
class AttractorResult:
    attracted: np.ndarray  # uint8 mask
    witness: np.ndarray    # int32, chosen successor or -1
    rank: np.ndarray       # int32, BFS distance or -1

    def vertices(self):
        return np.flatnonzero(self.attracted)

    def __contains__(self, v):
        return bool(self.attracted[v])


def _as_mask(game: ParityGame, s) -> np.ndarray:
    if isinstance(s, np.ndarray) and s.shape == (game.n,) \
            and s.dtype in (np.uint8, np.bool_):
        return s.astype(np.uint8)
    mask = np.zeros(game.n, np.uint8)
    for v in s:
        mask[int(v)] = 1
    return mask


def _canonical_witnesses(game: ParityGame, player: int, attracted, witness,
                         rank):
    """Re-pick witness edges deterministically: first successor in list
    order whose rank is strictly smaller.  BFS discovery order depends on
    queue contents; this pass removes that dependence."""
    for v in np.flatnonzero(attracted):
        if game.owner[v] != player or rank[v] == 0:
            continue
        for u in game.successors(v):
            u = int(u)
            if attracted[u] and rank[u] < rank[v]:
                witness[v] = u
                break


def attractor(game: ParityGame, player: int, target,
              active=None) -> AttractorResult:
    """Attractor of ``target`` for ``player`` within the subgame ``active``
    (the whole game when omitted)."""
    target = _as_mask(game, target)
    if active is None:
        active = np.ones(game.n, np.uint8)
    else:
        active = _as_mask(game, active)
    pred_indptr, pred_indices = game.pred
    attracted, witness, rank = _kernels.attract(
        pred_indptr, pred_indices, game.succ_indptr, game.succ_indices,
        game.owner, player, active, target & active, active)
    _canonical_witnesses(game, player, attracted, witness, rank)
    return AttractorResult(attracted, witness, rank)


def attractor_through(game: ParityGame, player: int, target, safe,
                      active=None) -> AttractorResult:
    """Attractor of ``target`` restricted to paths whose intermediate
    vertices stay in ``safe``; the opponent rule treats active vertices
    outside ``safe`` as escapes."""
    target = _as_mask(game, target)
    safe = _as_mask(game, safe)
    if np.any(target & ~(safe.astype(bool))):
        raise ValueError("target must be a subset of the safe set")
    if active is None:
        active = np.ones(game.n, np.uint8)
    else:
        active = _as_mask(game, active)
    pred_indptr, pred_indices = game.pred
    attracted, witness, rank = _kernels.attract(
        pred_indptr, pred_indices, game.succ_indptr, game.succ_indices,
        game.owner, player, active, target & safe & active, safe & active)
    _canonical_witnesses(game, player, attracted, witness, rank)
    return AttractorResult(attracted, witness, rank)


def one_step_reach(game: ParityGame, player: int, target, v: int,
                   active=None) -> bool:
    """Can ``player`` force entering ``target`` from ``v`` in one move?"""
    target = _as_mask(game, target)
    if active is None:
        active_ok = lambda u: True
    else:
        amask = _as_mask(game, active)
        active_ok = lambda u: bool(amask[u])
    succs = [int(u) for u in game.successors(v) if active_ok(int(u))]
    hits = [u for u in succs if target[u]]
    if game.owner[v] == player:
        return bool(hits)
    return bool(succs) and len(hits) == len(succs)
