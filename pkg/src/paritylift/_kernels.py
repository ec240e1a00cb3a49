"""Hot fixpoint kernels over CSR game arrays.

The attractor fixpoint is the inner loop of everything in this package:
validity tests at lazy positions, destination searches, and the recursive
attractor-based solvers all bottom out here.  The kernels are compiled with
numba when it is available; set ``PARITYLIFT_DISABLE_NUMBA=1`` to force the
pure-Python fallback (same code, undecorated).
"""

from __future__ import annotations

import os

import numpy as np


def _numba_enabled() -> bool:
    if os.environ.get("PARITYLIFT_DISABLE_NUMBA", "") not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USING_NUMBA = _numba_enabled()


def _attract_impl(pred_indptr, pred_indices, succ_indptr, succ_indices,
                  owner, player, active, target, safe,
                  attracted, witness, rank):
    """Backward attractor fixpoint with out-degree countdowns.

    ``active`` trims the graph to a subgame (edges to inactive vertices do
    not exist); ``safe`` restricts which vertices may join (successors that
    are active but unsafe act as escapes for the opponent rule).  Requires
    target <= safe <= active, elementwise.  Returns the number of attracted
    vertices; fills ``attracted`` (0/1), ``witness`` (successor chosen for
    attracting-player vertices, -1 otherwise) and ``rank`` (BFS distance to
    the target, -1 outside the attractor).
    """
    n = owner.shape[0]
    need = np.zeros(n, np.int32)
    queue = np.empty(n, np.int32)
    head = 0
    tail = 0
    for v in range(n):
        witness[v] = -1
        rank[v] = -1
        attracted[v] = 0
        if active[v] == 0:
            continue
        cnt = 0
        for j in range(succ_indptr[v], succ_indptr[v + 1]):
            if active[succ_indices[j]] != 0:
                cnt += 1
        need[v] = cnt
        if target[v] != 0:
            attracted[v] = 1
            rank[v] = 0
            queue[tail] = v
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for j in range(pred_indptr[u], pred_indptr[u + 1]):
            v = pred_indices[j]
            if attracted[v] != 0 or safe[v] == 0 or target[v] != 0:
                continue
            if owner[v] == player:
                attracted[v] = 1
                rank[v] = rank[u] + 1
                witness[v] = u
                queue[tail] = v
                tail += 1
            else:
                need[v] -= 1
                if need[v] == 0:
                    attracted[v] = 1
                    rank[v] = rank[u] + 1
                    queue[tail] = v
                    tail += 1
    return tail


def _cut_attract_impl(pred_indptr, pred_indices, succ_indptr, succ_indices,
                      owner, player, mu, strict_bound, leq_bound, vmove,
                      attracted):
    """Attractor membership mask for a labelling cut.

    Target is ``{u : mu[u] < strict_bound}``, the safe set is
    ``{u : mu[u] <= leq_bound}``.  When ``vmove >= 0`` that vertex is
    treated as hypothetically relocated: excluded from the target, forced
    into the safe set.  This is the validity test behind lazy positions.
    """
    n = owner.shape[0]
    active = np.ones(n, np.uint8)
    target = np.zeros(n, np.uint8)
    safe = np.zeros(n, np.uint8)
    for u in range(n):
        if u == vmove:
            safe[u] = 1
            continue
        if mu[u] < strict_bound:
            target[u] = 1
            safe[u] = 1
        elif mu[u] <= leq_bound:
            safe[u] = 1
    witness = np.empty(n, np.int32)
    rank = np.empty(n, np.int32)
    _attract(pred_indptr, pred_indices, succ_indptr, succ_indices,
             owner, player, active, target, safe, attracted, witness, rank)
    return attracted


if USING_NUMBA:
    from numba import njit

    _attract = njit(cache=True)(_attract_impl)
    _cut_attract = njit(cache=True)(_cut_attract_impl)
else:
    _attract = _attract_impl
    _cut_attract = _cut_attract_impl


def attract(pred_indptr, pred_indices, succ_indptr, succ_indices,
            owner, player, active, target, safe):
    """Allocate result arrays and run the attractor kernel."""
    n = owner.shape[0]
    attracted = np.zeros(n, np.uint8)
    witness = np.full(n, -1, np.int32)
    rank = np.full(n, -1, np.int32)
    _attract(pred_indptr, pred_indices, succ_indptr, succ_indices,
             owner, player, active, target, safe, attracted, witness, rank)
    return attracted, witness, rank


def cut_attract(pred_indptr, pred_indices, succ_indptr, succ_indices,
                owner, player, mu, strict_bound, leq_bound, vmove=-1):
    """Attracted mask for the cut (< strict_bound, <= leq_bound)."""
    n = owner.shape[0]
    attracted = np.zeros(n, np.uint8)
    _cut_attract(pred_indptr, pred_indices, succ_indptr, succ_indices,
                 owner, player, mu,
                 np.int64(strict_bound), np.int64(leq_bound),
                 np.int64(vmove), attracted)
    return attracted
