"""One-sided lifting to the least embedded attractor decomposition.

Repeatedly pick an invalid vertex and raise it, never beyond its
destination, until every vertex is valid.  The fixpoint is the least
attractor decomposition embedded in the tree and does not depend on the
order of lifts or on how far each lift jumps; with a tree universal for
the game size, the vertices kept below top form the flavor player's
winning set.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from .game import EVEN, ParityGame
from .labelling import Labelling, LabellingError
from .lazyspace import LazySpace


@dataclass(frozen=True)
class LiftPolicy:
    """How to resolve the algorithm's nondeterminism.

    selection: which invalid vertex to lift first ("min-id" or "max-id").
    target: how far to lift ("destination" jumps to the destination,
    "min-step" advances to the next admissible position).
    """

    selection: str = "min-id"
    target: str = "destination"

    def __post_init__(self):
        if self.selection not in ("min-id", "max-id"):
            raise ValueError(f"unknown selection rule {self.selection!r}")
        if self.target not in ("destination", "min-step"):
            raise ValueError(f"unknown target rule {self.target!r}")


@dataclass
class SolveStats:
    lifts: int = 0
    validity_checks: int = 0
    wall_time: float = 0.0
    lift_bound: int = 0

    def check_bound(self):
        if self.lift_bound and self.lifts > self.lift_bound:
            raise AssertionError(
                f"performed {self.lifts} lifts, bound {self.lift_bound}")


def _next_admissible(lab: Labelling, v: int) -> int:
    """Smallest admissible position strictly above the current one; exists
    because top is admissible for every priority."""
    space = lab.space
    prio = int(lab.game.priority[v])
    start = int(lab.mu[v]) + 1
    cands = [space.top]
    r = space.first_regular_candidate(prio, start, -1)
    if r is not None:
        cands.append(r)
    l = space.first_lazy_at_least(prio, start)
    if l is not None:
        cands.append(l)
    return min(cands)


def solve_asymmetric(game: ParityGame, space: LazySpace, flavor: int,
                     policy: LiftPolicy = LiftPolicy(),
                     initial: Labelling | None = None):
    """Run the lifting iteration to its fixpoint.

    Returns (labelling, stats).  ``initial`` defaults to the smallest
    admissible labelling; any admissible labelling below the sought
    fixpoint yields the same result.
    """
    t0 = time.perf_counter()
    if initial is None:
        lab = Labelling.smallest(game, space, flavor)
    else:
        lab = initial
        if lab.flavor != flavor or lab.space is not space:
            raise LabellingError("initial labelling does not match")
    stats = SolveStats(lift_bound=game.n * space.size)
    sign = 1 if policy.selection == "min-id" else -1

    heap = list(range(game.n)) if sign == 1 else [-v for v in range(game.n)]
    heapq.heapify(heap)
    queued = set(range(game.n))

    pred_indptr, pred_indices = game.pred

    def enqueue(v):
        if v not in queued:
            queued.add(v)
            heapq.heappush(heap, sign * v)

    while True:
        while heap:
            v = sign * heapq.heappop(heap)
            queued.discard(v)
            stats.validity_checks += 1
            if lab.is_vertex_valid(v):
                continue
            if policy.target == "destination":
                target = lab.destination(v)
            else:
                target = _next_admissible(lab, v)
            lab.lift(v, target)
            stats.lifts += 1
            stats.check_bound()
            enqueue(v)
            for j in range(pred_indptr[v], pred_indptr[v + 1]):
                enqueue(int(pred_indices[j]))
        # the worklist is a heuristic; the full sweep is authoritative
        leftovers = lab.invalid_vertices()
        stats.validity_checks += game.n
        if not leftovers:
            break
        for v in leftovers:
            enqueue(v)

    stats.wall_time = time.perf_counter() - t0
    lab.lifts = stats.lifts
    return lab, stats
