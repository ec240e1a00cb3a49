"""Vertex labellings into a lazified tree: validity, destinations, lifts.

A labelling maps each game vertex to a position of the linear space,
subject to admissibility: a vertex of priority p may sit at a regular
position only at level exactly p, and at a lazy position only at level at
least p.  Validity is the local progress condition; a labelling in which
every vertex is valid is an attractor decomposition embedded in the tree,
and the set of valid edges is a winning strategy on the non-top vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .game import EVEN, ODD, ParityGame, ParityGameError, PositionalStrategy
from .lazyspace import LazySpace


class LabellingError(ParityGameError):
    pass


@dataclass
class Labelling:
    flavor: int
    game: ParityGame
    space: LazySpace
    mu: np.ndarray                 # int32 position index per vertex
    lifts: int = 0
    version: int = 0
    _cut_memo: dict = field(default_factory=dict, repr=False, compare=False)

    # -- construction ------------------------------------------------------

    @classmethod
    def smallest(cls, game: ParityGame, space: LazySpace,
                 flavor: int) -> "Labelling":
        """The minimum admissible labelling: for the Even flavor the
        priority-d vertices start at the root and everything else at the
        position right after it; for the Odd flavor everything starts right
        after the root."""
        if space.flavor != flavor:
            raise LabellingError("space flavor mismatch")
        want = game.d + (1 if flavor == ODD else 0)
        if space.tree.level[space.tree.root] != want:
            raise LabellingError(
                f"tree root level {space.tree.level[space.tree.root]} does "
                f"not match game (need {want})")
        root_pos = int(space.pos_of_node[space.tree.root])
        mu = np.full(game.n, root_pos, np.int32)
        if space.top == root_pos:
            # degenerate single-position space; only possible with no game
            return cls(flavor, game, space, mu)
        start = root_pos + 1
        if flavor == EVEN:
            mu[:] = np.where(game.priority == game.d, root_pos, start)
        else:
            mu[:] = start
        lab = cls(flavor, game, space, mu)
        lab.check_admissible()
        return lab

    def copy(self) -> "Labelling":
        return Labelling(self.flavor, self.game, self.space, self.mu.copy(),
                         lifts=self.lifts)

    # -- admissibility -----------------------------------------------------

    def position_admissible(self, v: int, p: int) -> bool:
        lvl = int(self.space.level[p])
        prio = int(self.game.priority[v])
        if self.space.is_regular(p):
            return lvl == prio
        return prio <= lvl

    def check_admissible(self):
        for v in range(self.game.n):
            if not self.position_admissible(v, int(self.mu[v])):
                raise LabellingError(
                    f"vertex {v} (priority {int(self.game.priority[v])}) "
                    f"at inadmissible position {int(self.mu[v])}")

    # -- validity ----------------------------------------------------------

    def _cut_mask(self, strict_bound: int, leq_bound: int,
                  vmove: int = -1) -> np.ndarray:
        """Memoized attractor mask for the cut (< strict, <= leq) with an
        optional hypothetically relocated vertex."""
        key = (self.version, strict_bound, leq_bound, vmove)
        hit = self._cut_memo.get(key)
        if hit is not None:
            return hit
        if len(self._cut_memo) > 4096:
            self._cut_memo.clear()
        g = self.game
        pred_indptr, pred_indices = g.pred
        mask = _kernels.cut_attract(
            pred_indptr, pred_indices, g.succ_indptr, g.succ_indices,
            g.owner, self.flavor, self.mu, strict_bound, leq_bound, vmove)
        self._cut_memo[key] = mask
        return mask

    def is_edge_valid(self, u: int, w: int) -> bool:
        p = int(self.mu[u])
        if p == self.space.top:
            return True
        if self.space.is_regular(p):
            node = int(self.space.node_at[p])
            return int(self.mu[w]) < int(self.space.after[node])
        q = int(self.mu[w])
        if q < p:
            return True
        if q > p:
            return False
        return bool(self._cut_mask(p, p)[w])

    def is_vertex_valid(self, v: int) -> bool:
        p = int(self.mu[v])
        if p == self.space.top:
            return True
        if self.space.is_lazy(p):
            # a vertex at a lazy position is valid exactly when the flavor
            # player can force it down into the strictly-lower cut while
            # staying weakly below
            return bool(self._cut_mask(p, p)[v])
        node = int(self.space.node_at[p])
        bound = int(self.space.after[node])
        succs = self.game.successors(v)
        vals = self.mu[succs]
        if self.game.owner[v] == self.flavor:
            return bool((vals < bound).any())
        return bool((vals < bound).all())

    def invalid_vertices(self):
        return [v for v in range(self.game.n) if not self.is_vertex_valid(v)]

    def is_attractor_decomposition(self) -> bool:
        return all(self.is_vertex_valid(v) for v in range(self.game.n))

    # -- destinations ------------------------------------------------------

    def _regular_candidate(self, v: int, min_pos: int):
        prio = int(self.game.priority[v])
        succs = [int(u) for u in self.game.successors(v)]
        others = [int(self.mu[u]) for u in succs if u != v]
        has_loop = v in succs
        # a self-loop is valid at any regular position (the vertex's own
        # new position is always below its subtree's upper end)
        if self.game.owner[v] == self.flavor:
            threshold = -1 if has_loop else min(others)
        else:
            threshold = max(others) if others else -1
        return self.space.first_regular_candidate(prio, min_pos, threshold)

    def _lazy_candidate(self, v: int, min_pos: int):
        """Smallest admissible lazy position >= min_pos at which v becomes
        valid, found by binary search over the cut configurations.  The
        validity test at a lazy bound is monotone in the bound, and the
        underlying cut sets only change at positions occupied by other
        vertices."""
        occupied = sorted({int(self.mu[u]) for u in range(self.game.n)
                           if u != v})
        # configurations, in increasing order of the real-valued bound:
        # (q, q) stands for bound exactly q, (q+1, q) for bounds strictly
        # between q and the next occupied value
        configs = []
        for q in occupied:
            configs.append((q, q, q))          # strict, leq, min position
            configs.append((q + 1, q, q + 1))
        if not configs:
            return None

        def passes(idx):
            strict, leq, _ = configs[idx]
            return bool(self._cut_mask(strict, leq, vmove=v)[v])

        if not passes(len(configs) - 1):
            return None
        lo, hi = 0, len(configs) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if passes(mid):
                hi = mid
            else:
                lo = mid + 1
        bound = configs[lo][2]
        prio = int(self.game.priority[v])
        return self.space.first_lazy_at_least(prio, max(min_pos, bound))

    def destination(self, v: int) -> int:
        """Smallest admissible position >= mu(v) at which v is valid after
        moving there; equals mu(v) exactly when v is already valid."""
        if self.is_vertex_valid(v):
            return int(self.mu[v])
        start = int(self.mu[v])
        cands = [self.space.top]
        r = self._regular_candidate(v, start)
        if r is not None:
            cands.append(r)
        l = self._lazy_candidate(v, start)
        if l is not None:
            cands.append(l)
        return min(cands)

    def destination_naive(self, v: int) -> int:
        """Reference implementation: scan every admissible position in
        order and test validity on the modified labelling."""
        start = int(self.mu[v])
        saved = int(self.mu[v])
        try:
            for p in range(start, self.space.size):
                if not self.position_admissible(v, p):
                    continue
                self.mu[v] = p
                self.version += 1
                if self.is_vertex_valid(v):
                    return p
        finally:
            self.mu[v] = saved
            self.version += 1
        raise AssertionError("top must always be a valid destination")

    # -- mutation ----------------------------------------------------------

    def set_position(self, v: int, p: int):
        """Unchecked write (used by the symmetric engine's accelerations
        and resets, which move vertices outside the lift discipline)."""
        if not self.position_admissible(v, p):
            raise LabellingError(f"inadmissible position {p} for vertex {v}")
        self.mu[v] = p
        self.version += 1

    def lift(self, v: int, target: int, check_destination: bool = False):
        """Raise one vertex; the target must be admissible, strictly above
        the current position, and (when checking) at most the destination."""
        if target <= int(self.mu[v]):
            raise LabellingError("lift target must strictly increase")
        if not self.position_admissible(v, target):
            raise LabellingError("lift target inadmissible")
        if check_destination and target > self.destination(v):
            raise LabellingError("lift target beyond destination")
        self.mu[v] = target
        self.version += 1
        self.lifts += 1

    # -- derived objects ---------------------------------------------------

    def pointwise_min(self, other: "Labelling") -> "Labelling":
        if other.flavor != self.flavor or other.space is not self.space \
                and other.space.size != self.space.size:
            raise LabellingError("labellings live in different spaces")
        return Labelling(self.flavor, self.game, self.space,
                         np.minimum(self.mu, other.mu).astype(np.int32))

    def preimage_below(self, p: int, strict: bool = True) -> np.ndarray:
        if strict:
            return (self.mu < p).astype(np.uint8)
        return (self.mu <= p).astype(np.uint8)

    def extract_strategy(self) -> PositionalStrategy:
        """A positional strategy for the flavor player once every vertex is
        valid.

        At regular positions every valid edge makes progress and all of
        them are kept.  At a lazy position p validity only certifies
        membership in the cut attractor, so the flavor player must follow
        the attractor's witness edge; an arbitrary edge back into the
        attractor (e.g. a self-loop among position-p vertices) would stall
        forever without reaching the strictly-lower cut.
        """
        if not self.is_attractor_decomposition():
            raise LabellingError(
                "strategy extraction requires an all-valid labelling")
        from .attractors import attractor_through
        witness_of = {}
        own_lazy = sorted({int(self.mu[u]) for u in range(self.game.n)
                           if self.game.owner[u] == self.flavor
                           and int(self.mu[u]) != self.space.top
                           and self.space.is_lazy(int(self.mu[u]))})
        for p in own_lazy:
            res = attractor_through(self.game, self.flavor,
                                    (self.mu < p).astype(np.uint8),
                                    (self.mu <= p).astype(np.uint8))
            witness_of[p] = res.witness
        edges = set()
        for u in range(self.game.n):
            p = int(self.mu[u])
            if self.game.owner[u] == self.flavor and p in witness_of:
                w = int(witness_of[p][u])
                if w < 0:
                    raise LabellingError(
                        f"no attractor witness at vertex {u}")
                edges.add((u, w))
                continue
            for w in self.game.successors(u):
                if self.is_edge_valid(u, int(w)):
                    edges.add((u, int(w)))
        return PositionalStrategy(player=self.flavor, edges=edges)

    def won_vertices(self) -> frozenset:
        """Vertices strictly below top, i.e. claimed by the flavor player."""
        return frozenset(int(v) for v in np.flatnonzero(self.mu < self.space.top))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "flavor": "even" if self.flavor == EVEN else "odd",
            "positions": [list(self.space.describe(int(p))) for p in self.mu],
        })

    @classmethod
    def from_json(cls, text: str, game: ParityGame,
                  space: LazySpace) -> "Labelling":
        data = json.loads(text)
        flavor = EVEN if data["flavor"] == "even" else ODD
        mu = np.asarray([entry[0] for entry in data["positions"]], np.int32)
        lab = cls(flavor, game, space, mu)
        lab.check_admissible()
        return lab


@dataclass
class LabellingPair:
    even: Labelling
    odd: Labelling

    def __post_init__(self):
        if self.even.flavor != EVEN or self.odd.flavor != ODD:
            raise LabellingError("pair components have wrong flavors")

    def of(self, flavor: int) -> Labelling:
        return self.even if flavor == EVEN else self.odd

    @property
    def total_lifts(self) -> int:
        return self.even.lifts + self.odd.lifts

    @classmethod
    def smallest(cls, game, space_even, space_odd) -> "LabellingPair":
        return cls(Labelling.smallest(game, space_even, EVEN),
                   Labelling.smallest(game, space_odd, ODD))
