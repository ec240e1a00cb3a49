"""Symmetric solving on the product of the two position spaces.

Both players' labellings are advanced together by a recursion over the
interleaving of the two trees.  Each interleaving node owns a rectangle of
the grid (its scope); a call empties its scope by clearing the child
rectangles left to right and finally the strip after the last child.  When
every vertex inside a scope is already valid for one player, the opponent
coordinates jump past the scope at once (acceleration).

The same engine also runs the deterministic variant with short lifts and
resets, which simulates the generic attractor-based recursion call for
call: its cleanup passes move exactly the attractor sets the recursion
would remove (in attractor rank order, so each individual move remains a
legal lift), its acceleration fires exactly when the recursion would
finish the scope without removing anything, and after each call the
vertices pushed out sideways have their opponent coordinate reverted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .attractors import attractor
from .game import EVEN, ODD, ParityGame, opponent
from .labelling import Labelling, LabellingPair
from .lazyspace import LazySpace


@dataclass(frozen=True)
class InterleavingNode:
    """A pair of nodes, one per tree, with the first one level below the
    second; the roles swap at each generation."""

    p_flavor: int
    p_node: int     # node of the p_flavor tree, at level(n)
    q_node: int     # node of the other tree, at level(n) + 1
    path: tuple = ()

    @property
    def q_flavor(self) -> int:
        return opponent(self.p_flavor)


@dataclass
class Trace:
    events: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)

    def record(self, kind: str, **data):
        self.events.append({"kind": kind, **data})
        self.counters[kind] = self.counters.get(kind, 0) + 1

    def to_jsonl(self) -> str:
        import json
        return "\n".join(json.dumps(e) for e in self.events)


@dataclass
class SymmetricStats:
    calls: int = 0
    accel_updates_even: int = 0
    accel_updates_odd: int = 0
    resets: int = 0
    max_consecutive_accels: int = 0
    wall_time: float = 0.0
    _accel_run: int = 0

    def updates(self, pair: LabellingPair, flavor: int) -> int:
        base = pair.of(flavor).lifts
        return base + (self.accel_updates_even if flavor == EVEN
                       else self.accel_updates_odd)

    def total_updates(self, pair: LabellingPair) -> int:
        return self.updates(pair, EVEN) + self.updates(pair, ODD)


class SymmetricEngine:
    """Shared recursion for the plain symmetric algorithm (mode "sym") and
    its deterministic short-lift-and-reset variant (mode "variant")."""

    def __init__(self, game: ParityGame, space_even: LazySpace,
                 space_odd: LazySpace, mode: str = "sym",
                 policy: str = "short", trace: Trace | None = None,
                 record_frames: bool = False):
        if mode not in ("sym", "variant"):
            raise ValueError(f"unknown mode {mode!r}")
        if policy not in ("short", "max"):
            raise ValueError(f"unknown lift policy {policy!r}")
        self.game = game
        self.spaces = {EVEN: space_even, ODD: space_odd}
        self.mode = mode
        self.policy = policy
        self.trace = trace
        self.record_frames = record_frames
        self.frames: dict = {}
        self.pair = LabellingPair.smallest(game, space_even, space_odd)
        self.stats = SymmetricStats()
        self.delta = max(space_even.tree.max_degree,
                         space_odd.tree.max_degree, 1)
        self.d = space_even.tree.level[space_even.tree.root]

    # -- geometry ---------------------------------------------------------

    def root_node(self) -> InterleavingNode:
        return InterleavingNode(EVEN, self.spaces[EVEN].tree.root,
                                self.spaces[ODD].tree.root)

    def children(self, n: InterleavingNode):
        q_tree = self.spaces[n.q_flavor].tree
        return [InterleavingNode(n.q_flavor, c, n.p_node, n.path + (i,))
                for i, c in enumerate(q_tree.children[n.q_node])]

    def _rect(self, n: InterleavingNode, p_iv: tuple, q_iv: tuple) -> tuple:
        """Orient a (P-axis interval, Q-axis interval) pair into the fixed
        (Even interval, Odd interval) frame."""
        if n.p_flavor == EVEN:
            return (*p_iv, *q_iv)
        return (*q_iv, *p_iv)

    def scope_rect(self, n: InterleavingNode) -> tuple:
        sp = self.spaces[n.p_flavor]
        sq = self.spaces[n.q_flavor]
        return self._rect(n, sp.subtree_range(n.p_node),
                          sq.subtree_strict_range(n.q_node))

    def b_rect(self, n: InterleavingNode, q_child: int) -> tuple:
        sp = self.spaces[n.p_flavor]
        sq = self.spaces[n.q_flavor]
        b = int(sq.before[q_child])
        return self._rect(n, sp.subtree_range(n.p_node), (b, b + 1))

    def a_rect(self, n: InterleavingNode, q_child: int) -> tuple:
        # the strip after a child spans the whole P subtree, so that it
        # coincides with the B strip of the next sibling
        sp = self.spaces[n.p_flavor]
        sq = self.spaces[n.q_flavor]
        a = int(sq.after[q_child])
        return self._rect(n, sp.subtree_range(n.p_node), (a, a + 1))

    def g_rect(self, n: InterleavingNode, q_child: int) -> tuple:
        sp = self.spaces[n.p_flavor]
        sq = self.spaces[n.q_flavor]
        p = int(sp.pos_of_node[n.p_node])
        return self._rect(n, (p, p + 1), sq.subtree_range(q_child))

    def member_mask(self, rect: tuple) -> np.ndarray:
        elo, ehi, olo, ohi = rect
        mue = self.pair.even.mu
        muo = self.pair.odd.mu
        return (mue >= elo) & (mue < ehi) & (muo >= olo) & (muo < ohi)

    def members(self, rect: tuple) -> list:
        return [int(v) for v in np.flatnonzero(self.member_mask(rect))]

    def pair_in_rect(self, pe: int, po: int, rect: tuple) -> bool:
        elo, ehi, olo, ohi = rect
        return elo <= pe < ehi and olo <= po < ohi

    def check_partition(self, n: InterleavingNode):
        """The child rectangles and the final strip tile the scope."""
        sq = self.spaces[n.q_flavor]
        q_children = sq.tree.children[n.q_node]
        if not q_children:
            return
        lo, hi = sq.subtree_strict_range(n.q_node)
        cursor = lo
        for c in q_children:
            assert int(sq.before[c]) == cursor
            clo, chi = sq.subtree_range(c)
            assert clo == cursor + 1
            cursor = chi
        assert int(sq.after[q_children[-1]]) == cursor
        assert cursor + 1 == hi

    # -- solving ----------------------------------------------------------

    def solve(self):
        t0 = time.perf_counter()
        if self.trace is not None:
            self.trace.record("init",
                              even=[int(p) for p in self.pair.even.mu],
                              odd=[int(p) for p in self.pair.odd.mu])
        self.empty_scope(self.root_node())
        self.stats.wall_time = time.perf_counter() - t0
        top_e = self.spaces[EVEN].top
        top_o = self.spaces[ODD].top
        mue, muo = self.pair.even.mu, self.pair.odd.mu
        assert bool(np.all((mue == top_e) | (muo == top_o))), \
            "every vertex must end at one of the two top positions"
        return self.pair, self.stats

    def _accel_flavor(self, scope_vertices):
        """The player whose validity lets the call accelerate; Even is
        preferred when both qualify (and vacuously on an empty scope)."""
        if all(self.pair.even.is_vertex_valid(v) for v in scope_vertices):
            return EVEN
        if all(self.pair.odd.is_vertex_valid(v) for v in scope_vertices):
            return ODD
        return None

    def _variant_accel_flavor(self, n: InterleavingNode, scope_vertices):
        """Deterministic acceleration test for the variant: fire vacuously
        on an empty scope, and otherwise exactly when the top-priority
        attractor already swallows the whole scope, so that the simulated
        recursion would pass an empty set to every child call."""
        if not scope_vertices:
            return EVEN
        members = self.member_mask(self.scope_rect(n))
        h = int(self.spaces[n.p_flavor].tree.level[n.p_node])
        target = members & (self.game.priority == h)
        res = attractor(self.game, n.p_flavor, target.astype(np.uint8),
                        active=members.astype(np.uint8))
        if all(res.attracted[v] for v in scope_vertices):
            return n.p_flavor
        return None

    def empty_scope(self, n: InterleavingNode):
        self.stats.calls += 1
        if self.trace is not None:
            self.trace.record("call-enter", path=list(n.path))
        scope = self.scope_rect(n)
        in_scope = self.members(scope)
        if self.mode == "variant":
            flavor = self._variant_accel_flavor(n, in_scope)
        else:
            flavor = self._accel_flavor(in_scope)
        if flavor is not None:
            self.stats._accel_run += 1
            self.stats.max_consecutive_accels = max(
                self.stats.max_consecutive_accels, self.stats._accel_run)
            self._accelerate(n, flavor, in_scope)
        else:
            self.stats._accel_run = 0
            self.check_partition(n)
            kids = self.children(n)
            if self.mode == "variant":
                p_lab = self.pair.of(n.p_flavor)
                p_exit = int(self.spaces[n.p_flavor].after[n.p_node])
                expelled = None
                for child in kids:
                    self._empty_b_variant(n, child, expelled)
                    already = p_lab.mu == p_exit
                    self.empty_scope(child)
                    expelled = (p_lab.mu == p_exit) & ~already
                self._empty_a_variant(n, kids[-1], expelled)
            else:
                for child in kids:
                    self._empty_b(n, child)
                    self.empty_scope(child)
                self._empty_a(n, kids[-1])
        if self.mode == "variant":
            self._reset(n)
        assert not self.members(scope), "scope must be empty after the call"
        if self.trace is not None:
            self.trace.record("call-exit", path=list(n.path))

    def _accelerate(self, n: InterleavingNode, flavor: int, vertices):
        bar = opponent(flavor)
        # the opponent-side tree node of the pair
        node = n.p_node if bar == n.p_flavor else n.q_node
        target = int(self.spaces[bar].after[node])
        lab = self.pair.of(bar)
        for v in vertices:
            lab.set_position(v, target)
            if bar == EVEN:
                self.stats.accel_updates_even += 1
            else:
                self.stats.accel_updates_odd += 1
        if self.trace is not None:
            self.trace.record("acceleration", path=list(n.path),
                              valid_for="even" if flavor == EVEN else "odd",
                              axis="even" if bar == EVEN else "odd",
                              target=target, vertices=list(vertices))

    def _lift(self, lab: Labelling, v: int, target: int, checked: bool):
        old = int(lab.mu[v])
        if checked:
            lab.lift(v, target)
        else:
            # the variant's cleanup loops move vertices regardless of their
            # destinations; admissibility is still enforced
            lab.set_position(v, target)
            lab.lifts += 1
        if self.trace is not None:
            self.trace.record("lift", vertex=v,
                              axis="even" if lab.flavor == EVEN else "odd",
                              source=old, target=target)

    def _drain(self, rect, lab, condition, target_of, checked):
        """Repeatedly move the smallest-id vertex of the strip satisfying
        ``condition``, until none is left."""
        while True:
            found = False
            for v in self.members(rect):
                if not condition(v):
                    continue
                self._lift(lab, v, target_of(v), checked=checked)
                found = True
                break
            if not found:
                return

    def _empty_b(self, n: InterleavingNode, child: InterleavingNode):
        """Clear the strip before a child, in three sequential passes:
        vertices forced out on the P axis go past the P subtree; vertices
        forced past the child subtree on the Q axis go there next; the rest
        drop into the child subtree's entrance."""
        sp = self.spaces[n.p_flavor]
        sq = self.spaces[n.q_flavor]
        q_child = child.p_node
        rect = self.b_rect(n, q_child)
        p_lab = self.pair.of(n.p_flavor)
        q_lab = self.pair.of(n.q_flavor)
        p_exit = int(sp.after[n.p_node])
        q_exit = int(sq.after[q_child])
        child_pos = int(sq.pos_of_node[q_child])
        child_level = int(sq.tree.level[q_child])

        self._drain(rect, p_lab,
                    lambda v: p_lab.destination(v) >= p_exit,
                    lambda v: (p_exit if self.policy == "short"
                               else p_lab.destination(v)),
                    checked=True)
        self._drain(rect, q_lab,
                    lambda v: q_lab.destination(v) >= q_exit,
                    lambda v: (q_exit if self.policy == "short"
                               else q_lab.destination(v)),
                    checked=True)

        def entrance(v):
            if int(self.game.priority[v]) == child_level:
                return child_pos
            return child_pos + 1

        def target(v):
            if self.policy == "max":
                return q_lab.destination(v)
            return entrance(v)

        self._drain(rect, q_lab,
                    lambda v: not q_lab.is_vertex_valid(v), target,
                    checked=True)
        assert not self.members(rect), \
            "the strip before a child must be empty before recursing"

    def _empty_a(self, n: InterleavingNode, last_child: InterleavingNode):
        """Clear the strip after the last child, which finishes the scope."""
        sp = self.spaces[n.p_flavor]
        sq = self.spaces[n.q_flavor]
        rect = self.a_rect(n, last_child.p_node)
        p_lab = self.pair.of(n.p_flavor)
        q_lab = self.pair.of(n.q_flavor)
        p_exit = int(sp.after[n.p_node])
        q_exit = int(sq.after[n.q_node])

        self._drain(rect, p_lab,
                    lambda v: p_lab.destination(v) >= p_exit,
                    lambda v: (p_exit if self.policy == "short"
                               else p_lab.destination(v)),
                    checked=True)
        self._drain(rect, q_lab,
                    lambda v: not q_lab.is_vertex_valid(v),
                    lambda v: (q_exit if self.policy == "short"
                               else q_lab.destination(v)),
                    checked=True)
        assert not self.members(rect), \
            "the strip after the last child must end up empty"

    # -- variant cleanup passes -------------------------------------------

    def _attract_out(self, n: InterleavingNode, rect: tuple, expelled):
        """First variant pass over a strip: the vertices the previous
        child call pushed past the P subtree drag their opponent attractor
        (within the strip) out with them.  Lifting in attractor rank order
        keeps every move at or below the vertex's destination: once the
        forcing successors sit past the subtree, the vertex has no valid
        position before its end."""
        if expelled is None or not expelled.any():
            return
        p_lab = self.pair.of(n.p_flavor)
        p_exit = int(self.spaces[n.p_flavor].after[n.p_node])
        members = self.member_mask(rect)
        active = members | expelled
        res = attractor(self.game, n.q_flavor, expelled.astype(np.uint8),
                        active=active.astype(np.uint8))
        hit = res.attracted.astype(bool) & members
        for _, v in sorted((int(res.rank[v]), int(v))
                           for v in np.flatnonzero(hit)):
            self._lift(p_lab, v, p_exit, checked=False)

    def _empty_b_variant(self, n: InterleavingNode,
                         child: InterleavingNode, expelled):
        """Clear the strip before a child the way the simulated recursion
        partitions its current set: companions of the previously expelled
        vertices leave on the P axis, the attractor of the top-priority
        vertices steps over the child on the Q axis, and the rest drops
        into the child subtree's entrance."""
        sq = self.spaces[n.q_flavor]
        q_child = child.p_node
        rect = self.b_rect(n, q_child)
        q_lab = self.pair.of(n.q_flavor)
        q_exit = int(sq.after[q_child])
        child_pos = int(sq.pos_of_node[q_child])
        child_level = int(sq.tree.level[q_child])
        h = int(self.spaces[n.p_flavor].tree.level[n.p_node])

        self._attract_out(n, rect, expelled)
        if self.record_frames:
            self.frames[(n.path, child.path[-1], "G")] = frozenset(
                self.members(self.scope_rect(n)))
        members = self.member_mask(rect)
        target = members & (self.game.priority == h)
        res = attractor(self.game, n.p_flavor, target.astype(np.uint8),
                        active=members.astype(np.uint8))
        for _, v in sorted((int(res.rank[v]), int(v))
                           for v in np.flatnonzero(res.attracted)):
            self._lift(q_lab, v, q_exit, checked=False)
        if self.record_frames:
            self.frames[(n.path, child.path[-1], "A")] = frozenset(
                self.members(self.a_rect(n, q_child)))

        for v in self.members(rect):
            pos = (child_pos if int(self.game.priority[v]) == child_level
                   else child_pos + 1)
            self._lift(q_lab, v, pos, checked=False)
        assert not self.members(rect), \
            "the strip before a child must be empty before recursing"

    def _empty_a_variant(self, n: InterleavingNode,
                         last_child: InterleavingNode, expelled):
        """Clear the strip after the last child: companions of the
        expelled vertices leave on the P axis, everything left exits the
        scope on the Q axis."""
        sq = self.spaces[n.q_flavor]
        rect = self.a_rect(n, last_child.p_node)
        q_lab = self.pair.of(n.q_flavor)
        q_exit = int(sq.after[n.q_node])
        self._attract_out(n, rect, expelled)
        for v in self.members(rect):
            self._lift(q_lab, v, q_exit, checked=False)
        assert not self.members(rect), \
            "the strip after the last child must end up empty"

    def _reset(self, n: InterleavingNode):
        """Revert the opponent coordinate of the vertices that left the
        scope sideways, re-enabling attractor-style recomputation below."""
        sp = self.spaces[n.p_flavor]
        sq = self.spaces[n.q_flavor]
        p_exit = int(sp.after[n.p_node])
        rect = self._rect(n, (p_exit, p_exit + 1),
                          sq.subtree_strict_range(n.q_node))
        q_lab = self.pair.of(n.q_flavor)
        q_target = int(sq.pos_of_node[n.q_node]) + 1
        vs = self.members(rect)
        olds = {}
        for v in vs:
            old = int(q_lab.mu[v])
            if old != q_target:
                olds[v] = old
                q_lab.set_position(v, q_target)
        if vs:
            self.stats.resets += 1
            if self.trace is not None:
                self.trace.record(
                    "reset", path=list(n.path), vertices=vs,
                    axis="even" if q_lab.flavor == EVEN else "odd",
                    sources={str(v): o for v, o in olds.items()},
                    target=q_target)


def solve_symmetric(game: ParityGame, space_even: LazySpace,
                    space_odd: LazySpace, policy: str = "short",
                    trace: Trace | None = None):
    """The plain symmetric algorithm: acceleration plus destination-bounded
    lifts, no resets.  Returns (pair, stats)."""
    engine = SymmetricEngine(game, space_even, space_odd, mode="sym",
                             policy=policy, trace=trace)
    return engine.solve()


def call_bound(engine_or_stats, pair, d, delta) -> tuple:
    """The two derived forms of the recursion-depth budget."""
    stats = engine_or_stats
    total = stats.total_updates(pair)
    return (2 * d * delta * (total + 1), stats.calls)
