"""Linear position spaces obtained by lazifying an ordered levelled tree.

Between a node and its neighbours in the depth-first order we insert lazy
positions: one before each child, one after each child, with consecutive
siblings sharing the position between them.  The position before the root
is omitted; the position after the root is the maximum, called top.  The
result is a dense integer index space where subtree tests, region
rectangles, and order comparisons are plain integer arithmetic.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

import numpy as np

from .trees import OrderedLevelledTree

REGULAR = 0
LAZY = 1


@dataclass
class LazySpace:
    tree: OrderedLevelledTree
    kind: np.ndarray          # uint8, REGULAR or LAZY per position
    node_at: np.ndarray       # int32, tree node id at regular positions, -1 at lazy
    level: np.ndarray         # int32 per position
    pos_of_node: np.ndarray   # int32, tree node -> its regular position
    before: np.ndarray        # int32, tree node -> position before it (-1 at root)
    after: np.ndarray         # int32, tree node -> position after it
    top: int
    # per-level sorted position arrays for fast candidate searches
    _reg_pos: dict = field(default_factory=dict, repr=False)
    _reg_after: dict = field(default_factory=dict, repr=False)
    _lazy_pos: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return len(self.kind)

    @property
    def flavor(self) -> int:
        return self.tree.flavor

    def is_lazy(self, p: int) -> bool:
        return self.kind[p] == LAZY

    def is_regular(self, p: int) -> bool:
        return self.kind[p] == REGULAR

    def succ(self, p: int) -> int:
        if p >= self.top:
            raise ValueError("top has no successor")
        return p + 1

    def subtree_range(self, node: int) -> tuple:
        """Half-open interval [node's position, after(node))."""
        return int(self.pos_of_node[node]), int(self.after[node])

    def subtree_strict_range(self, node: int) -> tuple:
        lo, hi = self.subtree_range(node)
        return lo + 1, hi

    def in_subtree(self, p: int, node: int) -> bool:
        lo, hi = self.subtree_range(node)
        return lo <= p < hi

    def describe(self, p: int) -> tuple:
        """(index, kind string, level) as used in traces."""
        return (int(p), "lazy" if self.is_lazy(p) else "regular",
                int(self.level[p]))

    # -- candidate searches for destination computation -------------------

    def regular_positions_at_level(self, lvl: int):
        return self._reg_pos.get(lvl, [])

    def first_regular_candidate(self, lvl: int, min_pos: int,
                                after_threshold: int):
        """Smallest regular position p >= min_pos with level(p) = lvl and
        after(node(p)) > after_threshold, or None.  Uses that the after
        values of same-level nodes increase along the depth-first order."""
        pos = self._reg_pos.get(lvl)
        if not pos:
            return None
        afters = self._reg_after[lvl]
        i = bisect.bisect_left(pos, min_pos)
        j = bisect.bisect_right(afters, after_threshold, lo=i)
        if j == len(pos):
            return None
        return pos[j]

    def first_lazy_at_least(self, min_level: int, min_pos: int):
        """Smallest lazy position p >= min_pos with level(p) >= min_level,
        or None (top always qualifies, so None only past top)."""
        best = None
        for lvl, pos in self._lazy_pos.items():
            if lvl < min_level:
                continue
            i = bisect.bisect_left(pos, min_pos)
            if i < len(pos) and (best is None or pos[i] < best):
                best = pos[i]
        return best


def lazify(tree: OrderedLevelledTree) -> LazySpace:
    n_nodes = tree.n_nodes
    kinds, nodes, levels = [], [], []
    pos_of_node = np.full(n_nodes, -1, np.int32)
    before = np.full(n_nodes, -1, np.int32)
    after = np.full(n_nodes, -1, np.int32)

    def emit_regular(node):
        pos_of_node[node] = len(kinds)
        kinds.append(REGULAR)
        nodes.append(node)
        levels.append(tree.level[node])

    def emit_lazy(lvl):
        p = len(kinds)
        kinds.append(LAZY)
        nodes.append(-1)
        levels.append(lvl)
        return p

    def walk(node):
        emit_regular(node)
        cs = tree.children[node]
        for i, c in enumerate(cs):
            p = emit_lazy(tree.level[c] + 1)
            before[c] = p
            if i > 0:
                after[cs[i - 1]] = p
            walk(c)
        if cs:
            after[cs[-1]] = emit_lazy(tree.level[cs[-1]] + 1)

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 2 * tree.height + 100))
    try:
        walk(tree.root)
    finally:
        sys.setrecursionlimit(old)
    top = emit_lazy(tree.level[tree.root] + 1)
    after[tree.root] = top

    space = LazySpace(
        tree=tree,
        kind=np.asarray(kinds, np.uint8),
        node_at=np.asarray(nodes, np.int32),
        level=np.asarray(levels, np.int32),
        pos_of_node=pos_of_node,
        before=before,
        after=after,
        top=top,
    )
    _index_levels(space)
    _check_space(space)
    return space


def _index_levels(space: LazySpace):
    for p in range(space.size):
        lvl = int(space.level[p])
        if space.kind[p] == REGULAR:
            node = int(space.node_at[p])
            space._reg_pos.setdefault(lvl, []).append(p)
            space._reg_after.setdefault(lvl, []).append(int(space.after[node]))
        else:
            space._lazy_pos.setdefault(lvl, []).append(p)


def _check_space(space: LazySpace):
    tree = space.tree
    expected = tree.n_nodes + 1
    for node in range(tree.n_nodes):
        if tree.children[node]:
            expected += len(tree.children[node]) + 1
    assert space.size == expected, "position count mismatch"
    for node in range(tree.n_nodes):
        p = int(space.pos_of_node[node])
        assert space.node_at[p] == node
        a = int(space.after[node])
        assert space.level[a] == tree.level[node] + 1
        b = int(space.before[node])
        if node == tree.root:
            assert b == -1
        else:
            assert space.level[b] == tree.level[node] + 1
            assert b < p < a
    # depth-first order of regular positions matches node order
    regs = [int(space.node_at[p]) for p in range(space.size)
            if space.kind[p] == REGULAR]
    assert regs == sorted(regs)
