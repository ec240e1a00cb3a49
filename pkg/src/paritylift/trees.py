"""Ordered levelled trees of either parity flavor.

An Even tree of height h has its root at level 2h and leaves at level 0;
an Odd tree has the same shape shifted one level up (root 2h+1, leaves 1).
Every child sits two levels below its parent.  Nodes are identified by
their depth-first (preorder) index, so the tree's linear order is plain
integer comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .game import EVEN, ODD

TREE_NODE_CAP = 5_000_000


class TreeError(ValueError):
    pass


@dataclass
class OrderedLevelledTree:
    """Immutable ordered levelled tree.  ``children[i]`` lists child node
    ids in order; ``level[i]`` is the node's level; ``subtree_size[i]``
    counts nodes in the subtree rooted at i (i itself included)."""

    flavor: int                    # EVEN or ODD
    children: list                 # list of lists of node ids (DF indices)
    parent: list                   # parent id, -1 at root
    level: list
    subtree_size: list
    root: int = 0

    @classmethod
    def from_shape(cls, flavor: int, shape) -> "OrderedLevelledTree":
        """Build from nested child lists: a leaf is ``[]``, an inner node a
        list of child shapes."""
        height = _shape_height(shape)
        root_level = 2 * height + (1 if flavor == ODD else 0)
        children, parent, level, size = [], [], [], []

        def build(node_shape, lvl, par):
            my = len(children)
            children.append([])
            parent.append(par)
            level.append(lvl)
            size.append(1)
            if len(children) > TREE_NODE_CAP:
                raise TreeError("tree node cap exceeded")
            for ch in node_shape:
                cid = build(ch, lvl - 2, my)
                children[my].append(cid)
                size[my] += size[cid]
            return my

        import sys
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 2 * height + 100))
        try:
            build(shape, root_level, -1)
        finally:
            sys.setrecursionlimit(old)
        return cls(flavor=flavor, children=children, parent=parent,
                   level=level, subtree_size=size)

    @property
    def n_nodes(self) -> int:
        return len(self.children)

    @property
    def height(self) -> int:
        return (self.level[self.root] - (1 if self.flavor == ODD else 0)) // 2

    @property
    def leaf_count(self) -> int:
        return sum(1 for c in self.children if not c)

    @property
    def max_degree(self) -> int:
        return max((len(c) for c in self.children), default=0)

    def is_leaf(self, node: int) -> bool:
        return not self.children[node]

    def leaves(self):
        return [i for i, c in enumerate(self.children) if not c]

    def to_shape(self, node: int = 0):
        return [self.to_shape(c) for c in self.children[node]]

    def check(self):
        """Re-verify the level and preorder invariants."""
        lo = 1 if self.flavor == ODD else 0
        for i, cs in enumerate(self.children):
            for c in cs:
                if self.level[c] != self.level[i] - 2:
                    raise TreeError("child level must be parent level - 2")
                if not (c > i):
                    raise TreeError("children must follow parents in order")
            if not cs and self.level[i] != lo:
                raise TreeError("leaf at wrong level")
        if self.parent[self.root] != -1:
            raise TreeError("root must have no parent")


def _shape_height(shape) -> int:
    h = 0
    stack = [(shape, 0)]
    while stack:
        s, depth = stack.pop()
        if s:
            for ch in s:
                stack.append((ch, depth + 1))
        else:
            h = max(h, depth)
    # levelled trees have all leaves at the same depth; verify
    stack = [(shape, 0)]
    while stack:
        s, depth = stack.pop()
        if s:
            for ch in s:
                stack.append((ch, depth + 1))
        elif depth != h:
            raise TreeError("all leaves must sit at the same depth")
    return h


def complete_tree(flavor: int, height: int, branching: int,
                  cap: int = TREE_NODE_CAP) -> OrderedLevelledTree:
    """The complete tree: every inner node has exactly ``branching``
    children; ``branching ** height`` leaves."""
    if height < 0 or branching < 1:
        raise TreeError("height must be >= 0 and branching >= 1")
    count = sum(branching ** k for k in range(height + 1))
    if count > cap:
        raise TreeError(f"complete tree would have {count} nodes, cap {cap}")

    def shape(h):
        if h == 0:
            return []
        sub = shape(h - 1)
        return [sub] * branching

    return OrderedLevelledTree.from_shape(flavor, shape(height))


def succinct_universal_tree(flavor: int, n: int, height: int,
                            cap: int = TREE_NODE_CAP) -> OrderedLevelledTree:
    """An n-universal tree of the given height with few leaves, built by
    the halving recursion: the child lists of the (n, h) tree are the
    (floor(n/2), h) child list on each side of a middle (n, h-1) subtree."""
    if n < 1:
        raise TreeError("n must be >= 1")
    if height < 0:
        raise TreeError("height must be >= 0")

    def child_shapes(m, h):
        if m == 0:
            return []
        side = child_shapes(m // 2, h)
        middle = subtree(m, h - 1)
        return side + [middle] + side

    def subtree(m, h):
        if h == 0:
            return []
        return child_shapes(m, h)

    t = OrderedLevelledTree.from_shape(flavor, subtree(n, height))
    if t.n_nodes > cap:
        raise TreeError("succinct tree cap exceeded")
    return t


# ---------------------------------------------------------------------------
# Inclusion

def tree_inclusion(t1: OrderedLevelledTree, t2: OrderedLevelledTree):
    """Order-, level-, and ancestry-preserving injective embedding of t1
    into t2, or None.  Children of a node map to an increasing subsequence
    of the image node's children; the leftmost such matching is found by
    depth-first search with memoization."""
    if t1.flavor != t2.flavor:
        raise TreeError("flavor mismatch")
    if t1.level[t1.root] != t2.level[t2.root]:
        raise TreeError("height mismatch")

    memo = {}

    def fits(a, b):
        """Can subtree a of t1 embed into subtree b of t2 (a -> b)?"""
        key = (a, b)
        if key in memo:
            return memo[key]
        ca = t1.children[a]
        cb = t2.children[b]
        if not ca:
            memo[key] = True
            return True

        def match(i, j):
            if i == len(ca):
                return True
            if len(ca) - i > len(cb) - j:
                return False
            if fits(ca[i], cb[j]) and match(i + 1, j + 1):
                return True
            return match(i, j + 1)

        memo[key] = match(0, 0)
        return memo[key]

    if not fits(t1.root, t2.root):
        return None

    mapping = {}

    def assign(a, b):
        mapping[a] = b
        ca = t1.children[a]
        cb = t2.children[b]
        i = 0
        for j in range(len(cb)):
            if i == len(ca):
                break
            # leftmost greedy with lookahead: take cb[j] only when the
            # remainder still matches
            def rest(ii, jj):
                if ii == len(ca):
                    return True
                if len(ca) - ii > len(cb) - jj:
                    return False
                if fits(ca[ii], cb[jj]) and rest(ii + 1, jj + 1):
                    return True
                return rest(ii, jj + 1)

            if fits(ca[i], cb[j]) and rest(i + 1, j + 1):
                assign(ca[i], cb[j])
                i += 1
        assert i == len(ca)

    assign(t1.root, t2.root)
    return mapping


def check_inclusion_map(t1, t2, mapping) -> bool:
    """Independent verifier: injective, level-preserving, child- and
    order-respecting."""
    if set(mapping) != set(range(t1.n_nodes)):
        return False
    if len(set(mapping.values())) != len(mapping):
        return False
    for a in range(t1.n_nodes):
        b = mapping[a]
        if t1.level[a] != t2.level[b]:
            return False
        imgs = [mapping[c] for c in t1.children[a]]
        if any(t2.parent[i] != b for i in imgs):
            return False
        if imgs != sorted(imgs):
            return False
    return True


# ---------------------------------------------------------------------------
# Universality

def enumerate_trees(height: int, max_leaves: int, cap: int = 200_000):
    """All ordered levelled-tree shapes of exactly this height with at most
    ``max_leaves`` leaves."""
    out = []

    def gen(h, budget):
        """Shapes of height h using <= budget leaves, with their leaf
        counts."""
        if budget < 1:
            return []
        if h == 0:
            return [([], 1)]
        results = []

        def extend(prefix, used, remaining_budget):
            if prefix:
                results.append((list(prefix), used))
                if len(results) > cap:
                    raise TreeError("tree enumeration cap exceeded")
            for sub, leaves in gen(h - 1, remaining_budget):
                prefix.append(sub)
                extend(prefix, used + leaves, remaining_budget - leaves)
                prefix.pop()

        extend([], 0, budget)
        return results

    for shape, leaves in gen(height, max_leaves):
        out.append(shape)
    if height == 0:
        return [[]] if max_leaves >= 1 else []
    return out


def is_universal_bruteforce(t: OrderedLevelledTree, n: int,
                            cap: int = 200_000) -> bool:
    """True iff every tree of the same height and flavor with <= n leaves
    embeds into t."""
    for shape in enumerate_trees(t.height, n, cap=cap):
        small = OrderedLevelledTree.from_shape(t.flavor, shape)
        if tree_inclusion(small, t) is None:
            return False
    return True
