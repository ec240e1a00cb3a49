"""Linear graphs with priority-labelled edges built from an Even tree.

The construction mirrors the tree recursively: a leaf becomes a single
vertex with a 0-labelled self-loop; an inner node with k child subtrees
becomes the disjoint union of the child graphs, interleaved with (k+1)*N
fresh vertices arranged in gaps before, between, and after the copies.
Every ordered pair carries an edge labelled d; lower odd-and-even labels
1..d-1 follow strict decreases of the layer rank, and deeper labels live
inside the copies.  These graphs relate vertex labellings to graph
homomorphisms in the progress-measure sense; here they serve as a
structural cross-check at small scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .game import EVEN
from .trees import OrderedLevelledTree, TreeError

VERTEX_CAP = 400


@dataclass
class LinearGraph:
    tree: OrderedLevelledTree
    N: int
    d: int
    n_vertices: int
    rank: list                 # top-layer rank per vertex
    edges: set                 # (u, v, priority) triples
    copy_ranges: list          # (start, end) per child copy, top layer
    fresh_ids: list            # fresh_ids[i][l] -> vertex id, i in 0..k

    def has_edge(self, u: int, v: int, h: int) -> bool:
        return (u, v, h) in self.edges

    def dump_edge_list(self) -> str:
        lines = [f"vertices {self.n_vertices}"]
        for (u, v, h) in sorted(self.edges):
            lines.append(f"{u} {v} {h}")
        return "\n".join(lines) + "\n"


def expected_vertex_count(tree: OrderedLevelledTree, N: int,
                          node: int | None = None) -> int:
    """The construction's size recurrence: 1 at a leaf, children total
    plus (k+1)*N fresh at an inner node."""
    if node is None:
        node = tree.root
    children = tree.children[node]
    if not children:
        return 1
    return sum(expected_vertex_count(tree, N, c) for c in children) \
        + (len(children) + 1) * N


def build_linear_graph(tree: OrderedLevelledTree, N: int,
                       cap: int = VERTEX_CAP) -> LinearGraph:
    if tree.flavor != EVEN:
        raise TreeError("linear graphs are built from Even trees")
    if N < 1:
        raise ValueError("N must be >= 1")
    total = expected_vertex_count(tree, N)
    if total > cap:
        raise TreeError(f"{total} vertices exceed the cap {cap}")

    def rec(node: int) -> LinearGraph:
        d = int(tree.level[node])
        children = tree.children[node]
        if not children:
            sub = OrderedLevelledTree.from_shape(EVEN, [])
            return LinearGraph(tree=sub, N=N, d=0, n_vertices=1,
                               rank=[0], edges={(0, 0, 0)},
                               copy_ranges=[], fresh_ids=[])
        k = len(children)
        subs = [rec(c) for c in children]
        rank: list = []
        edges: set = set()
        copy_ranges = []
        fresh_ids = []
        next_id = 0

        def add_fresh(i: int):
            nonlocal next_id
            ids = []
            for _ in range(N):
                rank.append(2 * i + 1)
                ids.append(next_id)
                next_id += 1
            fresh_ids.append(ids)

        # layout in rank order: copy 0, gap 0, copy 1, gap 1, ..., gap k
        for i, sub in enumerate(subs):
            start = next_id
            for v in range(sub.n_vertices):
                rank.append(2 * i)
            # shift the copy's edges into place
            for (a, b, h) in sub.edges:
                edges.add((start + a, start + b, h))
            next_id = start + sub.n_vertices
            copy_ranges.append((start, next_id))
            add_fresh(i)
        add_fresh(k)

        n = next_id
        for u in range(n):
            for v in range(n):
                edges.add((u, v, d))
                if rank[u] > rank[v]:
                    for h in range(1, d):
                        edges.add((u, v, h))
        return LinearGraph(tree=tree, N=N, d=d, n_vertices=n, rank=rank,
                           edges=edges, copy_ranges=copy_ranges,
                           fresh_ids=fresh_ids)

    return rec(tree.root)


def derived_size_bound(tree: OrderedLevelledTree, N: int) -> int:
    """Vertex-count bound 2*N*|T| + |T|, which dominates the recurrence."""
    return 2 * N * tree.n_nodes + tree.n_nodes


@dataclass
class CorrespondenceVerdict:
    ok: bool
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_labelling_correspondence(game, labelling,
                                   graph: LinearGraph) -> CorrespondenceVerdict:
    """Best-effort diagnostic: map each vertex to a top-layer region of the
    linear graph from its position and check that valid edges with labels
    below d follow weak rank decreases at the top layer.  Pairs landing in
    the same region defer to deeper layers and are skipped.
    """
    space = labelling.space
    tree = space.tree
    root = tree.root
    children = tree.children[root]
    verdict = CorrespondenceVerdict(ok=True)

    def region_rank(p: int):
        """Top-layer rank of the region containing position p, or None for
        positions outside the gap/copy structure (root and top)."""
        if p == int(space.pos_of_node[root]) or p == space.top:
            return None
        for i, c in enumerate(children):
            if p == int(space.before[c]):
                return 2 * i + 1
            lo, hi = space.subtree_range(c)
            if lo <= p < hi:
                return 2 * i
        if children and p == int(space.after[children[-1]]):
            return 2 * len(children) + 1
        return None

    for u in range(game.n):
        for w in game.successors(u):
            w = int(w)
            if not labelling.is_edge_valid(u, w):
                continue
            h = int(game.priority[u])
            if h >= graph.d:
                continue  # d-labelled edges connect everything
            ru = region_rank(int(labelling.mu[u]))
            rw = region_rank(int(labelling.mu[w]))
            if ru is None or rw is None or ru == rw:
                verdict.skipped += 1
                continue
            verdict.checked += 1
            if not ru > rw:
                verdict.ok = False
                verdict.failures.append((u, w, ru, rw))
    return verdict
