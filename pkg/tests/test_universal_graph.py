"""Edge-labelled linear graphs built from Even trees."""

import random

import pytest

from paritylift.game import EVEN
from paritylift.trees import OrderedLevelledTree, TreeError, complete_tree
from paritylift.universal_graph import (build_linear_graph,
                                        check_labelling_correspondence,
                                        derived_size_bound,
                                        expected_vertex_count)


def random_tree(rng, max_height=2, max_deg=3):
    def shape(h):
        if h == 0:
            return []
        return [shape(h - 1) for _ in range(rng.randint(1, max_deg))]
    return OrderedLevelledTree.from_shape(EVEN, shape(rng.randint(0, max_height)))


def test_leaf_base_case():
    t = complete_tree(EVEN, 0, 1)
    g = build_linear_graph(t, 3)
    assert g.n_vertices == 1
    assert g.edges == {(0, 0, 0)}
    assert g.rank == [0]


def test_vertex_count_recurrence_examples():
    # two leaf copies plus three gaps of N fresh vertices each
    t = complete_tree(EVEN, 1, 2)
    assert expected_vertex_count(t, 2) == 2 + 3 * 2
    assert build_linear_graph(t, 2).n_vertices == 8
    # one copy, two gaps
    t1 = complete_tree(EVEN, 1, 1)
    assert expected_vertex_count(t1, 3) == 1 + 2 * 3
    assert build_linear_graph(t1, 3).n_vertices == 7


def test_vertex_count_recurrence_random_trees():
    rng = random.Random(61)
    for _ in range(20):
        t = random_tree(rng)
        N = rng.randint(1, 4)
        try:
            g = build_linear_graph(t, N)
        except TreeError:
            continue            # over the vertex cap
        assert g.n_vertices == expected_vertex_count(t, N)
        assert g.n_vertices <= derived_size_bound(t, N)


def test_rank_layout():
    t = complete_tree(EVEN, 1, 2)
    g = build_linear_graph(t, 2)
    k = len(t.children[t.root])
    assert max(g.rank) == 2 * k + 1
    for i, (lo, hi) in enumerate(g.copy_ranges):
        assert all(g.rank[v] == 2 * i for v in range(lo, hi))
    for i, ids in enumerate(g.fresh_ids):
        assert len(ids) == g.N
        assert all(g.rank[v] == 2 * i + 1 for v in ids)


def test_top_label_edges_are_complete():
    t = complete_tree(EVEN, 1, 2)
    g = build_linear_graph(t, 1)
    for u in range(g.n_vertices):
        for v in range(g.n_vertices):
            assert g.has_edge(u, v, g.d)


def test_lower_labels_follow_strict_rank_decreases():
    # with leaf copies the only sub-copy labels are 0, so for 1 <= h < d
    # edge presence is exactly a strict rank decrease
    t = complete_tree(EVEN, 1, 2)
    g = build_linear_graph(t, 2)
    assert g.d == 2
    for u in range(g.n_vertices):
        for v in range(g.n_vertices):
            assert g.has_edge(u, v, 1) == (g.rank[u] > g.rank[v])


def test_deeper_labels_live_inside_copies():
    t = complete_tree(EVEN, 2, 2)
    g = build_linear_graph(t, 1)
    assert g.d == 4
    for (u, v, h) in g.edges:
        if h in (1, 2, 3):
            same_copy = any(lo <= u < hi and lo <= v < hi
                            for lo, hi in g.copy_ranges)
            if not same_copy:
                assert g.rank[u] > g.rank[v]


def test_rejects_odd_trees_and_oversize():
    from paritylift.trees import complete_tree as ct
    from paritylift.game import ODD
    with pytest.raises(TreeError):
        build_linear_graph(ct(ODD, 1, 2), 1)
    with pytest.raises(TreeError):
        build_linear_graph(ct(EVEN, 3, 4), 4, cap=100)
    with pytest.raises(ValueError):
        build_linear_graph(ct(EVEN, 1, 2), 0)


def test_labelling_correspondence_diagnostic():
    from paritylift.asymmetric import solve_asymmetric
    from paritylift.game import random_game
    from paritylift.harness import spaces_for
    rng = random.Random(67)
    for _ in range(10):
        g = random_game(rng.randint(2, 6), 2, 2, seed=rng.randrange(10**6))
        se, _ = spaces_for(g)
        lab, _ = solve_asymmetric(g, se, EVEN)
        graph = build_linear_graph(se.tree, g.n)
        verdict = check_labelling_correspondence(g, lab, graph)
        assert verdict.ok, verdict.failures
        assert verdict.checked + verdict.skipped >= 0


def test_edge_dump_is_sorted_and_complete():
    t = complete_tree(EVEN, 1, 1)
    g = build_linear_graph(t, 1)
    dump = g.dump_edge_list()
    lines = dump.strip().splitlines()
    assert lines[0] == f"vertices {g.n_vertices}"
    assert len(lines) - 1 == len(g.edges)
