"""Ordered levelled trees: construction, inclusion, universality."""

import pytest

from paritylift.game import EVEN, ODD
from paritylift.trees import (OrderedLevelledTree, TreeError,
                              check_inclusion_map, complete_tree,
                              enumerate_trees, is_universal_bruteforce,
                              succinct_universal_tree, tree_inclusion)


def test_complete_tree_node_counts():
    assert complete_tree(EVEN, 1, 2).n_nodes == 3
    assert complete_tree(EVEN, 0, 5).n_nodes == 1
    assert complete_tree(EVEN, 2, 3).n_nodes == 13
    assert complete_tree(EVEN, 2, 3).leaf_count == 9


def test_odd_tree_levels_shifted_up():
    t = complete_tree(ODD, 2, 3)
    assert t.level[t.root] == 5
    assert all(t.level[l] == 1 for l in t.leaves())
    t.check()
    te = complete_tree(EVEN, 2, 3)
    assert te.level[te.root] == 4
    assert all(te.level[l] == 0 for l in te.leaves())


def test_child_levels_drop_by_two():
    t = complete_tree(EVEN, 3, 2)
    for node in range(t.n_nodes):
        for c in t.children[node]:
            assert t.level[c] == t.level[node] - 2
    t.check()


def test_shape_round_trip():
    with pytest.raises(TreeError):
        OrderedLevelledTree.from_shape(EVEN, [[], [[]]])  # uneven depths
    shape = [[[], []], [[], [], []]]
    t = OrderedLevelledTree.from_shape(ODD, shape)
    assert t.to_shape() == shape
    assert t.height == 2 and t.max_degree == 3


def test_succinct_tree_small_cases():
    # one leaf suffices for a single-vertex game at any height
    for h in range(4):
        t = succinct_universal_tree(EVEN, 1, h)
        assert t.leaf_count == 1 and t.height == h
    assert succinct_universal_tree(EVEN, 2, 1).leaf_count == 3
    t3 = succinct_universal_tree(ODD, 3, 2)
    assert t3.leaf_count < 9     # strictly smaller than the complete tree


def test_succinct_trees_are_universal():
    for n in (1, 2, 3, 4):
        for h in (1, 2):
            t = succinct_universal_tree(EVEN, n, h)
            assert is_universal_bruteforce(t, n)


def test_thin_tree_not_universal():
    t = complete_tree(EVEN, 1, 1)
    assert not is_universal_bruteforce(t, 2)


def test_inclusion_identity():
    t = complete_tree(EVEN, 2, 2)
    m = tree_inclusion(t, t)
    assert m == {i: i for i in range(t.n_nodes)}
    assert check_inclusion_map(t, t, m)


def test_inclusion_path_into_complete():
    path = complete_tree(EVEN, 2, 1)
    big = complete_tree(EVEN, 2, 3)
    m = tree_inclusion(path, big)
    assert m is not None
    assert check_inclusion_map(path, big, m)


def test_inclusion_pigeonhole_absent():
    wide = complete_tree(EVEN, 1, 3)
    narrow = complete_tree(EVEN, 1, 2)
    assert tree_inclusion(wide, narrow) is None


def test_inclusion_map_checker_rejects_tampering():
    small = complete_tree(EVEN, 1, 2)
    big = complete_tree(EVEN, 1, 3)
    m = tree_inclusion(small, big)
    assert check_inclusion_map(small, big, m)
    bad = dict(m)
    bad[1], bad[2] = bad[2], bad[1]   # breaks the sibling order
    assert not check_inclusion_map(small, big, bad)


def test_inclusion_rejects_mismatched_inputs():
    with pytest.raises(TreeError):
        tree_inclusion(complete_tree(EVEN, 1, 2), complete_tree(ODD, 1, 2))
    with pytest.raises(TreeError):
        tree_inclusion(complete_tree(EVEN, 1, 2), complete_tree(EVEN, 2, 2))


def test_enumerate_trees_counts():
    assert enumerate_trees(0, 1) == [[]]
    shapes = enumerate_trees(1, 2)
    assert sorted(map(len, shapes)) == [1, 2]
    # height 2, at most 3 leaves: child lists over height-1 shapes with
    # total leaf budget 3
    shapes = enumerate_trees(2, 3)
    assert all(shapes.count(s) == 1 for s in shapes)
    for s in shapes:
        t = OrderedLevelledTree.from_shape(EVEN, s)
        assert t.height == 2 and t.leaf_count <= 3
