"""Attractor primitives: plain, path-restricted, and one-step."""

import random

import numpy as np
import pytest

from conftest import make_game
from paritylift.attractors import (attractor, attractor_through,
                                   one_step_reach)
from paritylift.game import EVEN, ODD, random_game


def chain3():
    # 0 -> 1 -> 2 -> 2, all Even-owned
    return make_game([EVEN, EVEN, EVEN], [1, 1, 2], [[1], [2], [2]])


def test_full_target_is_fixed_immediately():
    g = chain3()
    res = attractor(g, EVEN, np.ones(g.n, np.uint8))
    assert list(res.attracted) == [1, 1, 1]
    assert list(res.rank) == [0, 0, 0]


def test_player_vertex_joins_with_one_witness_edge():
    # 0 owned by Even with successors {1, 2}; only 2 is in the target
    g = make_game([EVEN, ODD, ODD], [1, 1, 1], [[1, 2], [1], [2]])
    res = attractor(g, EVEN, [2])
    assert 0 in res
    assert int(res.witness[0]) == 2


def test_opponent_vertex_needs_all_successors():
    g = make_game([ODD, EVEN, EVEN], [1, 1, 1], [[1, 2], [1], [2]])
    res = attractor(g, EVEN, [2])
    assert 0 not in res           # 0 can escape to 1
    res2 = attractor(g, EVEN, [1, 2])
    assert 0 in res2


def test_through_with_full_safe_equals_plain():
    rng = random.Random(3)
    for _ in range(25):
        g = random_game(rng.randint(1, 8), 3, 4, seed=rng.randrange(10**6))
        target = np.asarray([rng.randrange(2) for _ in range(g.n)], np.uint8)
        player = rng.randrange(2)
        a = attractor(g, player, target)
        b = attractor_through(g, player, target, np.ones(g.n, np.uint8))
        assert np.array_equal(a.attracted, b.attracted)


def test_through_with_safe_equal_to_target_is_target():
    g = chain3()
    res = attractor_through(g, EVEN, [2], [2])
    assert list(res.vertices()) == [2]


def test_through_blocks_on_unsafe_middle():
    g = chain3()
    res = attractor_through(g, EVEN, [2], [0, 2])
    # vertex 1 is unsafe, so vertex 0 cannot route through it
    assert list(res.vertices()) == [2]
    res_all = attractor_through(g, EVEN, [2], [0, 1, 2])
    assert list(res_all.vertices()) == [0, 1, 2]


def test_through_rejects_target_outside_safe():
    g = chain3()
    with pytest.raises(ValueError):
        attractor_through(g, EVEN, [0, 2], [2])


def test_attractor_monotone_in_target():
    rng = random.Random(9)
    for _ in range(40):
        g = random_game(rng.randint(1, 8), 3, 4, seed=rng.randrange(10**6))
        small = np.asarray([rng.randrange(2) for _ in range(g.n)], np.uint8)
        big = small | np.asarray([rng.randrange(2) for _ in range(g.n)],
                                 np.uint8)
        player = rng.randrange(2)
        a = attractor(g, player, small)
        b = attractor(g, player, big)
        assert np.all(a.attracted <= b.attracted)


def test_witness_and_ranks_certify_membership():
    rng = random.Random(17)
    for _ in range(40):
        g = random_game(rng.randint(2, 9), 3, 4, seed=rng.randrange(10**6))
        player = rng.randrange(2)
        target = np.zeros(g.n, np.uint8)
        target[rng.randrange(g.n)] = 1
        res = attractor(g, player, target)
        for v in res.vertices():
            v = int(v)
            r = int(res.rank[v])
            if r == 0:
                assert target[v]
                continue
            if g.owner[v] == player:
                w = int(res.witness[v])
                assert w in res and int(res.rank[w]) < r
            else:
                for u in g.successors(v):
                    assert int(u) in res and int(res.rank[int(u)]) < r


def test_one_step_reach_rules():
    g = make_game([EVEN, ODD], [1, 1], [[0, 1], [0, 1]])
    assert one_step_reach(g, EVEN, [1], 0)
    assert not one_step_reach(g, EVEN, [1], 1)     # Odd can stay at 1? no:
    # vertex 1 is Odd-owned; Even forces entry only if every move lands in
    # the target, and 1 -> 0 escapes
    assert one_step_reach(g, EVEN, [0, 1], 1)
    assert one_step_reach(g, ODD, [0], 1)


def test_one_step_reach_respects_active():
    g = make_game([ODD, EVEN, EVEN], [1, 1, 1], [[1, 2], [1], [2]])
    assert not one_step_reach(g, EVEN, [2], 0)
    assert one_step_reach(g, EVEN, [2], 0, active=[0, 2])
