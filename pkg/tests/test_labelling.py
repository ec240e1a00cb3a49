"""Labellings: admissibility, validity, destinations, lifts, strategies."""

import random

import numpy as np
import pytest

from conftest import make_game, self_loop, two_cycle
from paritylift.game import EVEN, ODD, random_game, verify_strategy_wins
from paritylift.labelling import Labelling, LabellingError, LabellingPair
from paritylift.lazyspace import lazify
from paritylift.trees import complete_tree


def spaces(d=2, b=2):
    return (lazify(complete_tree(EVEN, d // 2, b)),
            lazify(complete_tree(ODD, d // 2, b)))


def admissible_positions(lab, v):
    return [p for p in range(lab.space.size)
            if lab.position_admissible(v, p)]


def random_admissible(game, space, flavor, rng):
    lab = Labelling.smallest(game, space, flavor)
    mu = np.empty(game.n, np.int32)
    for v in range(game.n):
        mu[v] = rng.choice(admissible_positions(lab, v))
    lab2 = Labelling(flavor, game, space, mu)
    lab2.check_admissible()
    return lab2


# -- construction -----------------------------------------------------------

def test_smallest_labelling_even_flavor():
    g = two_cycle(1, 2)
    se, _ = spaces()
    lab = Labelling.smallest(g, se, EVEN)
    root_pos = int(se.pos_of_node[se.tree.root])
    assert int(lab.mu[1]) == root_pos          # priority d starts at the root
    assert int(lab.mu[0]) == root_pos + 1


def test_smallest_labelling_odd_flavor():
    g = two_cycle(1, 2)
    _, so = spaces()
    lab = Labelling.smallest(g, so, ODD)
    root_pos = int(so.pos_of_node[so.tree.root])
    assert list(lab.mu) == [root_pos + 1] * 2


def test_smallest_rejects_wrong_height():
    g = two_cycle(1, 2)
    se, _ = spaces(d=4)
    with pytest.raises(LabellingError):
        Labelling.smallest(g, se, EVEN)


# -- admissibility and validity ---------------------------------------------

def test_admissibility_regular_exact_lazy_at_least():
    g = two_cycle(1, 2)
    se, _ = spaces()
    lab = Labelling.smallest(g, se, EVEN)
    # position 2 is regular at level 0, position 1 lazy at level 1
    assert not lab.position_admissible(0, 2)   # priority 1 != level 0
    assert lab.position_admissible(0, 1)
    assert not lab.position_admissible(1, 1)   # priority 2 > lazy level 1
    assert lab.position_admissible(1, se.top)


def test_two_cycle_smallest_even_labelling_is_decomposition():
    g = two_cycle(1, 2)
    se, _ = spaces()
    lab = Labelling.smallest(g, se, EVEN)
    assert lab.is_attractor_decomposition()
    assert lab.won_vertices() == frozenset({0, 1})
    for v in range(2):
        assert lab.destination(v) == int(lab.mu[v])


def test_edge_validity_at_regular_position():
    g = two_cycle(1, 2)
    se, _ = spaces()
    lab = Labelling.smallest(g, se, EVEN)
    assert lab.is_edge_valid(1, 0)             # mu[0]=1 < after(root)=top
    lab.set_position(0, se.top)
    # after(root) is exactly top, so the edge stops making progress
    assert int(se.after[se.tree.root]) == se.top
    assert not lab.is_edge_valid(1, 0)
    assert not lab.is_vertex_valid(1)


def test_lazy_vertex_validity_via_cut_attractor():
    g = make_game([EVEN, EVEN], [1, 1], [[1], [0]])
    se, _ = spaces()
    lab = Labelling.smallest(g, se, EVEN)
    # both vertices share lazy position 1 with an empty strictly-lower cut
    assert not lab.is_vertex_valid(0)
    lab.set_position(1, se.top)
    assert not lab.is_vertex_valid(0)
    # a successor strictly below makes the cut reachable
    g2 = make_game([EVEN, EVEN], [1, 2], [[1], [1]])
    lab2 = Labelling.smallest(g2, se, EVEN)
    assert int(lab2.mu[1]) == 0 and int(lab2.mu[0]) == 1
    assert lab2.is_vertex_valid(0)


# -- destinations -----------------------------------------------------------

def test_destination_of_stuck_self_loops_is_top():
    se, so = spaces()
    lab = Labelling.smallest(self_loop(1), se, EVEN)
    assert lab.destination(0) == se.top
    lab_o = Labelling.smallest(self_loop(2), so, ODD)
    assert lab_o.destination(0) == so.top


def test_destination_matches_naive_reference():
    rng = random.Random(11)
    for _ in range(30):
        g = random_game(rng.randint(1, 6), 3, 2, seed=rng.randrange(10**6))
        se, so = spaces(d=2, b=3)
        for space, flavor in ((se, EVEN), (so, ODD)):
            lab = random_admissible(g, space, flavor, rng)
            for v in range(g.n):
                assert lab.destination(v) == lab.destination_naive(v), \
                    f"vertex {v} flavor {flavor}"


def test_destination_equals_position_iff_valid():
    rng = random.Random(13)
    for _ in range(20):
        g = random_game(rng.randint(1, 6), 3, 4, seed=rng.randrange(10**6))
        se, _ = spaces(d=g.d, b=2)
        lab = random_admissible(g, se, EVEN, rng)
        for v in range(g.n):
            assert (lab.destination(v) == int(lab.mu[v])) \
                == lab.is_vertex_valid(v)


# -- lifts ------------------------------------------------------------------

def test_lift_must_strictly_increase():
    se, _ = spaces()
    lab = Labelling.smallest(self_loop(1), se, EVEN)
    with pytest.raises(LabellingError):
        lab.lift(0, int(lab.mu[0]))


def test_lift_rejects_inadmissible_target():
    se, _ = spaces()
    lab = Labelling.smallest(self_loop(1), se, EVEN)
    with pytest.raises(LabellingError):
        lab.lift(0, 2)      # regular level-0 position, priority is 1


def test_lift_checked_rejects_overshoot():
    g = two_cycle(1, 2)
    se, _ = spaces()
    lab = Labelling.smallest(g, se, EVEN)
    # vertex 0 is valid, so its destination equals its position and any
    # strict lift overshoots
    with pytest.raises(LabellingError):
        lab.lift(0, 3, check_destination=True)
    lab.lift(0, 3)          # unchecked lifts only need admissibility
    assert lab.lifts == 1


# -- derived objects --------------------------------------------------------

def test_all_top_labelling_is_a_decomposition():
    g = self_loop(1)
    se, _ = spaces()
    lab = Labelling(EVEN, g, se, np.full(1, se.top, np.int32))
    assert lab.is_attractor_decomposition()


def test_pointwise_min_bounds_and_idempotence():
    rng = random.Random(19)
    g = random_game(5, 3, 2, seed=7)
    se, _ = spaces(d=2, b=3)
    a = random_admissible(g, se, EVEN, rng)
    b = random_admissible(g, se, EVEN, rng)
    m = a.pointwise_min(b)
    m.check_admissible()
    assert np.all(m.mu <= a.mu) and np.all(m.mu <= b.mu)
    assert np.array_equal(a.pointwise_min(a).mu, a.mu)


def test_json_round_trip():
    g = two_cycle(1, 2)
    se, _ = spaces()
    lab = Labelling.smallest(g, se, EVEN)
    again = Labelling.from_json(lab.to_json(), g, se)
    assert again.flavor == EVEN
    assert np.array_equal(again.mu, lab.mu)


def test_extract_strategy_requires_decomposition():
    se, _ = spaces()
    lab = Labelling.smallest(self_loop(1), se, EVEN)
    with pytest.raises(LabellingError):
        lab.extract_strategy()


def test_extract_strategy_wins_from_won_vertices():
    from paritylift.asymmetric import solve_asymmetric
    rng = random.Random(23)
    for _ in range(15):
        g = random_game(rng.randint(1, 7), 3, 2, seed=rng.randrange(10**6))
        se, so = spaces(d=2, b=g.n)
        for space, flavor in ((se, EVEN), (so, ODD)):
            lab, _stats = solve_asymmetric(g, space, flavor)
            sigma = lab.extract_strategy()
            assert verify_strategy_wins(g, sigma, lab.won_vertices())


def test_pair_enforces_flavors():
    g = two_cycle(1, 2)
    se, so = spaces()
    pair = LabellingPair.smallest(g, se, so)
    assert pair.of(EVEN) is pair.even and pair.of(ODD) is pair.odd
    assert pair.total_lifts == 0
    with pytest.raises(LabellingError):
        LabellingPair(even=pair.odd, odd=pair.even)
