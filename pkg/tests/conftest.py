"""Shared fixtures and small game builders for the test suite."""

import pytest

from paritylift.game import EVEN, ODD, ParityGame


def make_game(owners, priorities, successors, **kw):
    return ParityGame.from_lists(list(owners), list(priorities),
                                 [list(s) for s in successors], **kw)


def self_loop(priority, owner=EVEN):
    """One vertex with a self-loop."""
    return make_game([owner], [priority], [[0]])


def two_cycle(p0=1, p1=2, o0=EVEN, o1=ODD):
    """Two vertices chasing each other."""
    return make_game([o0, o1], [p0, p1], [[1], [0]])


@pytest.fixture
def loop_even():
    return self_loop(2)


@pytest.fixture
def loop_odd_priority():
    return self_loop(1)


@pytest.fixture
def cycle_game():
    return two_cycle()
