"""Oracles, cross-checking reports, and trace rendering."""

import json
import random

from conftest import self_loop, two_cycle
from paritylift.game import EVEN, ODD, random_game
from paritylift.harness import (cross_check, game_id_of, oracle_enumerate,
                                oracle_partition, spaces_for, trace_to_svg)
from paritylift.symmetric import Trace, solve_symmetric


def test_oracle_on_self_loops():
    part = oracle_enumerate(self_loop(2))
    assert part.even_wins == frozenset({0})
    part = oracle_enumerate(self_loop(1, owner=ODD))
    assert part.odd_wins == frozenset({0})


def test_oracle_on_two_cycle():
    part = oracle_enumerate(two_cycle(1, 2))
    assert part.even_wins == frozenset({0, 1})
    part = oracle_enumerate(two_cycle(1, 3))
    assert part.odd_wins == frozenset({0, 1})


def test_oracle_partition_fallback_agrees():
    rng = random.Random(71)
    for _ in range(15):
        g = random_game(rng.randint(1, 7), 3, 4, seed=rng.randrange(10**6))
        a = oracle_enumerate(g)
        b = oracle_partition(g)
        assert a.key() == b.key()


def test_spaces_for_is_cached():
    g = random_game(5, 3, 4, seed=0)
    a = spaces_for(g)
    b = spaces_for(g)
    assert a[0] is b[0] and a[1] is b[1]
    assert a[0].flavor == EVEN and a[1].flavor == ODD


def test_cross_check_agreement_and_bounds():
    rng = random.Random(73)
    for _ in range(6):
        g = random_game(rng.randint(2, 7), 3, 4, seed=rng.randrange(10**6))
        report = cross_check(g)
        assert report.agreement
        assert all(report.bounds[k] for k in report.bounds
                   if k.endswith("_ok") or k.endswith("fixpoints"))
        assert all(report.strategy_verdicts.values())
        data = json.loads(report.to_json())
        assert set(data) == {"game_id", "solvers", "agreement", "bounds",
                             "strategies", "timings"}
        assert set(data["solvers"]) == {"asym-even", "asym-odd", "symmetric",
                                        "variant", "universal", "zielonka",
                                        "oracle"}


def test_cross_check_deterministic_modulo_timings():
    g = random_game(6, 3, 4, seed=77)

    def stripped():
        data = json.loads(cross_check(g).to_json())
        del data["timings"]
        return data

    assert stripped() == stripped()


def test_game_id_stability():
    a = random_game(6, 3, 4, seed=1)
    b = random_game(6, 3, 4, seed=1)
    c = random_game(6, 3, 4, seed=2)
    assert game_id_of(a) == game_id_of(b)
    assert game_id_of(a) != game_id_of(c)


def test_svg_of_empty_trace_is_axes_only():
    g = two_cycle(1, 2)
    se, so = spaces_for(g)
    svg = trace_to_svg(Trace(), se, so)
    assert svg.startswith("<svg")
    assert svg.count("<line") == se.size + so.size   # grid lines only
    assert "circle" not in svg


def test_svg_renders_one_arrow_per_lift():
    g = self_loop(1)
    se, so = spaces_for(g)
    trace = Trace()
    solve_symmetric(g, se, so, trace=trace)
    lifts = trace.counters.get("lift", 0)
    assert lifts >= 1
    svg = trace_to_svg(trace, se, so)
    red_arrows = svg.count('stroke="#cc3333"')
    assert red_arrows == lifts
    assert "<circle" in svg
