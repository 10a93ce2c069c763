"""Exact solvers: optimality, witnesses, determinism, lower-bound formula.

The micro-instance completeness check enumerates every move sequence shorter
than the reported optimum and confirms none completes a legal pebbling, so
the BFS optimum is grounded independently of the search implementation.
"""

from fractions import Fraction

import pytest

from pebcert import (
    carlson_savage,
    cs_lower_bound,
    line,
    min_space,
    min_time_within_space,
    pareto,
    pyramid,
    single_sink_restriction,
    verify_strategy,
)
from pebcert.errors import InstanceTooLarge, NoDesignatedSink, SpaceInfeasible


def _cs_prime(c, r):
    dag = carlson_savage(c, r)
    return single_sink_restriction(dag, dag.sink_names[0])


def test_min_space_examples():
    assert min_space(line(3), "reversible", "visiting")[0] == 2
    assert min_space(pyramid(1), "reversible", "visiting")[0] == 3
    assert min_space(_cs_prime(2, 1), "standard", "visiting")[0] == 3


def test_min_space_witness_verifies():
    space, witness = min_space(pyramid(2), "reversible", "visiting")
    metrics = verify_strategy(pyramid(2), witness)
    assert metrics.space <= space


def test_min_time_examples():
    assert min_time_within_space(line(1), "reversible", "visiting", 1)[0] == 2
    assert min_time_within_space(line(2), "reversible", "visiting", 2)[0] == 4
    assert min_time_within_space(pyramid(1), "reversible", "visiting", 3)[0] == 6


def test_min_time_witness_metrics_match():
    for game, flavor in (("reversible", "visiting"), ("reversible", "persistent"),
                         ("standard", None)):
        t, witness = min_time_within_space(pyramid(2), game, flavor, 6)
        metrics = verify_strategy(pyramid(2), witness)
        assert metrics.time == t
        assert metrics.space <= 6
        assert witness.game == game


def test_pareto_line_three():
    points = pareto(line(3), "reversible", "visiting", 3)
    assert [(p.space, p.time) for p in points] == [(2, 8), (3, 6)]
    for p in points:
        assert verify_strategy(line(3), p.witness).time == p.time


def test_pareto_monotone_pyramid():
    points = pareto(pyramid(2), "reversible", "visiting", 5)
    times = [p.time for p in points]
    assert times == sorted(times, reverse=True)


def test_space_infeasible():
    with pytest.raises(SpaceInfeasible):
        min_time_within_space(line(2), "reversible", "visiting", 1)
    with pytest.raises(SpaceInfeasible):
        pareto(line(3), "reversible", "visiting", 1)


def test_multi_sink_rejected():
    with pytest.raises(NoDesignatedSink):
        min_space(carlson_savage(2, 1), "standard", "visiting")


def test_state_budget_guard():
    with pytest.raises(InstanceTooLarge):
        min_space(pyramid(3), "reversible", "visiting", state_budget=5)


def test_witnesses_deterministic():
    a = min_time_within_space(pyramid(2), "reversible", "visiting", 5)[1]
    b = min_time_within_space(pyramid(2), "reversible", "visiting", 5)[1]
    assert a == b
    sa = min_time_within_space(pyramid(2), "standard", None, 4)[1]
    sb = min_time_within_space(pyramid(2), "standard", None, 4)[1]
    assert sa == sb


def test_cs_lower_bound_values():
    assert cs_lower_bound(4, 1, 3) == Fraction(3, 2)
    assert cs_lower_bound(5, 1, 3) == 2
    assert cs_lower_bound(6, 1, 5) == Fraction(3, 4)  # s' = 3 = c - 3
    assert cs_lower_bound(6, 1, 6) == 0  # s' would exceed c - 3
    assert cs_lower_bound(4, 1, 4 + 1 + 1) == 0  # space >= r + c + 1: vacuous
    assert cs_lower_bound(4, 2, 3) == Fraction(9, 2)  # ((4-1)/2)^2 * 2!


# -- independent micro-oracle ------------------------------------------------

def _enumerate_shorter(dag, game, flavor, space, limit):
    """Does any legal pebbling of at most `limit` moves exist? Pure DFS."""
    n = len(dag)
    preds = dag.preds
    z = dag.designated_sink

    def finished(mask, visited):
        if not visited:
            return False
        if game == "reversible" and flavor == "persistent":
            return mask == 1 << z
        return mask == 0

    def rec(mask, visited, moves_left):
        if finished(mask, visited):
            return True
        if moves_left == 0:
            return False
        for v in range(n):
            bit = 1 << v
            have_preds = all(mask >> p & 1 for p in preds[v])
            if mask & bit:
                if game == "standard" or have_preds:
                    if rec(mask & ~bit, visited, moves_left - 1):
                        return True
            elif have_preds and (mask.bit_count() < space):
                if rec(mask | bit, visited or v == z, moves_left - 1):
                    return True
        return False

    return rec(0, False, limit)


@pytest.mark.parametrize("dag_factory,game,flavor", [
    (lambda: line(2), "reversible", "visiting"),
    (lambda: line(3), "reversible", "visiting"),
    (lambda: pyramid(1), "reversible", "visiting"),
    (lambda: pyramid(1), "standard", None),
    (lambda: line(3), "reversible", "persistent"),
])
def test_micro_completeness(dag_factory, game, flavor):
    dag = dag_factory()
    assert len(dag) <= 6
    space, _ = min_space(dag, game, flavor)
    optimum, _ = min_time_within_space(dag, game, flavor, space)
    assert _enumerate_shorter(dag, game, flavor, space, optimum)
    assert not _enumerate_shorter(dag, game, flavor, space, optimum - 1)


@pytest.mark.parametrize("dag_factory", [lambda: line(3), lambda: pyramid(2)])
def test_reversible_at_least_standard(dag_factory):
    dag = dag_factory()
    rev_ms, _ = min_space(dag, "reversible", "visiting")
    std_ms, _ = min_space(dag, "standard", None)
    assert rev_ms >= std_ms
    for s in range(rev_ms, rev_ms + 2):
        rev_t, _ = min_time_within_space(dag, "reversible", "visiting", s)
        std_t, _ = min_time_within_space(dag, "standard", None, s)
        assert rev_t >= std_t


def test_oracle_vs_enumeration_on_random_dags():
    # independent cross-check on 40 random single-sink DAGs
    from conftest import random_single_sink_dag
    import random as _random

    rng = _random.Random(20240817)
    for _ in range(40):
        dag = random_single_sink_dag(rng, max_n=5)
        for game, flavor in (("reversible", "visiting"), ("standard", None)):
            space, _ = min_space(dag, game, flavor)
            optimum, witness = min_time_within_space(dag, game, flavor, space)
            assert verify_strategy(dag, witness).time == optimum
            assert _enumerate_shorter(dag, game, flavor, space, optimum)
            assert not _enumerate_shorter(dag, game, flavor, space, optimum - 1)
            # one pebble below min space must be infeasible
            if space > 1:
                with pytest.raises(SpaceInfeasible):
                    min_time_within_space(dag, game, flavor, space - 1)
