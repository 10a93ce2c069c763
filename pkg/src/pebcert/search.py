"""Exact solvers over the pebble-game configuration space.

Configurations are bitmasks over topological indices; states with more than
the budgeted number of pebbles are never generated.  Reversible moves are
symmetric (toggle v whenever pred(v) is pebbled), so reversible reachability
is connectivity in an undirected graph and the optimal visiting time is twice
the shortest distance from the empty configuration to any sink-containing
one (shortest half, then mirror).  Standard-game optima add the final
clean-up removals to the distance.

Witnesses are deterministic: among equal-length solutions the walk picks the
lexicographically smallest move sequence under topological vertex order.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import (
    InstanceTooLarge,
    InternalConsistencyError,
    NoDesignatedSink,
    SearchError,
    SpaceInfeasible,
)
from .graphs import Dag
from .pebbling import (
    PERSISTENT,
    PLACE,
    REMOVE,
    REVERSIBLE,
    STANDARD,
    VISITING,
    Move,
    Strategy,
    mirror_extend,
)

DEFAULT_STATE_BUDGET = 50_000_000


@dataclass(frozen=True)
class TradeoffPoint:
    space: int
    time: int
    witness: Strategy


def _require_single_sink(dag):
    if dag.designated_sink is None:
        raise NoDesignatedSink("search needs a designated sink")
    if len(dag.sinks) != 1:
        raise NoDesignatedSink(
            "graph has several sinks; apply single_sink_restriction first")


def _check_game(game, flavor):
    if game not in (STANDARD, REVERSIBLE):
        raise SearchError(f"unknown game {game!r}")
    if game == REVERSIBLE and flavor not in (VISITING, PERSISTENT):
        raise SearchError(f"reversible search needs a flavor, got {flavor!r}")


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit):
        self.left = limit

    def spend(self, amount=1):
        self.left -= amount
        if self.left < 0:
            raise InstanceTooLarge("state budget exceeded")


def _pred_masks(dag):
    masks = []
    for preds in dag.preds:
        m = 0
        for p in preds:
            m |= 1 << p
        masks.append(m)
    return masks


def _feasible(dag, game, flavor, space, budget):
    """Forward reachability probe: is any goal configuration reachable?"""
    n = len(dag)
    pm = _pred_masks(dag)
    zbit = 1 << dag.designated_sink
    goal_mask = (1 << dag.designated_sink) if (game, flavor) == (REVERSIBLE, PERSISTENT) else None
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        budget.spend()
        can_grow = u.bit_count() < space
        for v in range(n):
            bit = 1 << v
            if u & bit:
                if game == STANDARD or u & pm[v] == pm[v]:
                    x = u & ~bit
                else:
                    continue
            else:
                if can_grow and u & pm[v] == pm[v]:
                    x = u | bit
                else:
                    continue
            if x in seen:
                continue
            if goal_mask is None:
                if x & zbit:
                    return True
            elif x == goal_mask:
                return True
            seen.add(x)
            queue.append(x)
    return False


def _sink_configs(dag, space):
    """All configurations containing the sink with at most `space` pebbles."""
    z = dag.designated_sink
    others = [i for i in range(len(dag)) if i != z]
    zbit = 1 << z
    for k in range(0, max(space, 1)):
        for combo in combinations(others, k):
            m = zbit
            for i in combo:
                m |= 1 << i
            yield m


def _rev_dist_to_goals(dag, space, goals, budget):
    """Undirected BFS distances to the nearest goal; stops once {} is settled."""
    n = len(dag)
    pm = _pred_masks(dag)
    dist = {}
    queue = deque()
    for g in goals:
        if g not in dist:
            dist[g] = 0
            queue.append(g)
            budget.spend()
    while queue:
        u = queue.popleft()
        if u == 0:
            return dist
        d = dist[u] + 1
        can_grow = u.bit_count() < space
        for v in range(n):
            if u & pm[v] == pm[v]:
                x = u ^ (1 << v)
                if x > u and not can_grow:
                    continue
                if x not in dist:
                    budget.spend()
                    dist[x] = d
                    queue.append(x)
    return dist


def _rev_walk(dag, space, dist):
    """Lexicographically smallest distance-decreasing walk from {}."""
    n = len(dag)
    pm = _pred_masks(dag)
    moves = []
    cur = 0
    d = dist[0]
    while d > 0:
        for v in range(n):
            if cur & pm[v] != pm[v]:
                continue
            bit = 1 << v
            x = cur ^ bit
            if x > cur and cur.bit_count() >= space:
                continue
            if dist.get(x) == d - 1:
                moves.append(Move(PLACE if x > cur else REMOVE, dag.names[v]))
                cur = x
                d -= 1
                break
        else:
            raise SearchError("walk failed to make progress")  # unreachable
    return moves, cur


def _std_cost_to_finish(dag, space, budget):
    """Dijkstra over reversed standard moves from every sink configuration.

    cost(U) = min over sink configurations T of dist(U -> T) + |T|, i.e. the
    optimal number of remaining moves before the final clean-up completes.
    """
    n = len(dag)
    pm = _pred_masks(dag)
    cost = {}
    heap = []
    for t in _sink_configs(dag, space):
        budget.spend()
        heapq.heappush(heap, (t.bit_count(), t))
    while heap:
        c, u = heapq.heappop(heap)
        if u in cost:
            continue
        cost[u] = c
        if u == 0:
            return cost
        budget.spend()
        size = u.bit_count()
        for v in range(n):
            bit = 1 << v
            if u & bit:
                # reverse of a placement: v was just placed
                if u & pm[v] == pm[v]:
                    x = u & ~bit
                    if x not in cost:
                        heapq.heappush(heap, (c + 1, x))
            elif size < space:
                # reverse of a removal: v was present before
                x = u | bit
                if x not in cost:
                    heapq.heappush(heap, (c + 1, x))
    return cost


def _std_walk(dag, space, cost):
    n = len(dag)
    pm = _pred_masks(dag)
    zbit = 1 << dag.designated_sink
    moves = []
    cur = 0
    while not cur & zbit:
        c = cost[cur]
        for v in range(n):
            bit = 1 << v
            if cur & bit:
                x = cur & ~bit
            elif cur.bit_count() < space and cur & pm[v] == pm[v]:
                x = cur | bit
            else:
                continue
            if cost.get(x) == c - 1:
                moves.append(Move(PLACE if x > cur else REMOVE, dag.names[v]))
                cur = x
                break
        else:
            raise SearchError("walk failed to make progress")  # unreachable
    for v in range(n):
        if cur >> v & 1:
            moves.append(Move(REMOVE, dag.names[v]))
    return moves


def min_time_within_space(dag: Dag, game: str, flavor: str | None, space: int,
                          state_budget: int = DEFAULT_STATE_BUDGET):
    """Optimal move count within a pebble budget, with a verifying witness.

    Reversible visiting: twice the BFS distance from {} to a sink-containing
    configuration, witness mirrored.  Reversible persistent: BFS distance
    from {} to {z}.  Standard: min over sink configurations of path length
    plus final clean-up size.  Raises SpaceInfeasible below min_space.
    """
    _require_single_sink(dag)
    _check_game(game, flavor)
    if space < 1:
        raise SpaceInfeasible("budget below one pebble")
    budget = _Budget(state_budget)
    if game == REVERSIBLE:
        if flavor == PERSISTENT:
            goals = [1 << dag.designated_sink]
        else:
            goals = _sink_configs(dag, space)
        dist = _rev_dist_to_goals(dag, space, goals, budget)
        if 0 not in dist:
            raise SpaceInfeasible(f"no {flavor} reversible pebbling in space {space}")
        moves, _ = _rev_walk(dag, space, dist)
        if flavor == PERSISTENT:
            return dist[0], Strategy(REVERSIBLE, PERSISTENT, tuple(moves))
        return 2 * dist[0], mirror_extend(dag, moves)
    cost = _std_cost_to_finish(dag, space, budget)
    if 0 not in cost:
        raise SpaceInfeasible(f"no standard pebbling in space {space}")
    moves = _std_walk(dag, space, cost)
    return cost[0], Strategy(STANDARD, None, tuple(moves))


def min_space(dag: Dag, game: str, flavor: str | None = VISITING,
              state_budget: int = DEFAULT_STATE_BUDGET):
    """Smallest pebble budget admitting a legal pebbling, with a witness.

    The witness is the deterministic time-optimal strategy at that budget.
    """
    _require_single_sink(dag)
    _check_game(game, flavor)
    for s in range(1, len(dag) + 1):
        if _feasible(dag, game, flavor, s, _Budget(state_budget)):
            _, witness = min_time_within_space(dag, game, flavor, s, state_budget)
            return s, witness
    raise SpaceInfeasible("no legal pebbling at any budget")  # unreachable


def pareto(dag: Dag, game: str, flavor: str | None, s_max: int,
           state_budget: int = DEFAULT_STATE_BUDGET) -> list[TradeoffPoint]:
    """Optimal time for every budget from min_space up to s_max."""
    ms, _ = min_space(dag, game, flavor, state_budget)
    if s_max < ms:
        raise SpaceInfeasible(f"s_max {s_max} below min space {ms}")
    points = []
    for s in range(ms, s_max + 1):
        t, witness = min_time_within_space(dag, game, flavor, s, state_budget)
        if points and t > points[-1].time:
            raise InternalConsistencyError("pareto times must be non-increasing")
        points.append(TradeoffPoint(s, t, witness))
    return points


def cs_lower_bound(c: int, r: int, space: int) -> Fraction:
    """Trade-off lower bound on standard pebbling time of the CS family.

    For a pebbling in space less than (r+2)+s' with 0 < s' <= c-3 the time is
    at least ((c-s')/(s'+1))^r * r!.  The smallest admissible s' for the given
    space is used; returns 0 when no s' in range applies (vacuous bound).
    """
    s_prime = max(1, space - r - 1)
    if s_prime > c - 3:
        return Fraction(0)
    return Fraction(c - s_prime, s_prime + 1) ** r * factorial(r)
