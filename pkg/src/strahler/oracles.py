"""Trusted brute-force reference implementations for tiny instances.

Nothing here scales past desk size; these are the oracles the real
solvers are cross-validated against.

* `brute_force_solve` enumerates every positional strategy of Even and
  marks a vertex Even-winning under a strategy when no cycle with an
  odd maximum priority is reachable from it in the strategy-restricted
  graph (where Odd keeps all edges).  Positional determinacy makes the
  union over strategies the exact Even winning set, and the complement
  the Odd one.

* `exact_strahler` finds the minimum Strahler number over all valid
  attractor decompositions of a fully-won game by exhaustive recursive
  search over candidate parts, memoized on (vertex set, ceiling, budget)
  keys.  Exponential by nature; budget-capped.

* `enumerate_trees` streams every ordered tree with at most n leaves
  and height at most h exactly once.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Dict, Iterator, Optional, Tuple

from .core import (
    ParityGame,
    Player,
    attractor,
    dualize,
    strongly_connected_components,
)
from .errors import BudgetExceeded, NotADominion
from .trees import OrderedTree, all_small_trees, log2_floor
from .zielonka import _is_trap_within, _solve

BUDGET_ENV_VAR = "STRAHLER_BUDGET"


@dataclass(frozen=True)
class OracleBudget:
    """Caps for the exponential oracles."""

    max_vertices: int
    max_priorities: int
    max_leaves: int
    time_cap: float  # seconds

    def __post_init__(self):
        if min(self.max_vertices, self.max_priorities, self.max_leaves) < 1:
            raise ValueError("budget fields must be positive")
        if self.time_cap <= 0:
            raise ValueError("time cap must be positive")


BRUTE_FORCE_BUDGET = OracleBudget(
    max_vertices=8, max_priorities=8, max_leaves=10**6, time_cap=120.0
)
EXACT_STRAHLER_BUDGET = OracleBudget(
    max_vertices=6, max_priorities=4, max_leaves=10**6, time_cap=120.0
)


def _with_env_override(budget: OracleBudget) -> OracleBudget:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if not raw:
        return budget
    try:
        return replace(budget, max_vertices=int(raw))
    except ValueError:
        raise BudgetExceeded(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}")


def brute_force_solve(
    game: ParityGame, budget: Optional[OracleBudget] = None
) -> Tuple[frozenset, frozenset]:
    """Winning partition by exhaustive Even-strategy enumeration."""
    b = _with_env_override(budget or BRUTE_FORCE_BUDGET)
    if game.n > b.max_vertices:
        raise BudgetExceeded(f"{game.n} vertices > brute-force cap {b.max_vertices}")
    even_vertices = [v for v in game.vertices if game.owner[v] == Player.EVEN]
    odd_priorities = sorted({p for p in game.priority if p % 2 == 1})
    n = game.n
    w_even: set = set()
    deadline = time.monotonic() + b.time_cap

    def sigma_winning(choice: Dict[int, int]) -> set:
        succ = [
            (choice[v],) if game.owner[v] == Player.EVEN else game.succ[v]
            for v in range(n)
        ]
        seeds: set = set()
        for p in odd_priorities:
            allowed = [v for v in range(n) if game.priority[v] <= p]
            allowed_set = set(allowed)

            def within(v):
                return [u for u in succ[v] if u in allowed_set]

            for comp in strongly_connected_components(allowed, within):
                if not any(game.priority[v] == p for v in comp):
                    continue
                if len(comp) > 1 or comp[0] in within(comp[0]):
                    seeds.update(comp)
        # vertices that can reach a seed lose under this strategy
        losing = set(seeds)
        frontier = list(seeds)
        preds = [[] for _ in range(n)]
        for v in range(n):
            for u in succ[v]:
                preds[u].append(v)
        while frontier:
            u = frontier.pop()
            for v in preds[u]:
                if v not in losing:
                    losing.add(v)
                    frontier.append(v)
        return set(range(n)) - losing

    def strategies() -> Iterator[Dict[int, int]]:
        choice: Dict[int, int] = {}

        def rec(i: int) -> Iterator[Dict[int, int]]:
            if i == len(even_vertices):
                yield choice
                return
            v = even_vertices[i]
            for u in game.succ[v]:
                choice[v] = u
                yield from rec(i + 1)

        yield from rec(0)

    for sigma in strategies():
        if time.monotonic() > deadline:
            raise BudgetExceeded("brute-force time cap exceeded")
        w_even |= sigma_winning(sigma)
        if len(w_even) == n:
            break
    all_vertices = frozenset(range(n))
    return frozenset(w_even), all_vertices - frozenset(w_even)


def exact_strahler(
    game: ParityGame, player: Player, budget: Optional[OracleBudget] = None
) -> int:
    """Minimum Strahler number over all attractor decompositions of a
    game fully won by `player`, by exhaustive part search."""
    b = _with_env_override(budget or EXACT_STRAHLER_BUDGET)
    if game.n > b.max_vertices:
        raise BudgetExceeded(f"{game.n} vertices > exact-Strahler cap {b.max_vertices}")
    if game.d > b.max_priorities:
        raise BudgetExceeded(f"priority ceiling {game.d} > cap {b.max_priorities}")
    g = game if player == Player.EVEN else dualize(game)
    full = frozenset(g.vertices)
    if _solve(g, full)[0] != full:
        raise NotADominion(f"{player.name} does not win everywhere")
    deadline = time.monotonic() + b.time_cap
    memo: Dict[tuple, bool] = {}

    def admits(region: frozenset, degree: int, s: int) -> bool:
        if s < 1:
            return False
        key = ("a", region, degree, s)
        got = memo.get(key)
        if got is not None:
            return got
        targets = frozenset(v for v in region if g.priority[v] == degree)
        a, _ = attractor(g, Player.EVEN, targets, within=region)
        rest = region - a
        if not rest:
            memo[key] = True
            return True
        result = degree >= 2 and parts(rest, degree, s, 1)
        memo[key] = result
        return result

    def parts(rest: frozenset, degree: int, s: int, allowance: int) -> bool:
        if not rest:
            return True
        if time.monotonic() > deadline:
            raise BudgetExceeded("exact-Strahler time cap exceeded")
        key = ("p", rest, degree, s, allowance)
        got = memo.get(key)
        if got is not None:
            return got
        eligible = sorted(v for v in rest if g.priority[v] <= degree - 2)
        result = False
        for size in range(1, len(eligible) + 1):
            if result:
                break
            for chosen in combinations(eligible, size):
                cand = frozenset(chosen)
                if not _is_trap_within(g, Player.ODD, cand, rest):
                    continue
                ai, _ = attractor(g, Player.EVEN, cand, within=rest)
                remaining = rest - ai
                if (
                    s >= 2
                    and admits(cand, degree - 2, s - 1)
                    and parts(remaining, degree, s, allowance)
                ):
                    result = True
                    break
                if (
                    allowance
                    and admits(cand, degree - 2, s)
                    and parts(remaining, degree, s, 0)
                ):
                    result = True
                    break
        memo[key] = result
        return result

    upper = log2_floor(g.n) + 1
    for s in range(1, upper + 1):
        if admits(full, g.d, s):
            return s
    raise AssertionError("fully-won game admits no decomposition within the bound")


def enumerate_trees(
    n: int, h: int, budget: Optional[OracleBudget] = None
) -> Iterator[OrderedTree]:
    """Every (n, h)-small ordered tree exactly once."""
    b = budget or BRUTE_FORCE_BUDGET
    if n < 1 or h < 1:
        raise ValueError("need n >= 1 and h >= 1")
    if n > b.max_leaves:
        raise BudgetExceeded(f"{n} leaves > cap {b.max_leaves}")
    return all_small_trees(n, h)
