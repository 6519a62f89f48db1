"""Shared fixtures and independent reference oracles for the test suite.

The oracles here deliberately re-derive results by brute force
(backtracking, exhaustive enumeration) so the production algorithms are
checked against something that shares no code with them.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, Iterator, List, Tuple

import pytest

from strahler.core import ParityGame, Player


def backtracking_embeds(small, big) -> bool:
    """Reference ordered-tree embedding by explicit search over index
    choices (exponential)."""
    if not small:
        return True

    def match(children, candidates) -> bool:
        if not children:
            return True
        head, rest = children[0], children[1:]
        for i, cand in enumerate(candidates):
            if backtracking_embeds(head, cand) and match(rest, candidates[i + 1 :]):
                return True
        return False

    return match(list(small), list(big))


def simple_cycles(vertices, successors) -> Iterator[List[int]]:
    """All simple cycles of a small directed graph (DFS from each
    minimal start vertex)."""
    vertices = sorted(vertices)
    for start in vertices:
        stack = [(start, [start])]
        while stack:
            v, path = stack.pop()
            for u in successors(v):
                if u == start:
                    yield path
                elif u > start and u not in path:
                    stack.append((u, path + [u]))


def enumerate_odd_player_strategies(game: ParityGame) -> Iterator[Dict[int, int]]:
    odd_vertices = [v for v in game.vertices if game.owner[v] == Player.ODD]
    for choice in product(*(game.succ[v] for v in odd_vertices)):
        yield dict(zip(odd_vertices, choice))


def forced_reachability_attractor(
    game: ParityGame, player: Player, targets
) -> frozenset:
    """Attractor oracle: v is attracted iff for every opponent
    positional strategy, `player` can still reach the target set from
    v.  Completely independent of the fixpoint implementation."""
    targets = frozenset(targets)
    result = set()
    opponent_strategies = (
        list(enumerate_odd_player_strategies(game))
        if player == Player.EVEN
        else list(_even_strategies(game))
    )
    for v in game.vertices:
        if all(
            _reaches(game, player, strategy, v, targets)
            for strategy in opponent_strategies
        ):
            result.add(v)
    return frozenset(result)


def _even_strategies(game: ParityGame) -> Iterator[Dict[int, int]]:
    even_vertices = [v for v in game.vertices if game.owner[v] == Player.EVEN]
    for choice in product(*(game.succ[v] for v in even_vertices)):
        yield dict(zip(even_vertices, choice))


def _reaches(game, player, opponent_choice, start, targets) -> bool:
    seen = set()
    frontier = [start]
    while frontier:
        v = frontier.pop()
        if v in targets:
            return True
        if v in seen:
            continue
        seen.add(v)
        if game.owner[v] == player:
            frontier.extend(game.succ[v])
        else:
            frontier.append(opponent_choice[v])
    return False


@pytest.fixture
def even_self_loop() -> ParityGame:
    return ParityGame.create([Player.EVEN], [2], [[0]])


@pytest.fixture
def odd_self_loop() -> ParityGame:
    return ParityGame.create([Player.EVEN], [1], [[0]])


def forced_strahler2_game() -> ParityGame:
    """Fully Even-won game with d = 2 whose every attractor
    decomposition has two sibling parts: vertex 0 loops at priority 0,
    vertex 1 (priority 1) feeds it, vertex 2 (Odd, priority 0) loops or
    escapes to 1, so 2 is mergeable into no bottom trap until 1 is
    attracted away."""
    return ParityGame.create(
        [Player.EVEN, Player.EVEN, Player.ODD],
        [0, 1, 0],
        [[0], [0], [1, 2]],
    )


def two_block_game() -> ParityGame:
    """Two disjoint forced-Strahler-2 blocks joined under an odd top
    priority: vertices 0-2 and 3-5 are the blocks, vertex 6 (Odd,
    priority 3) picks a block."""
    return ParityGame.create(
        [Player.EVEN, Player.EVEN, Player.ODD, Player.EVEN, Player.EVEN, Player.ODD, Player.ODD],
        [0, 1, 0, 0, 1, 0, 3],
        [[0], [0], [1, 2], [3], [3], [4, 5], [0, 3]],
    )
