"""Parity-game data model and basic game-theoretic primitives.

A parity game is a finite directed graph in which every vertex has at
least one outgoing edge, is owned by one of two players (Even / Odd),
and carries a non-negative integer priority.  A play is an infinite
walk; under positional strategies its winner is decided by the parity
of the highest priority on the cycle the play settles into.

This module provides the game type plus the primitives everything else
is built from: induced subgames, traps, attractors with their witness
reachability strategies, and validation of dominion strategies (the
trap-plus-favourable-cycles certificate of a winning region).

All values are immutable after construction and all operations are pure
functions, so everything here can be shared freely across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import NotASubgame

VertexSet = frozenset
# Vertex ids are dense integers 0..n-1.  Sets of vertices are frozensets,
# which give the O(1) membership / linear iteration contract the solvers
# rely on.


class Player(enum.IntEnum):
    """The two players.  Even wins cycles whose top priority is even."""

    EVEN = 0
    ODD = 1

    @property
    def opponent(self) -> "Player":
        return Player(1 - self.value)

    def favours(self, priority: int) -> bool:
        """Whether a cycle dominated by `priority` is won by this player."""
        return priority % 2 == self.value


@dataclass(frozen=True)
class PositionalStrategy:
    """One chosen outgoing edge per (covered) vertex of a single player.

    `choices` maps a vertex owned by `player` to the chosen successor.
    A strategy may be partial (e.g. an attractor's witness only covers
    the attracted non-target vertices); completeness over a region is a
    property of the context, checked where it matters.
    """

    player: Player
    choices: Mapping[int, int]

    def merged_with(self, other: "PositionalStrategy") -> "PositionalStrategy":
        assert other.player == self.player
        merged = dict(self.choices)
        merged.update(other.choices)
        return PositionalStrategy(self.player, merged)


@dataclass(frozen=True)
class ParityGame:
    """Immutable parity game over dense vertex ids 0..n-1.

    `owner[v]` and `priority[v]` label vertex v; `succ[v]` is its sorted
    tuple of successors (non-empty).  `names` optionally carries display
    names round-tripped from game files.
    """

    owner: tuple
    priority: tuple
    succ: tuple
    names: Optional[tuple] = None
    pred: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.owner)
        if n == 0:
            raise ValueError("a parity game needs at least one vertex")
        if not (len(self.priority) == len(self.succ) == n):
            raise ValueError("owner/priority/succ lengths differ")
        if self.names is not None and len(self.names) != n:
            raise ValueError("names length differs from vertex count")
        preds: list = [[] for _ in range(n)]
        for v, targets in enumerate(self.succ):
            if not targets:
                raise ValueError(f"vertex {v} has no outgoing edge")
            for u in targets:
                if not 0 <= u < n:
                    raise ValueError(f"edge ({v}, {u}) leaves the vertex range")
                preds[u].append(v)
        for v, p in enumerate(self.priority):
            if p < 0:
                raise ValueError(f"vertex {v} has negative priority {p}")
        object.__setattr__(self, "pred", tuple(tuple(ps) for ps in preds))

    @classmethod
    def create(
        cls,
        owner: Sequence,
        priority: Sequence[int],
        succ: Sequence[Iterable[int]],
        names: Optional[Sequence[str]] = None,
    ) -> "ParityGame":
        return cls(
            owner=tuple(Player(o) for o in owner),
            priority=tuple(priority),
            succ=tuple(tuple(sorted(set(s))) for s in succ),
            names=None if names is None else tuple(names),
        )

    @property
    def n(self) -> int:
        return len(self.owner)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def d(self) -> int:
        """Smallest even integer >= every priority."""
        top = max(self.priority)
        return top if top % 2 == 0 else top + 1

    def edges(self) -> Iterator:
        for v, targets in enumerate(self.succ):
            for u in targets:
                yield (v, u)

    def has_edge(self, v: int, u: int) -> bool:
        return u in self.succ[v]

    def vertices_with_priority(self, p: int, within: Optional[frozenset] = None):
        if within is None:
            return frozenset(v for v in self.vertices if self.priority[v] == p)
        return frozenset(v for v in within if self.priority[v] == p)


def dualize(game: ParityGame) -> ParityGame:
    """Owner-swapped, priority-shifted copy: solving it swaps the roles.

    Priorities move up by one, so Odd-favourable cycles of the original
    become Even-favourable cycles of the dual and vice versa.
    """
    return ParityGame(
        owner=tuple(o.opponent for o in game.owner),
        priority=tuple(p + 1 for p in game.priority),
        succ=game.succ,
        names=game.names,
    )


def restrict(game: ParityGame, s: Iterable[int]):
    """Induced subgame on `s`, re-indexed densely.

    Returns (subgame, ids) where ids[i] is the original id of the new
    vertex i.  Raises NotASubgame if some vertex of `s` has no outgoing
    edge inside `s`.
    """
    ids = tuple(sorted(set(s)))
    if not ids:
        raise ValueError("cannot restrict to an empty vertex set")
    index = {v: i for i, v in enumerate(ids)}
    member = frozenset(ids)
    succ = []
    for v in ids:
        inside = tuple(index[u] for u in game.succ[v] if u in member)
        if not inside:
            raise NotASubgame(f"vertex {v} has no outgoing edge inside the set")
        succ.append(inside)
    sub = ParityGame(
        owner=tuple(game.owner[v] for v in ids),
        priority=tuple(game.priority[v] for v in ids),
        succ=tuple(succ),
        names=None if game.names is None else tuple(game.names[v] for v in ids),
    )
    return sub, ids


def subgame(game: ParityGame, s: Iterable[int]) -> ParityGame:
    """Induced substructure on `s` (see `restrict` for the id mapping)."""
    return restrict(game, s)[0]


def attractor(
    game: ParityGame,
    player: Player,
    targets: Iterable[int],
    within: Optional[frozenset] = None,
):
    """Largest set from which `player` can force reaching `targets`.

    Computed by the standard counter-based backward fixpoint, linear in
    the number of edges.  Returns (attracted, strategy); the strategy
    covers the player's attracted vertices outside `targets` and steers
    them toward `targets`.  `within` restricts the computation to an
    induced subgame (edges leaving it are ignored).
    """
    region = within if within is not None else frozenset(game.vertices)
    attracted = set(t for t in targets if t in region)
    queue = list(attracted)
    counters: dict = {}
    choices: dict = {}
    pred = game.pred
    succ = game.succ
    owner = game.owner
    while queue:
        u = queue.pop()
        for w in pred[u]:
            if w not in region or w in attracted:
                continue
            if owner[w] == player:
                attracted.add(w)
                choices[w] = u
                queue.append(w)
            else:
                c = counters.get(w)
                if c is None:
                    c = sum(1 for x in succ[w] if x in region)
                c -= 1
                counters[w] = c
                if c == 0:
                    attracted.add(w)
                    queue.append(w)
    return frozenset(attracted), PositionalStrategy(player, choices)


def is_trap(game: ParityGame, player: Player, r: Iterable[int]) -> bool:
    """Whether `r` is a trap for `player` (they cannot be forced out).

    Equivalently: every vertex of `r` owned by `player` has all its
    edges into `r`, and every opponent vertex in `r` has some edge into
    `r` (so the opponent can keep the play there).
    """
    rset = frozenset(r)
    if not rset:
        raise ValueError("a trap is a non-empty vertex set")
    for v in rset:
        inside = [u for u in game.succ[v] if u in rset]
        if game.owner[v] == player:
            if len(inside) != len(game.succ[v]):
                return False
        elif not inside:
            return False
    return True


def strongly_connected_components(
    vertices: Iterable[int], successors: Callable[[int], Iterable[int]]
):
    """Tarjan's algorithm, iterative.  Yields components as lists."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    components: list = []
    counter = 0
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(successors(u))))
                    advanced = True
                    break
                if u in on_stack:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
    return components


def _restricted_successors(game: ParityGame, d_set: frozenset, sigma: PositionalStrategy):
    """Successor function of the subgraph (d_set, sigma): the player's
    vertices follow their single choice, opponent vertices keep all
    edges that stay in d_set."""

    def successors(v: int):
        if game.owner[v] == sigma.player:
            u = sigma.choices.get(v)
            return (u,) if u is not None and u in d_set else ()
        return tuple(u for u in game.succ[v] if u in d_set)

    return successors


def has_favourable_cycles_only(
    game: ParityGame,
    vertices: frozenset,
    successors: Callable[[int], Iterable[int]],
    player: Player,
) -> bool:
    """True iff every cycle of the given subgraph has a `player`-parity
    maximum priority.

    Checked by SCC decomposition per priority threshold: a cycle with
    maximum priority p exists iff, in the subgraph restricted to
    priorities <= p, some SCC both contains a priority-p vertex and
    carries a cycle.
    """
    bad = sorted(
        {game.priority[v] for v in vertices if not player.favours(game.priority[v])}
    )
    for p in bad:
        allowed = frozenset(v for v in vertices if game.priority[v] <= p)

        def within(v, _allowed=allowed):
            return tuple(u for u in successors(v) if u in _allowed)

        for comp in strongly_connected_components(sorted(allowed), within):
            if not any(game.priority[v] == p for v in comp):
                continue
            if len(comp) > 1 or comp[0] in within(comp[0]):
                return False
    return True


def validate_dominion_strategy(
    game: ParityGame, d_set: Iterable[int], sigma: PositionalStrategy
) -> bool:
    """Whether `sigma` certifies `d_set` as a dominion of its player.

    Requires that sigma traps the opponent in d_set (the player's chosen
    edges and all opponent edges stay inside) and that every cycle of
    the restricted subgraph (d_set, sigma) has a maximum priority of the
    player's parity.
    """
    dset = frozenset(d_set)
    if not dset:
        return True
    for v in dset:
        if game.owner[v] == sigma.player:
            u = sigma.choices.get(v)
            if u is None or not game.has_edge(v, u) or u not in dset:
                return False
        else:
            if any(u not in dset for u in game.succ[v]):
                return False
    successors = _restricted_successors(game, dset, sigma)
    return has_favourable_cycles_only(game, dset, successors, sigma.player)
