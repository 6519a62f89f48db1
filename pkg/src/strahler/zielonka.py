"""Recursive attractor-based solver and attractor decompositions.

`zielonka_solve` is the classic two-recursion solver: strip the
attractor of the top priority's owner to the top-priority vertices,
solve the rest, and either conclude (the opponent wins nothing there)
or remove the opponent's attractor to their sub-region and repeat.  It
returns winning sets together with positional winning strategies.

An attractor decomposition is the recursive certificate of a fully-won
game: the attractor A to the top even priority d, then a sequence of
parts (S_i, H_i, A_i) where S_i is a non-empty opponent trap of the
residual with priorities at most d-2, H_i its (d-2)-decomposition, and
A_i its attractor in the residual; the final residual must be empty.
Restricted to a fully-won game this is exactly what the solver's final
stable pass computes, which is how `extract_decomposition` builds it.

This module is the trusted mid-scale reference: the headline lifting
solver is cross-validated against it, and decomposition trees feed the
structural bounds (a decomposition of an n-vertex game with priorities
up to d has an (n, d/2+1)-small tree of Strahler number at most
floor(lg n) + 1).

Odd-side decompositions are represented through the owner-swapped,
priority-shifted dual game: `extract_decomposition(g, Player.ODD)`
decomposes `dualize(g)` for Even, and validation mirrors that, so a
decomposition's `degree` is always even.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, NamedTuple, Optional, Tuple

from .core import (
    ParityGame,
    Player,
    PositionalStrategy,
    attractor,
    dualize,
)
from .errors import NotADominion
from .trees import OrderedTree


class Solution(NamedTuple):
    w_even: frozenset
    sigma_even: PositionalStrategy
    w_odd: frozenset
    sigma_odd: PositionalStrategy

    def winner(self, v: int) -> Player:
        return Player.EVEN if v in self.w_even else Player.ODD


@dataclass(frozen=True)
class DecompositionPart:
    s: frozenset
    sub: "AttractorDecomposition"
    attr: frozenset


@dataclass(frozen=True)
class AttractorDecomposition:
    """Recursive dominion witness <A, (S_1, H_1, A_1), ...> for an even
    priority ceiling `degree`."""

    degree: int
    top_attractor: frozenset
    parts: Tuple[DecompositionPart, ...]


def compress_priorities(game: ParityGame) -> ParityGame:
    """Order- and parity-preserving compression of priority gaps.

    Winning sets and strategies are invariant under this map; it only
    shortens the solver's recursion.
    """
    distinct = sorted(set(game.priority))
    mapping: Dict[int, int] = {}
    prev_old: Optional[int] = None
    prev_new = 0
    for p in distinct:
        if prev_old is None:
            new = p % 2
        elif (p - prev_old) % 2 == 1:
            new = prev_new + 1
        else:
            new = prev_new + 2
        mapping[p] = new
        prev_old, prev_new = p, new
    return ParityGame(
        owner=game.owner,
        priority=tuple(mapping[p] for p in game.priority),
        succ=game.succ,
        names=game.names,
    )


def _solve(game: ParityGame, region: frozenset):
    """Returns (w_even, w_odd, choices_even, choices_odd) for the
    subgame induced by `region` (which must be subgame-closed).

    The second recursion of the textbook formulation is a loop here, so
    the stack depth is bounded by the number of distinct priorities.
    """
    acc_w = [set(), set()]
    acc_s: list = [{}, {}]
    while region:
        p = max(game.priority[v] for v in region)
        j = Player(p % 2)
        opp = j.opponent
        targets = frozenset(v for v in region if game.priority[v] == p)
        a, reach = attractor(game, j, targets, within=region)
        w0, w1, s0, s1 = _solve(game, region - a)
        win = (w0, w1)
        strat = (s0, s1)
        if not win[opp]:
            choices = dict(strat[j])
            choices.update(reach.choices)
            for v in targets:
                if game.owner[v] == j:
                    choices[v] = next(u for u in game.succ[v] if u in region)
            acc_w[j] |= region
            acc_s[j].update(choices)
            break
        b, breach = attractor(game, opp, win[opp], within=region)
        choices = dict(strat[opp])
        choices.update(breach.choices)
        acc_w[opp] |= b
        acc_s[opp].update(choices)
        region = region - b
    return frozenset(acc_w[0]), frozenset(acc_w[1]), acc_s[0], acc_s[1]


def zielonka_solve(game: ParityGame) -> Solution:
    """Winning partition and positional winning strategies."""
    norm = compress_priorities(game)
    w0, w1, s0, s1 = _solve(norm, frozenset(norm.vertices))
    return Solution(
        w0,
        PositionalStrategy(Player.EVEN, s0),
        w1,
        PositionalStrategy(Player.ODD, s1),
    )


def _is_trap_within(
    game: ParityGame, player: Player, s: frozenset, region: frozenset
) -> bool:
    """Trap check relative to the subgame induced by `region`."""
    for v in s:
        inside_region = [u for u in game.succ[v] if u in region]
        if game.owner[v] == player:
            if any(u not in s for u in inside_region):
                return False
        else:
            if not any(u in s for u in inside_region):
                return False
    return True


def _decompose(game: ParityGame, region: frozenset, degree: int) -> AttractorDecomposition:
    targets = frozenset(v for v in region if game.priority[v] == degree)
    a, _ = attractor(game, Player.EVEN, targets, within=region)
    rest = region - a
    parts = []
    while rest:
        if degree < 2:
            raise NotADominion("residual survives at priority ceiling 0")
        odd_top = frozenset(v for v in rest if game.priority[v] == degree - 1)
        aprime, _ = attractor(game, Player.ODD, odd_top, within=rest)
        core = rest - aprime
        w_even = _solve(game, core)[0] if core else frozenset()
        if not w_even:
            raise NotADominion("no winning part in the residual")
        sub = _decompose(game, w_even, degree - 2)
        ai, _ = attractor(game, Player.EVEN, w_even, within=rest)
        parts.append(DecompositionPart(w_even, sub, ai))
        rest = rest - ai
    return AttractorDecomposition(degree, a, tuple(parts))


def extract_decomposition(game: ParityGame, player: Player) -> AttractorDecomposition:
    """Attractor decomposition of a game fully won by `player`,
    recorded against the game's original priorities (no compression).

    Raises NotADominion when the opponent wins somewhere.  For
    Player.ODD the dual game is decomposed, so the result's degree is
    the dual's even ceiling.
    """
    g = game if player == Player.EVEN else dualize(game)
    full = frozenset(g.vertices)
    if _solve(g, full)[0] != full:
        raise NotADominion(f"{player.name} does not win everywhere")
    return _decompose(g, full, g.d)


def validate_decomposition(
    game: ParityGame, decomposition: AttractorDecomposition, player: Player
) -> bool:
    """Check every clause of the decomposition definition."""
    g = game if player == Player.EVEN else dualize(game)
    return _validate(g, decomposition, frozenset(g.vertices))


def _validate(game: ParityGame, h: AttractorDecomposition, region: frozenset) -> bool:
    d = h.degree
    if d % 2 != 0 or d < 0:
        return False
    if any(game.priority[v] > d for v in region):
        return False
    targets = frozenset(v for v in region if game.priority[v] == d)
    a, _ = attractor(game, Player.EVEN, targets, within=region)
    if frozenset(h.top_attractor) != a:
        return False
    rest = region - a
    if d == 0 and h.parts:
        return False
    for part in h.parts:
        s = frozenset(part.s)
        if not s or not s <= rest:
            return False
        if any(game.priority[v] > d - 2 for v in s):
            return False
        if not _is_trap_within(game, Player.ODD, s, rest):
            return False
        if part.sub.degree != d - 2:
            return False
        if not _validate(game, part.sub, s):
            return False
        ai, _ = attractor(game, Player.EVEN, s, within=rest)
        if frozenset(part.attr) != ai:
            return False
        rest = rest - ai
    return not rest


def decomposition_tree(h: AttractorDecomposition) -> OrderedTree:
    """The ordered tree reflecting the decomposition's nesting."""
    if not h.parts:
        return ()
    return tuple(decomposition_tree(part.sub) for part in h.parts)
