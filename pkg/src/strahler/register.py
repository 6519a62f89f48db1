"""Register games: the k-register transformation and its defensive variant.

The k-register game of a parity game tracks k monotone priority
registers.  Its states are pairs (v, <r_k, ..., r_1>) owned by Even, or
triples (v, <r_k, ..., r_1>, p) owned by v's owner; d >= r_k >= ... >=
r_1 >= 0 and ranks p lie in [1, 2k+1].  At a pair state Even picks a
reset index i in [0, k]: registers above i absorb the vertex priority
(max), register i is set to it, registers below are cleared, and the
produced rank is 2i when i >= 1 and max(r_i, pi(v)) is even, else
2i+1.  At a triple state the vertex owner picks a game edge; registers
ride along unchanged.  Ranks act as the register game's priorities.

The defensive variant makes rank 2k+1 immediately losing for Even by
replacing those states' moves with a single move to an absorbing
odd-priority sink, which keeps everything inside the parity-game type.

The register number of a game is the least k for which every vertex of
the largest Even winning region is winning for Even somewhere in the
k-register game; the Lehtinen number asks instead for a defensive win
from every pair state whose top register holds an even value at least
every priority of the winning region.  Both are computed by building
the (small) register game and solving it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Optional, Tuple

from .core import ParityGame, Player
from .errors import CapExceeded, StateSpaceExceeded
from .zielonka import zielonka_solve

DEFAULT_K_CAP = 3
DEFAULT_STATE_CAP = 10**6


@dataclass(frozen=True)
class RegisterState:
    """A register-game state; `rank` is None for pre-reset pair states
    (which have rank 1 but no recorded reset yet)."""

    vertex: int
    registers: Tuple[int, ...]  # <r_k, ..., r_1>, non-increasing
    rank: Optional[int] = None

    @property
    def is_pair(self) -> bool:
        return self.rank is None


@dataclass(frozen=True)
class RegisterGame:
    """A built register game plus the state <-> id correspondence."""

    game: ParityGame
    states: Tuple[RegisterState, ...]
    index: Dict[RegisterState, int]
    k: int
    sink: Optional[int] = None  # defensive variant's absorbing state

    def pair_id(self, vertex: int, registers: Tuple[int, ...]) -> int:
        return self.index[RegisterState(vertex, registers)]


def apply_reset(registers: Tuple[int, ...], priority: int, i: int):
    """Even's reset move on <r_k, ..., r_1>: returns (registers', rank).

    Registers above i absorb the priority, register i is set to it,
    lower ones are cleared; the rank is 2i for an even max(r_i, pi),
    2i+1 when i = 0 or the max is odd.
    """
    k = len(registers)
    if not 0 <= i <= k:
        raise ValueError(f"reset index {i} outside [0, {k}]")
    if i == 0:
        new = tuple(max(r, priority) for r in registers)
        return new, 1
    # registers are stored r_k first; register i sits at position k - i
    pos = k - i
    hit = max(registers[pos], priority)
    new = (
        tuple(max(r, priority) for r in registers[:pos])
        + (priority,)
        + (0,) * (k - pos - 1)
    )
    rank = 2 * i if hit % 2 == 0 else 2 * i + 1
    return new, rank


def register_tuple_count(k: int, d: int) -> int:
    """Number of non-increasing register tuples over [0, d]."""
    return comb(d + k, k)


def state_space_size(game: ParityGame, k: int) -> int:
    return game.n * register_tuple_count(k, game.d) * (1 + (2 * k + 1))


def build_reg(
    game: ParityGame, k: int, state_cap: int = DEFAULT_STATE_CAP
) -> RegisterGame:
    """Construct the k-register game over explicit RegisterState ids."""
    if k < 1:
        raise ValueError("need k >= 1")
    estimate = state_space_size(game, k)
    if estimate > state_cap:
        raise StateSpaceExceeded(
            f"{estimate} register states exceed the cap of {state_cap}"
        )
    d = game.d
    tuples = [
        tuple(reversed(t)) for t in combinations_with_replacement(range(d + 1), k)
    ]
    states: List[RegisterState] = []
    for v in game.vertices:
        for regs in tuples:
            states.append(RegisterState(v, regs))
            for rank in range(1, 2 * k + 2):
                states.append(RegisterState(v, regs, rank))
    index = {s: i for i, s in enumerate(states)}
    owner: List[Player] = []
    priority: List[int] = []
    succ: List[List[int]] = []
    for s in states:
        if s.is_pair:
            owner.append(Player.EVEN)
            priority.append(1)
            moves = []
            for i in range(k + 1):
                regs, rank = apply_reset(s.registers, game.priority[s.vertex], i)
                moves.append(index[RegisterState(s.vertex, regs, rank)])
            succ.append(moves)
        else:
            owner.append(game.owner[s.vertex])
            priority.append(s.rank)
            succ.append(
                [index[RegisterState(u, s.registers)] for u in game.succ[s.vertex]]
            )
    return RegisterGame(
        game=ParityGame.create(owner, priority, succ),
        states=tuple(states),
        index=index,
        k=k,
    )


def build_def(
    game: ParityGame, k: int, state_cap: int = DEFAULT_STATE_CAP
) -> RegisterGame:
    """The defensive k-register game: every rank-(2k+1) state moves only
    to an absorbing Odd-winning sink."""
    reg = build_reg(game, k, state_cap)
    base = reg.game
    sink = base.n
    owner = list(base.owner) + [Player.ODD]
    priority = list(base.priority) + [1]
    succ = [list(s) for s in base.succ] + [[sink]]
    for sid, state in enumerate(reg.states):
        if state.rank == 2 * k + 1:
            succ[sid] = [sink]
    return RegisterGame(
        game=ParityGame.create(owner, priority, succ),
        states=reg.states,
        index=reg.index,
        k=k,
        sink=sink,
    )


def register_number(
    game: ParityGame,
    k_cap: int = DEFAULT_K_CAP,
    state_cap: int = DEFAULT_STATE_CAP,
) -> int:
    """Least k <= k_cap such that every vertex of the largest Even
    winning region is the vertex component of some Even-won k-register
    state (membership is vertex-determined, so pair states suffice)."""
    w_even = zielonka_solve(game).w_even
    if not w_even:
        return 1
    for k in range(1, k_cap + 1):
        reg = build_reg(game, k, state_cap)
        won = zielonka_solve(reg.game).w_even
        covered = {
            reg.states[s].vertex for s in won if reg.states[s].is_pair
        }
        if w_even <= covered:
            return k
    raise CapExceeded(f"register number exceeds the cap of {k_cap}")


def lehtinen_number(
    game: ParityGame,
    k_cap: int = DEFAULT_K_CAP,
    state_cap: int = DEFAULT_STATE_CAP,
) -> int:
    """Least k <= k_cap such that Even defensively wins from every pair
    state over the winning region whose top register holds an even
    value at least every priority occurring there."""
    w_even = zielonka_solve(game).w_even
    if not w_even:
        return 1
    top = max(game.priority[v] for v in w_even)
    d = game.d
    for k in range(1, k_cap + 1):
        dg = build_def(game, k, state_cap)
        won = zielonka_solve(dg.game).w_even
        if _defensive_start_states_won(dg, won, w_even, top, d):
            return k
    raise CapExceeded(f"Lehtinen number exceeds the cap of {k_cap}")


def _defensive_start_states_won(
    dg: RegisterGame, won: frozenset, w_even: frozenset, top: int, d: int
) -> bool:
    for sid, state in enumerate(dg.states):
        if not state.is_pair or state.vertex not in w_even:
            continue
        r_k = state.registers[0]
        if r_k % 2 == 0 and r_k >= top and sid not in won:
            return False
    return True
