"""Parity game solving toolkit.

Solvers (universal-tree progress-measure lifting, the recursive
attractor solver, brute-force strategy enumeration), the universal-tree
machinery with succinct leaf navigation, register-game constructions,
and the file/CLI surface for cross-validating them against each other.
"""

from .core import (
    ParityGame,
    Player,
    PositionalStrategy,
    attractor,
    dualize,
    is_trap,
    restrict,
    subgame,
    validate_dominion_strategy,
)

__all__ = [
    "ParityGame",
    "Player",
    "PositionalStrategy",
    "attractor",
    "dualize",
    "is_trap",
    "restrict",
    "subgame",
    "validate_dominion_strategy",
]

__version__ = "0.1.0"
