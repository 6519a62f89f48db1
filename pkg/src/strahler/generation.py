"""Seeded random game generation and corpus streaming.

Generation is deterministic for a fixed seed: the same seed always
yields the same game, which is what makes the cross-validation corpora
reproducible.
"""

from __future__ import annotations

import random
from typing import Iterator, Optional

from .core import ParityGame
from .errors import InvalidParams


def generate_random(
    seed: int,
    n: int,
    d: int,
    min_degree: int,
    max_degree: int,
    audrey_fraction: float = 0.5,
) -> ParityGame:
    """Random total parity game: priorities uniform in [0, d], owners
    Odd with probability `audrey_fraction`, out-degrees uniform in
    [min_degree, max_degree] with distinct successors."""
    if n < 1:
        raise InvalidParams("need at least one vertex")
    if not 1 <= min_degree <= max_degree <= n:
        raise InvalidParams("need 1 <= min_degree <= max_degree <= n")
    if d < 0:
        raise InvalidParams("priority bound must be non-negative")
    if not 0.0 <= audrey_fraction <= 1.0:
        raise InvalidParams("audrey_fraction must be within [0, 1]")
    rng = random.Random(seed)
    owner = [1 if rng.random() < audrey_fraction else 0 for _ in range(n)]
    priority = [rng.randint(0, d) for _ in range(n)]
    succ = []
    for _v in range(n):
        degree = rng.randint(min_degree, max_degree)
        succ.append(rng.sample(range(n), degree))
    return ParityGame.create(owner, priority, succ)


def corpus(
    seed: int,
    count: int,
    n_max: int = 8,
    d_max: int = 6,
    min_degree: int = 1,
    max_degree: int = 3,
    audrey_fraction: float = 0.5,
    n_min: int = 1,
) -> Iterator[ParityGame]:
    """Stream of `count` seeded games with sizes up to (n_max, d_max).

    Game i is generated from a seed derived from (seed, i), so any
    prefix of the corpus is stable under a larger count.
    """
    master = random.Random(seed)
    for i in range(count):
        n = master.randint(n_min, n_max)
        d = master.randint(0, d_max)
        lo = min(min_degree, n)
        hi = min(max_degree, n)
        game_seed = master.randrange(2**32)
        yield generate_random(game_seed, n, d, lo, hi, audrey_fraction)
