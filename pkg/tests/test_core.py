"""Game model, attractors, traps and dominion-strategy validation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import forced_reachability_attractor, simple_cycles
from strahler.core import (
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
from strahler.errors import NotASubgame
from strahler.generation import corpus, generate_random


def chain_game() -> ParityGame:
    # 0 is the target; 1 (Odd) has both edges toward it, 3 (Odd) can escape
    return ParityGame.create(
        [Player.EVEN, Player.ODD, Player.EVEN, Player.ODD],
        [0, 0, 0, 0],
        [[0], [0, 2], [0], [1, 3]],
    )


class TestConstruction:
    def test_rejects_empty_game(self):
        with pytest.raises(ValueError):
            ParityGame.create([], [], [])

    def test_rejects_missing_edges(self):
        with pytest.raises(ValueError):
            ParityGame.create([0], [1], [[]])

    def test_rejects_negative_priority(self):
        with pytest.raises(ValueError):
            ParityGame.create([0], [-1], [[0]])

    def test_even_ceiling(self):
        g = ParityGame.create([0, 1], [3, 1], [[1], [0]])
        assert g.d == 4
        assert ParityGame.create([0], [2], [[0]]).d == 2
        assert ParityGame.create([0], [0], [[0]]).d == 0


class TestAttractor:
    def test_all_vertices_target(self):
        g = chain_game()
        a, _ = attractor(g, Player.EVEN, range(4))
        assert a == frozenset(range(4))

    def test_empty_target(self):
        g = chain_game()
        a, strat = attractor(g, Player.EVEN, [])
        assert a == frozenset()
        assert not strat.choices

    def test_chain_instance(self):
        # Odd vertex 1 has both edges leading toward the target, so it
        # is attracted; Odd vertex 3 keeps an escape edge and is not
        g = chain_game()
        a, strat = attractor(g, Player.EVEN, [0])
        assert a == frozenset({0, 1, 2})
        # witness strategy covers Even's attracted non-target vertices
        assert strat.choices == {2: 0}

    def test_matches_strategy_enumeration_oracle(self):
        for game in corpus(97, 60, n_max=5, d_max=4):
            for player in Player:
                targets = [v for v in game.vertices if game.priority[v] % 2 == 0]
                got, _ = attractor(game, player, targets)
                want = forced_reachability_attractor(game, player, targets)
                assert got == want

    def test_monotone_and_idempotent_on_corpus(self):
        for game in corpus(3, 40, n_max=6, d_max=4):
            small = frozenset(v for v in game.vertices if v % 2 == 0)
            big = small | {0}
            a_small, _ = attractor(game, Player.EVEN, small)
            a_big, _ = attractor(game, Player.EVEN, big)
            assert a_small <= a_big
            again, _ = attractor(game, Player.EVEN, a_small)
            assert again == a_small

    def test_complement_is_trap(self):
        for game in corpus(5, 40, n_max=6, d_max=4):
            for player in Player:
                a, _ = attractor(game, player, [0])
                rest = frozenset(game.vertices) - a
                if rest:
                    assert is_trap(game, player, rest)


class TestSubgame:
    def test_identity(self):
        g = chain_game()
        assert subgame(g, range(4)) == g

    def test_complement_of_attractor_always_succeeds(self):
        for game in corpus(7, 40, n_max=6, d_max=4):
            a, _ = attractor(game, Player.ODD, [0])
            rest = frozenset(game.vertices) - a
            if rest:
                subgame(game, rest)  # must not raise

    def test_no_selfloop_singleton_fails(self):
        g = chain_game()
        with pytest.raises(NotASubgame):
            subgame(g, [1])

    def test_restrict_reports_ids(self):
        g = chain_game()
        sub, ids = restrict(g, [0, 2])
        assert ids == (0, 2)
        assert sub.n == 2
        assert sub.priority == (0, 0)


class TestTrap:
    def test_whole_vertex_set(self):
        g = chain_game()
        assert is_trap(g, Player.ODD, range(4))
        assert is_trap(g, Player.EVEN, range(4))

    def test_escaping_even_vertex(self):
        # single Even vertex whose only edge exits r: Even cannot stay
        g = ParityGame.create([0, 1], [0, 0], [[1], [0, 1]])
        assert not is_trap(g, Player.ODD, [0])

    def test_empty_trap_rejected(self):
        with pytest.raises(ValueError):
            is_trap(chain_game(), Player.ODD, [])


class TestValidateDominionStrategy:
    def test_even_self_loop(self, even_self_loop):
        sigma = PositionalStrategy(Player.EVEN, {0: 0})
        assert validate_dominion_strategy(even_self_loop, {0}, sigma)

    def test_odd_priority_self_loop(self, odd_self_loop):
        sigma = PositionalStrategy(Player.EVEN, {0: 0})
        assert not validate_dominion_strategy(odd_self_loop, {0}, sigma)

    def test_against_cycle_enumeration(self):
        # mixed-cycle instances: validation agrees with checking every
        # simple cycle of the restricted graph explicitly
        for game in corpus(13, 80, n_max=6, d_max=4):
            even_vertices = [v for v in game.vertices if game.owner[v] == Player.EVEN]
            sigma = PositionalStrategy(
                Player.EVEN, {v: game.succ[v][0] for v in even_vertices}
            )
            d_set = frozenset(game.vertices)
            got = validate_dominion_strategy(game, d_set, sigma)

            def succ(v):
                if game.owner[v] == Player.EVEN:
                    return (sigma.choices[v],)
                return game.succ[v]

            trapped = all(u in d_set for v in d_set for u in succ(v))
            cycles_even = all(
                max(game.priority[v] for v in cyc) % 2 == 0
                for cyc in simple_cycles(d_set, succ)
            )
            assert got == (trapped and cycles_even)


class TestDualize:
    def test_involution_on_winners(self):
        from strahler.zielonka import zielonka_solve

        for game in corpus(17, 40, n_max=6, d_max=4):
            sol = zielonka_solve(game)
            dual_sol = zielonka_solve(dualize(game))
            assert sol.w_even == dual_sol.w_odd
            assert sol.w_odd == dual_sol.w_even


@given(st.integers(1, 6), st.integers(0, 4), st.integers(0, 2**30))
@settings(max_examples=40, deadline=None)
def test_generated_games_are_valid(n, d, seed):
    game = generate_random(seed, n, d, 1, min(3, n))
    assert all(game.succ[v] for v in game.vertices)
    assert all(0 <= p <= d for p in game.priority)
