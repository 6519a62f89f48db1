"""Ordered trees: metrics, Strahler numbers, composition, embedding."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import backtracking_embeds
from strahler.trees import (
    all_small_trees,
    chain,
    compose,
    embeds,
    height,
    labelled_leaves,
    leaves,
    log2_floor,
    metrics,
    small_tree_count,
    strahler,
    tree_from_leaves,
    unlabel,
)

# the running example: <<o^3>, o^4, <<o>>^2>
EXAMPLE = ((((), (), ()),) + ((),) * 4 + ((((),),),) * 2)


_UNIVERSE = list(all_small_trees(5, 4))


def ordered_trees():
    return st.sampled_from(_UNIVERSE)


class TestMetrics:
    def test_trivial(self):
        assert metrics(()) == (1, 1)

    def test_example(self):
        assert metrics(EXAMPLE) == (4, 9)

    def test_chain(self):
        assert metrics(chain(3)) == (3, 1)


class TestStrahler:
    def test_trivial(self):
        assert strahler(()) == 1

    def test_example(self):
        assert strahler(EXAMPLE) == 2

    def test_perfect_binary_height3(self):
        t2 = ((), ())
        t3 = (t2, t2)
        assert strahler(t3) == 3

    @pytest.mark.parametrize("n,h", [(7, 4), (5, 5)])
    def test_smallness_bound_exhaustive(self, n, h):
        # Strah(T) <= height and <= floor(lg leaves)+1, exhaustively over
        # every tree with at most n leaves and height at most h
        for t in all_small_trees(n, h):
            th, tl = metrics(t)
            s = strahler(t)
            assert s <= th
            assert s <= log2_floor(tl) + 1


class TestCompose:
    def test_example(self):
        a = (((), (), ()),)
        b = ((),) * 4 + ((((),),),) * 2
        assert compose(a, b) == EXAMPLE

    def test_identity(self):
        assert compose((), EXAMPLE) == EXAMPLE
        assert compose(EXAMPLE, ()) == EXAMPLE

    def test_child_counts_add(self):
        a = ((),) * 3
        b = ((),) * 4
        assert compose(a, b) == ((),) * 7

    @given(ordered_trees(), ordered_trees())
    @settings(max_examples=60, deadline=None)
    def test_strahler_of_composition(self, a, b):
        if not a or not b:
            return
        sa, sb = strahler(a), strahler(b)
        s = strahler(compose(a, b))
        assert s in (max(sa, sb), max(sa, sb) + 1)


class TestEmbeds:
    def test_trivial_embeds_everywhere(self):
        assert embeds((), EXAMPLE)
        assert embeds((), ())

    def test_not_enough_children(self):
        assert not embeds(((), ()), ((),))

    def test_agrees_with_backtracking_exhaustively(self):
        universe = list(all_small_trees(5, 3))
        for small in universe:
            for big in universe:
                assert embeds(small, big) == backtracking_embeds(small, big)

    def test_reflexive_transitive_monotone(self):
        universe = list(all_small_trees(4, 3))
        for t in universe:
            assert embeds(t, t)
        for a in universe:
            for b in universe:
                if not embeds(a, b):
                    continue
                ha, la = metrics(a)
                hb, lb = metrics(b)
                assert la <= lb and ha <= hb
                assert strahler(a) <= strahler(b)
                for c in universe:
                    if embeds(b, c):
                        assert embeds(a, c)


class TestLabelled:
    def test_generated_example(self):
        lt = tree_from_leaves([(1,), (3, 1), (3, 4, 1), (6, 1)])
        assert unlabel(lt) == ((), ((), ((),)), ((),))

    def test_empty_generator(self):
        assert tree_from_leaves([]) == ()

    def test_singleton(self):
        assert unlabel(tree_from_leaves([("a",)])) == ((),)

    def test_leaves_round_trip(self):
        seqs = [(1, 2), (1, 5), (3,)]
        lt = tree_from_leaves(seqs)
        assert sorted(labelled_leaves(lt)) == sorted(seqs)


class TestEnumeration:
    def test_single_leaf_trees(self):
        assert list(all_small_trees(1, 3)) == [(), ((),), (((),),)]

    def test_two_two(self):
        got = set(all_small_trees(2, 2))
        assert got == {(), ((),), ((), ())}

    def test_count_matches_recurrence(self):
        for n in range(1, 5):
            for h in range(1, 5):
                assert len(list(all_small_trees(n, h))) == small_tree_count(n, h)

    def test_no_duplicates(self):
        ts = list(all_small_trees(5, 4))
        assert len(ts) == len(set(ts))
