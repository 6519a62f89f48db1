"""Ordered trees, labelled ordered trees, and their structural metrics.

An ordered tree is represented as a nested tuple: the trivial tree is
the empty tuple () and a tree with children T1..Tk is the tuple
(T1, ..., Tk).  Tuples give structural equality, hashing and cheap
composition for free.

A labelled ordered tree is a tuple of (label, subtree) pairs whose
sibling labels are strictly increasing under a supplied linear order.
Nodes of a labelled tree are label sequences, so a labelled tree is
equivalently a prefix-closed set of sequences; `tree_from_leaves`
builds the tree generated by a leaf set.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Optional, Sequence

OrderedTree = tuple
LabelledTree = tuple

TRIVIAL: OrderedTree = ()


def chain(height: int) -> OrderedTree:
    """The single-leaf tree of the given height (height 1 = trivial)."""
    if height < 1:
        raise ValueError("height must be positive")
    t: OrderedTree = ()
    for _ in range(height - 1):
        t = (t,)
    return t


def compose(a: OrderedTree, b: OrderedTree) -> OrderedTree:
    """Sequential composition: merge the roots, concatenating children."""
    return a + b


def metrics(t: OrderedTree):
    """(height, leaves) of the tree; the trivial tree is (1, 1)."""
    if not t:
        return 1, 1
    height = 0
    leaves = 0
    for child in t:
        ch, cl = metrics(child)
        height = max(height, ch)
        leaves += cl
    return height + 1, leaves


def height(t: OrderedTree) -> int:
    return metrics(t)[0]


def leaves(t: OrderedTree) -> int:
    return metrics(t)[1]


def strahler(t: OrderedTree) -> int:
    """Largest height of a perfect binary tree minor, inductively:
    1 for the trivial tree; for children with maximum value m, it is m
    when a unique child attains m and m+1 otherwise."""
    if not t:
        return 1
    best = 0
    tied = False
    for child in t:
        s = strahler(child)
        if s > best:
            best, tied = s, False
        elif s == best:
            tied = True
    return best + 1 if tied else best


def embeds(small: OrderedTree, big: OrderedTree) -> bool:
    """Order-preserving embedding: the trivial tree embeds everywhere,
    and (S1..Sk) embeds in (B1..Bl) iff the Si match some increasing
    child subsequence.  Matching is greedy (earliest feasible child),
    which is exact for this relation; a backtracking reference matcher
    certifies that on small instances in the test suite.
    """
    if not small:
        return True
    i = 0
    for child in small:
        while i < len(big) and not embeds(child, big[i]):
            i += 1
        if i == len(big):
            return False
        i += 1
    return True


def is_small(t: OrderedTree, n: int, h: int) -> bool:
    """At most n leaves and height at most h."""
    th, tl = metrics(t)
    return tl <= n and th <= h


def all_small_trees(n: int, h: int) -> Iterator[OrderedTree]:
    """Every ordered tree with at most n leaves and height at most h,
    exactly once, ordered by leaf count then canonical shape."""
    if n < 1 or h < 1:
        return
    for j in range(1, n + 1):
        yield from _trees_with_leaves(j, h)


def _trees_with_leaves(j: int, h: int) -> Iterator[OrderedTree]:
    if h < 1:
        return
    if j == 1:
        # chains I_1 .. I_h
        t: OrderedTree = ()
        yield t
        for _ in range(h - 1):
            t = (t,)
            yield t
        return
    if h == 1:
        return
    for parts in _compositions(j):
        for children in _child_sequences(parts, h - 1):
            yield tuple(children)


def _compositions(j: int) -> Iterator[tuple]:
    """Ordered compositions of j into positive parts (1 part allowed)."""
    if j == 0:
        yield ()
        return
    for first in range(1, j + 1):
        for rest in _compositions(j - first):
            yield (first,) + rest


def _child_sequences(parts: Sequence[int], h: int) -> Iterator[list]:
    if not parts:
        yield []
        return
    for head in _trees_with_leaves(parts[0], h):
        for tail in _child_sequences(parts[1:], h):
            yield [head] + tail


# ---------------------------------------------------------------------------
# Labelled ordered trees
# ---------------------------------------------------------------------------


def unlabel(lt: LabelledTree) -> OrderedTree:
    """Drop the labels, keeping the child order."""
    return tuple(unlabel(sub) for _label, sub in lt)


def tree_from_leaves(
    label_sequences: Iterable[Sequence], key: Optional[Callable] = None
) -> LabelledTree:
    """The labelled ordered tree generated by a set of label sequences
    (their prefix closure is the node set).  `key` supplies the linear
    order on labels when it is not the natural one."""
    root: dict = {}
    for seq in label_sequences:
        node = root
        for label in seq:
            node = node.setdefault(label, {})

    def build(node: dict) -> LabelledTree:
        labels = sorted(node.keys(), key=key) if key else sorted(node.keys())
        return tuple((label, build(node[label])) for label in labels)

    return build(root)


def labelled_leaves(lt: LabelledTree) -> Iterator[tuple]:
    """Leaf label sequences of a labelled tree, in sibling order."""
    if not lt:
        yield ()
        return
    for label, sub in lt:
        for rest in labelled_leaves(sub):
            yield (label,) + rest


def format_tree(t: OrderedTree, indent: str = "  ") -> str:
    """Indented one-node-per-line rendering of an ordered tree."""
    lines: list = []

    def walk(node: OrderedTree, depth: int):
        lines.append(indent * depth + ("*" if not node else f"({len(node)})"))
        for child in node:
            walk(child, depth + 1)

    walk(t, 0)
    return "\n".join(lines)


def small_tree_count(n: int, h: int) -> int:
    """Number of (n, h)-small ordered trees, by an independent counting
    recurrence (used to cross-check the enumerator)."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def exact(j: int, hh: int) -> int:
        if hh < 1:
            return 0
        if j == 1:
            return hh
        if hh == 1:
            return 0
        total = 0
        for parts in _compositions(j):
            prod = 1
            for p in parts:
                prod *= exact(p, hh - 1)
                if prod == 0:
                    break
            total += prod
        return total

    return sum(exact(j, h) for j in range(1, n + 1))


def log2_floor(n: int) -> int:
    if n < 1:
        raise ValueError("need a positive integer")
    return n.bit_length() - 1


def strahler_leaf_bound(t: OrderedTree) -> bool:
    """Strah(T) <= floor(lg leaves) + 1 (and <= height), the smallness
    bound every tree satisfies."""
    h, l = metrics(t)
    s = strahler(t)
    return s <= h and s <= log2_floor(l) + 1
