"""Strahler-universal ordered trees and their succinct bit-string labelling.

Two views of the same family of trees live here:

* an explicit mutual recursion building ordered trees U(t, h, k) and
  V(t, h, k), where t is the log of the leaf budget, h the height and k
  the Strahler budget; U(floor(lg n), h, k) embeds every ordered tree
  with at most n leaves, height at most h and Strahler number at most k;

* a succinct leaf naming for the same trees: a leaf of height-h B(t, h, k)
  is a tuple of h-1 bit strings <b_{h-1}, ..., b_1> subject to four
  counting conditions (exactly k-1 non-empty strings, at most (k-1)+t
  bits overall, forced "0" components once the non-leading-bit budget is
  spent while the quota is open, and 0-leading strings in a fully
  non-empty tail).

Bit strings are ordered by: 0x < empty < 1x, with a shared leading bit
removed recursively.  Leaves compare component-wise, top component
first.  The point of the succinct view is navigation: the level-p
successor (least leaf whose component prefix down to a given level is
strictly larger) is computed directly on the bit strings, without ever
materializing the tree, which is what makes lifting run on games far
larger than the trees could be built for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import BudgetExceeded, InvalidParams, NotALeaf
from .trees import LabelledTree, OrderedTree, chain, tree_from_leaves

DEFAULT_LEAF_CAP = 10**7


@dataclass(frozen=True)
class TreeParams:
    """Parameters (t, h, k) of one universal tree; needs h >= k >= 1, t >= 0."""

    t: int
    h: int
    k: int

    def __post_init__(self):
        if self.t < 0 or self.k < 1 or self.h < self.k:
            raise InvalidParams(f"need t >= 0 and h >= k >= 1, got {self}")

    @property
    def max_bits(self) -> int:
        """Total bit budget of a leaf: k-1 leading plus t non-leading."""
        return (self.k - 1) + self.t


# ---------------------------------------------------------------------------
# Bit strings: "0" and "1" characters, empty string for epsilon
# ---------------------------------------------------------------------------


def lex_compare(a: str, b: str) -> int:
    """Total order on bit strings: 0x < empty < 1x, recursing under a
    shared leading bit.  Returns -1, 0 or 1."""
    i = 0
    limit = min(len(a), len(b))
    while i < limit and a[i] == b[i]:
        i += 1
    arest, brest = a[i:], b[i:]
    if not arest and not brest:
        return 0
    if not arest:
        return 1 if brest[0] == "0" else -1
    if not brest:
        return -1 if arest[0] == "0" else 1
    return -1 if arest[0] < brest[0] else 1


def bit_string_key(s: str, scale: int) -> int:
    """Order-preserving integer for a bit string: bit i contributes
    +/- 2^(scale - i).  Requires len(s) <= scale."""
    acc = 0
    for i, c in enumerate(s, start=1):
        acc += (1 << (scale - i)) if c == "1" else -(1 << (scale - i))
    return acc


def _non_leading(s: str) -> int:
    return len(s) - 1 if s else 0


# ---------------------------------------------------------------------------
# Succinct leaves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuccinctLeaf:
    """A leaf of B(t, h, k), named by its h-1 component bit strings.

    components[0] is the topmost component b_{h-1}; components[-1] is
    b_1.  The empty string stands for epsilon.
    """

    components: Tuple[str, ...]

    def __str__(self) -> str:
        return format_leaf(self)

    @property
    def nonempty_count(self) -> int:
        return sum(1 for c in self.components if c)

    @property
    def bit_count(self) -> int:
        return sum(len(c) for c in self.components)

    @property
    def non_leading_bits(self) -> int:
        return sum(_non_leading(c) for c in self.components)

    def component_at_level(self, level: int, h: int) -> str:
        """Component b_level, with levels numbered h-1 (top) down to 1."""
        return self.components[h - 1 - level]

    def sparse_entries(self) -> Tuple[Tuple[int, int], ...]:
        """(component position, bit) pairs, one per bit, top component
        first.  Positions are levels in [1, h-1]; at most k-1+t entries."""
        h_minus_1 = len(self.components)
        entries = []
        for idx, comp in enumerate(self.components):
            level = h_minus_1 - idx
            for c in comp:
                entries.append((level, int(c)))
        return tuple(entries)

    def key(self, scale: int) -> Tuple[int, ...]:
        return tuple(bit_string_key(c, scale) for c in self.components)


def leaf_compare(a: SuccinctLeaf, b: SuccinctLeaf) -> int:
    """Lexicographic comparison, top component first."""
    for ca, cb in zip(a.components, b.components):
        c = lex_compare(ca, cb)
        if c:
            return c
    return 0


def format_leaf(leaf: SuccinctLeaf) -> str:
    """Comma-separated components with epsilon rendered as '-'."""
    return ",".join(c if c else "-" for c in leaf.components)


def parse_leaf(text: str) -> SuccinctLeaf:
    comps = tuple("" if c == "-" else c for c in text.split(","))
    return SuccinctLeaf(comps)


# ---------------------------------------------------------------------------
# Explicit construction of U and V
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _build_u(t: int, h: int, k: int) -> OrderedTree:
    if k == 1 or t == 0:
        if k == 1:
            return chain(h)
        # t = 0, h >= k >= 2: single branch through a (k-1)-budget child
        return (_build_u(0, h - 1, k - 1),)
    if h == k:
        return _build_v(t, h, k)
    return _build_v(t, h, k) + (_build_u(t, h - 1, k),) + _build_v(t, h, k)


@lru_cache(maxsize=None)
def _build_v(t: int, h: int, k: int) -> OrderedTree:
    if t == 0:
        return (_build_u(0, h - 1, k - 1),)
    return _build_v(t - 1, h, k) + (_build_u(t, h - 1, k - 1),) + _build_v(t - 1, h, k)


def build_U(params: TreeParams, leaf_cap: int = DEFAULT_LEAF_CAP) -> OrderedTree:
    """Materialize U(t, h, k).  Guarded by the closed-form leaf bound."""
    if leaf_bound(params) > leaf_cap:
        raise BudgetExceeded(
            f"U{params} bounded by {leaf_bound(params)} leaves > cap {leaf_cap}"
        )
    return _build_u(params.t, params.h, params.k)


def build_V(params: TreeParams, leaf_cap: int = DEFAULT_LEAF_CAP) -> OrderedTree:
    """Materialize V(t, h, k); defined for k >= 2."""
    if params.k < 2:
        raise InvalidParams("V trees need k >= 2")
    if leaf_bound(params) > leaf_cap:
        raise BudgetExceeded(
            f"V{params} bounded by {leaf_bound(params)} leaves > cap {leaf_cap}"
        )
    return _build_v(params.t, params.h, params.k)


def leaf_bound(params: TreeParams):
    """Closed-form upper bound on the number of leaves of U(t, h, k):
    1 when k = 1, else 2^(t+k) * C(t+k-2, k-2) * C(h-1, k-1).  Exact
    unbounded arithmetic."""
    t, h, k = params.t, params.h, params.k
    if k == 1:
        return 1
    return (2 ** (t + k)) * math.comb(t + k - 2, k - 2) * math.comb(h - 1, k - 1)


@lru_cache(maxsize=None)
def _count_u(t: int, h: int, k: int) -> int:
    if k == 1 or t == 0:
        return 1
    if h == k:
        return _count_v(t, h, k)
    return 2 * _count_v(t, h, k) + _count_u(t, h - 1, k)


@lru_cache(maxsize=None)
def _count_v(t: int, h: int, k: int) -> int:
    if t == 0:
        return 1
    return 2 * _count_v(t - 1, h, k) + _count_u(t, h - 1, k - 1)


def leaf_count(params: TreeParams) -> int:
    """Exact number of leaves of U(t, h, k), via the recurrence (no
    materialization)."""
    return _count_u(params.t, params.h, params.k)


# ---------------------------------------------------------------------------
# The B view: leaves defined by counting conditions
# ---------------------------------------------------------------------------


def is_B_leaf(params: TreeParams, leaf: SuccinctLeaf) -> bool:
    """The four defining conditions of a B(t, h, k) leaf."""
    t, h, k = params.t, params.h, params.k
    comps = leaf.components
    if len(comps) != h - 1:
        return False
    if any(c.strip("01") for c in comps):
        return False
    if leaf.nonempty_count != k - 1:
        return False
    if leaf.bit_count > params.max_bits:
        return False
    # condition 3: once t non-leading bits are used above a component
    # while fewer than k-1 non-empty strings appeared, it must be "0"
    ne = 0
    nl = 0
    for comp in comps:
        if ne < k - 1 and nl == t and comp != "0":
            return False
        ne += 1 if comp else 0
        nl += _non_leading(comp)
    # condition 4: a fully non-empty tail must consist of 0-leading strings
    for comp in reversed(comps):
        if not comp:
            break
        if comp[0] != "0":
            return False
    return True


def enumerate_B_leaves(params: TreeParams) -> Iterator[SuccinctLeaf]:
    """All B(t, h, k) leaves, generated from the defining conditions
    (not from the U/V recurrence), in lexicographic order."""
    t, h, k = params.t, params.h, params.k
    slots = h - 1

    def candidates(ne: int, nl: int, remaining: int) -> Iterator[str]:
        need = (k - 1) - ne
        if need > remaining:
            return
        if ne < k - 1 and nl == t:
            # condition 3 forces this component
            yield "0"
            return
        spare = t - nl
        # non-empty strings first only for clarity; order fixed by sort later
        if need < remaining:
            yield ""
        if need == 0:
            return
        # reserve a leading bit for each other still-needed component
        for length in range(1, 2 + spare):
            for value in range(1 << length):
                yield format(value, f"0{length}b")

    out: List[SuccinctLeaf] = []

    def walk(idx: int, acc: List[str], ne: int, nl: int):
        if idx == slots:
            leaf = SuccinctLeaf(tuple(acc))
            if is_B_leaf(params, leaf):
                out.append(leaf)
            return
        for comp in candidates(ne, nl, slots - idx):
            if nl + _non_leading(comp) > t:
                continue
            acc.append(comp)
            walk(idx + 1, acc, ne + (1 if comp else 0), nl + _non_leading(comp))
            acc.pop()

    walk(0, [], 0, 0)
    scale = params.max_bits
    out.sort(key=lambda leaf: leaf.key(scale))
    yield from out


def build_labelled_B(
    params: TreeParams, leaf_cap: int = DEFAULT_LEAF_CAP
) -> LabelledTree:
    """The bit-string-labelled tree whose leaves are exactly the tuples
    satisfying the B conditions, children ordered by `lex_compare`.
    Materializes, so only suitable for small parameters."""
    if leaf_bound(params) > leaf_cap:
        raise BudgetExceeded(
            f"B{params} bounded by {leaf_bound(params)} leaves > cap {leaf_cap}"
        )
    sort_key = _key_fn(params.max_bits)
    return tree_from_leaves(
        (leaf.components for leaf in enumerate_B_leaves(params)), key=sort_key
    )


def _key_fn(scale: int):
    def key(s: str) -> int:
        return bit_string_key(s, scale)

    return key


# ---------------------------------------------------------------------------
# Navigation on the succinct representation
# ---------------------------------------------------------------------------


def _fill_min(
    params: TreeParams, prefix: Tuple[str, ...], ne: int, nl: int
) -> Optional[SuccinctLeaf]:
    """Least leaf below the node with the given component prefix, or
    None when the node cannot be completed.  ne/nl are the non-empty
    and non-leading counts of the prefix."""
    t, h, k = params.t, params.h, params.k
    slots = (h - 1) - len(prefix)
    need = (k - 1) - ne
    if need < 0 or need > slots:
        return None
    spare = t - nl
    if spare < 0:
        return None
    if need == 0:
        fill: Tuple[str, ...] = ("",) * slots
    else:
        fill = ("0" * (1 + spare),) + ("0",) * (need - 1) + ("",) * (slots - need)
    return SuccinctLeaf(prefix + fill)


def min_leaf(params: TreeParams) -> SuccinctLeaf:
    """Lexicographically least leaf of B(t, h, k)."""
    leaf = _fill_min(params, (), 0, 0)
    assert leaf is not None
    return leaf


def min_leaf_with_prefix(params: TreeParams, leaf: SuccinctLeaf, level: int) -> SuccinctLeaf:
    """Least leaf sharing `leaf`'s components at levels >= `level`."""
    h = params.h
    if not 1 <= level <= h:
        raise ValueError(f"level must be in [1, {h}]")
    prefix = leaf.components[: h - level]
    ne = sum(1 for c in prefix if c)
    nl = sum(_non_leading(c) for c in prefix)
    filled = _fill_min(params, prefix, ne, nl)
    if filled is None:
        raise NotALeaf(f"{format_leaf(leaf)} is not a node prefix of B{params}")
    return filled


def level_p_successor(
    params: TreeParams, leaf: SuccinctLeaf, level: int, validate: bool = True
) -> Optional[SuccinctLeaf]:
    """Least leaf whose components at levels >= `level` are strictly
    larger than `leaf`'s, or None when no such leaf exists.

    Walks up from `level` looking for the lowest ancestor with a next
    sibling.  A node has no next sibling when its parent's subtree has
    exhausted the non-empty-string quota or the non-leading-bit budget,
    or the node is the largest child shape ("01..1" with a fully
    non-empty tail below, or "1..1") for the remaining budget.
    Otherwise the next sibling label either appends "1 0^j" (when
    non-leading budget remains, j chosen to spend all of it) or strips a
    trailing "0 1^j" block.  The result is completed with the least
    descendant fill.  Work is proportional to the leaf size, never to
    the tree size.
    """
    t, h, k = params.t, params.h, params.k
    if validate and not is_B_leaf(params, leaf):
        raise NotALeaf(f"{format_leaf(leaf)} is not a leaf of B{params}")
    if not 1 <= level <= h:
        raise ValueError(f"level must be in [1, {h}]")
    comps = leaf.components
    # prefix counts above each level, updated as we walk up
    for r in range(level, h):
        idx = h - 1 - r  # position of component b_r
        prefix = comps[:idx]
        ne_prefix = sum(1 for c in prefix if c)
        nl_prefix = sum(_non_leading(c) for c in prefix)
        beta = comps[idx]
        nl_incl = nl_prefix + _non_leading(beta)
        # no-next-sibling cases
        if ne_prefix == k - 1:
            continue
        if nl_prefix == t:
            continue
        if (
            beta
            and beta[0] == "0"
            and set(beta[1:]) <= {"1"}
            and nl_incl == t
            and all(comps[i] for i in range(idx + 1, h - 1))
        ):
            continue
        if beta and set(beta) == {"1"} and nl_incl == t:
            continue
        # construct the next sibling label
        if nl_incl < t:
            pad = t - nl_prefix - (len(beta) if beta else 0)
            new_comp = beta + "1" + "0" * pad
        else:
            cut = beta.rfind("0")
            assert cut >= 0, "uncovered no-sibling case"
            new_comp = beta[:cut]
        new_prefix = prefix + (new_comp,)
        ne = ne_prefix + (1 if new_comp else 0)
        nl = nl_prefix + _non_leading(new_comp)
        filled = _fill_min(params, new_prefix, ne, nl)
        assert filled is not None, "sibling construction produced a dead node"
        return filled
    return None


def max_leaf(params: TreeParams) -> SuccinctLeaf:
    """Lexicographically greatest leaf, built by taking the largest
    child at every level (the mirror of the minimal descendant fill)."""
    t, h, k = params.t, params.h, params.k
    comps: List[str] = []
    ne = 0
    nl = 0
    for idx in range(h - 1):
        sub_h = h - idx
        sub_k = k - ne
        spare = t - nl
        if sub_k == 1:
            comp = ""
        elif spare == 0:
            comp = "0"
        elif sub_h == sub_k:
            comp = "0" + "1" * spare
        else:
            comp = "1" * (spare + 1)
        comps.append(comp)
        ne += 1 if comp else 0
        nl += _non_leading(comp)
    return SuccinctLeaf(tuple(comps))


def dump_leaves(params: TreeParams) -> str:
    """One leaf tuple per line, components comma-separated, epsilon as '-'."""
    return "\n".join(format_leaf(leaf) for leaf in enumerate_B_leaves(params))
