"""Progress-measure lifting over an abstract leaf-navigable tree.

A progress measure maps each vertex to a leaf of an ordered tree (read
as the tuple <m_{d-1}, m_{d-3}, ..., m_1>, one component per odd
priority) or to the top element.  An edge (v, u) is progressive when
the components for priorities >= pi(v) of mu(v) weakly dominate those
of mu(u) (strictly, when pi(v) is odd).  Lifting repairs the least
non-progressive vertex value upward; the fixpoint's non-top vertices
are the largest dominion of Even carrying a progress measure whose tree
embeds into the navigator's tree, and a winning strategy falls out by
picking any progressive edge per Even vertex.

Two navigator implementations back the same solver: the succinct
bit-string navigator (no materialization, scales with the game) and an
enumerated navigator over an explicit sorted leaf list (the oracle the
succinct one is validated against).

The driver `strahler_solve` runs Even lifting on the succinct universal
tree with Strahler budget k+1 (and the owner-swapped, priority-shifted
dual for Odd), increasing k from 1 until the two dominions partition
the vertices; the k at which each side's dominion reached its final
value is reported as a bracket of the game's structural complexity.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .core import ParityGame, Player, PositionalStrategy, dualize
from .errors import KMaxExceeded, NotFullyWon
from .trees import LabelledTree, labelled_leaves, log2_floor
from .universal import (
    SuccinctLeaf,
    TreeParams,
    bit_string_key,
    enumerate_B_leaves,
    format_leaf,
    level_p_successor,
    min_leaf,
    min_leaf_with_prefix,
)


class _Top:
    """The element above every leaf (vertices outside the dominion)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "TOP"


TOP = _Top()


class TreeNavigator:
    """Leaf navigation contract the lifting loop runs against.

    Leaves are opaque hashable values; `key` maps a leaf to a tuple of
    per-component orderables whose lexicographic order is the leaf
    order, with component 0 the topmost.  `height` is the tree height
    h; leaves have h-1 components, and level L in [1, h-1] addresses
    the component prefix above and including level L.  `int_key` is an
    order-preserving injection into the integers so the lifting loop
    can compare measure values at machine speed.
    """

    height: int

    def min_leaf(self):
        raise NotImplementedError

    def level_successor(self, leaf, level: int):
        """Least leaf strictly greater on the prefix at levels >= level,
        or None if none exists."""
        raise NotImplementedError

    def min_leaf_with_prefix(self, leaf, level: int):
        """Least leaf equal to `leaf` on the prefix at levels >= level."""
        raise NotImplementedError

    def key(self, leaf) -> tuple:
        raise NotImplementedError

    def int_key(self, leaf) -> int:
        raise NotImplementedError

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return -1 if ka < kb else (0 if ka == kb else 1)

    def prefix_key(self, leaf, level: int) -> tuple:
        return self.key(leaf)[: self.height - level]

    def format(self, leaf) -> str:
        raise NotImplementedError


class SuccinctNavigator(TreeNavigator):
    """Navigation on succinct B(t, h, k) leaves; never materializes."""

    def __init__(self, params: TreeParams):
        self.params = params
        self.height = params.h
        self._component_keys: Dict[str, int] = {}
        self._min = min_leaf(params)
        # positional packing: component keys lie in (-2^scale, 2^scale),
        # so scale+1 bits per component preserve lexicographic order
        self._offset = 1 << params.max_bits
        self._width = params.max_bits + 1

    def min_leaf(self) -> SuccinctLeaf:
        return self._min

    def level_successor(self, leaf: SuccinctLeaf, level: int):
        return level_p_successor(self.params, leaf, level, validate=False)

    def min_leaf_with_prefix(self, leaf: SuccinctLeaf, level: int) -> SuccinctLeaf:
        return min_leaf_with_prefix(self.params, leaf, level)

    def _component_key(self, c: str) -> int:
        k = self._component_keys.get(c)
        if k is None:
            k = bit_string_key(c, self.params.max_bits)
            self._component_keys[c] = k
        return k

    def key(self, leaf: SuccinctLeaf) -> tuple:
        return tuple(self._component_key(c) for c in leaf.components)

    def int_key(self, leaf: SuccinctLeaf) -> int:
        acc = 0
        off = self._offset
        width = self._width
        for c in leaf.components:
            acc = (acc << width) | (self._component_key(c) + off)
        return acc

    def format(self, leaf: SuccinctLeaf) -> str:
        return format_leaf(leaf)


class EnumeratedNavigator(TreeNavigator):
    """Navigation over an explicit sorted leaf list.

    The successor of a prefix is found on the sorted list, so this is
    the naive reference the succinct navigator is checked against, and
    the way to run lifting on arbitrary (uniform-depth) labelled trees.
    """

    def __init__(self, leaves_in_order: Sequence, height: int, key_fn: Callable):
        self._leaves = list(leaves_in_order)
        if not self._leaves:
            raise ValueError("a tree has at least one leaf")
        self.height = height
        self._key_fn = key_fn
        self._keys = [tuple(key_fn(leaf)) for leaf in self._leaves]
        if sorted(self._keys) != self._keys:
            raise ValueError("leaves must be supplied in lexicographic order")
        depths = {len(k) for k in self._keys}
        if depths != {height - 1}:
            raise ValueError("all leaves must sit at depth height-1")

    @classmethod
    def for_params(cls, params: TreeParams) -> "EnumeratedNavigator":
        scale = params.max_bits
        return cls(
            list(enumerate_B_leaves(params)),
            params.h,
            lambda leaf: leaf.key(scale),
        )

    @classmethod
    def from_labelled_tree(cls, tree: LabelledTree, height: int) -> "EnumeratedNavigator":
        return cls([tuple(seq) for seq in labelled_leaves(tree)], height, tuple)

    def min_leaf(self):
        return self._leaves[0]

    def level_successor(self, leaf, level: int):
        cut = self.height - level
        if cut <= 0:
            return None
        prefix = tuple(self._key_fn(leaf))[:cut]
        i = bisect_right(self._keys, prefix, key=lambda k: k[:cut])
        return self._leaves[i] if i < len(self._leaves) else None

    def min_leaf_with_prefix(self, leaf, level: int):
        cut = self.height - level
        if cut <= 0:
            return self._leaves[0]
        prefix = tuple(self._key_fn(leaf))[:cut]
        i = bisect_left(self._keys, prefix, key=lambda k: k[:cut])
        return self._leaves[i]

    def key(self, leaf) -> tuple:
        return tuple(self._key_fn(leaf))

    def int_key(self, leaf) -> int:
        return bisect_left(self._keys, tuple(self._key_fn(leaf)))

    def format(self, leaf) -> str:
        if isinstance(leaf, SuccinctLeaf):
            return format_leaf(leaf)
        return ",".join(str(c) if c != "" else "-" for c in leaf)


@dataclass(frozen=True)
class ProgressMeasure:
    """Vertex labelling by tree leaves (or TOP), tied to its navigator."""

    navigator: TreeNavigator
    assignment: Mapping

    def value(self, v: int):
        return self.assignment[v]

    def dump(self) -> str:
        """One `vertex: leaf` line per vertex, epsilon rendered as '-'."""
        lines = []
        for v in sorted(self.assignment):
            val = self.assignment[v]
            text = "TOP" if val is TOP else self.navigator.format(val)
            lines.append(f"{v}: {text}")
        return "\n".join(lines)


@dataclass
class LiftStats:
    lifts: int = 0
    rounds: int = 0


class StrahlerSolution(NamedTuple):
    w_even: frozenset
    sigma_even: PositionalStrategy
    w_odd: frozenset
    sigma_odd: PositionalStrategy
    k_used_even: int
    k_used_odd: int


def _truncation_level(priority: int) -> int:
    # components live at levels (p+1)/2 for odd p; an even p keeps the
    # components strictly above it
    return priority // 2 + 1


def truncation_compare(a, b, priority: int, navigator: TreeNavigator) -> int:
    """Compare two leaf-or-TOP values on the components for priorities
    >= `priority`.  TOP is above everything and equal to itself."""
    if priority < 0 or priority > 2 * (navigator.height - 1):
        raise ValueError("priority outside the navigator's range")
    if a is TOP or b is TOP:
        if a is TOP and b is TOP:
            return 0
        return 1 if a is TOP else -1
    level = _truncation_level(priority)
    ka = navigator.prefix_key(a, level)
    kb = navigator.prefix_key(b, level)
    return -1 if ka < kb else (0 if ka == kb else 1)


def is_progressive(
    game: ParityGame, mu: ProgressMeasure, edge: Tuple[int, int]
) -> bool:
    """Whether the edge satisfies the local progress condition."""
    v, u = edge
    if not game.has_edge(v, u):
        raise ValueError(f"edge {edge} is not in the game")
    a = mu.value(v)
    if a is TOP:
        return True
    c = truncation_compare(a, mu.value(u), game.priority[v], mu.navigator)
    return c > 0 if game.priority[v] % 2 else c >= 0


def lift(game: ParityGame, navigator: TreeNavigator, mu: ProgressMeasure, v: int):
    """Least value >= mu(v) making v locally progressive (TOP if none)."""
    current = mu.value(v)
    if current is TOP:
        return TOP
    cand = _lift_candidate(game, navigator, mu.value, v)
    if cand is TOP:
        return TOP
    return cand if navigator.key(cand) > navigator.key(current) else current


def _lift_candidate(game: ParityGame, nav: TreeNavigator, value_of, v: int):
    """Owner-aggregated per-edge requirement for v (ignoring mu(v))."""
    p = game.priority[v]
    level = _truncation_level(p)
    even_priority = p % 2 == 0
    empty_prefix = level >= nav.height
    is_even_owner = game.owner[v] == Player.EVEN
    best = None
    best_key = None
    for u in game.succ[v]:
        mu_u = value_of(u)
        if mu_u is TOP:
            cand = TOP
        elif even_priority:
            cand = nav.min_leaf() if empty_prefix else nav.min_leaf_with_prefix(mu_u, level)
        else:
            cand = nav.level_successor(mu_u, level)
            if cand is None:
                cand = TOP
        if is_even_owner:
            if cand is TOP:
                continue
            ck = nav.key(cand)
            if best is None or best is TOP or ck < best_key:
                best, best_key = cand, ck
        else:
            if cand is TOP:
                return TOP
            ck = nav.key(cand)
            if best is None or ck > best_key:
                best, best_key = cand, ck
    if best is None:
        # Even-owned with every edge requiring TOP
        return TOP
    return best


_TOP_INT = float("inf")  # compares above every integer leaf key


class _OpCache:
    """Memoized navigator operations in integer key space.

    Measure values are the navigator's order-preserving integer keys
    (TOP is +infinity); the structural leaf object is only touched on
    cache misses, which keeps the per-edge work in the lifting loop at
    a dictionary lookup and an integer comparison.
    """

    def __init__(self, nav: TreeNavigator):
        self.nav = nav
        minleaf = nav.min_leaf()
        self.min_key = nav.int_key(minleaf)
        self.leaf_by_key = {self.min_key: minleaf}
        self.succ_cache: Dict[tuple, float] = {}
        self.fill_cache: Dict[tuple, int] = {}

    def register(self, leaf) -> int:
        k = self.nav.int_key(leaf)
        self.leaf_by_key.setdefault(k, leaf)
        return k

    def successor_key(self, ukey: int, level: int):
        nxt = self.nav.level_successor(self.leaf_by_key[ukey], level)
        result = _TOP_INT if nxt is None else self.register(nxt)
        self.succ_cache[(ukey, level)] = result
        return result

    def fill_key(self, ukey: int, level: int) -> int:
        filled = self.nav.min_leaf_with_prefix(self.leaf_by_key[ukey], level)
        result = self.register(filled)
        self.fill_cache[(ukey, level)] = result
        return result


def lift_to_fixpoint(
    game: ParityGame,
    navigator: TreeNavigator,
    policy: str = "priority",
    stats: Optional[LiftStats] = None,
    initial_top: frozenset = frozenset(),
    kernel: Optional[bool] = None,
) -> ProgressMeasure:
    """Run lifting for Even from the all-minimum assignment to the
    least fixpoint.  `policy` picks the work-list order ("priority":
    highest vertex priority first; "fifo"/"lifo"); the fixpoint is
    order independent.

    `initial_top` may pre-assign TOP to vertices already known to lie
    outside every Even dominion (e.g. an Odd dominion found elsewhere).
    The least fixpoint is TOP there anyway, and iteration from any
    assignment between the bottom and the least fixpoint converges to
    the same least fixpoint, so the result is unchanged; the climb is
    just skipped.

    `kernel` selects the JIT-compiled engine (None = use it when
    available for the priority policy); both engines compute the same
    fixpoint and the tests cross-check them.
    """
    d = game.d
    if navigator.height != d // 2 + 1:
        raise ValueError(
            f"navigator height {navigator.height} does not fit priority ceiling {d}"
        )
    if kernel is None:
        kernel = policy == "priority" and isinstance(navigator, SuccinctNavigator)
    if kernel:
        if policy != "priority":
            raise ValueError("the kernel engine implements the priority policy only")
        from . import _fastlift

        if _fastlift.HAVE_KERNEL:
            values = _fastlift.fast_fixpoint(game, navigator, initial_top, stats)
            if values is not None:
                assignment = {
                    v: (TOP if leaf is None else leaf) for v, leaf in values.items()
                }
                return ProgressMeasure(navigator, assignment)
    n = game.n
    cache = _OpCache(navigator)
    min_key = cache.min_key
    mu: List[float] = [min_key] * n
    for v in initial_top:
        mu[v] = _TOP_INT

    priority = game.priority
    succ = game.succ
    pred = game.pred
    owner_even = [o == Player.EVEN for o in game.owner]
    h = navigator.height
    # per-vertex probe level; priority d has an empty truncation, which
    # every leaf satisfies, so those vertices never move off the minimum
    level_of = [priority[v] // 2 + 1 for v in range(n)]
    prio_even = [priority[v] % 2 == 0 for v in range(n)]
    succ_cache = cache.succ_cache
    fill_cache = cache.fill_cache
    cache_fill = cache.fill_key
    cache_succ = cache.successor_key

    queued = [False] * n
    if policy == "priority":
        buckets: List[List[int]] = [[] for _ in range(d + 1)]
        high = d

        def push(v: int):
            nonlocal high
            p = priority[v]
            buckets[p].append(v)
            if p > high:
                high = p

        def pop() -> Optional[int]:
            nonlocal high
            while high >= 0:
                bucket = buckets[high]
                if bucket:
                    return bucket.pop()
                high -= 1
            return None

    elif policy == "fifo":
        fifo: deque = deque()

        def push(v: int):
            fifo.append(v)

        def pop() -> Optional[int]:
            return fifo.popleft() if fifo else None

    elif policy == "lifo":
        stack: List[int] = []

        def push(v: int):
            stack.append(v)

        def pop() -> Optional[int]:
            return stack.pop() if stack else None

    else:
        raise ValueError(f"unknown work-list policy {policy!r}")

    for v in range(n):
        if mu[v] is not _TOP_INT:
            queued[v] = True
            push(v)

    lifts = 0
    top = _TOP_INT
    while True:
        v = pop()
        if v is None:
            break
        queued[v] = False
        current = mu[v]
        if current is top:
            continue
        lifts += 1
        level = level_of[v]
        if level >= h:
            # empty truncation: an edge is progressive iff its head is
            # not TOP, and then the minimum suffices
            if owner_even[v]:
                best = min_key if any(mu[u] is not top for u in succ[v]) else top
            else:
                best = top if any(mu[u] is top for u in succ[v]) else min_key
        else:
            if prio_even[v]:
                table = fill_cache
                miss = cache_fill
            else:
                table = succ_cache
                miss = cache_succ
            if owner_even[v]:
                best = top
                for u in succ[v]:
                    uk = mu[u]
                    if uk is top:
                        continue
                    ck = table.get((uk, level))
                    if ck is None:
                        ck = miss(uk, level)
                    if ck < best:
                        best = ck
            else:
                best = min_key
                for u in succ[v]:
                    uk = mu[u]
                    if uk is top:
                        best = top
                        break
                    ck = table.get((uk, level))
                    if ck is None:
                        ck = miss(uk, level)
                    if ck > best:
                        best = ck
        if best <= current:
            continue
        mu[v] = best
        for w in pred[v]:
            if not queued[w] and mu[w] is not top:
                queued[w] = True
                push(w)
    if stats is not None:
        stats.lifts += lifts
    assignment = {
        v: (TOP if mu[v] is top else cache.leaf_by_key[mu[v]]) for v in range(n)
    }
    return ProgressMeasure(navigator, assignment)


def _extract(game: ParityGame, nav: TreeNavigator, mu: ProgressMeasure):
    dominion = frozenset(v for v in game.vertices if mu.value(v) is not TOP)
    choices: Dict[int, int] = {}
    for v in dominion:
        if game.owner[v] != Player.EVEN:
            continue
        for u in game.succ[v]:
            if mu.value(u) is TOP:
                continue
            if is_progressive(game, mu, (v, u)):
                choices[v] = u
                break
        assert v in choices, "fixpoint vertex without a progressive edge"
    return dominion, choices


def solve_with_tree(
    game: ParityGame,
    navigator: TreeNavigator,
    player: Player,
    policy: str = "priority",
    stats: Optional[LiftStats] = None,
) -> Tuple[frozenset, PositionalStrategy]:
    """Largest dominion of `player` carrying a progress measure whose
    tree embeds into the navigator's tree, with a witness strategy.
    For Player.ODD the dual game is lifted; the navigator must fit the
    dual's priority ceiling then."""
    g = game if player == Player.EVEN else dualize(game)
    mu = lift_to_fixpoint(g, navigator, policy=policy, stats=stats)
    dominion, choices = _extract(g, navigator, mu)
    return dominion, PositionalStrategy(player, choices)


def _side_params(n: int, d: int, k: int) -> TreeParams:
    h = d // 2 + 1
    return TreeParams(log2_floor(n), h, min(k + 1, h))


def strahler_solve(
    game: ParityGame,
    k_max: Optional[int] = None,
    policy: str = "priority",
    stats: Optional[LiftStats] = None,
) -> StrahlerSolution:
    """Solve by lifting both sides on succinct universal trees with
    Strahler budget k+1, for k = 1, 2, ... until the dominions
    partition the vertices (guaranteed by k = floor(lg n) + 1).

    Raises KMaxExceeded when an explicit `k_max` is hit first.
    k_used_even / k_used_odd report the first k at which each side's
    dominion reached its final value.
    """
    n = game.n
    cap = log2_floor(n) + 1
    limit = cap if k_max is None else k_max
    dual = dualize(game)
    d_even, d_odd = game.d, dual.d
    dom_even: Optional[frozenset] = None
    dom_odd: Optional[frozenset] = None
    sig_even: Dict[int, int] = {}
    sig_odd: Dict[int, int] = {}
    k_used_even = k_used_odd = 1
    prev_ke = prev_ko = None
    for k in range(1, limit + 1):
        pe = _side_params(n, d_even, k)
        if pe.k != prev_ke:
            prev_ke = pe.k
            nav = SuccinctNavigator(pe)
            # a dominion of one side is disjoint from every dominion of
            # the other, so it can seed the other side's TOP region
            mu = lift_to_fixpoint(
                game, nav, policy=policy, stats=stats,
                initial_top=dom_odd or frozenset(),
            )
            de, se = _extract(game, nav, mu)
            if de != dom_even:
                dom_even, sig_even, k_used_even = de, se, k
        po = _side_params(n, d_odd, k)
        if po.k != prev_ko:
            prev_ko = po.k
            nav = SuccinctNavigator(po)
            mu = lift_to_fixpoint(
                dual, nav, policy=policy, stats=stats,
                initial_top=dom_even or frozenset(),
            )
            do, so = _extract(dual, nav, mu)
            if do != dom_odd:
                dom_odd, sig_odd, k_used_odd = do, so, k
        if stats is not None:
            stats.rounds += 1
        if len(dom_even) + len(dom_odd) == n:
            return StrahlerSolution(
                dom_even,
                PositionalStrategy(Player.EVEN, sig_even),
                dom_odd,
                PositionalStrategy(Player.ODD, sig_odd),
                k_used_even,
                k_used_odd,
            )
    if k_max is not None:
        raise KMaxExceeded(f"partition incomplete at k_max = {k_max}")
    raise AssertionError("partition incomplete at the universal budget")


def pm_strahler_estimate(game: ParityGame) -> int:
    """Least k for which Even lifting on the k-Strahler universal tree
    yields every vertex: the algorithmic progress-measure complexity of
    a fully Even-won game."""
    n = game.n
    full = frozenset(game.vertices)
    h = game.d // 2 + 1
    k_top = min(log2_floor(n) + 1, h)
    t = log2_floor(n)
    top_nav = SuccinctNavigator(TreeParams(t, h, k_top))
    dominion, _ = solve_with_tree(game, top_nav, Player.EVEN)
    if dominion != full:
        raise NotFullyWon("Even does not win from every vertex")
    for k in range(1, k_top + 1):
        nav = SuccinctNavigator(TreeParams(t, h, k))
        dominion, _ = solve_with_tree(game, nav, Player.EVEN)
        if dominion == full:
            return k
    raise AssertionError("estimate exceeded the universal budget")
