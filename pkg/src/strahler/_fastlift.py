"""Optional JIT-compiled lifting kernel.

The pure-Python loop in `lifting.lift_to_fixpoint` is the reference
engine; this module provides a drop-in accelerated path for the default
("priority") policy on succinct navigators.  Measure values are packed
into two 62-bit words; the per-(value, level) navigation results live
in an open-addressing hash table that the kernel only reads.  Whenever
the kernel needs a navigation result that is not cached yet, it parks
the vertex, batches the request, and returns to Python, which performs
the succinct navigation, inserts the results, re-queues the parked
vertices and re-enters the kernel.  The fixpoint is identical to the
reference engine's by construction (same lattice, same lift operator);
the test suite compares the two on corpora.

Requires numba; `HAVE_KERNEL` is False when it is unavailable and
callers fall back to the reference engine.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

try:
    import numpy as np
    from numba import njit

    HAVE_KERNEL = True
except Exception:  # pragma: no cover - exercised only without numba
    HAVE_KERNEL = False

_WORD_LIMIT = 62
_TOP_HI = 1 << _WORD_LIMIT
_EMPTY = -1


def kernel_fits(height: int, component_width: int) -> bool:
    """Whether h-1 components of the given bit width pack into two words."""
    if not HAVE_KERNEL:
        return False
    nc = height - 1
    if nc == 0:
        return True
    c_lo = nc // 2
    c_hi = nc - c_lo
    return c_hi * component_width <= _WORD_LIMIT and c_lo * component_width <= _WORD_LIMIT


_M64 = (1 << 64) - 1
_MIX1 = 0x9E3779B97F4A7C15
_MIX2 = 0xBF58476D1CE4E5B9
_MIX3 = 0x94D049BB133111EB


def _py_hash(hi: int, lo: int, code: int, mask: int) -> int:
    x = (hi ^ ((lo * _MIX1) & _M64) ^ ((code * _MIX3) & _M64)) & _M64
    x = ((x ^ (x >> 30)) * _MIX2) & _M64
    x = ((x ^ (x >> 27)) * _MIX3) & _M64
    x ^= x >> 31
    return int(x & mask)


if HAVE_KERNEL:

    @njit(cache=True)
    def _hash(hi, lo, code, mask):
        x = np.uint64(hi) ^ (np.uint64(lo) * np.uint64(_MIX1)) ^ (
            np.uint64(code) * np.uint64(_MIX3)
        )
        x = (x ^ (x >> np.uint64(30))) * np.uint64(_MIX2)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(_MIX3)
        x = x ^ (x >> np.uint64(31))
        return np.int64(x & np.uint64(mask))

    @njit(cache=True)
    def _run(
        succ_idx,
        succ_dat,
        pred_idx,
        pred_dat,
        owner_even,
        priority,
        level_of,
        code_of,
        mu_hi,
        mu_lo,
        queued,
        blocked,
        bucket_head,
        bucket_next,
        tbl_hi,
        tbl_lo,
        tbl_code,
        tbl_rhi,
        tbl_rlo,
        req_hi,
        req_lo,
        req_code,
        counters,
        h,
        top_hi,
        min_hi,
        min_lo,
    ):
        mask = len(tbl_code) - 1
        max_req = len(req_code)
        nreq = 0
        lifts = 0
        d = len(bucket_head) - 1
        high = d
        while True:
            v = -1
            while high >= 0:
                v = bucket_head[high]
                if v != -1:
                    bucket_head[high] = bucket_next[v]
                    break
                high -= 1
            if v == -1:
                break
            queued[v] = False
            cur_hi = mu_hi[v]
            if cur_hi == top_hi:
                continue
            cur_lo = mu_lo[v]
            lifts += 1
            lev = level_of[v]
            top_best = False
            best_hi = 0
            best_lo = 0
            if lev >= h:
                if owner_even[v]:
                    top_best = True
                    for e in range(succ_idx[v], succ_idx[v + 1]):
                        if mu_hi[succ_dat[e]] != top_hi:
                            top_best = False
                            best_hi = min_hi
                            best_lo = min_lo
                            break
                else:
                    best_hi = min_hi
                    best_lo = min_lo
                    for e in range(succ_idx[v], succ_idx[v + 1]):
                        if mu_hi[succ_dat[e]] == top_hi:
                            top_best = True
                            break
            else:
                code = code_of[v]
                missing = False
                if owner_even[v]:
                    top_best = True
                    for e in range(succ_idx[v], succ_idx[v + 1]):
                        u = succ_dat[e]
                        uh = mu_hi[u]
                        if uh == top_hi:
                            continue
                        ul = mu_lo[u]
                        slot = _hash(uh, ul, code, mask)
                        while True:
                            if tbl_code[slot] == _EMPTY:
                                missing = True
                                break
                            if (
                                tbl_code[slot] == code
                                and tbl_hi[slot] == uh
                                and tbl_lo[slot] == ul
                            ):
                                break
                            slot = (slot + 1) & mask
                        if missing:
                            if nreq < max_req:
                                req_hi[nreq] = uh
                                req_lo[nreq] = ul
                                req_code[nreq] = code
                                nreq += 1
                            break
                        rh = tbl_rhi[slot]
                        if rh == top_hi:
                            continue
                        rl = tbl_rlo[slot]
                        if top_best or rh < best_hi or (rh == best_hi and rl < best_lo):
                            top_best = False
                            best_hi = rh
                            best_lo = rl
                else:
                    for e in range(succ_idx[v], succ_idx[v + 1]):
                        u = succ_dat[e]
                        uh = mu_hi[u]
                        if uh == top_hi:
                            top_best = True
                            break
                        ul = mu_lo[u]
                        slot = _hash(uh, ul, code, mask)
                        while True:
                            if tbl_code[slot] == _EMPTY:
                                missing = True
                                break
                            if (
                                tbl_code[slot] == code
                                and tbl_hi[slot] == uh
                                and tbl_lo[slot] == ul
                            ):
                                break
                            slot = (slot + 1) & mask
                        if missing:
                            if nreq < max_req:
                                req_hi[nreq] = uh
                                req_lo[nreq] = ul
                                req_code[nreq] = code
                                nreq += 1
                            break
                        rh = tbl_rhi[slot]
                        if rh == top_hi:
                            top_best = True
                            break
                        rl = tbl_rlo[slot]
                        if rh > best_hi or (rh == best_hi and rl > best_lo):
                            best_hi = rh
                            best_lo = rl
                if missing:
                    blocked[v] = True
                    lifts -= 1
                    if nreq >= max_req:
                        break
                    continue
            if top_best:
                mu_hi[v] = top_hi
                mu_lo[v] = 0
            else:
                if best_hi < cur_hi or (best_hi == cur_hi and best_lo <= cur_lo):
                    continue
                mu_hi[v] = best_hi
                mu_lo[v] = best_lo
            for e in range(pred_idx[v], pred_idx[v + 1]):
                w = pred_dat[e]
                if not queued[w] and not blocked[w] and mu_hi[w] != top_hi:
                    queued[w] = True
                    p = priority[w]
                    bucket_next[w] = bucket_head[p]
                    bucket_head[p] = w
                    if p > high:
                        high = p
        counters[0] += lifts
        return nreq


class _Table:
    """Open-addressing table owned by Python, read by the kernel."""

    def __init__(self, capacity: int = 1 << 14):
        self.capacity = capacity
        self.count = 0
        self._alloc()

    def _alloc(self):
        c = self.capacity
        self.hi = np.zeros(c, dtype=np.int64)
        self.lo = np.zeros(c, dtype=np.int64)
        self.code = np.full(c, _EMPTY, dtype=np.int64)
        self.rhi = np.zeros(c, dtype=np.int64)
        self.rlo = np.zeros(c, dtype=np.int64)

    def _slot(self, hi: int, lo: int, code: int) -> int:
        mask = self.capacity - 1
        codes = self.code
        slot = _py_hash(hi, lo, code, mask)
        while codes[slot] != _EMPTY and not (
            codes[slot] == code and self.hi[slot] == hi and self.lo[slot] == lo
        ):
            slot = (slot + 1) & mask
        return slot

    def insert(self, hi: int, lo: int, code: int, rhi: int, rlo: int):
        if (self.count + 1) * 3 > self.capacity * 2:
            hs = self.hi.tolist()
            ls = self.lo.tolist()
            cs = self.code.tolist()
            rhs = self.rhi.tolist()
            rls = self.rlo.tolist()
            self.capacity *= 2
            self.count = 0
            self._alloc()
            for h, l, c, rh, rl in zip(hs, ls, cs, rhs, rls):
                if c != _EMPTY:
                    self.insert(h, l, c, rh, rl)
        slot = self._slot(hi, lo, code)
        if self.code[slot] == _EMPTY:
            self.count += 1
        self.hi[slot] = hi
        self.lo[slot] = lo
        self.code[slot] = code
        self.rhi[slot] = rhi
        self.rlo[slot] = rlo


def fast_fixpoint(game, navigator, initial_top, stats):
    """Kernel-backed equivalent of the reference fixpoint (priority
    policy).  Returns the measure as a vertex -> leaf-or-None dict,
    None marking TOP."""
    nc = navigator.height - 1
    width = getattr(navigator, "_width", None)
    if width is None or not kernel_fits(navigator.height, width):
        return None
    c_lo = nc // 2
    lo_bits = c_lo * width
    lo_mask = (1 << lo_bits) - 1

    def split(packed: int) -> Tuple[int, int]:
        return packed >> lo_bits, packed & lo_mask

    n = game.n
    d = game.d
    h = navigator.height
    succ_idx = np.zeros(n + 1, dtype=np.int64)
    pred_idx = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        succ_idx[v + 1] = succ_idx[v] + len(game.succ[v])
        pred_idx[v + 1] = pred_idx[v] + len(game.pred[v])
    succ_dat = np.fromiter(
        (u for v in range(n) for u in game.succ[v]), dtype=np.int64, count=succ_idx[n]
    )
    pred_dat = np.fromiter(
        (u for v in range(n) for u in game.pred[v]), dtype=np.int64, count=pred_idx[n]
    )
    owner_even = np.fromiter(
        (int(o) == 0 for o in game.owner), dtype=np.bool_, count=n
    )
    priority = np.fromiter(game.priority, dtype=np.int64, count=n)
    level_of = priority // 2 + 1
    # one shared table holds both caches: even priorities store the
    # prefix-fill result, odd ones the level successor; the code keeps
    # them apart
    code_of = level_of * 2 + (priority % 2 == 0)

    min_packed = navigator.int_key(navigator.min_leaf())
    min_hi, min_lo = split(min_packed)
    leaf_by_packed = {min_packed: navigator.min_leaf()}
    rows_done = set()

    mu_hi = np.full(n, min_hi, dtype=np.int64)
    mu_lo = np.full(n, min_lo, dtype=np.int64)
    for v in initial_top:
        mu_hi[v] = _TOP_HI
        mu_lo[v] = 0
    queued = np.zeros(n, dtype=np.bool_)
    blocked = np.zeros(n, dtype=np.bool_)
    bucket_head = np.full(d + 1, -1, dtype=np.int64)
    bucket_next = np.full(n, -1, dtype=np.int64)

    def push(v: int):
        queued[v] = True
        p = int(priority[v])
        bucket_next[v] = bucket_head[p]
        bucket_head[p] = v

    for v in range(n - 1, -1, -1):
        if mu_hi[v] != _TOP_HI:
            push(v)

    table = _Table()
    max_req = 4096
    req_hi = np.zeros(max_req, dtype=np.int64)
    req_lo = np.zeros(max_req, dtype=np.int64)
    req_code = np.zeros(max_req, dtype=np.int64)
    counters = np.zeros(1, dtype=np.int64)

    while True:
        nreq = _run(
            succ_idx,
            succ_dat,
            pred_idx,
            pred_dat,
            owner_even,
            priority,
            level_of,
            code_of,
            mu_hi,
            mu_lo,
            queued,
            blocked,
            bucket_head,
            bucket_next,
            table.hi,
            table.lo,
            table.code,
            table.rhi,
            table.rlo,
            req_hi,
            req_lo,
            req_code,
            counters,
            h,
            _TOP_HI,
            min_hi,
            min_lo,
        )
        if nreq == 0 and not blocked.any():
            break
        def ensure_row(packed: int):
            """Insert every (value, level) result for this value, so the
            kernel never misses on a value it has already seen."""
            if packed in rows_done:
                return
            rows_done.add(packed)
            leaf = leaf_by_packed[packed]
            hi, lo = split(packed)
            for level in range(1, h):
                filled = navigator.min_leaf_with_prefix(leaf, level)
                fpacked = navigator.int_key(filled)
                leaf_by_packed.setdefault(fpacked, filled)
                fhi, flo = split(fpacked)
                table.insert(hi, lo, level * 2 + 1, fhi, flo)
                nxt = navigator.level_successor(leaf, level)
                if nxt is None:
                    table.insert(hi, lo, level * 2, _TOP_HI, 0)
                else:
                    npacked = navigator.int_key(nxt)
                    leaf_by_packed.setdefault(npacked, nxt)
                    nhi, nlo = split(npacked)
                    table.insert(hi, lo, level * 2, nhi, nlo)

        seen = set()
        for i in range(nreq):
            hi, lo, code = int(req_hi[i]), int(req_lo[i]), int(req_code[i])
            if (hi, lo, code) in seen:
                continue
            seen.add((hi, lo, code))
            packed = (hi << lo_bits) | lo
            ensure_row(packed)
            if code % 2 == 0:
                # successor chains are consumed value by value during a
                # climb; walk a stretch ahead so the kernel stays busy
                level = code // 2
                leaf = leaf_by_packed[packed]
                for _ in range(64):
                    leaf = navigator.level_successor(leaf, level)
                    if leaf is None:
                        break
                    chained = navigator.int_key(leaf)
                    if chained in rows_done:
                        break
                    leaf_by_packed.setdefault(chained, leaf)
                    ensure_row(chained)
        for v in np.nonzero(blocked)[0]:
            blocked[v] = False
            if mu_hi[v] != _TOP_HI and not queued[v]:
                push(int(v))
    if stats is not None:
        stats.lifts += int(counters[0])
    out: Dict[int, Optional[object]] = {}
    for v in range(n):
        if mu_hi[v] == _TOP_HI:
            out[v] = None
        else:
            packed = (int(mu_hi[v]) << lo_bits) | int(mu_lo[v])
            out[v] = leaf_by_packed[packed]
    return out
