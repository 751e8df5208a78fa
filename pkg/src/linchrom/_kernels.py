"""Bitset kernels for the exact oracles.

Each kernel has a numba version and a numpy/Python version; ``NUMBA_ENABLED``
picks one at import time.  Vertex sets are ``int64`` bitmasks (n <= 16).
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ._accel import NUMBA_ENABLED, njit


def _path_reach_loops(nbr, n):
    size = 1 << n
    reach = np.zeros((size, n), dtype=np.bool_)
    for v in range(n):
        reach[1 << v, v] = True
    for mask in range(1, size):
        for end in range(n):
            if not reach[mask, end]:
                continue
            free = nbr[end] & ~mask
            while free:
                bit = free & -free
                free ^= bit
                w = 0
                while (bit >> w) != 1:
                    w += 1
                reach[mask | bit, w] = True
    return reach


_path_reach_jit = njit(_path_reach_loops)


def _path_reach_numpy(nbr, n):
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    reach = np.zeros((size, n), dtype=np.bool_)
    for v in range(n):
        reach[1 << v, v] = True
    layer = reach.copy()
    for _ in range(n - 1):
        nxt = np.zeros_like(reach)
        for v in range(n):
            src = np.nonzero(layer[:, v])[0]
            if not len(src):
                continue
            for w in range(n):
                if not (nbr[v] >> w) & 1:
                    continue
                ok = src[(masks[src] >> w) & 1 == 0]
                nxt[ok | (1 << w), w] = True
        reach |= nxt
        layer = nxt
    return reach


def path_reach(nbr: np.ndarray, n: int) -> np.ndarray:
    """``reach[mask, v]``: some simple path has vertex set ``mask`` and ends at ``v``."""
    nbr = np.asarray(nbr, dtype=np.int64)
    if NUMBA_ENABLED:
        return _path_reach_jit(nbr, n)
    return _path_reach_numpy(nbr, n)


def _component_masks(mask, nbr):
    comps = []
    rest = mask
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            v = 0
            while (bit >> v) != 1:
                v += 1
            new = nbr[v] & rest & ~seen
            seen |= new
            frontier |= new
        comps.append(seen)
        rest &= ~seen
    return comps


@njit
def _td_table_jit(nbr, n):
    size = 1 << n
    td = np.zeros(size, dtype=np.int64)
    for mask in range(1, size):
        # components of mask
        rest = mask
        ncomp = 0
        worst = 0
        first = 0
        while rest:
            seen = rest & -rest
            frontier = seen
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                v = 0
                while (bit >> v) != 1:
                    v += 1
                new = nbr[v] & rest & ~seen
                seen |= new
                frontier |= new
            if ncomp == 0:
                first = seen
            ncomp += 1
            if td[seen] > worst and seen != mask:
                worst = td[seen]
            rest &= ~seen
        if ncomp > 1:
            td[mask] = worst
            continue
        best = n + 1
        sub = first
        while sub:
            bit = sub & -sub
            sub ^= bit
            cand = td[mask ^ bit]
            if cand < best:
                best = cand
        td[mask] = best + 1
    return td


def _treedepth_recursive(nbr: tuple[int, ...], n: int) -> int:
    @lru_cache(maxsize=None)
    def td(mask: int) -> int:
        if mask == 0:
            return 0
        comps = _component_masks(mask, nbr)
        if len(comps) > 1:
            return max(td(c) for c in comps)
        best = n
        sub = mask
        while sub:
            bit = sub & -sub
            sub ^= bit
            best = min(best, td(mask ^ bit))
        return best + 1

    return td((1 << n) - 1)


def treedepth_kernel(nbr, n: int) -> int:
    if n == 0:
        return 0
    if NUMBA_ENABLED:
        return int(_td_table_jit(np.asarray(nbr, dtype=np.int64), n)[(1 << n) - 1])
    return _treedepth_recursive(tuple(int(x) for x in nbr), n)
