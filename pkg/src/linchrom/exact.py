"""Brute-force oracles on small graphs: treedepth, chi_cen, chi_lin and
uncentred-path search.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._kernels import path_reach, treedepth_kernel
from .colorings import Colouring, SizeGuardError

TREEDEPTH_GUARD = int(os.environ.get("LINCHROM_TREEDEPTH_GUARD", "16"))
CHI_GUARD = int(os.environ.get("LINCHROM_CHI_GUARD", "12"))
PATH_GUARD = int(os.environ.get("LINCHROM_PATH_GUARD", "16"))


@dataclass(frozen=True)
class SmallGraph:
    """Simple undirected graph on ``0..n-1`` with bitmask neighbourhoods."""

    n: int
    nbr: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SmallGraph":
        nbr = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        return cls(n, tuple(nbr))

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]]) -> tuple["SmallGraph", list[int]]:
        """Relabel ``adj`` densely (sorted ids); also returns new -> old ids."""
        ids = sorted(adj)
        index = {v: k for k, v in enumerate(ids)}
        edges = [(index[u], index[w]) for u in ids for w in adj[u] if index[u] < index[w]]
        return cls.from_edges(len(ids), edges), ids

    @property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        return {v: tuple(w for w in range(self.n) if self.nbr[v] >> w & 1) for v in range(self.n)}

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in range(u + 1, self.n) if self.nbr[u] >> w & 1]


def path_graph(n: int) -> SmallGraph:
    return SmallGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SmallGraph:
    return SmallGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> SmallGraph:
    return SmallGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid_graph(a: int, b: int) -> SmallGraph:
    idx = lambda i, j: (j - 1) * a + (i - 1)  # noqa: E731
    edges = [(idx(i, j), idx(i + 1, j)) for j in range(1, b + 1) for i in range(1, a)]
    edges += [(idx(i, j), idx(i, j + 1)) for j in range(1, b) for i in range(1, a + 1)]
    return SmallGraph.from_edges(a * b, edges)


def random_graph(n: int, p: float, rng: np.random.Generator) -> SmallGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return SmallGraph.from_edges(n, edges)


def _guard(g: SmallGraph, limit: int, what: str) -> None:
    if g.n > limit:
        raise SizeGuardError(f"{g.n} vertices exceeds the {what} guard of {limit}")


def treedepth(g: SmallGraph) -> int:
    _guard(g, TREEDEPTH_GUARD, "treedepth")
    return treedepth_kernel(g.nbr, g.n)


def connected_sets(g: SmallGraph) -> list[int]:
    out = []
    for mask in range(1, 1 << g.n):
        seen = frontier = mask & -mask
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            new = g.nbr[bit.bit_length() - 1] & mask & ~seen
            seen |= new
            frontier |= new
        if seen == mask:
            out.append(mask)
    return out


def path_sets(g: SmallGraph) -> list[int]:
    """Vertex sets of simple paths (as bitmasks), ascending."""
    if g.n == 0:
        return []
    reach = path_reach(np.array(g.nbr, dtype=np.int64), g.n)
    return [int(m) for m in np.nonzero(reach.any(axis=1))[0]]


def _min_colours(g: SmallGraph, family: Sequence[int]) -> tuple[int, list[int]]:
    """Least ``c`` such that every set in ``family`` has a centre, plus a witness."""
    n = g.n
    if n == 0:
        return 0, []
    # BFS order so that constraints close early
    order: list[int] = []
    for s in range(n):
        if s in order:
            continue
        queue = [s]
        order.append(s)
        while queue:
            u = queue.pop(0)
            for w in range(n):
                if g.nbr[u] >> w & 1 and w not in order:
                    order.append(w)
                    queue.append(w)
    pos = {v: k for k, v in enumerate(order)}
    buckets: list[list[int]] = [[] for _ in range(n)]
    for m in family:
        if m & (m - 1) == 0:
            continue
        last = max(pos[v] for v in range(n) if m >> v & 1)
        buckets[last].append(m)

    def search(c: int) -> list[int] | None:
        colmask = [0] * c
        phi = [0] * n

        def ok(sets) -> bool:
            return all(any((m & cm).bit_count() == 1 for cm in colmask) for m in sets)

        def extend(k: int, used: int) -> bool:
            if k == n:
                return True
            v = order[k]
            for col in range(min(used + 1, c)):
                colmask[col] |= 1 << v
                phi[v] = col
                if ok(buckets[k]) and extend(k + 1, max(used, col + 1)):
                    return True
                colmask[col] &= ~(1 << v)
            return False

        return phi if extend(0, 0) else None

    c = 1
    while (phi := search(c)) is None:
        c += 1
    return c, phi


def chi_cen(g: SmallGraph) -> int:
    """Centred chromatic number by increasing-c backtracking."""
    _guard(g, CHI_GUARD, "chi_cen")
    return _min_colours(g, connected_sets(g))[0]


def chi_lin(g: SmallGraph) -> int:
    """Linear chromatic number by increasing-c backtracking."""
    _guard(g, CHI_GUARD, "chi_lin")
    return _min_colours(g, path_sets(g))[0]


def optimal_colouring(g: SmallGraph, linear: bool) -> list[int]:
    """A colouring with ``chi_lin`` (``linear``) or ``chi_cen`` colours."""
    _guard(g, CHI_GUARD, "chi search")
    return _min_colours(g, path_sets(g) if linear else connected_sets(g))[1]


def find_uncentred_path(g: SmallGraph, phi: Colouring) -> list[int] | None:
    """Some simple path without a centre, or ``None`` iff ``phi`` is linear."""
    _guard(g, PATH_GUARD, "path search")
    n = g.n
    if n == 0:
        return None
    reach = path_reach(np.array(g.nbr, dtype=np.int64), n)
    colours = sorted({phi[v] for v in range(n)})
    colmask = [sum(1 << v for v in range(n) if phi[v] == c) for c in colours]
    for mask in np.nonzero(reach.any(axis=1))[0]:
        mask = int(mask)
        if any((mask & cm).bit_count() == 1 for cm in colmask):
            continue
        # walk the reach table backwards to recover an actual path
        end = int(np.nonzero(reach[mask])[0][0])
        path = [end]
        rest = mask
        while rest != 1 << end:
            prev_rest = rest ^ (1 << end)
            nxt = next(
                v for v in range(n) if g.nbr[end] >> v & 1 and prev_rest >> v & 1 and reach[prev_rest, v]
            )
            rest, end = prev_rest, nxt
            path.append(end)
        return path
    return None
