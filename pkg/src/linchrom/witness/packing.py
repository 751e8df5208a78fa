"""Random maximal packings of grid objects and the box-overlap census.

A set ``Q`` is (2r+1)-packed when no member lies in the (2r+1)-box of
another.  The census of ``Q`` is the largest number of members whose
(3r+1)-boxes share a common object.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .._accel import NUMBA_ENABLED, njit
from ..gridcore import GridGraph, GridObject, in_box


class PackingError(ValueError):
    """The input set is not packed."""


def object_cells(g: GridGraph) -> np.ndarray:
    """All objects of ``g`` as an ``(n, 2)`` array of doubled coordinates, row-major."""
    ys, xs = np.meshgrid(np.arange(2, 2 * g.b + 1), np.arange(2, 2 * g.a + 1), indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    keep = (xs % 2 == 0) | (ys % 2 == 0)
    return np.stack([xs[keep], ys[keep]], axis=1).astype(np.int64)


def _in_box_arr(nx, ny, mx, my, r):
    return (
        (2 * (mx // 2 - r) <= nx)
        & (nx <= 2 * ((mx + 1) // 2 + r))
        & (2 * (my // 2 - r) <= ny)
        & (ny <= 2 * ((my + 1) // 2 + r))
    )


def check_packed(q: np.ndarray, r: int) -> None:
    q = np.asarray(q, dtype=np.int64).reshape(-1, 2)
    if len(q) < 2:
        return
    nx, ny = q[:, 0][:, None], q[:, 1][:, None]
    mx, my = q[:, 0][None, :], q[:, 1][None, :]
    hit = _in_box_arr(nx, ny, mx, my, 2 * r + 1)
    np.fill_diagonal(hit, False)
    if hit.any():
        i, j = map(int, np.argwhere(hit)[0])
        raise PackingError(f"{GridObject(*q[i])!r} lies in the {2 * r + 1}-box of {GridObject(*q[j])!r}")


def _greedy_loops(cells, order, r, a, b):
    radius = 2 * r + 1
    forbidden = np.zeros((2 * a + 1, 2 * b + 1), dtype=np.bool_)
    chosen = np.empty(len(order), dtype=np.int64)
    n = 0
    for idx in order:
        qx = cells[idx, 0]
        qy = cells[idx, 1]
        if forbidden[qx, qy]:
            continue
        chosen[n] = idx
        n += 1
        x0 = max(0, qx - 2 * radius - 2)
        x1 = min(2 * a, qx + 2 * radius + 2)
        y0 = max(0, qy - 2 * radius - 2)
        y1 = min(2 * b, qy + 2 * radius + 2)
        for x in range(x0, x1 + 1):
            for y in range(y0, y1 + 1):
                fwd = (
                    2 * (qx // 2 - radius) <= x <= 2 * ((qx + 1) // 2 + radius)
                    and 2 * (qy // 2 - radius) <= y <= 2 * ((qy + 1) // 2 + radius)
                )
                back = (
                    2 * (x // 2 - radius) <= qx <= 2 * ((x + 1) // 2 + radius)
                    and 2 * (y // 2 - radius) <= qy <= 2 * ((y + 1) // 2 + radius)
                )
                if fwd or back:
                    forbidden[x, y] = True
    return chosen[:n]


_greedy_jit = njit(_greedy_loops)


def _greedy_numpy(cells, order, r, a, b):
    radius = 2 * r + 1
    xs = cells[order, 0]
    ys = cells[order, 1]
    alive = np.ones(len(order), dtype=bool)
    chosen = []
    pos = 0
    while True:
        rest = np.flatnonzero(alive[pos:])
        if not len(rest):
            break
        pos += int(rest[0])
        qx, qy = xs[pos], ys[pos]
        chosen.append(order[pos])
        tail = slice(pos, None)
        tx, ty = xs[tail], ys[tail]
        hit = _in_box_arr(tx, ty, qx, qy, radius) | _in_box_arr(qx, qy, tx, ty, radius)
        alive[tail] &= ~hit
    return np.array(chosen, dtype=np.int64)


def random_maximal_packing(g: GridGraph, r: int, rng: np.random.Generator, cells: np.ndarray | None = None) -> np.ndarray:
    """Greedy packing over a uniformly random order of all objects of ``g``."""
    cells = object_cells(g) if cells is None else cells
    order = rng.permutation(len(cells)).astype(np.int64)
    if NUMBA_ENABLED:
        idx = _greedy_jit(cells, order, r, g.a, g.b)
    else:
        idx = _greedy_numpy(cells, order, r, g.a, g.b)
    return cells[idx]


def _bounds(q, r, a, b):
    out = np.empty((len(q), 4), dtype=np.int64)
    out[:, 0] = np.maximum(2, 2 * (q[:, 0] // 2 - r))
    out[:, 1] = np.minimum(2 * a, 2 * ((q[:, 0] + 1) // 2 + r))
    out[:, 2] = np.maximum(2, 2 * (q[:, 1] // 2 - r))
    out[:, 3] = np.minimum(2 * b, 2 * ((q[:, 1] + 1) // 2 + r))
    return out


@njit
def _census_jit(bounds, a, b):
    diff = np.zeros((2 * a + 2, 2 * b + 2), dtype=np.int64)
    for n in range(bounds.shape[0]):
        x0, x1, y0, y1 = bounds[n, 0], bounds[n, 1], bounds[n, 2], bounds[n, 3]
        diff[x0, y0] += 1
        diff[x1 + 1, y0] -= 1
        diff[x0, y1 + 1] -= 1
        diff[x1 + 1, y1 + 1] += 1
    best = 0
    col = np.zeros(2 * b + 2, dtype=np.int64)
    for x in range(2 * a + 1):
        run = 0
        for y in range(2 * b + 1):
            col[y] += diff[x, y]
            run += col[y]
            if (x % 2 == 0 or y % 2 == 0) and run > best:
                best = run
    return best


def _census_numpy(bounds, a, b):
    diff = np.zeros((2 * a + 2, 2 * b + 2), dtype=np.int64)
    np.add.at(diff, (bounds[:, 0], bounds[:, 2]), 1)
    np.add.at(diff, (bounds[:, 1] + 1, bounds[:, 2]), -1)
    np.add.at(diff, (bounds[:, 0], bounds[:, 3] + 1), -1)
    np.add.at(diff, (bounds[:, 1] + 1, bounds[:, 3] + 1), 1)
    cover = diff.cumsum(axis=0).cumsum(axis=1)[: 2 * a + 1, : 2 * b + 1]
    # cells with both coordinates odd are not objects
    cover[1::2, 1::2] = 0
    return int(cover.max())


def census_array(q: np.ndarray, r: int, g: GridGraph) -> int:
    q = np.asarray(q, dtype=np.int64).reshape(-1, 2)
    if not len(q):
        return 0
    bounds = _bounds(q, 3 * r + 1, g.a, g.b)
    if NUMBA_ENABLED:
        return int(_census_jit(bounds, g.a, g.b))
    return _census_numpy(bounds, g.a, g.b)


def packing_census(q: Iterable[GridObject], r: int, g: GridGraph) -> int:
    """``max_mu |{mu1 in Q : mu in VE(G_{3r+1}(mu1))}|`` for a packed ``Q``."""
    arr = np.array([(mu.x, mu.y) for mu in q], dtype=np.int64).reshape(-1, 2)
    for mu in arr:
        if GridObject(int(mu[0]), int(mu[1])) not in g:
            raise PackingError(f"{GridObject(*map(int, mu))!r} is not an object of the grid")
    check_packed(arr, r)
    return census_array(arr, r, g)


def census_direct(q: Iterable[GridObject], r: int, g: GridGraph) -> int:
    """Slow reference: count memberships object by object."""
    q = list(q)
    return max((sum(1 for m in q if in_box(mu, m, 3 * r + 1)) for mu in g.objects()), default=0)
