"""Cover a sparse vertex set by disjoint boxes and thread one path through all.

A snake sweeps the grid row by row; every cover box is crossed by exactly
one snake row, and that crossing is replaced by a route inside the box that
picks up the box's (at most two) targets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..gridcore import GridObject, Pseudogrid, box_bounds, in_box, in_interior
from .params import StageError
from .routing import RouteError, check_path, lift, route_through


@dataclass(frozen=True)
class Cover:
    """Centres, the S-vertices each one covers, and the class of each vertex."""

    p: int
    centres: tuple[GridObject, ...]
    covers: tuple[tuple[int, ...], ...]
    classes: dict


def _close(pg: Pseudogrid, v: int, w: int, q: int) -> bool:
    mv, mw = pg.owner[v], pg.owner[w]
    return in_box(mv, mw, q) or in_box(mw, mv, q)


def _rect(mu: GridObject, q: int, k: int) -> tuple[int, int, int, int]:
    return box_bounds(mu, q, k, k)


def _disjoint(r1, r2) -> bool:
    return r1[1] < r2[0] or r2[1] < r1[0] or r1[3] < r2[2] or r2[3] < r1[2]


def _centre_candidates(targets: Sequence[GridObject], p: int, k: int) -> list[GridObject]:
    """Objects whose p-box contains every target, vertices and horizontal edges first."""
    xs = [t.x for t in targets]
    ys = [t.y for t in targets]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    out = []
    for x in range(max(2, max(xs) - 2 * p - 2), min(2 * k, min(xs) + 2 * p + 2) + 1):
        for y in range(max(2, max(ys) - 2 * p - 2), min(2 * k, min(ys) + 2 * p + 2) + 1):
            if x % 2 and y % 2:
                continue
            mu = GridObject(x, y)
            if all(in_box(t, mu, p) for t in targets) and in_interior(mu, p + 1, k, k):
                out.append(mu)
    out.sort(key=lambda mu: (mu.is_vertical, abs(mu.x - mx) + abs(mu.y - my), mu.y, mu.x))
    return out


def make_disjoint(pg: Pseudogrid, s: Sequence[int], r: int) -> Cover:
    """Centres with disjoint (p+1)-boxes whose p-boxes cover ``s``, p = (r-5)//4."""
    p = (r - 5) // 4
    k = pg.a
    owner = pg.owner
    s = sorted(s)
    partner: dict[int, list[int]] = {v: [w for w in s if w != v and _close(pg, v, w, r - 1)] for v in s}
    if any(len(ws) > 1 for ws in partner.values()):
        raise StageError("cover", "three S-vertices share an (r-1)-neighbourhood")
    centres: list[GridObject] = []
    covers: list[tuple[int, ...]] = []
    classes: dict[int, int] = {}
    for v in s:
        if partner[v]:
            continue
        mu = owner[v]
        centre = mu if not mu.is_vertical else GridObject(mu.x, mu.y - 1)
        centres.append(centre)
        covers.append((v,))
        classes[v] = 1
    for v in s:
        if not partner[v] or partner[v][0] < v:
            continue
        w = partner[v][0]
        mv, mw = owner[v], owner[w]
        if _close(pg, v, w, 2 * p):
            cands = _centre_candidates([mv, mw], p, k)
            if not cands:
                raise StageError("cover", f"no common centre for {v} and {w}")
            centres.append(cands[0])
            covers.append((v, w))
            classes[v] = classes[w] = 2
            continue
        found = None
        for cv in _centre_candidates([mv], p, k):
            for cw in _centre_candidates([mw], p, k):
                if _disjoint(_rect(cv, p + 1, k), _rect(cw, p + 1, k)):
                    found = (cv, cw)
                    break
            if found:
                break
        if found is None:
            raise StageError("cover", f"no separated centres for {v} and {w}")
        centres.extend(found)
        covers.extend([(v,), (w,)])
        classes[v] = classes[w] = 3
    cover = Cover(p, tuple(centres), tuple(covers), classes)
    check_cover(pg, s, cover)
    return cover


def check_cover(pg: Pseudogrid, s: Sequence[int], cover: Cover) -> None:
    """Coverage, at most two per p-box, pairwise disjoint (p+1)-boxes."""
    k, p = pg.a, cover.p
    owner = pg.owner
    for v in s:
        if not any(in_box(owner[v], c, p) for c in cover.centres):
            raise StageError("cover", f"vertex {v} is not covered")
    for c in cover.centres:
        if sum(1 for v in s if in_box(owner[v], c, p)) > 2:
            raise StageError("cover", f"more than two S-vertices in the p-box of {c!r}")
    rects = [_rect(c, p + 1, k) for c in cover.centres]
    for n, r1 in enumerate(rects):
        for r2 in rects[n + 1 :]:
            if not _disjoint(r1, r2):
                raise StageError("cover", "cover boxes overlap")


def _cell_rect(rect) -> tuple[int, int, int, int]:
    """Grid-vertex range ``(i0, i1, j0, j1)`` of a doubled-coordinate rectangle."""
    x0, x1, y0, y1 = rect
    return x0 // 2, x1 // 2, y0 // 2, y1 // 2


def snake_rows(boxes: Sequence[tuple[int, int, int, int]], k: int) -> list[int]:
    """Rows spaced one box-height apart so each box is crossed exactly once."""
    if not boxes:
        return list(range(1, k + 1, 2))
    h = max(b[3] - b[2] + 1 for b in boxes)
    for phase in range(1, h + 1):
        rows = list(range(phase, k + 1, h))
        if all(sum(1 for y in rows if b[2] <= y <= b[3]) == 1 for b in boxes):
            return rows
    raise StageError("cover", "no snake phase crosses every box exactly once")


@dataclass(frozen=True)
class SnakePath:
    path: list[int]
    cells: list[tuple[int, int]]
    splices: int
    fallback_routes: int


def pick_up_everything(pg: Pseudogrid, s: Sequence[int], r: int) -> SnakePath:
    """A path of ``pg`` containing every vertex of ``s``."""
    k = pg.a
    if pg.a != pg.b:
        raise StageError("precondition", "pseudogrid must be square")
    owner = pg.owner
    for v in s:
        if not in_interior(owner[v], r, k, k):
            raise StageError("precondition", f"vertex {v} is not in the {r}-interior")
    cover = make_disjoint(pg, s, r)
    boxes = [_cell_rect(_rect(c, cover.p + 1, k)) for c in cover.centres]
    for b in boxes:
        if b[0] <= 1 or b[1] >= k:
            raise StageError("cover", "a cover box touches the first or last column")
    targets = [[v for v in s if in_box(owner[v], c, cover.p)] for c in cover.centres]
    rows = snake_rows(boxes, k)
    cells: list[tuple[int, int]] = []
    fallback = 0
    for m, y in enumerate(rows):
        rightwards = m % 2 == 0
        if m > 0:
            prev = rows[m - 1]
            col = 1 if rightwards else k
            cells.extend((col, yy) for yy in range(prev + 1, y))
        crossing = sorted(
            (n for n, b in enumerate(boxes) if b[2] <= y <= b[3]),
            key=lambda n: boxes[n][0] if rightwards else -boxes[n][1],
        )
        x = 1 if rightwards else k
        step = 1 if rightwards else -1
        for n in crossing:
            b = boxes[n]
            entry, exit_ = (b[0], b[1]) if rightwards else (b[1], b[0])
            while x != entry:
                cells.append((x, y))
                x += step
            try:
                route = route_through(pg, b, (entry, y), (exit_, y), targets[n])
            except RouteError as err:
                raise StageError("cover", f"box {n} could not be spliced: {err}") from err
            if route.strategy != "case-table":
                fallback += 1
            cells.extend(route.cells[:-1])
            x = exit_
        end = k if rightwards else 1
        while x != end + step:
            cells.append((x, y))
            x += step
    path = lift(pg, cells)
    try:
        check_path(pg.adjacency, path, s)
    except AssertionError as err:
        raise StageError("cover", f"assembled path is invalid: {err}") from err
    return SnakePath(path, cells, len(boxes), fallback)
