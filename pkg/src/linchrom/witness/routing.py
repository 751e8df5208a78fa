"""Routing simple paths through a pseudogrid that pick up given vertices.

Routes are planned on the underlying grid and then lifted: a grid path
through ``v`` enters ``P_v`` at the vertex wired towards the previous grid
vertex and leaves at the one wired towards the next, taking the segment of
``P_v`` in between.  Whether a target inside a long ``P_v`` is picked up
thus depends only on the pair of directions used at ``v``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..gridcore import DELTA, DIRECTIONS, DOWN, NONE, RIGHT, UP, GridObject, Pseudogrid, _segment

Cell = tuple[int, int]


class RouteError(RuntimeError):
    """No route satisfying the constraints was found."""


def direction(u: Cell, w: Cell) -> int:
    delta = (w[0] - u[0], w[1] - u[1])
    return DELTA.index(delta)


def edge_between(u: Cell, w: Cell) -> GridObject:
    return GridObject(u[0] + w[0], u[1] + w[1])


def lift(pg: Pseudogrid, cells: Sequence[Cell], enter: int | None = None, leave: int | None = None) -> list[int]:
    """Lift a simple grid path to a simple path of ``pg``.

    ``enter`` / ``leave`` name the side from which the path arrives at the
    first cell and departs from the last one, when it continues outside.
    """
    if not cells:
        return []
    if len(cells) == 1 and enter is None and leave is None:
        return [pg.vpaths[cells[0]][0]]
    out: list[int] = []
    for n, v in enumerate(cells):
        att = pg.attach[v]
        din = direction(v, cells[n - 1]) if n > 0 else enter
        dout = direction(v, cells[n + 1]) if n + 1 < len(cells) else leave
        first = att[din] if din is not None else att[dout]
        last = att[dout] if dout is not None else att[din]
        out.extend(_segment(pg.vpaths[v], first, last))
        if n + 1 < len(cells):
            w = cells[n + 1]
            internal = pg.epaths[edge_between(v, w)]
            out.extend(internal if dout in (RIGHT, UP) else internal[::-1])
    return out


def covering_pairs(pg: Pseudogrid, cell: Cell, target: int) -> set[frozenset[int]]:
    """Direction pairs at ``cell`` whose ``P_v`` segment contains ``target``."""
    p = pg.vpaths[cell]
    att = pg.attach[cell]
    dirs = [d for d in DIRECTIONS if att[d] != NONE]
    return {
        frozenset((d1, d2)) for d1, d2 in itertools.combinations(dirs, 2) if target in _segment(p, att[d1], att[d2])
    }


@dataclass
class RouteProblem:
    """Grid route from ``start`` to ``end`` inside ``rect = (i0, i1, j0, j1)``.

    ``required`` edges must be traversed; a cell in ``rules`` must be passed
    through using one of its allowed direction pairs; ``forbidden`` edges
    may not be used.
    """

    rect: tuple[int, int, int, int]
    start: Cell
    end: Cell
    required: frozenset = frozenset()
    rules: dict | None = None
    forbidden: frozenset = frozenset()
    budget: int = 200_000


def _inside(rect, v: Cell) -> bool:
    i0, i1, j0, j1 = rect
    return i0 <= v[0] <= i1 and j0 <= v[1] <= j1


def solve_route(prob: RouteProblem) -> list[Cell] | None:
    """Depth-first search with reachability pruning; ``None`` if none found."""
    rect, start, end = prob.rect, prob.start, prob.end
    rules = prob.rules or {}
    required = set(prob.required)
    incident: dict[Cell, list[GridObject]] = {}
    for e in required:
        for v in e.endpoints:
            incident.setdefault(v, []).append(e)
    if start == end or not _inside(rect, start) or not _inside(rect, end):
        return None
    if start in rules or end in rules:
        return None
    if len(incident.get(start, ())) > 1 or len(incident.get(end, ())) > 1:
        return None
    targets = set(rules) | {v for e in required for v in e.endpoints}

    path = [start]
    on_path = {start}
    used: set[GridObject] = set()
    nodes = 0

    def nbrs(v: Cell):
        for d in DIRECTIONS:
            w = (v[0] + DELTA[d][0], v[1] + DELTA[d][1])
            if _inside(rect, w) and edge_between(v, w) not in prob.forbidden:
                yield d, w

    def viable(head: Cell) -> bool:
        # every unfinished target and the end must stay reachable from head
        seen = {head}
        queue = deque([head])
        while queue:
            v = queue.popleft()
            if v == end and v != head:
                continue
            for _d, w in nbrs(v):
                if w not in seen and w not in on_path:
                    seen.add(w)
                    queue.append(w)
        if end not in seen:
            return False
        for e in required - used:
            for v in e.endpoints:
                if v not in seen:
                    return False
        return all(v in seen for v in rules if v not in on_path)

    def goal_of(head: Cell) -> Cell:
        todo = [v for v in targets if v not in on_path]
        if not todo:
            return end
        return min(todo, key=lambda v: (abs(v[0] - head[0]) + abs(v[1] - head[1]), v))

    def departure_ok(v: Cell, din: int | None, dout: int, e_in, e_out) -> bool:
        for e in incident.get(v, ()):
            if e != e_in and e != e_out:
                return False
        if v in rules:
            return din is not None and frozenset((din, dout)) in rules[v]
        return True

    def dfs(head: Cell, din: int | None, e_in) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > prob.budget:
            raise RouteError("node budget exhausted")
        if head == end:
            return required <= used and all(v in on_path for v in rules)
        goal = goal_of(head)
        # the pending required edge at head goes first
        cands = sorted(
            nbrs(head),
            key=lambda dw: (
                edge_between(head, dw[1]) not in required,
                abs(dw[1][0] - goal[0]) + abs(dw[1][1] - goal[1]),
                dw[0],
            ),
        )
        for dout, w in cands:
            if w in on_path:
                continue
            e = edge_between(head, w)
            if not departure_ok(head, din, dout, e_in, e):
                continue
            if w == end and any(x != e for x in incident.get(end, ())):
                continue
            path.append(w)
            on_path.add(w)
            added = e in required and e not in used
            if added:
                used.add(e)
            if viable(w) and dfs(w, direction(w, head), e):
                return True
            if added:
                used.discard(e)
            path.pop()
            on_path.discard(w)
        return False

    try:
        found = dfs(start, None, None)
    except RouteError:
        return None
    return list(path) if found else None


def check_grid_route(prob: RouteProblem, cells: Sequence[Cell]) -> None:
    """Independent audit of a grid route against its problem."""
    assert cells[0] == prob.start and cells[-1] == prob.end
    assert len(set(cells)) == len(cells), "route revisits a cell"
    edges = set()
    for u, w in zip(cells, cells[1:]):
        assert abs(u[0] - w[0]) + abs(u[1] - w[1]) == 1, (u, w)
        assert _inside(prob.rect, w)
        e = edge_between(u, w)
        assert e not in prob.forbidden
        edges.add(e)
    assert set(prob.required) <= edges
    rules = prob.rules or {}
    for n, v in enumerate(cells):
        if v in rules:
            assert 0 < n < len(cells) - 1
            pair = frozenset((direction(v, cells[n - 1]), direction(v, cells[n + 1])))
            assert pair in rules[v], (v, pair)


def check_path(adjacency, path: Sequence[int], must_contain: Iterable[int] = (), start=None, end=None) -> None:
    """Assert that ``path`` is a simple path of the graph containing ``must_contain``."""
    assert len(set(path)) == len(path), "path repeats a vertex"
    for u, w in zip(path, path[1:]):
        assert w in adjacency[u], f"{u}-{w} is not an edge"
    missing = set(must_contain) - set(path)
    assert not missing, f"path misses {sorted(missing)}"
    if start is not None:
        assert path[0] == start, f"path starts at {path[0]}, not {start}"
    if end is not None:
        assert path[-1] == end, f"path ends at {path[-1]}, not {end}"


# -- reduction of vertex targets to required edges ---------------------------


def _vertical(i: int, j: int, up: bool) -> GridObject:
    return GridObject(2 * i, 2 * j + (1 if up else -1))


def _horizontal(i: int, j: int, right: bool) -> GridObject:
    return GridObject(2 * i + (1 if right else -1), 2 * j)


def _columns(mu: GridObject) -> set[int]:
    return {p[0] for p in mu.endpoints}


def _rows(mu: GridObject) -> list[int]:
    return [p[1] for p in mu.endpoints]


def _vertex_edges(kind: str, cell: Cell, other: GridObject, leftmost: bool) -> set[GridObject]:
    """Grid edges that pick up a target hidden in a long ``P_v`` at ``cell``."""
    i, j = cell
    if other.is_edge and cell in other.endpoints:
        if other.is_vertical:
            up = other.y > 2 * j
            return {_vertical(i, j, not up)} if kind == "straight" else {_horizontal(i, j, False)}
        right = other.x > 2 * i
        return {_horizontal(i, j, not right)} if kind == "straight" else {_vertical(i, j, False)}
    if kind == "straight":
        return {_vertical(i, j, False), _vertical(i, j, True)}
    rows = _rows(other)
    towards_up = max(rows) > j or (min(rows) == j and other.y > 2 * j)
    if other == GridObject(2 * i, 2 * j):
        towards_up = True
    return {_horizontal(i, j, not leftmost), _vertical(i, j, towards_up)}


def reduce_targets(pg: Pseudogrid, targets: Sequence[int]) -> tuple[set[GridObject], dict]:
    """Required edges and visiting rules that pick up ``targets`` (one or two)."""
    owner = pg.owner
    objs = list(dict.fromkeys(owner[v] for v in targets))
    required: set[GridObject] = set()
    rules: dict = {}
    order = sorted(range(len(objs)), key=lambda n: (min(_columns(objs[n])), min(_rows(objs[n]))))
    for rank, n in enumerate(order):
        mu = objs[n]
        if mu.is_edge:
            required.add(mu)
            continue
        cell = mu.coords
        kind = pg.kind_of(*cell)
        if kind == "single":
            rules[cell] = {frozenset(p) for p in itertools.combinations(DIRECTIONS, 2)}
            continue
        other = objs[order[1 - rank]] if len(objs) == 2 else mu
        required |= _vertex_edges(kind, cell, other, leftmost=(rank == 0))
    return required, rules


def exact_rules(pg: Pseudogrid, targets: Sequence[int]) -> tuple[set[GridObject], dict]:
    """Fallback: demand, per vertex target, a direction pair that covers it."""
    owner = pg.owner
    required: set[GridObject] = set()
    rules: dict = {}
    for v in targets:
        mu = owner[v]
        if mu.is_edge:
            required.add(mu)
            continue
        cell = mu.coords
        pairs = covering_pairs(pg, cell, v)
        rules[cell] = pairs & rules[cell] if cell in rules else pairs
    return required, rules


@dataclass(frozen=True)
class Route:
    cells: tuple[Cell, ...]
    strategy: str  # "case-table" or "exact"


def route_through(
    pg: Pseudogrid, rect, start: Cell, end: Cell, targets: Sequence[int], forbidden=frozenset(), budget: int = 200_000
) -> Route:
    """Grid route from ``start`` to ``end`` in ``rect`` whose lift contains ``targets``."""
    for strategy, reducer in (("case-table", reduce_targets), ("exact", exact_rules)):
        required, rules = reducer(pg, targets)
        prob = RouteProblem(rect, start, end, frozenset(required), rules, frozenset(forbidden), budget)
        cells = solve_route(prob)
        if cells is None:
            continue
        check_grid_route(prob, cells)
        lifted = set(lift(pg, cells))
        if all(v in lifted for v in targets):
            return Route(tuple(cells), strategy)
    raise RouteError(f"no route from {start} to {end} picks up {list(targets)}")


def _terminal_options(pg: Pseudogrid, v: int, column: int, at_start: bool):
    """Ways a path can begin (or end) at ``v`` lying in ``column``.

    Yields ``(cell, side, extra, forbidden)``: the grid cell where the grid
    route starts, the side of that cell the extra vertices hang off, the
    vertices to prepend (or append), and the edge to avoid.
    """
    mu = pg.owner[v]
    if mu.is_vertex:
        cell = mu.coords
        if cell[0] != column or len(pg.vpaths[cell]) != 1:
            raise ValueError(f"vertex {v} is not a boundary vertex of column {column}")
        yield cell, None, [], frozenset()
        return
    if not mu.is_vertical or mu.x != 2 * column:
        raise ValueError(f"vertex {v} is not in column {column}")
    internal = pg.epaths[mu]
    t = internal.index(v)
    low, high = mu.endpoints
    towards_low = list(internal[t::-1])
    towards_high = list(internal[t:])
    for cell, side, piece in ((low, UP, towards_low), (high, DOWN, towards_high)):
        yield cell, side, (piece if at_start else piece[::-1]), frozenset([mu])


def pick_up_two(pg: Pseudogrid, s: int, v: int, w: int, t: int, budget: int = 200_000) -> tuple[list[int], str]:
    """Path from ``s`` (first column) to ``t`` (last column) through ``v`` and ``w``.

    ``v`` and ``w`` must lie in the 1-interior.  Returns the path and the
    routing strategy that produced it.
    """
    a = pg.a
    if a != pg.b or a < 5:
        raise ValueError(f"need a square pseudogrid of side >= 5, got {pg.a}x{pg.b}")
    owner = pg.owner
    for x in (v, w):
        mu = owner[x]
        if not (4 <= mu.x <= 2 * a - 2 and 4 <= mu.y <= 2 * a - 2):
            raise ValueError(f"vertex {x} is not in the 1-interior")
    targets = [v] if v == w else [v, w]
    rect = (1, a, 1, a)
    options = list(itertools.product(_terminal_options(pg, s, 1, True), _terminal_options(pg, t, a, False)))
    # a dead terminal option can eat the whole budget, so every option gets a cheap try first
    budgets = [budget] if len(options) == 1 else sorted({min(budget, 5_000), budget})
    for b in budgets:
        for (c0, side0, pre, f0), (c1, side1, post, f1) in options:
            try:
                route = route_through(pg, rect, c0, c1, targets, f0 | f1, b)
            except RouteError:
                continue
            path = pre + lift(pg, route.cells, side0, side1) + post
            check_path(pg.adjacency, path, [s, v, w, t], start=s, end=t)
            return path, route.strategy
    raise RouteError(f"pick_up_two failed for s={s} v={v} w={w} t={t}")
