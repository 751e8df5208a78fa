"""Exhaustive sweep of two-target routing on small pseudogrids."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..gridcore import GridGraph, GridObject, Pseudogrid, PseudogridSpec, VertexKind, build_pseudogrid
from ..witness.routing import RouteError, pick_up_two

KINDS = ("single", "q1", "q2", "q3", "mixed")


def sweep_pseudogrid(a: int, kind: str, seed: int = 0) -> Pseudogrid:
    """Every edge subdivided once; every degree-4 vertex replaced by ``kind``.

    ``mixed`` draws Q1/Q2/Q3 per vertex, and subdivides the left and right
    boundary columns twice so that terminals can sit inside an edge.
    """
    g = GridGraph(a, a)
    subdiv = {e: 1 for e in g.edges()}
    kinds: dict = {}
    if kind == "mixed":
        rng = np.random.default_rng(seed)
        choice = (VertexKind.Q1, VertexKind.Q2, VertexKind.Q3)
        for v in g.vertices():
            if g.degree(*v) == 4:
                kinds[v] = (choice[int(rng.integers(3))], int(rng.integers(2, 4)))
        for j in range(1, a):
            subdiv[GridObject.edge((1, j), (1, j + 1))] = 2
            subdiv[GridObject.edge((a, j), (a, j + 1))] = 2
    elif kind != "single":
        for v in g.vertices():
            if g.degree(*v) == 4:
                kinds[v] = (VertexKind(kind), 2)
    return build_pseudogrid(PseudogridSpec(a, a, subdiv, kinds))


def terminals(pg: Pseudogrid, column: int, inside_edges: bool = True) -> list[int]:
    """Start/end choices in a boundary column: bottom, middle, top, and
    (with ``inside_edges``) one vertex inside a subdivided column edge."""
    a = pg.b
    out = [pg.vpaths[(column, j)][0] for j in sorted({1, (a + 1) // 2, a})]
    e = GridObject.edge((column, a // 2), (column, a // 2 + 1))
    internal = pg.epaths.get(e, ())
    if inside_edges and len(internal) > 1:
        out.append(internal[len(internal) // 2])
    return out


def interior_vertices(pg: Pseudogrid) -> list[int]:
    a = pg.a
    return sorted(v for v, mu in pg.owner.items() if 4 <= mu.x <= 2 * a - 2 and 4 <= mu.y <= 2 * a - 2)


def independent_check(pg: Pseudogrid, path, s: int, t: int, v: int, w: int) -> bool:
    """Simple s-t path of ``pg`` through ``v`` and ``w``; no shared code with the router."""
    if not path or path[0] != s or path[-1] != t or len(set(path)) != len(path):
        return False
    adj = pg.adjacency
    if any(b not in adj[x] for x, b in zip(path, path[1:])):
        return False
    return v in path and w in path


@dataclass
class SweepResult:
    a: int
    kind: str
    cases: int = 0
    valid: int = 0
    strategies: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)


def sweep(a: int, kind: str, seed: int = 0, inside_edges: bool = True, max_failures: int = 20) -> SweepResult:
    """All interior pairs ``v, w`` against all terminal choices."""
    pg = sweep_pseudogrid(a, kind, seed)
    res = SweepResult(a, kind)
    inner = interior_vertices(pg)
    for s, t in itertools.product(terminals(pg, 1, inside_edges), terminals(pg, a, inside_edges)):
        for v, w in itertools.combinations_with_replacement(inner, 2):
            res.cases += 1
            try:
                path, strategy = pick_up_two(pg, s, v, w, t)
            except (RouteError, AssertionError) as err:
                if len(res.failures) < max_failures:
                    res.failures.append((s, v, w, t, str(err)))
                continue
            res.strategies[strategy] += 1
            if independent_check(pg, path, s, t, v, w):
                res.valid += 1
            elif len(res.failures) < max_failures:
                res.failures.append((s, v, w, t, "invalid path"))
    return res
