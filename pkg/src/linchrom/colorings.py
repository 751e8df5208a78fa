"""Vertex colourings, centres, and colour profiles over grid objects."""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bipartite import BipartiteGraph, HallViolator, has_d_fold_violation, polygamous_matching
from .gridcore import GridGraph, GridObject, Pseudogrid, in_interior

# A colouring maps vertex id -> colour id; lists work for dense ids.
Colouring = Mapping[int, int] | Sequence[int]

LINEAR_GUARD = int(os.environ.get("LINCHROM_LINEAR_GUARD", "16"))
CENTRED_GUARD = int(os.environ.get("LINCHROM_CENTRED_GUARD", "14"))


class SizeGuardError(ValueError):
    """The graph is too large for exhaustive enumeration."""


def _adjacency(g) -> Mapping[int, Sequence[int]]:
    return g.adjacency if hasattr(g, "adjacency") else g


def centre_of(phi: Colouring, vertices: Iterable[int]) -> int | None:
    """First vertex (in iteration order) whose colour is unique in ``vertices``."""
    vertices = list(vertices)
    counts = Counter(phi[v] for v in vertices)
    for v in vertices:
        if counts[phi[v]] == 1:
            return v
    return None


def colour_multiplicity(phi: Colouring, vertices: Iterable[int]) -> dict[int, int]:
    return dict(sorted(Counter(phi[v] for v in vertices).items()))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a linearity / centredness check.

    ``counterexample`` is ``None`` when the property holds, otherwise an
    uncentred path (ordered) or connected vertex set.
    """

    holds: bool
    counterexample: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_linear(g, phi: Colouring, guard: int | None = None) -> Verdict:
    """Check every simple path for a centre by depth-first enumeration."""
    adj = _adjacency(g)
    limit = LINEAR_GUARD if guard is None else guard
    if len(adj) > limit:
        raise SizeGuardError(f"{len(adj)} vertices exceeds the linear-check guard of {limit}")
    counts: Counter = Counter()
    path: list[int] = []
    on_path: set[int] = set()
    uniques = 0

    def push(v):
        nonlocal uniques
        c = phi[v]
        counts[c] += 1
        if counts[c] == 1:
            uniques += 1
        elif counts[c] == 2:
            uniques -= 1
        path.append(v)
        on_path.add(v)

    def pop():
        nonlocal uniques
        v = path.pop()
        on_path.discard(v)
        c = phi[v]
        counts[c] -= 1
        if counts[c] == 1:
            uniques += 1
        elif counts[c] == 0:
            uniques -= 1

    def dfs(v) -> bool:
        push(v)
        if uniques == 0:
            return True
        for w in adj[v]:
            if w not in on_path and dfs(w):
                return True
        pop()
        return False

    for s in sorted(adj):
        if dfs(s):
            return Verdict(False, tuple(path))
        assert not path
    return Verdict(True)


def is_centred(g, phi: Colouring, guard: int | None = None) -> Verdict:
    """Check every connected vertex subset for a centre (subset scan)."""
    adj = _adjacency(g)
    limit = CENTRED_GUARD if guard is None else guard
    verts = sorted(adj)
    n = len(verts)
    if n > limit:
        raise SizeGuardError(f"{n} vertices exceeds the centred-check guard of {limit}")
    index = {v: k for k, v in enumerate(verts)}
    nbr = [0] * n
    for v in verts:
        for w in adj[v]:
            nbr[index[v]] |= 1 << index[w]
    for mask in range(1, 1 << n):
        low = mask & -mask
        seen = low
        frontier = low
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            new = nbr[bit.bit_length() - 1] & mask & ~seen
            seen |= new
            frontier |= new
        if seen != mask:
            continue
        members = [verts[k] for k in range(n) if mask >> k & 1]
        if centre_of(phi, members) is None:
            return Verdict(False, tuple(members))
    return Verdict(True)


@dataclass(frozen=True)
class ColourProfile:
    """Colour sets per grid object and the inverse map."""

    colours_of: dict[GridObject, frozenset[int]]
    objects_of: dict[int, frozenset[GridObject]]

    def __getitem__(self, mu: GridObject) -> frozenset[int]:
        return self.colours_of.get(mu, frozenset())


def profile(pg: Pseudogrid, phi: Colouring) -> ColourProfile:
    colours_of = {mu: frozenset(phi[v] for v in p) for mu, p in pg.partition.items()}
    inverse: dict[int, set[GridObject]] = {}
    for mu, cs in colours_of.items():
        for c in cs:
            inverse.setdefault(c, set()).add(mu)
    return ColourProfile(colours_of, {c: frozenset(s) for c, s in inverse.items()})


def frequency_graph(prof: ColourProfile, colours: Iterable[int], r: int, g: GridGraph) -> BipartiteGraph:
    """Colours (left) against interior objects carrying them (right)."""
    colours = sorted(colours)
    adj = {}
    for c in colours:
        objs = [mu for mu in prof.objects_of.get(c, ()) if in_interior(mu, r, g.a, g.b)]
        objs.sort(key=lambda mu: (mu.y, mu.x))
        adj[c] = tuple(objs)
    right = tuple(sorted({mu for objs in adj.values() for mu in objs}, key=lambda mu: (mu.y, mu.x)))
    return BipartiteGraph(tuple(colours), right, adj)


def deficiency_set(
    prof: ColourProfile, colours: Iterable[int], d: int, r: int, g: GridGraph
) -> frozenset[int] | None:
    """An inclusion-minimal colour set ``A`` with ``|phi_P^-1(A) & interior_r| < d|A|``."""
    h = frequency_graph(prof, colours, r, g)
    res = polygamous_matching(h, d)
    if not isinstance(res, HallViolator):
        return None
    a = set(res.left)
    shrinking = True
    while shrinking:
        shrinking = False
        for x in sorted(a):
            rest = a - {x}
            if not rest:
                continue
            sub = BipartiteGraph(tuple(sorted(rest)), h.right, {c: h.adj[c] for c in rest})
            inner = polygamous_matching(sub, d)
            if isinstance(inner, HallViolator):
                a = set(inner.left)
                shrinking = True
                break
    assert has_d_fold_violation(h, a, d)
    return frozenset(a)


def random_colouring(vertices: Iterable[int], c: int, rng: np.random.Generator) -> dict[int, int]:
    vertices = sorted(vertices)
    draws = rng.integers(0, c, size=len(vertices))
    return {v: int(k) for v, k in zip(vertices, draws)}


def format_colouring(phi: Mapping[int, int], c: int | None = None) -> str:
    if c is None:
        c = max(phi.values(), default=-1) + 1
    lines = [f"colouring {len(phi)} {c}"]
    lines.extend(f"{v} {phi[v]}" for v in sorted(phi))
    return "\n".join(lines) + "\n"


def parse_colouring(text: str) -> tuple[dict[int, int], int]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty colouring file")
    head = lines[0].split()
    if head[0] != "colouring" or len(head) != 3:
        raise ValueError("expected 'colouring <n> <c>' header")
    n, c = int(head[1]), int(head[2])
    phi = {}
    for ln in lines[1:]:
        v, col = map(int, ln.split())
        if not 0 <= col < c:
            raise ValueError(f"colour {col} outside 0..{c - 1}")
        phi[v] = col
    if len(phi) != n:
        raise ValueError(f"header promises {n} vertices, found {len(phi)}")
    return phi, c
