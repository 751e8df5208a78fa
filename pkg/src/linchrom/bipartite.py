"""Hall-type bipartite matching with violator certificates.

Matchings are grown by alternating-path search.  When a left vertex cannot
be augmented, the left vertices reachable from it by alternating paths form
a set ``A`` with ``|N(A)| < |A|`` -- the certificate handed back instead of
a matching.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Generic, Hashable, Iterable, Mapping, TypeVar

L = TypeVar("L", bound=Hashable)
R = TypeVar("R", bound=Hashable)


@dataclass(frozen=True)
class BipartiteGraph(Generic[L, R]):
    """Left part, right part and the adjacency ``L -> R``.

    Neighbour lists are kept in the given order; that order drives the
    (deterministic) search.
    """

    left: tuple
    right: tuple
    adj: Mapping

    @classmethod
    def from_edges(cls, left: Iterable, right: Iterable, edges: Iterable[tuple]) -> "BipartiteGraph":
        left, right = tuple(left), tuple(right)
        lset, rset = set(left), set(right)
        adj: dict = {x: [] for x in left}
        seen = set()
        for x, y in edges:
            if x not in lset or y not in rset:
                raise ValueError(f"edge {(x, y)!r} does not join the two parts")
            if (x, y) not in seen:
                seen.add((x, y))
                adj[x].append(y)
        return cls(left, right, {x: tuple(ys) for x, ys in adj.items()})

    def neighbourhood(self, xs: Iterable) -> set:
        out: set = set()
        for x in xs:
            out.update(self.adj.get(x, ()))
        return out


@dataclass(frozen=True)
class DegreeMatching:
    """Subgraph with ``deg = d`` on the left and ``deg <= 1`` on the right."""

    d: int
    left: dict  # left vertex -> frozenset of right vertices
    right: dict  # right vertex -> left vertex (matched right vertices only)

    def edges(self) -> list[tuple]:
        return [(x, y) for x, ys in self.left.items() for y in ys]


@dataclass(frozen=True)
class HallViolator:
    """Left set ``A`` with ``|N(A)| < d |A|``."""

    d: int
    left: frozenset
    neighbourhood: frozenset

    def __post_init__(self):
        if not len(self.neighbourhood) < self.d * len(self.left):
            raise ValueError("not a Hall violator")


def _augment(x, adj, match_r, match_l):
    """BFS for an alternating path from the free left vertex ``x``.

    Returns ``None`` on success (matching updated in place), otherwise the
    set of left vertices reached.
    """
    parent_r: dict = {}
    queue = deque([x])
    reached_l = {x}
    while queue:
        u = queue.popleft()
        for y in adj[u]:
            if y in parent_r:
                continue
            parent_r[y] = u
            owner = match_r.get(y)
            if owner is None:
                while True:
                    u = parent_r[y]
                    prev = match_l.get(u)
                    match_r[y] = u
                    match_l[u] = y
                    if u == x:
                        return None
                    y = prev
            if owner not in reached_l:
                reached_l.add(owner)
                queue.append(owner)
    return reached_l


def saturating_matching(h: BipartiteGraph) -> DegreeMatching | HallViolator:
    """A matching saturating ``h.left``, or a Hall violator."""
    adj = h.adj
    match_r: dict = {}
    match_l: dict = {}
    # greedy warm start keeps the BFS short on easy instances
    for x in h.left:
        for y in adj[x]:
            if y not in match_r:
                match_r[y] = x
                match_l[x] = y
                break
    for x in h.left:
        if x in match_l:
            continue
        reached = _augment(x, adj, match_r, match_l)
        if reached is not None:
            nbhd = frozenset(h.neighbourhood(reached))
            return HallViolator(1, frozenset(reached), nbhd)
    return DegreeMatching(
        1,
        {x: frozenset([match_l[x]]) for x in h.left},
        {y: x for y, x in match_r.items()},
    )


def polygamous_matching(h: BipartiteGraph, d: int) -> DegreeMatching | HallViolator:
    """``d`` partners per left vertex via ``d - 1`` twins per left vertex."""
    if d < 1:
        raise ValueError("d must be positive")
    twins = tuple((x, t) for x in h.left for t in range(d))
    twin_graph = BipartiteGraph(twins, h.right, {(x, t): h.adj[x] for (x, t) in twins})
    res = saturating_matching(twin_graph)
    if isinstance(res, HallViolator):
        a = frozenset(x for (x, _t) in res.left)
        return HallViolator(d, a, frozenset(h.neighbourhood(a)))
    left: dict = {x: set() for x in h.left}
    right: dict = {}
    for (x, _t), ys in res.left.items():
        left[x].update(ys)
    for y, (x, _t) in res.right.items():
        right[y] = x
    return DegreeMatching(d, {x: frozenset(ys) for x, ys in left.items()}, right)


def has_d_fold_violation(h: BipartiteGraph, a: Iterable, d: int) -> bool:
    a = set(a)
    return len(h.neighbourhood(a)) < d * len(a)
