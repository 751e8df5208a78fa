"""Representative colouring, the two selection rounds and the doubled set.

The representative colouring ``phi_hat`` is an ``int64`` array indexed by
doubled coordinates; ``-1`` means "no representative colour" (and covers the
points that are not objects at all).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..bipartite import BipartiteGraph, HallViolator, polygamous_matching
from ..colorings import ColourProfile, Colouring, frequency_graph, profile
from ..gridcore import GridObject, Pseudogrid, box_bounds, in_box, in_interior
from .params import PipelineParams, StageError

BOTTOM = -1


@dataclass(frozen=True)
class RepresentativeColouring:
    a: int
    b: int
    table: np.ndarray
    matched: frozenset  # objects chosen by the d-fold matching itself

    def __getitem__(self, mu: GridObject) -> int:
        return int(self.table[mu.x, mu.y])

    def objects_of(self, colour: int) -> list[GridObject]:
        """Objects carrying ``colour``, row-major (by y, then x)."""
        ys, xs = np.nonzero(self.table.T == colour)
        return [GridObject(int(x), int(y)) for x, y in zip(xs, ys)]

    def colours(self) -> list[int]:
        return sorted(int(c) for c in np.unique(self.table) if c != BOTTOM)


def choose_representatives(
    pg: Pseudogrid, phi: Colouring, d: int, r: int, extend: bool = True, prof: ColourProfile | None = None
) -> RepresentativeColouring:
    """Give each colour ``d`` distinct interior representatives.

    With ``extend`` every other interior object that sees some colour gets
    one as well (its smallest); the matching alone puts the ``d``
    representatives of a colour side by side in the first rows, which
    starves the separated-pair round.
    """
    prof = prof or profile(pg, phi)
    colours = sorted({phi[v] for v in pg.owner})
    h = frequency_graph(prof, colours, r, pg.grid)
    res = polygamous_matching(h, d)
    if isinstance(res, HallViolator):
        raise StageError("representatives", f"colours {sorted(res.left)} are not {d}-frequent")
    table = np.full((2 * pg.a + 1, 2 * pg.b + 1), BOTTOM, dtype=np.int64)
    for mu, c in res.right.items():
        table[mu.x, mu.y] = c
    if extend:
        for mu, cs in prof.colours_of.items():
            if cs and table[mu.x, mu.y] == BOTTOM and in_interior(mu, r, pg.a, pg.b):
                table[mu.x, mu.y] = min(cs)
    return RepresentativeColouring(pg.a, pg.b, table, frozenset(res.right))


def _separated(mu: GridObject, nu: GridObject, radius: int) -> bool:
    return not in_box(mu, nu, radius) and not in_box(nu, mu, radius)


def _conflict_mask(q: GridObject, radius: int, shape) -> tuple[slice, slice, np.ndarray]:
    """Points ``mu`` with ``mu`` in the box of ``q`` or ``q`` in the box of ``mu``."""
    x0 = max(0, q.x - 2 * radius - 2)
    x1 = min(shape[0] - 1, q.x + 2 * radius + 2)
    y0 = max(0, q.y - 2 * radius - 2)
    y1 = min(shape[1] - 1, q.y + 2 * radius + 2)
    xs = np.arange(x0, x1 + 1)[:, None]
    ys = np.arange(y0, y1 + 1)[None, :]
    fwd = (
        (2 * (q.x // 2 - radius) <= xs)
        & (xs <= 2 * ((q.x + 1) // 2 + radius))
        & (2 * (q.y // 2 - radius) <= ys)
        & (ys <= 2 * ((q.y + 1) // 2 + radius))
    )
    back = (
        (2 * (xs // 2 - radius) <= q.x)
        & (q.x <= 2 * ((xs + 1) // 2 + radius))
        & (2 * (ys // 2 - radius) <= q.y)
        & (q.y <= 2 * ((ys + 1) // 2 + radius))
    )
    return slice(x0, x1 + 1), slice(y0, y1 + 1), fwd | back


def greedy_round1(rep: RepresentativeColouring, r: int) -> tuple[list[GridObject], list[int]]:
    """Pick, colour by colour, two far-apart representatives.

    Returns ``Q1`` (in insertion order) and the colours that succeeded.
    Every pair in ``Q1`` is separated by ``2r + 1`` in both directions.
    """
    radius = 2 * r + 1
    blocked = np.zeros(rep.table.shape, dtype=bool)
    q1: list[GridObject] = []
    won: list[int] = []
    for colour in rep.colours():
        cands = [mu for mu in rep.objects_of(colour) if not blocked[mu.x, mu.y]]
        pair = None
        for n1, m1 in enumerate(cands):
            for m2 in cands[n1 + 1 :]:
                if _separated(m1, m2, radius):
                    pair = (m1, m2)
                    break
            if pair:
                break
        if pair is None:
            continue
        for q in pair:
            sx, sy, mask = _conflict_mask(q, radius, blocked.shape)
            blocked[sx, sy] |= mask
        q1.extend(pair)
        won.append(colour)
    return q1, won


def check_round1(q1: list[GridObject], rep: RepresentativeColouring, r: int) -> None:
    counts: dict[int, int] = {}
    for mu in q1:
        counts[rep[mu]] = counts.get(rep[mu], 0) + 1
    assert all(n == 2 for n in counts.values()), counts
    for n, mu in enumerate(q1):
        for nu in q1[n + 1 :]:
            assert _separated(mu, nu, 2 * r + 1), (mu, nu)


@dataclass
class ClaimGraph:
    """Bipartite graph colours (``X``) against ``Q1`` built by the claiming round."""

    colours: tuple[int, ...]
    order: tuple[GridObject, ...]
    claims: dict = field(default_factory=dict)  # (colour, mu) -> claimed objects, row-major

    def bipartite(self) -> BipartiteGraph:
        adj = {c: tuple(mu for mu in self.order if (c, mu) in self.claims) for c in self.colours}
        return BipartiteGraph(self.colours, self.order, adj)


def claiming_round2(
    order: list[GridObject], missing: list[int], rep: RepresentativeColouring, r: int
) -> ClaimGraph:
    """Each ``mu`` of ``Q1`` (in ``order``) claims unmarked representatives nearby."""
    table = rep.table
    marked = np.zeros(table.shape, dtype=bool)
    cg = ClaimGraph(tuple(sorted(missing)), tuple(order))
    if not missing:
        return cg
    want = np.array(sorted(missing), dtype=np.int64)
    for mu in order:
        x0, x1, y0, y1 = box_bounds(mu, 2 * r + 1, rep.a, rep.b)
        sub = table[x0 : x1 + 1, y0 : y1 + 1]
        hit = np.isin(sub, want) & ~marked[x0 : x1 + 1, y0 : y1 + 1]
        dxs, dys = np.nonzero(hit)
        for dx, dy in sorted(zip(dxs.tolist(), dys.tolist()), key=lambda t: (t[1], t[0])):
            nu = GridObject(x0 + dx, y0 + dy)
            cg.claims.setdefault((int(sub[dx, dy]), mu), []).append(nu)
        x0, x1, y0, y1 = box_bounds(mu, 3 * r + 1, rep.a, rep.b)
        marked[x0 : x1 + 1, y0 : y1 + 1] = True
    return cg


def _pick_claim(claimed: list[GridObject], mu: GridObject, r: int) -> GridObject:
    near = [nu for nu in claimed if in_box(nu, mu, r)]
    if near:
        return near[0]
    return min(claimed, key=lambda nu: (max(abs(nu.x - mu.x), abs(nu.y - mu.y)), nu.y, nu.x))


@dataclass(frozen=True)
class DoubledSet:
    s: tuple[int, ...]
    q1: tuple[GridObject, ...]
    q2: tuple[GridObject, ...]
    missing: tuple[int, ...]
    attempts: int
    rep: RepresentativeColouring

    @property
    def retries(self) -> int:
        return max(0, self.attempts - 1)


def _object_check(q: list[GridObject], rep: RepresentativeColouring, colours: list[int], r: int) -> str | None:
    counts: dict[int, int] = {}
    for mu in q:
        counts[rep[mu]] = counts.get(rep[mu], 0) + 1
    for c in colours:
        if counts.get(c, 0) != 2:
            return f"colour {c} appears {counts.get(c, 0)} times"
    for mu in q:
        crowd = sum(1 for nu in q if in_box(nu, mu, r))
        if crowd > 2:
            return f"{crowd} chosen objects in the r-box of {mu!r}"
    return None


def check_doubled_set(pg: Pseudogrid, phi: Colouring, s, r: int) -> None:
    """Exactly two vertices per colour of ``pg``, at most two in any r-box, all interior."""
    colours = {phi[v] for v in pg.owner}
    counts: dict[int, int] = {}
    for v in s:
        counts[phi[v]] = counts.get(phi[v], 0) + 1
    if set(counts) != colours or any(n != 2 for n in counts.values()):
        raise AssertionError(f"colour counts {counts} do not double {sorted(colours)}")
    owner = pg.owner
    objs = [owner[v] for v in s]
    for mu in objs:
        if not in_interior(mu, r, pg.a, pg.b):
            raise AssertionError(f"{mu!r} is not in the {r}-interior")
        crowd = sum(1 for nu in objs if in_box(nu, mu, r))
        if crowd > 2:
            raise AssertionError(f"{crowd} vertices of S in the r-box of {mu!r}")


def doubled_colour_set(pg: Pseudogrid, phi: Colouring, params: PipelineParams) -> DoubledSet:
    """Two vertices of each colour, no three within a common r-box."""
    r, d = params.r, params.d
    prof = profile(pg, phi)
    rep = choose_representatives(pg, phi, d, r, prof=prof)
    q1, won = greedy_round1(rep, r)
    check_round1(q1, rep, r)
    colours = sorted({phi[v] for v in pg.owner})
    missing = [c for c in colours if c not in set(won)]
    info = {"q1": len(q1), "x": len(missing)}
    attempts = 0
    q2: list[GridObject] = []
    if missing:
        if not q1:
            raise StageError("doubled_set", "no colour won a separated pair", info)
        base = np.random.SeedSequence(params.seed)
        for attempt, child in enumerate(base.spawn(params.retry_budget), start=1):
            rng = np.random.default_rng(child)
            order = [q1[n] for n in rng.permutation(len(q1))]
            cg = claiming_round2(order, missing, rep, r)
            res = polygamous_matching(cg.bipartite(), 2)
            if isinstance(res, HallViolator):
                continue
            q2 = [_pick_claim(cg.claims[(c, mu)], mu, r) for c in cg.colours for mu in sorted(res.left[c], key=order.index)]
            if _object_check(q1 + q2, rep, colours, r) is None:
                attempts = attempt
                break
        else:
            info["retries"] = params.retry_budget
            raise StageError("doubled_set", f"retry budget of {params.retry_budget} exhausted", info)
    part = pg.partition
    s = []
    for mu in q1 + q2:
        c = rep[mu]
        s.append(min(v for v in part[mu] if phi[v] == c))
    check_doubled_set(pg, phi, s, r)
    return DoubledSet(tuple(s), tuple(q1), tuple(q2), tuple(missing), max(attempts, 1), rep)
