"""Grids, pseudogrids, grid-partitions, boxes and row/column deletion.

Grid objects (vertices and edges of the underlying grid ``G_{a x b}``) are
stored in *doubled coordinates*: vertex ``(i, j)`` is the point
``(2i, 2j)`` and the edge between ``(i, j)`` and ``(i + 1, j)`` is the
midpoint ``(2i + 1, 2j)``.  Points with both coordinates odd are not
objects.  In this encoding every box ``VE(G_r(mu))`` is a plain rectangle,
which is what makes the later stages cheap.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple

import numpy as np

# Directions index the 4-tuples in ``Pseudogrid.attach``.
LEFT, RIGHT, DOWN, UP = 0, 1, 2, 3
DIRECTIONS = (LEFT, RIGHT, DOWN, UP)
DELTA = ((-1, 0), (1, 0), (0, -1), (0, 1))
OPPOSITE = (RIGHT, LEFT, UP, DOWN)
NONE = -1


class GridObject(NamedTuple):
    """A vertex or an edge of the underlying grid, in doubled coordinates."""

    x: int
    y: int

    @classmethod
    def vertex(cls, i: int, j: int) -> "GridObject":
        return cls(2 * i, 2 * j)

    @classmethod
    def edge(cls, p: tuple[int, int], q: tuple[int, int]) -> "GridObject":
        if abs(p[0] - q[0]) + abs(p[1] - q[1]) != 1:
            raise ValueError(f"{p} and {q} are not grid neighbours")
        return cls(p[0] + q[0], p[1] + q[1])

    @property
    def is_vertex(self) -> bool:
        return self.x % 2 == 0 and self.y % 2 == 0

    @property
    def is_edge(self) -> bool:
        return not self.is_vertex

    @property
    def is_horizontal(self) -> bool:
        return self.x % 2 == 1

    @property
    def is_vertical(self) -> bool:
        return self.y % 2 == 1

    @property
    def coords(self) -> tuple[int, int]:
        """Grid coordinates of a vertex object."""
        return self.x // 2, self.y // 2

    @property
    def endpoints(self) -> tuple[tuple[int, int], ...]:
        """Endpoints in canonical (sorted) order; a vertex is its own endpoint."""
        x, y = self.x, self.y
        if x % 2 == 0 and y % 2 == 0:
            return ((x // 2, y // 2),)
        if x % 2 == 1:
            return ((x // 2, y // 2), (x // 2 + 1, y // 2))
        return ((x // 2, y // 2), (x // 2, y // 2 + 1))

    def __repr__(self) -> str:
        if self.is_vertex:
            return f"Vertex{self.coords}"
        p, q = self.endpoints
        return f"Edge({p}, {q})"


def is_object(x: int, y: int) -> bool:
    return x % 2 == 0 or y % 2 == 0


def vol(r: int) -> int:
    """Upper bound ``12r^2 + 14r + 3`` on the number of objects in an r-box."""
    return 12 * r * r + 14 * r + 3


def box_bounds(mu: GridObject, r: int, a: int, b: int) -> tuple[int, int, int, int]:
    """Inclusive doubled-coordinate rectangle ``(x0, x1, y0, y1)`` of ``VE(G_r(mu))``."""
    x0 = max(2, 2 * (mu.x // 2 - r))
    x1 = min(2 * a, 2 * ((mu.x + 1) // 2 + r))
    y0 = max(2, 2 * (mu.y // 2 - r))
    y1 = min(2 * b, 2 * ((mu.y + 1) // 2 + r))
    return x0, x1, y0, y1


def in_box(nu: GridObject | tuple[int, int], mu: GridObject | tuple[int, int], r: int) -> bool:
    """True when ``nu`` lies in ``VE(G_r(mu))`` (both objects of the same grid)."""
    nx, ny = nu
    mx, my = mu
    return (
        2 * (mx // 2 - r) <= nx <= 2 * ((mx + 1) // 2 + r)
        and 2 * (my // 2 - r) <= ny <= 2 * ((my + 1) // 2 + r)
    )


@dataclass(frozen=True)
class GridGraph:
    """The ``a x b`` grid on ``{1..a} x {1..b}``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"grid dimensions must be positive, got {self.a}x{self.b}")

    @property
    def n_vertices(self) -> int:
        return self.a * self.b

    @property
    def n_edges(self) -> int:
        return (self.a - 1) * self.b + self.a * (self.b - 1)

    def vertices(self) -> Iterator[tuple[int, int]]:
        for j in range(1, self.b + 1):
            for i in range(1, self.a + 1):
                yield (i, j)

    def edges(self) -> Iterator[GridObject]:
        for j in range(1, self.b + 1):
            for i in range(1, self.a):
                yield GridObject(2 * i + 1, 2 * j)
        for j in range(1, self.b):
            for i in range(1, self.a + 1):
                yield GridObject(2 * i, 2 * j + 1)

    def objects(self) -> Iterator[GridObject]:
        """All of ``VE(G)`` in row-major doubled-coordinate order."""
        for y in range(2, 2 * self.b + 1):
            for x in range(2, 2 * self.a + 1):
                if is_object(x, y):
                    yield GridObject(x, y)

    def __contains__(self, mu) -> bool:
        x, y = mu
        return 2 <= x <= 2 * self.a and 2 <= y <= 2 * self.b and is_object(x, y)

    def degree(self, i: int, j: int) -> int:
        return (i > 1) + (i < self.a) + (j > 1) + (j < self.b)

    def has_neighbour(self, i: int, j: int, direction: int) -> bool:
        di, dj = DELTA[direction]
        return 1 <= i + di <= self.a and 1 <= j + dj <= self.b


def make_grid(a: int, b: int) -> GridGraph:
    return GridGraph(a, b)


def _objects_in_rect(x0: int, x1: int, y0: int, y1: int) -> set[GridObject]:
    return {
        GridObject(x, y)
        for y in range(y0, y1 + 1)
        for x in range(x0, x1 + 1)
        if is_object(x, y)
    }


def interior(g: GridGraph, r: int) -> set[GridObject]:
    """Objects of the r-interior ``G[{1+r..a-r} x {1+r..b-r}]``."""
    if 2 * r >= min(g.a, g.b):
        return set()
    return _objects_in_rect(2 + 2 * r, 2 * (g.a - r), 2 + 2 * r, 2 * (g.b - r))


def in_interior(mu: GridObject, r: int, a: int, b: int) -> bool:
    if 2 * r >= min(a, b):
        return False
    return 2 + 2 * r <= mu.x <= 2 * (a - r) and 2 + 2 * r <= mu.y <= 2 * (b - r)


def box(mu: GridObject, r: int, g: GridGraph) -> set[GridObject]:
    """``VE(G_r(mu))``: the r-box around ``mu`` clipped to ``g``."""
    if mu not in g:
        raise ValueError(f"{mu!r} is not an object of the {g.a}x{g.b} grid")
    return _objects_in_rect(*box_bounds(mu, r, g.a, g.b))


class VertexKind(str, enum.Enum):
    SINGLE = "single"
    Q1 = "q1"
    Q2 = "q2"
    Q3 = "q3"


# For each kind: directions wired to the first (p) and last (q) vertex of P_v.
_WIRING = {
    VertexKind.Q1: ((LEFT, DOWN), (RIGHT, UP)),
    VertexKind.Q2: ((UP, LEFT), (DOWN, RIGHT)),
    VertexKind.Q3: ((LEFT, RIGHT), (DOWN, UP)),
}


@dataclass
class PseudogridSpec:
    """Declarative recipe for an ``a x b`` pseudogrid.

    ``subdiv`` maps edge objects to the number of internal vertices of the
    replacing path; ``kinds`` maps grid vertices ``(i, j)`` to
    ``(kind, path_length)``.  Unlisted entries default to 0 / single.
    """

    a: int
    b: int
    subdiv: dict[GridObject, int] = field(default_factory=dict)
    kinds: dict[tuple[int, int], tuple[VertexKind, int]] = field(default_factory=dict)

    def validate(self) -> None:
        g = GridGraph(self.a, self.b)
        for e, s in self.subdiv.items():
            if not (e in g and e.is_edge):
                raise ValueError(f"{e!r} is not an edge of the grid")
            if s < 0:
                raise ValueError(f"negative subdivision count on {e!r}")
        for (i, j), (kind, length) in self.kinds.items():
            kind = VertexKind(kind)
            if not (1 <= i <= self.a and 1 <= j <= self.b):
                raise ValueError(f"vertex {(i, j)} outside the grid")
            if length < 1:
                raise ValueError(f"path length at {(i, j)} must be positive")
            if kind is VertexKind.SINGLE and length != 1:
                raise ValueError(f"single vertex {(i, j)} must have path length 1")
            if kind is not VertexKind.SINGLE and g.degree(i, j) != 4:
                raise ValueError(f"{kind.value} replacement on boundary vertex {(i, j)}")


class Pseudogrid:
    """A realized pseudogrid with its grid-partition.

    ``vpaths[(i, j)]`` is ``P_v`` as an ordered tuple of vertex ids,
    ``attach[(i, j)]`` gives for (left, right, down, up) the vertex of
    ``P_v`` wired towards that neighbour (``-1`` if there is none), and
    ``epaths[e]`` holds the internal vertices of the path replacing edge
    ``e``, ordered from its lower endpoint to its higher one.  Vertex ids
    are kept across deletions, so a sub-pseudogrid speaks the ids of the
    graph it was cut from.
    """

    def __init__(self, a: int, b: int, vpaths, attach, epaths):
        self.a = a
        self.b = b
        self.vpaths: dict[tuple[int, int], tuple[int, ...]] = vpaths
        self.attach: dict[tuple[int, int], tuple[int, int, int, int]] = attach
        self.epaths: dict[GridObject, tuple[int, ...]] = epaths

    def __repr__(self) -> str:
        return f"Pseudogrid({self.a}x{self.b}, n={self.n_vertices})"

    @property
    def grid(self) -> GridGraph:
        return GridGraph(self.a, self.b)

    @cached_property
    def partition(self) -> dict[GridObject, tuple[int, ...]]:
        part = {GridObject(2 * i, 2 * j): p for (i, j), p in self.vpaths.items()}
        part.update(self.epaths)
        return part

    @cached_property
    def owner(self) -> dict[int, GridObject]:
        return {v: mu for mu, p in self.partition.items() for v in p}

    @cached_property
    def n_vertices(self) -> int:
        return len(self.owner)

    def vertices(self) -> list[int]:
        return sorted(self.owner)

    @cached_property
    def edge_list(self) -> list[tuple[int, int]]:
        out = []
        for p in self.vpaths.values():
            out.extend(zip(p, p[1:]))
        for e, internal in self.epaths.items():
            (i1, j1), (i2, j2) = e.endpoints
            d = RIGHT if e.is_horizontal else UP
            chain = (self.attach[(i1, j1)][d],) + internal + (self.attach[(i2, j2)][OPPOSITE[d]],)
            out.extend(zip(chain, chain[1:]))
        return out

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.owner}
        for u, v in self.edge_list:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())

    def kind_of(self, i: int, j: int) -> str:
        """``"single"``, ``"straight"`` (Q1/Q2 wiring) or ``"bent"`` (Q3 wiring)."""
        p = self.vpaths[(i, j)]
        if len(p) == 1:
            return "single"
        att = self.attach[(i, j)]
        dirs = {d for d in DIRECTIONS if att[d] == p[0]}
        if dirs == {LEFT, RIGHT} or dirs == {DOWN, UP}:
            return "bent"
        return "straight"


def build_pseudogrid(spec: PseudogridSpec) -> Pseudogrid:
    """Realize ``spec`` with dense ids: vertex paths row-major, then edge paths."""
    spec.validate()
    a, b = spec.a, spec.b
    g = GridGraph(a, b)
    counter = itertools.count()
    vpaths, attach = {}, {}
    for (i, j) in g.vertices():
        kind, length = spec.kinds.get((i, j), (VertexKind.SINGLE, 1))
        kind = VertexKind(kind)
        if length == 1:
            kind = VertexKind.SINGLE
        path = tuple(next(counter) for _ in range(length))
        att = [NONE] * 4
        if kind is VertexKind.SINGLE:
            for d in DIRECTIONS:
                if g.has_neighbour(i, j, d):
                    att[d] = path[0]
        else:
            p_dirs, q_dirs = _WIRING[kind]
            for d in p_dirs:
                att[d] = path[0]
            for d in q_dirs:
                att[d] = path[-1]
        vpaths[(i, j)] = path
        attach[(i, j)] = tuple(att)
    epaths = {}
    for e in g.edges():
        epaths[e] = tuple(next(counter) for _ in range(spec.subdiv.get(e, 0)))
    return Pseudogrid(a, b, vpaths, attach, epaths)


def plain_pseudogrid(a: int, b: int | None = None) -> Pseudogrid:
    return build_pseudogrid(PseudogridSpec(a, a if b is None else b))


def random_spec(
    a: int,
    b: int,
    rng: np.random.Generator,
    max_subdiv: int = 2,
    q_prob: float = 0.3,
    max_path_length: int = 3,
) -> PseudogridSpec:
    """A random pseudogrid recipe drawn from ``rng``."""
    g = GridGraph(a, b)
    spec = PseudogridSpec(a, b)
    for e in g.edges():
        s = int(rng.integers(0, max_subdiv + 1))
        if s:
            spec.subdiv[e] = s
    kinds = (VertexKind.Q1, VertexKind.Q2, VertexKind.Q3)
    for (i, j) in g.vertices():
        if g.degree(i, j) == 4 and rng.random() < q_prob:
            kind = kinds[int(rng.integers(0, 3))]
            spec.kinds[(i, j)] = (kind, int(rng.integers(2, max_path_length + 1)))
    return spec


def check_pseudogrid(pg: Pseudogrid) -> None:
    """Raise ``AssertionError`` unless ``pg`` satisfies the structural invariants."""
    g = pg.grid
    seen: set[int] = set()
    for mu, p in pg.partition.items():
        assert mu in g, f"{mu!r} outside grid"
        for v in p:
            assert v not in seen, f"vertex {v} in two partition classes"
            seen.add(v)
        members = set(p)
        for u, w in zip(p, p[1:]):
            assert pg.has_edge(u, w), f"P_{mu!r} is not a path"
        inside = sum(1 for u in p for w in pg.adjacency[u] if w in members)
        assert inside == 2 * max(len(p) - 1, 0), f"P_{mu!r} is not induced"
    assert len(pg.vpaths) == g.n_vertices
    assert len(pg.epaths) == g.n_edges
    for (i, j), p in pg.vpaths.items():
        assert p, f"empty P_v at {(i, j)}"
        deg = g.degree(i, j)
        if deg < 4:
            assert len(p) == 1, f"boundary vertex {(i, j)} has a long P_v"
        att = pg.attach[(i, j)]
        for d in DIRECTIONS:
            assert (att[d] != NONE) == g.has_neighbour(i, j, d), f"bad wiring at {(i, j)}"
            assert att[d] == NONE or att[d] in (p[0], p[-1])
        if len(p) > 1:
            assert sum(att[d] == p[0] for d in DIRECTIONS) == 2
            assert sum(att[d] == p[-1] for d in DIRECTIONS) == 2
    edges = pg.edge_list
    assert len(set(map(frozenset, edges))) == len(edges), "parallel edges"
    assert all(u != v for u, v in edges), "loop"
    for v, ns in pg.adjacency.items():
        assert len(ns) <= 4
        if pg.a >= 2 and pg.b >= 2:
            assert len(ns) >= 2, f"vertex {v} has degree {len(ns)}"


# -- rows, columns and deletion -------------------------------------------------


def _segment(path: tuple[int, ...], u: int, w: int) -> tuple[int, ...]:
    """Subpath of ``path`` from ``u`` to ``w`` (inclusive, in that order)."""
    iu, iw = path.index(u), path.index(w)
    if iu <= iw:
        return path[iu : iw + 1]
    return path[iw : iu + 1][::-1]


def line_path(pg: Pseudogrid, axis: str, index: int) -> list[int]:
    """The path of ``pg`` corresponding to row/column ``index`` (1-based)."""
    if axis == "column":
        return line_path(transpose(pg), "row", index)
    if axis != "row":
        raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")
    if not 1 <= index <= pg.b:
        raise ValueError(f"row {index} outside 1..{pg.b}")
    out: list[int] = []
    j = index
    for i in range(1, pg.a + 1):
        p = pg.vpaths[(i, j)]
        att = pg.attach[(i, j)]
        start = att[LEFT] if i > 1 else (att[RIGHT] if pg.a > 1 else p[0])
        end = att[RIGHT] if i < pg.a else start
        out.extend(_segment(p, start, end))
        if i < pg.a:
            out.extend(pg.epaths[GridObject(2 * i + 1, 2 * j)])
    return out


_TRANSPOSE_DIR = (DOWN, UP, LEFT, RIGHT)


def transpose(pg: Pseudogrid) -> Pseudogrid:
    """Mirror ``pg`` in the main diagonal; rows become columns."""
    vpaths = {(j, i): p for (i, j), p in pg.vpaths.items()}
    attach = {}
    for (i, j), att in pg.attach.items():
        new = [NONE] * 4
        for d in DIRECTIONS:
            new[_TRANSPOSE_DIR[d]] = att[d]
        attach[(j, i)] = tuple(new)
    epaths = {GridObject(e.y, e.x): p for e, p in pg.epaths.items()}
    return Pseudogrid(pg.b, pg.a, vpaths, attach, epaths)


def _edge_towards(i: int, j: int, d: int) -> GridObject:
    di, dj = DELTA[d]
    return GridObject(2 * i + di, 2 * j + dj)


def _collapse(pg_v, pg_att, epaths, i, j, g: GridGraph):
    """Turn a long ``P_v`` that lost neighbours into a single grid vertex.

    The endpoint keeping the most wiring becomes the vertex; the remainder
    of ``P_v`` is folded into the edge path on the other endpoint's side,
    or dropped if that side has no neighbour left.
    """
    p = pg_v
    att = list(pg_att)
    if len(p) == 1:
        return p, tuple(att)
    ap = [d for d in DIRECTIONS if att[d] == p[0]]
    aq = [d for d in DIRECTIONS if att[d] == p[-1]]
    if len(aq) > len(ap):
        e_side, f_dirs, order = p[-1], ap, p[::-1]
    else:
        e_side, f_dirs, order = p[0], aq, p
    rest = order[1:]
    assert len(f_dirs) <= 1, "collapse requested on a degree-4 vertex"
    if f_dirs:
        d = f_dirs[0]
        e = _edge_towards(i, j, d)
        old = epaths[e]
        epaths[e] = rest + old if d in (RIGHT, UP) else old + rest[::-1]
    for d in DIRECTIONS:
        if att[d] != NONE:
            att[d] = e_side
    return (e_side,), tuple(att)


def _delete_rows(pg: Pseudogrid, rows: set[int]) -> Pseudogrid:
    a, b = pg.a, pg.b
    kept = [j for j in range(1, b + 1) if j not in rows]
    if not kept:
        raise ValueError("cannot delete every row")
    newj = {j: n for n, j in enumerate(kept, start=1)}
    nb = len(kept)
    g = GridGraph(a, nb)
    vpaths, attach, epaths = {}, {}, {}
    for j in kept:
        for i in range(1, a + 1):
            vpaths[(i, newj[j])] = pg.vpaths[(i, j)]
            attach[(i, newj[j])] = pg.attach[(i, j)]
        for i in range(1, a):
            epaths[GridObject(2 * i + 1, 2 * newj[j])] = pg.epaths[GridObject(2 * i + 1, 2 * j)]
    for j1, j2 in zip(kept, kept[1:]):
        for i in range(1, a + 1):
            chain = list(pg.epaths[GridObject(2 * i, 2 * j1 + 1)])
            for jj in range(j1 + 1, j2):
                att = pg.attach[(i, jj)]
                chain.extend(_segment(pg.vpaths[(i, jj)], att[DOWN], att[UP]))
                chain.extend(pg.epaths[GridObject(2 * i, 2 * jj + 1)])
            epaths[GridObject(2 * i, 2 * newj[j1] + 1)] = tuple(chain)
    for (i, j), att in list(attach.items()):
        att = tuple(att[d] if g.has_neighbour(i, j, d) else NONE for d in DIRECTIONS)
        if g.degree(i, j) < 4:
            vpaths[(i, j)], att = _collapse(vpaths[(i, j)], att, epaths, i, j, g)
        attach[(i, j)] = att
    return Pseudogrid(a, nb, vpaths, attach, epaths)


def delete_lines(pg: Pseudogrid, rows: Iterable[int] = (), columns: Iterable[int] = ()) -> Pseudogrid:
    """Delete a batch of rows and columns (indices refer to ``pg``)."""
    rows, columns = set(rows), set(columns)
    if (rows or columns) and (pg.a == 1 or pg.b == 1):
        raise ValueError("deleting a line of a 1-wide pseudogrid does not give a pseudogrid")
    for j in rows:
        if not 1 <= j <= pg.b:
            raise ValueError(f"row {j} outside 1..{pg.b}")
    for i in columns:
        if not 1 <= i <= pg.a:
            raise ValueError(f"column {i} outside 1..{pg.a}")
    if len(rows) >= pg.b or len(columns) >= pg.a:
        raise ValueError("deletion would remove every row or every column")
    out = _delete_rows(pg, rows) if rows else pg
    if columns:
        out = transpose(_delete_rows(transpose(out), columns))
    return out


def delete_line(pg: Pseudogrid, axis: str, index: int) -> Pseudogrid:
    if axis == "row":
        return delete_lines(pg, rows=[index])
    if axis == "column":
        return delete_lines(pg, columns=[index])
    raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")


def tilde_box(v: int, r: int, pg: Pseudogrid) -> set[int]:
    """Union of the partition classes over ``VE(G_r(mu_v))``."""
    mu = pg.owner[v]
    part = pg.partition
    out: set[int] = set()
    for nu in _objects_in_rect(*box_bounds(mu, r, pg.a, pg.b)):
        out.update(part[nu])
    return out


# -- text formats ---------------------------------------------------------------


def format_spec(spec: PseudogridSpec) -> str:
    lines = [f"pseudogrid {spec.a} {spec.b}"]
    for e in sorted(spec.subdiv, key=lambda e: (e.y, e.x)):
        if spec.subdiv[e]:
            (i1, j1), (i2, j2) = e.endpoints
            lines.append(f"edge {i1} {j1} {i2} {j2} {spec.subdiv[e]}")
    for (i, j) in sorted(spec.kinds, key=lambda v: (v[1], v[0])):
        kind, length = spec.kinds[(i, j)]
        lines.append(f"vertex {i} {j} {VertexKind(kind).value} {length}")
    return "\n".join(lines) + "\n"


def parse_spec(text: str) -> PseudogridSpec:
    spec = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if spec is None:
                if tok[0] != "pseudogrid" or len(tok) != 3:
                    raise ValueError("expected 'pseudogrid <a> <b>' header")
                spec = PseudogridSpec(int(tok[1]), int(tok[2]))
            elif tok[0] == "edge" and len(tok) == 6:
                i1, j1, i2, j2, s = map(int, tok[1:])
                spec.subdiv[GridObject.edge((i1, j1), (i2, j2))] = s
            elif tok[0] == "vertex" and len(tok) == 5:
                spec.kinds[(int(tok[1]), int(tok[2]))] = (VertexKind(tok[3]), int(tok[4]))
            else:
                raise ValueError(f"unrecognised record {tok[0]!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if spec is None:
        raise ValueError("empty pseudogrid spec")
    spec.validate()
    return spec


def format_graph(adjacency: Mapping[int, Iterable[int]]) -> str:
    """``graph <n> <m>`` dump; ids are relabelled densely in sorted order."""
    ids = {v: n for n, v in enumerate(sorted(adjacency))}
    edges = sorted(
        {(min(ids[u], ids[w]), max(ids[u], ids[w])) for u, ns in adjacency.items() for w in ns}
    )
    lines = [f"graph {len(ids)} {len(edges)}"]
    lines.extend(f"e {u} {w}" for u, w in edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> tuple[int, list[tuple[int, int]]]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if head[0] != "graph" or len(head) != 3:
        raise ValueError("expected 'graph <n> <m>' header")
    n, m = int(head[1]), int(head[2])
    edges = []
    for ln in lines[1:]:
        tok = ln.split()
        if tok[0] != "e" or len(tok) != 3:
            raise ValueError(f"bad edge record {ln!r}")
        u, w = int(tok[1]), int(tok[2])
        if not (0 <= u < n and 0 <= w < n):
            raise ValueError(f"edge {ln!r} references a vertex outside 0..{n - 1}")
        edges.append((u, w))
    if len(edges) != m:
        raise ValueError(f"header promises {m} edges, found {len(edges)}")
    return n, edges
