import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linchrom.gridcore import (
    DOWN,
    LEFT,
    RIGHT,
    UP,
    GridGraph,
    GridObject,
    PseudogridSpec,
    VertexKind,
    box,
    build_pseudogrid,
    check_pseudogrid,
    delete_line,
    delete_lines,
    format_graph,
    format_spec,
    interior,
    line_path,
    make_grid,
    parse_graph,
    parse_spec,
    plain_pseudogrid,
    random_spec,
    tilde_box,
    transpose,
    vol,
)

V = GridObject.vertex
E = GridObject.edge


def brute_box(mu: GridObject, r: int, g: GridGraph) -> set[GridObject]:
    # straight from the definition: grid vertices within L_inf distance r of an
    # endpoint, plus every edge with both endpoints among them
    verts = set()
    for (ci, cj) in mu.endpoints:
        for i in range(ci - r, ci + r + 1):
            for j in range(cj - r, cj + r + 1):
                if 1 <= i <= g.a and 1 <= j <= g.b:
                    verts.add((i, j))
    objs = {V(i, j) for (i, j) in verts}
    for (i, j) in verts:
        for (di, dj) in ((1, 0), (0, 1)):
            if (i + di, j + dj) in verts:
                objs.add(E((i, j), (i + di, j + dj)))
    return objs


def as_grid_edges(pg):
    return {frozenset(e) for e in pg.edge_list}


class TestGrid:
    def test_counts(self):
        g = make_grid(2, 2)
        assert (g.n_vertices, g.n_edges) == (4, 4)
        g = make_grid(3, 3)
        assert (g.n_vertices, g.n_edges, len(list(g.objects()))) == (9, 12, 21)
        g = make_grid(1, 5)
        assert (g.n_vertices, g.n_edges) == (5, 4)

    @pytest.mark.parametrize("a,b", [(0, 3), (3, 0), (-1, 2)])
    def test_rejects_empty(self, a, b):
        with pytest.raises(ValueError):
            make_grid(a, b)

    @given(st.integers(2, 9), st.integers(2, 9))
    def test_degrees(self, a, b):
        g = make_grid(a, b)
        degs = [g.degree(i, j) for i, j in g.vertices()]
        assert set(degs) <= {2, 3, 4}
        assert degs.count(2) == 4
        assert sum(1 for e in g.edges() if e.is_horizontal) == (a - 1) * b
        assert sum(1 for e in g.edges() if e.is_vertical) == a * (b - 1)

    def test_edge_needs_neighbours(self):
        with pytest.raises(ValueError):
            E((1, 1), (2, 2))
        assert E((2, 1), (1, 1)) == E((1, 1), (2, 1))
        assert E((1, 1), (2, 1)).endpoints == ((1, 1), (2, 1))


class TestBoxes:
    def test_vol(self):
        assert [vol(0), vol(10), vol(70)] == [3, 1343, 59783]

    def test_box_examples(self):
        g = make_grid(9, 9)
        assert len(box(V(5, 5), 1, g)) == 21
        assert len(box(V(1, 1), 1, g)) == 8
        assert box(V(4, 4), 0, g) == {V(4, 4)}
        e = E((4, 4), (5, 4))
        assert box(e, 0, g) == {V(4, 4), V(5, 4), e}

    def test_box_outside(self):
        with pytest.raises(ValueError):
            box(V(7, 7), 1, make_grid(5, 5))

    @settings(max_examples=150)
    @given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 4), st.data())
    def test_box_matches_definition(self, a, b, r, data):
        g = make_grid(a, b)
        mu = data.draw(st.sampled_from(sorted(g.objects())))
        got = box(mu, r, g)
        assert got == brute_box(mu, r, g)
        assert len(got) <= vol(r)
        assert box(mu, max(r - 1, 0), g) <= got

    def test_unclipped_edge_box_hits_vol(self):
        g = make_grid(30, 30)
        for r in range(6):
            assert len(box(E((15, 15), (16, 15)), r, g)) == vol(r)

    def test_interior(self):
        g5 = make_grid(5, 5)
        inner = interior(g5, 1)
        assert inner == {mu for mu in g5.objects() if all(2 <= i <= 4 and 2 <= j <= 4 for i, j in mu.endpoints)}
        assert len(inner) == 21
        assert interior(make_grid(4, 4), 2) == set()
        g = make_grid(6, 4)
        assert interior(g, 0) == set(g.objects())


class TestPseudogrid:
    def test_identity_spec_is_grid(self):
        pg = plain_pseudogrid(4, 3)
        check_pseudogrid(pg)
        # ids are row-major, so relabel by coordinates
        coord = {p[0]: ij for ij, p in pg.vpaths.items()}
        got = {frozenset((coord[u], coord[v])) for u, v in pg.edge_list}
        want = {frozenset(e.endpoints) for e in make_grid(4, 3).edges()}
        assert got == want

    def test_vertex_count_formula(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            spec = random_spec(6, 5, rng)
            pg = build_pseudogrid(spec)
            extra = sum(spec.subdiv.values()) + sum(n - 1 for _k, n in spec.kinds.values())
            assert pg.n_vertices == 30 + extra

    def test_six_by_four_example(self):
        spec = PseudogridSpec(
            6,
            4,
            subdiv={E((1, 1), (2, 1)): 2, E((3, 2), (3, 3)): 1, E((5, 3), (6, 3)): 3},
            kinds={(2, 2): (VertexKind.Q1, 3), (4, 2): (VertexKind.Q3, 2), (3, 3): (VertexKind.Q2, 2), (5, 3): (VertexKind.Q3, 4)},
        )
        pg = build_pseudogrid(spec)
        check_pseudogrid(pg)
        assert max(len(ns) for ns in pg.adjacency.values()) <= 4

    @pytest.mark.parametrize("kind", [VertexKind.Q1, VertexKind.Q2, VertexKind.Q3])
    def test_wiring(self, kind):
        pg = build_pseudogrid(PseudogridSpec(3, 3, kinds={(2, 2): (kind, 3)}))
        p, q = pg.vpaths[(2, 2)][0], pg.vpaths[(2, 2)][-1]
        nb = {d: pg.vpaths[(2 + di, 2 + dj)][0] for d, (di, dj) in zip((LEFT, RIGHT, DOWN, UP), ((-1, 0), (1, 0), (0, -1), (0, 1)))}
        wired = {
            VertexKind.Q1: ((LEFT, DOWN), (RIGHT, UP)),
            VertexKind.Q2: ((UP, LEFT), (DOWN, RIGHT)),
            VertexKind.Q3: ((LEFT, RIGHT), (DOWN, UP)),
        }[kind]
        for end, dirs in zip((p, q), wired):
            assert {w for w in pg.adjacency[end] if w in nb.values()} == {nb[d] for d in dirs}
        assert pg.kind_of(2, 2) == ("bent" if kind is VertexKind.Q3 else "straight")

    def test_spec_errors(self):
        with pytest.raises(ValueError):
            build_pseudogrid(PseudogridSpec(3, 3, kinds={(1, 2): (VertexKind.Q1, 2)}))
        with pytest.raises(ValueError):
            build_pseudogrid(PseudogridSpec(3, 3, kinds={(2, 2): (VertexKind.SINGLE, 2)}))
        with pytest.raises(ValueError):
            build_pseudogrid(PseudogridSpec(3, 3, subdiv={E((1, 1), (2, 1)): -1}))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32 - 1))
    def test_random_specs_are_valid(self, a, b, seed):
        check_pseudogrid(build_pseudogrid(random_spec(a, b, np.random.default_rng(seed))))

    def test_row_through_q3_skips_internals(self):
        pg = build_pseudogrid(PseudogridSpec(5, 5, kinds={(3, 3): (VertexKind.Q3, 2)}))
        p, q = pg.vpaths[(3, 3)]
        row = line_path(pg, "row", 3)
        assert p in row and q not in row
        col = line_path(pg, "column", 3)
        # only the vertex wired down/up lies on the column
        assert q in col and p not in col
        for path in (row, col):
            assert len(path) == 5
            assert all(pg.has_edge(u, v) for u, v in zip(path, path[1:]))

    def test_plain_row(self):
        pg = plain_pseudogrid(4, 3)
        assert line_path(pg, "row", 2) == [pg.vpaths[(i, 2)][0] for i in range(1, 5)]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 6), st.integers(2, 6), st.integers(0, 2**32 - 1))
    def test_line_paths_are_paths(self, a, b, seed):
        pg = build_pseudogrid(random_spec(a, b, np.random.default_rng(seed)))
        for axis, n in (("row", b), ("column", a)):
            for idx in range(1, n + 1):
                path = line_path(pg, axis, idx)
                assert len(set(path)) == len(path)
                assert all(pg.has_edge(u, v) for u, v in zip(path, path[1:]))

    def test_tilde_box(self):
        pg = plain_pseudogrid(6)
        v = pg.vpaths[(3, 3)][0]
        owned = {pg.vpaths[mu.coords][0] for mu in box(V(3, 3), 1, pg.grid) if mu.is_vertex}
        assert tilde_box(v, 1, pg) == owned
        sub = build_pseudogrid(PseudogridSpec(5, 5, subdiv={E((2, 2), (3, 2)): 3}, kinds={(3, 3): (VertexKind.Q2, 3)}))
        internal = sub.epaths[E((2, 2), (3, 2))]
        boxes = {frozenset(tilde_box(x, 1, sub)) for x in internal}
        assert len(boxes) == 1
        w = sub.vpaths[(3, 3)][1]
        assert tilde_box(w, 0, sub) == set(sub.vpaths[(3, 3)])


class TestDeletion:
    def test_boundary_row(self):
        out = delete_line(plain_pseudogrid(3), "row", 1)
        assert (out.a, out.b) == (3, 2)
        check_pseudogrid(out)
        assert len(out.edge_list) == make_grid(3, 2).n_edges

    def test_middle_row_matches_direct_construction(self):
        # the deleted row's edges go; its vertices stay as subdivisions of
        # the merged vertical edges
        pg = plain_pseudogrid(3)
        out = delete_line(pg, "row", 2)
        check_pseudogrid(out)
        direct = build_pseudogrid(PseudogridSpec(3, 2, subdiv={E((i, 1), (i, 2)): 1 for i in (1, 2, 3)}))
        assert {mu: len(p) for mu, p in out.partition.items()} == {mu: len(p) for mu, p in direct.partition.items()}
        for i in (1, 2, 3):
            assert out.epaths[E((i, 1), (i, 2))] == pg.vpaths[(i, 2)]
        assert len(out.edge_list) == len(direct.edge_list)

    def test_q3_row_deletion(self):
        spec = PseudogridSpec(5, 5, kinds={(2, 3): (VertexKind.Q3, 3), (3, 2): (VertexKind.Q3, 2), (3, 4): (VertexKind.Q1, 2)})
        pg = build_pseudogrid(spec)
        for j in range(1, 6):
            out = delete_line(pg, "row", j)
            check_pseudogrid(out)
            assert min(len(ns) for ns in out.adjacency.values()) >= 2

    def test_errors(self):
        with pytest.raises(ValueError):
            delete_line(plain_pseudogrid(1, 4), "row", 2)
        with pytest.raises(ValueError):
            delete_line(plain_pseudogrid(3), "row", 4)
        with pytest.raises(ValueError):
            delete_line(plain_pseudogrid(3), "diagonal", 1)
        with pytest.raises(ValueError):
            delete_lines(plain_pseudogrid(3), rows=[1, 2, 3])

    @settings(max_examples=80, deadline=None)
    @given(st.integers(3, 7), st.integers(0, 2**32 - 1), st.data())
    def test_random_deletions(self, a, seed, data):
        pg = build_pseudogrid(random_spec(a, a, np.random.default_rng(seed)))
        rows = data.draw(st.sets(st.integers(1, a), max_size=a - 2))
        cols = data.draw(st.sets(st.integers(1, a), max_size=a - 2))
        out = delete_lines(pg, rows, cols)
        assert (out.a, out.b) == (a - len(cols), a - len(rows))
        check_pseudogrid(out)
        if out.a >= 2 and out.b >= 2:
            assert min(len(ns) for ns in out.adjacency.values()) >= 2
        # surviving ids are a subset of the original ones
        assert set(out.owner) <= set(pg.owner)
        assert all(pg.has_edge(u, v) for u, v in out.edge_list)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(4, 7), st.integers(0, 2**32 - 1), st.data())
    def test_batch_equals_sequential(self, a, seed, data):
        pg = build_pseudogrid(random_spec(a, a, np.random.default_rng(seed)))
        rows = sorted(data.draw(st.sets(st.integers(1, a), min_size=1, max_size=a - 2)))
        batch = delete_lines(pg, rows)
        seq = pg
        for j in sorted(rows, reverse=True):
            seq = delete_line(seq, "row", j)
        assert as_grid_edges(batch) == as_grid_edges(seq)
        assert batch.partition == seq.partition

    def test_transpose_involution(self):
        pg = build_pseudogrid(random_spec(5, 4, np.random.default_rng(1)))
        back = transpose(transpose(pg))
        assert back.partition == pg.partition and back.attach == pg.attach


class TestFormats:
    def test_spec_round_trip(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            spec = random_spec(5, 4, rng)
            again = parse_spec(format_spec(spec))
            assert build_pseudogrid(again).partition == build_pseudogrid(spec).partition

    def test_spec_parse_errors(self):
        with pytest.raises(ValueError):
            parse_spec("grid 3 3\n")
        with pytest.raises(ValueError):
            parse_spec("pseudogrid 3 3\nvertex 2 2 q9 2\n")

    def test_graph_round_trip(self):
        pg = build_pseudogrid(random_spec(4, 4, np.random.default_rng(2)))
        n, edges = parse_graph(format_graph(pg.adjacency))
        assert n == pg.n_vertices and len(edges) == len(pg.edge_list)
        ids = sorted(pg.owner)
        assert {frozenset((ids[u], ids[v])) for u, v in edges} == as_grid_edges(pg)

    def test_graph_dump_header(self):
        text = format_graph(plain_pseudogrid(2).adjacency)
        assert text.splitlines()[0] == "graph 4 4"
        assert all(line.startswith("e ") for line in text.splitlines()[1:])


def test_vertex_ordering_is_row_major():
    g = make_grid(3, 2)
    assert list(g.vertices()) == [(i, j) for j in (1, 2) for i in (1, 2, 3)]
    assert list(itertools.islice(g.edges(), 2))[0].is_edge
