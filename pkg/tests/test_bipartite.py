import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linchrom.bipartite import (
    BipartiteGraph,
    DegreeMatching,
    HallViolator,
    has_d_fold_violation,
    polygamous_matching,
    saturating_matching,
)


def random_bipartite(rng, n_left, n_right, p):
    left = [f"x{i}" for i in range(n_left)]
    right = [f"y{j}" for j in range(n_right)]
    edges = [(x, y) for x in left for y in right if rng.random() < p]
    return BipartiteGraph.from_edges(left, right, edges)


def brute_d_fold(h: BipartiteGraph, d: int) -> bool:
    """Exhaustive search for d distinct private partners per left vertex."""
    taken: set = set()

    def assign(k: int) -> bool:
        if k == len(h.left):
            return True
        x = h.left[k]
        free = [y for y in h.adj[x] if y not in taken]
        for combo in itertools.combinations(free, d):
            taken.update(combo)
            if assign(k + 1):
                return True
            taken.difference_update(combo)
        return False

    return assign(0)


def check_matching(h: BipartiteGraph, m: DegreeMatching, d: int):
    assert set(m.left) == set(h.left)
    seen = {}
    for x, ys in m.left.items():
        assert len(ys) == d
        for y in ys:
            assert y in h.adj[x]
            assert y not in seen
            seen[y] = x
    assert seen == m.right


def check_violator(h: BipartiteGraph, v: HallViolator, d: int):
    assert v.left and set(v.left) <= set(h.left)
    assert v.neighbourhood == frozenset(h.neighbourhood(v.left))
    assert len(v.neighbourhood) < d * len(v.left)


def test_single_edge():
    h = BipartiteGraph.from_edges(["x"], ["y"], [("x", "y")])
    m = saturating_matching(h)
    assert isinstance(m, DegreeMatching) and m.edges() == [("x", "y")]


def test_two_share_one():
    h = BipartiteGraph.from_edges(["a", "b"], ["y"], [("a", "y"), ("b", "y")])
    v = saturating_matching(h)
    assert isinstance(v, HallViolator) and v.left == {"a", "b"}


def test_polygamous_examples():
    h = BipartiteGraph.from_edges(["al"], ["y1", "y2"], [("al", "y1"), ("al", "y2")])
    m = polygamous_matching(h, 2)
    assert isinstance(m, DegreeMatching) and m.left["al"] == {"y1", "y2"}
    ys = ["y1", "y2", "y3"]
    h = BipartiteGraph.from_edges(["al", "be"], ys, [(x, y) for x in ("al", "be") for y in ys])
    v = polygamous_matching(h, 2)
    assert isinstance(v, HallViolator) and v.left == {"al", "be"}


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        BipartiteGraph.from_edges(["x"], ["y"], [("x", "z")])
    with pytest.raises(ValueError):
        polygamous_matching(BipartiteGraph.from_edges(["x"], ["y"], []), 0)
    with pytest.raises(ValueError):
        HallViolator(1, frozenset(["x"]), frozenset(["y"]))


def test_saturating_against_networkx():
    rng = np.random.default_rng(11)
    for _ in range(100):
        h = random_bipartite(rng, int(rng.integers(1, 7)), int(rng.integers(1, 7)), float(rng.uniform(0.1, 0.7)))
        g = nx.Graph()
        g.add_nodes_from(h.left)
        g.add_nodes_from(h.right)
        g.add_edges_from((x, y) for x in h.left for y in h.adj[x])
        best = len(nx.bipartite.maximum_matching(g, top_nodes=h.left)) // 2
        res = saturating_matching(h)
        if isinstance(res, DegreeMatching):
            check_matching(h, res, 1)
            assert best == len(h.left)
        else:
            check_violator(h, res, 1)
            assert best < len(h.left)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5), st.integers(1, 12), st.integers(2, 3), st.floats(0.1, 0.8), st.integers(0, 2**32 - 1))
def test_polygamous_against_brute_force(n_left, n_right, d, p, seed):
    h = random_bipartite(np.random.default_rng(seed), n_left, n_right, p)
    res = polygamous_matching(h, d)
    if isinstance(res, DegreeMatching):
        check_matching(h, res, d)
        assert brute_d_fold(h, d)
    else:
        check_violator(h, res, d)
        assert has_d_fold_violation(h, res.left, d)
        assert not brute_d_fold(h, d)


def test_deterministic():
    rng = np.random.default_rng(4)
    h = random_bipartite(rng, 5, 9, 0.5)
    a, b = polygamous_matching(h, 2), polygamous_matching(h, 2)
    assert type(a) is type(b)
    assert a.left == b.left
