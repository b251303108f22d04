import math
import random

import pytest

from conftest import brute_force_connected_counts, rooted_set_growth, truncated_tree
from lcdist.clusters import (
    ClusterCensus,
    count_clusters,
    enumerate_clusters,
    fit_growth,
    tree_cluster_count,
)
from lcdist.codes import toric_code
from lcdist.graph import ConnectivityGraph, build_connectivity_graph, sector_graph

PATH = build_connectivity_graph([{0, 1}, {1, 2}], 3)
TRIANGLE = build_connectivity_graph([{0, 1, 2}], 3)


def random_graph(n, p, seed):
    rng = random.Random(seed)
    edges = [{a, b} for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return build_connectivity_graph(edges, n)


def test_path_clusters():
    assert [c.vertices for c in enumerate_clusters(PATH, 2, 0)] == [(0, 1)]
    assert [c.vertices for c in enumerate_clusters(PATH, 3, 0)] == [(0, 1, 2)]
    assert list(enumerate_clusters(PATH, 3, 1)) == []
    assert list(enumerate_clusters(PATH, 3, 2)) == []


def test_triangle_anchors():
    assert [len(list(enumerate_clusters(TRIANGLE, 2, a))) for a in range(3)] == [2, 1, 0]
    census = count_clusters(TRIANGLE, 3)
    assert census.counts == {1: 3, 2: 3, 3: 1}
    assert census.to_csv() == "w,count\n1,3\n2,3\n3,1\n"


def test_enumeration_rejects_bad_args():
    with pytest.raises(ValueError):
        list(enumerate_clusters(PATH, 0, 0))
    with pytest.raises(ValueError):
        list(enumerate_clusters(PATH, 1, 5))


@pytest.mark.parametrize("seed", range(6))
def test_enumeration_matches_brute_force(seed):
    g = random_graph(9, 0.3, seed)
    expected = brute_force_connected_counts(g)
    for w in range(1, g.n + 1):
        found = [c for a in range(g.n) for c in enumerate_clusters(g, w, a)]
        assert len(found) == len(set(found)) == expected[w]
        for c in found:
            assert c.anchor == min(c.vertices)
    assert count_clusters(g, g.n).counts == expected


def test_rooted_counts_match_set_growth():
    g = sector_graph(toric_code(5), "x")
    census = count_clusters(g, 5, root=3)
    assert census.per_vertex and census.root == 3
    assert census.counts == rooted_set_growth(g, 3, 5)


@pytest.mark.parametrize("z", [3, 4, 6])
def test_tree_formula_on_truncated_trees(z):
    w_max = 6 if z < 6 else 5
    tree = truncated_tree(z, w_max - 1)
    assert rooted_set_growth(tree, 0, w_max) == {w: tree_cluster_count(z, w) for w in range(1, w_max + 1)}
    assert count_clusters(tree, w_max, root=0).counts == rooted_set_growth(tree, 0, w_max)


def test_tree_values():
    assert tree_cluster_count(6, 2) == 6
    assert tree_cluster_count(6, 3) == 45 == 3 * 6 * 5 // 2
    assert tree_cluster_count(4, 4) == 88
    assert tree_cluster_count(2, 5) == 5
    with pytest.raises(ValueError):
        tree_cluster_count(3, 0)


def test_per_vertex_counts_below_tree():
    g = random_graph(11, 0.35, 3)
    z = g.max_degree
    for v in range(g.n):
        census = count_clusters(g, 6, root=v)
        for w, c in census.counts.items():
            assert c <= tree_cluster_count(z, w)


def test_workers_do_not_change_counts():
    g = sector_graph(toric_code(6), "x")
    assert count_clusters(g, 5, workers=1).counts == count_clusters(g, 5, workers=3).counts


def test_timeout_flags_partial_census():
    g = sector_graph(toric_code(12), "x")
    census = count_clusters(g, 14, root=0, time_limit=0.05)
    assert not census.complete


def test_fit_recovers_exact_exponential():
    A, y = 0.7, 5.2
    counts = {w: A * y**w for w in range(1, 11)}
    census = ClusterCensus(counts=counts, w_max=10, n=0)
    fit = fit_growth(census, 3, 10)
    assert math.isclose(fit.A, A, rel_tol=1e-9)
    assert math.isclose(fit.y, y, rel_tol=1e-9)
    assert math.isclose(fit.z_eff, y / math.e + 1, rel_tol=1e-12)
    assert "w_lo=3\nw_hi=10" in fit.to_text()


def test_fit_needs_three_points():
    census = ClusterCensus(counts={1: 1, 2: 2}, w_max=2, n=2)
    with pytest.raises(ValueError):
        fit_growth(census, 1, 2)


def test_isolated_vertices():
    g = ConnectivityGraph(3, ((), (), ()))
    assert count_clusters(g, 2).counts == {1: 3, 2: 0}
