import itertools
import random

import pytest
from hypothesis import given, settings

from edgecut.edge_blocks import gomory_hu, k_edge_blocks, local_edge_connectivity
from edgecut.errors import EdgeCutError
from edgecut.generators import complete_bipartite, path, random_connected_multigraph
from edgecut.graph_core import build_graph
from edgecut.mincut import min_cut_between_sets

import oracles
from strategies import connected_multigraphs


def test_lambda_examples(k4):
    assert local_edge_connectivity(complete_bipartite(2, 5), "a0", "a1") == 5
    tree = path(5)
    for u, v in itertools.combinations(tree.vertices, 2):
        assert local_edge_connectivity(tree, u, v) == 1
    assert local_edge_connectivity(k4, "v0", "v3") == 3


def test_gomory_hu_of_a_tree_is_the_tree():
    tree = path(4)
    gh = gomory_hu(tree)
    assert {frozenset((e.child, e.parent)) for e in gh.edges} == {frozenset(e.endpoints) for e in tree.edges}
    assert all(e.weight == 1 for e in gh.edges)


def test_gomory_hu_k4(k4):
    gh = gomory_hu(k4)
    assert len(gh.edges) == 3
    assert all(e.weight == 3 for e in gh.edges)
    for u, v in itertools.combinations(k4.vertices, 2):
        assert gh.path_min(u, v) == 3


def test_gomory_hu_two_triangles(two_triangles):
    gh = gomory_hu(two_triangles)
    bridge = [e for e in gh.edges if e.cut.edges == {"e6"}]
    assert len(bridge) == 1 and bridge[0].weight == 1
    for u, v in itertools.combinations(["a0", "a1", "a2"], 2):
        assert gh.path_min(u, v) == 2


def test_gomory_hu_tree_edge_cuts_are_min_cuts(two_triangles):
    gh = gomory_hu(two_triangles)
    for e in gh.edges:
        assert e.cut.size == e.weight
        assert e.cut.separates({e.child}, {e.parent})


def test_gomory_hu_needs_connected_graph():
    with pytest.raises(EdgeCutError) as info:
        gomory_hu(build_graph([("a", "b"), ("c", "d")]))
    assert info.value.code == "disconnected"


def test_path_min_rejects_equal_endpoints(k4):
    with pytest.raises(EdgeCutError) as info:
        gomory_hu(k4).path_min("v0", "v0")
    assert info.value.code == "samevertex"


def test_blocks_examples(k4, two_triangles):
    assert k_edge_blocks(k4, 3).blocks == (frozenset(k4.vertices),)
    blocks = k_edge_blocks(two_triangles, 2)
    assert set(blocks.blocks) == {frozenset({"a0", "a1", "a2"}), frozenset({"b0", "b1", "b2"})}
    assert blocks.block_of("b1") == {"b0", "b1", "b2"}
    assert blocks.representative("a2") == "a0"


def test_blocks_k1_is_one_block(two_triangles):
    assert len(k_edge_blocks(two_triangles, 1)) == 1


def test_blocks_reject_bad_k(k4):
    with pytest.raises(EdgeCutError) as info:
        k_edge_blocks(k4, 0)
    assert info.value.code == "badk"


def test_path_min_on_seeded_family():
    for seed in range(60):
        rng = random.Random(seed)
        n = rng.randint(2, 6)
        g = random_connected_multigraph(n, rng.randint(n - 1, 9), seed)
        gh = gomory_hu(g)
        for (u, v), value in oracles.all_pairs_lambda(g).items():
            assert gh.path_min(u, v) == value


@settings(derandomize=True, deadline=None, max_examples=40)
@given(connected_multigraphs())
def test_blocks_match_lambda_classes(g):
    gh = gomory_hu(g)
    for k in (1, 2, 3, 4):
        assert set(k_edge_blocks(g, k, gh).blocks) == oracles.lambda_classes(g, k)


def test_lambda_triangle_inequality():
    for seed in range(40):
        rng = random.Random(seed)
        n = rng.randint(3, 6)
        g = random_connected_multigraph(n, rng.randint(n - 1, 9), seed)
        lam = {}
        for u, v in itertools.combinations(g.vertices, 2):
            lam[u, v] = lam[v, u] = local_edge_connectivity(g, u, v)
        for u, v, w in itertools.permutations(g.vertices, 3):
            assert lam[u, w] >= min(lam[u, v], lam[v, w])


@settings(derandomize=True, deadline=None, max_examples=40)
@given(connected_multigraphs())
def test_blocks_refine_as_k_grows(g):
    gh = gomory_hu(g)
    for k in (1, 2, 3, 4):
        coarse = k_edge_blocks(g, k, gh)
        for block in k_edge_blocks(g, k + 1, gh).blocks:
            assert block <= coarse.block_of(min(block))


@settings(derandomize=True, deadline=None, max_examples=40)
@given(connected_multigraphs())
def test_distinct_blocks_are_cut_by_fewer_than_k_edges(g):
    gh = gomory_hu(g)
    for k in (2, 3, 4):
        for one, other in itertools.combinations(k_edge_blocks(g, k, gh).blocks, 2):
            assert min_cut_between_sets(g, one, other).value < k
