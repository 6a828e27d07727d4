import pytest
from hypothesis import given, settings

from edgecut.constructions import (
    PresentedGraph, PresentedRay, TprimeMap, build_GX, build_Tprime, check_homeomorphism_witness,
    correspondence_report, edge_dominating_vertices, phi, tree_edge_ids,
)
from edgecut.end_space import (
    ROOT, BulkGroup, Cardinality, NodeSpec, Point, Ref, SymbolicTree, canonical_ray, is_first_countable, truncate,
)
from edgecut.errors import EdgeCutError
from edgecut.fin_sep_tree import fundamental_cut
from edgecut.generators import binary_tree, random_symbolic_tree

from strategies import small_symbolic_trees


@pytest.fixture
def marked_branch():
    """Binary tree whose left child of the root is the only marked node."""
    b = NodeSpec(children=(("0", Ref("b")), ("1", Ref("b"))))
    m = NodeSpec(marked=True, children=(("0", Ref("b")), ("1", Ref("b"))))
    root = NodeSpec(children=(("0", Ref("m")), ("1", Ref("b"))))
    return SymbolicTree(root, {"b": b, "m": m})


def _cuts_of(realized):
    tree = realized.edge_subgraph(tree_edge_ids(realized))
    return {eid: fundamental_cut(realized, tree, eid) for eid in tree_edge_ids(realized)}


def test_gx_pads_marked_nodes_of_finite_degree(marked_branch):
    graph = build_GX(marked_branch)
    assert graph.base.spec_at(("0",)).padding
    assert not graph.base.spec_at(("1",)).padding
    assert not graph.base.root.padding


def test_gx_truncation_adds_the_ray(marked_branch):
    realized = build_GX(marked_branch).truncate(3, 3)
    rays = sorted(eid for eid in realized.edge_ids if eid.startswith("r:"))
    assert rays == [f"r:root/0:{i}" for i in range(4)]
    assert realized.edge("r:root/0:0").endpoints == ("root/0/0", "root/0/1")
    assert realized.edge("r:root/0:1").endpoints == ("root/0/+0", "root/0/1")
    assert _cuts_of(realized)["t:root/0/+1"].size == 3


def test_gx_ray_ids_do_not_depend_on_the_witness_count():
    graph = build_GX(SymbolicTree(NodeSpec(marked=True, padding=True)))
    assert "r:root:0" in graph.truncate(1, 3).edge_ids
    realized = graph.truncate(1, 12)
    assert "r:root:0" in realized.edge_ids
    assert realized.edge("r:root:10").endpoints == ("root/+10", "root/+11")


def test_gx_selection_stops_at_an_infinite_group():
    spec = NodeSpec(marked=True, bulk=BulkGroup(Cardinality.parse("countable"), NodeSpec()), padding=True)
    graph = build_GX(SymbolicTree(spec))
    rays = sorted(eid for eid in graph.truncate(1, 3).edge_ids if eid.startswith("r:"))
    assert rays == ["r:root:0", "r:root:1"]
    assert graph.truncate(1, 3).edge("r:root:1").endpoints == ("root/*1", "root/*2")


@pytest.mark.parametrize("seed", range(20))
def test_gx_truncations_extend_each_other(seed):
    graph = build_GX(random_symbolic_tree(seed, specs=3, max_children=1))
    for depth, witnesses in ((1, 2), (2, 2), (2, 3)):
        small = graph.truncate(depth, witnesses)
        large = graph.truncate(depth + 1, witnesses + 1)
        for edge in small.edges:
            assert large.edge(edge.id).endpoints == edge.endpoints, edge.id


def test_gx_child_order_override(marked_branch):
    graph = PresentedGraph(build_GX(marked_branch).base, {"m": ("1", "0", "+")})
    realized = graph.truncate(2, 2)
    assert realized.edge("r:root/0:0").endpoints == ("root/0/0", "root/0/1")
    assert realized.edge("r:root/0:1").endpoints == ("root/0/+0", "root/0/0")
    padding_first = PresentedGraph(graph.base, {"m": ("+", "1", "0")}).truncate(2, 2)
    assert sorted(eid for eid in padding_first.edge_ids if eid.startswith("r:")) == ["r:root/0:0"]
    assert padding_first.edge("r:root/0:0").endpoints == ("root/0/+0", "root/0/+1")
    with pytest.raises(EdgeCutError) as info:
        PresentedGraph(graph.base, {"m": ("0",)})
    assert info.value.code == "badformat"
    with pytest.raises(EdgeCutError):
        PresentedGraph(graph.base, {"nowhere": ()})


def test_fundamental_cuts_stay_small():
    trees = [binary_tree(marked=True)] + [random_symbolic_tree(seed, specs=3, max_children=2) for seed in range(20)]
    for tree in trees:
        realized = build_GX(tree).truncate(2, 2)
        for eid, cut in _cuts_of(realized).items():
            assert cut.size <= 3, eid


def test_phi_of_an_added_ray(countable_fan, marked_branch):
    graph = build_GX(countable_fan)
    assert phi(graph, PresentedRay.fan(graph, ROOT), 2) == Point.at(ROOT)
    branch = build_GX(marked_branch)
    assert phi(branch, PresentedRay.fan(branch, ("0",)), 3) == Point.at(("0",))


def test_phi_of_an_added_ray_below_the_requested_depth(marked_branch):
    graph = build_GX(marked_branch)
    point = phi(graph, PresentedRay.fan(graph, ("0",)), 0)
    assert point == Point.at(("0",))
    assert not point.is_end
    assert point.prefix(1) == ("0",)
    assert repr(point)


def test_phi_of_a_tree_ray(countable_fan):
    graph = build_GX(countable_fan)
    result = phi(graph, PresentedRay.tree(canonical_ray(graph.base, ("*0",))), 2)
    assert result.is_end
    assert result.node == ("*0", "~")
    assert result.resolved_depth == 2


def test_phi_is_injective_on_sampled_rays(countable_fan):
    graph = build_GX(countable_fan)
    rays = [PresentedRay.fan(graph, ROOT)] + [
        PresentedRay.tree(canonical_ray(graph.base, (f"*{j}",))) for j in range(3)
    ]
    results = [phi(graph, ray, 3, witnesses=3) for ray in rays]
    assert len({(p.kind, p.node) for p in results}) == len(rays)


@settings(derandomize=True, deadline=None, max_examples=25)
@given(small_symbolic_trees(allow_uncountable=True))
def test_phi_on_random_trees(tree):
    graph = build_GX(tree)
    realized = truncate(graph.base, 2, 1)
    marked = [v for v in realized.nodes if realized.nodes[v]["marked"]]
    for x in marked:
        for depth in (0, 2, 5):
            assert phi(graph, PresentedRay.fan(graph, x), depth, witnesses=1) == Point.at(x)
    keys = [(Point.NODE, x) for x in marked]
    for v in realized.nodes:
        if len(v) != 2 or not graph.base.has_end(realized.nodes[v]["spec"]):
            continue
        ray = PresentedRay.tree(canonical_ray(graph.base, v))
        shallow = phi(graph, ray, 2, witnesses=1)
        deep = phi(graph, ray, 5, witnesses=1)
        assert shallow.is_end and shallow.node == v
        assert deep.is_end and deep.node[:2] == shallow.node
        keys.append((Point.END, shallow.node))
    assert len(set(keys)) == len(keys)


def test_added_ray_needs_a_marked_node(marked_branch):
    graph = build_GX(marked_branch)
    with pytest.raises(EdgeCutError) as info:
        PresentedRay.fan(graph, ("1",))
    assert info.value.code == "notaray"


def test_edge_dominating_vertices(countable_fan):
    graph = build_GX(countable_fan)
    assert edge_dominating_vertices(graph, PresentedRay.fan(graph, ROOT), 2, 2) == {"root"}
    tree_ray = PresentedRay.tree(canonical_ray(graph.base, ("*0",)))
    assert edge_dominating_vertices(graph, tree_ray, 2, 2) == {"root/*0/~"}


def test_tprime_of_a_fan(countable_fan):
    image = build_Tprime(countable_fan)
    assert [label for label, _ in image.root.children] == ["r", "s"]
    assert "n0.tail" in image.definitions
    assert is_first_countable(image).metrizable
    h = TprimeMap(countable_fan)
    assert h.h(Point.at(ROOT)).prefix(3) == ("s", "s", "s")
    end = Point.end(canonical_ray(countable_fan, ("*2",)))
    assert h.h(end).prefix(5) == ("s", "s", "r", "~", "~")


def test_tprime_of_a_marked_binary_tree():
    tree = binary_tree(marked=True)
    h = TprimeMap(tree)
    assert set(h.image.definitions) == {"n0", "n0.s2", "n0.bare"}
    assert h.h(Point.at(("1",))).prefix(4) == ("s", "r", "s", "s")
    assert h.untranslate(("s", "r", "s")) == (("1",), 2)
    assert h.untranslate(("r", "r")) == (("0", "0"), 1)


def test_continuity_witness_for_the_fan(countable_fan):
    h = TprimeMap(countable_fan)
    basic = h.basic_open_for(("s",))
    assert basic.anchor == ROOT
    assert basic.cut == {("*0",), ("*1",)}
    assert h.basic_open_for(("s", "s")).cut == {("*0",), ("*1",), ("*2",)}
    assert h.basic_open_for(ROOT).cut == {("*0",)}


def test_continuity_witness_below_the_root():
    h = TprimeMap(binary_tree(marked=True))
    basic = h.basic_open_for(("r", "s"))
    assert basic.anchor == ("0",)
    assert basic.cut == {("0",), ("0", "0"), ("0", "1")}


def test_tprime_refuses_non_metrizable(star_tree):
    with pytest.raises(EdgeCutError) as info:
        build_Tprime(star_tree)
    assert info.value.code == "notmetrizable"
    assert info.value.details["witness"] == ["root"]


def test_untranslate_rejects_foreign_nodes(countable_fan):
    with pytest.raises(EdgeCutError) as info:
        TprimeMap(countable_fan).untranslate(("q",))
    assert info.value.code == "unknownnode"


@pytest.mark.parametrize("marked", [True, False])
@pytest.mark.parametrize("depth", [2, 3, 4, 5])
def test_correspondence_on_binary_trees(marked, depth):
    report = correspondence_report(binary_tree(marked=marked), depth, 2)
    assert report.ok, report.failures


def test_correspondence_and_homeomorphism_on_the_fan(countable_fan):
    report = correspondence_report(countable_fan, 2, 2)
    assert report.ok, report.failures
    assert report.points == 3
    witness = check_homeomorphism_witness(countable_fan, build_Tprime(countable_fan), 2)
    assert witness.ok, witness.failures
    directions = {w.direction for w in witness.witnesses}
    assert directions == {"continuity", "openness"}


def test_homeomorphism_on_a_marked_binary_tree():
    tree = binary_tree(marked=True)
    for depth in (2, 3):
        report = check_homeomorphism_witness(tree, build_Tprime(tree), depth)
        assert report.ok, report.failures


def test_homeomorphism_detects_a_foreign_tprime(countable_fan):
    report = check_homeomorphism_witness(countable_fan, binary_tree(), 1)
    assert not report.ok


@pytest.mark.parametrize("seed", range(20))
def test_random_trees_correspond(seed):
    tree = random_symbolic_tree(seed, specs=3, max_children=1, allow_uncountable=False)
    for depth in (2, 3):
        report = correspondence_report(tree, depth, 1)
        assert report.ok, report.failures
    witness = check_homeomorphism_witness(tree, build_Tprime(tree), 2, witnesses=1)
    assert witness.ok, witness.failures
