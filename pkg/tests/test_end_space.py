import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings

from edgecut.end_space import (
    ROOT, BasicOpen, Cardinality, NodeSpec, Point, RayHandle, Ref, SymbolicTree, basic_open_membership,
    canonical_ray, end_distance, is_first_countable, marked_point, neighbourhood_base, parse_node,
    realized_points, render_node, truncate,
)
from edgecut.errors import EdgeCutError
from edgecut.generators import binary_tree, fan, ray_spec, uncountable_leaf_fan

import oracles
from strategies import small_symbolic_trees


def _binary_ray(prefix, cycle, tree=None):
    return Point.end(RayHandle.periodic(tree or binary_tree(), prefix, cycle))


def test_cardinality_tags():
    assert Cardinality.parse("finite:3") == Cardinality("finite", 3)
    assert str(Cardinality.parse("countable")) == "countable"
    assert not Cardinality.parse("uncountable").is_countable
    assert Cardinality.parse("finite:3").sample(5) == 3
    assert Cardinality.parse("uncountable").sample(5) == 5
    for bad in ("finite:x", "finite:-1", "many"):
        with pytest.raises(EdgeCutError) as info:
            Cardinality.parse(bad)
        assert info.value.code == "badformat"


def test_node_paths():
    assert parse_node("root/a/*2") == ("a", "*2")
    assert parse_node(["root"]) == ROOT
    assert render_node(("a", "+0")) == "root/a/+0"
    with pytest.raises(EdgeCutError):
        parse_node("a/b")


def test_child_labels_are_validated():
    with pytest.raises(EdgeCutError):
        SymbolicTree(NodeSpec(children=(("*0", NodeSpec()),)))
    with pytest.raises(EdgeCutError):
        SymbolicTree(NodeSpec(children=(("a", NodeSpec()), ("a", NodeSpec()))))


def test_truncate_examples():
    assert list(truncate(binary_tree(), 0, 3).nodes) == [ROOT]
    assert truncate(binary_tree(), 3, 1).number_of_nodes() == 15
    star = fan("countable", marked=False, rays=False)
    assert truncate(star, 1, 5).number_of_nodes() == 6
    finite = SymbolicTree(NodeSpec(bulk=replace(star.root.bulk, card=Cardinality.parse("finite:2"))))
    assert truncate(finite, 1, 5).number_of_nodes() == 3


def test_truncate_keeps_marks_and_padding():
    tree = SymbolicTree(NodeSpec(marked=True, padding=True))
    realized = truncate(tree, 1, 2)
    assert realized.nodes[ROOT]["marked"]
    assert sorted(realized.nodes) == [ROOT, ("+0",), ("+1",)]


def test_truncate_rejects_bad_ranges():
    with pytest.raises(EdgeCutError) as info:
        truncate(binary_tree(), -1, 2)
    assert info.value.code == "badrange"
    with pytest.raises(EdgeCutError):
        truncate(binary_tree(), 2, 0)


def test_first_countability_examples(star_tree, countable_fan):
    assert is_first_countable(binary_tree()).metrizable
    verdict = is_first_countable(star_tree)
    assert not verdict.metrizable
    assert verdict.witness == ROOT
    assert is_first_countable(uncountable_leaf_fan()).metrizable
    assert is_first_countable(countable_fan).metrizable
    assert is_first_countable(fan("uncountable", marked=False, rays=True)).metrizable


def test_witness_below_the_root():
    definitions = {"ray": ray_spec("ray")}
    inner = NodeSpec(marked=True, bulk=fan("uncountable").root.bulk)
    tree = SymbolicTree(NodeSpec(children=(("a", NodeSpec()), ("b", inner))), definitions)
    verdict = is_first_countable(tree)
    assert not verdict.metrizable
    assert verdict.witness == ("b",)


def test_only_subspaces_with_every_end():
    with pytest.raises(EdgeCutError) as info:
        is_first_countable(binary_tree(), include_all_ends=False)
    assert info.value.code == "unsupported"


@settings(derandomize=True, deadline=None, max_examples=50)
@given(small_symbolic_trees(allow_uncountable=True))
def test_verdict_ignores_leaves_at_unmarked_nodes(tree):
    padded = tree.transform(lambda spec: spec if spec.marked else replace(spec, padding=True))
    before, after = is_first_countable(tree), is_first_countable(padded)
    assert before.metrizable == after.metrizable
    assert before.witness == after.witness


def test_distance_examples():
    left, right = _binary_ray([], ["0"]), _binary_ray([], ["1"])
    assert end_distance(binary_tree(), left, left, 8) == 0
    assert end_distance(binary_tree(), left, right, 8) == 1
    p, q = _binary_ray(["0"] * 4, ["0"]), _binary_ray(["0"] * 4, ["1"])
    assert end_distance(binary_tree(), p, q, 10) == Fraction(1, 16)
    assert end_distance(binary_tree(), p, q, 4) == 0


def test_distance_needs_ends():
    with pytest.raises(EdgeCutError) as info:
        end_distance(binary_tree(), Point.at(("0",)), _binary_ray([], ["0"]), 4)
    assert info.value.code == "notanend"


def test_ultrametric_inequality():
    rng = random.Random(2024)
    tree = binary_tree()

    def sample():
        prefix = [rng.choice("01") for _ in range(rng.randint(0, 8))]
        cycle = [rng.choice("01") for _ in range(rng.randint(1, 3))]
        return _binary_ray(prefix, cycle, tree)

    for _ in range(1000):
        p, q, r = sample(), sample(), sample()
        assert end_distance(tree, p, r, 12) <= max(end_distance(tree, p, q, 12), end_distance(tree, q, r, 12))


def test_distance_matches_common_prefix():
    rng = random.Random(5)
    tree = binary_tree()
    for _ in range(100):
        a = [rng.choice("01") for _ in range(6)]
        b = [rng.choice("01") for _ in range(6)]
        split = oracles.common_prefix_depth(a, b)
        expected = Fraction(0) if split is None else Fraction(1, 2 ** split)
        assert end_distance(tree, _binary_ray(a, ["0"]), _binary_ray(b, ["0"]), 6) == expected


def test_ray_handles():
    tree = binary_tree()
    ray = RayHandle.periodic(tree, ["1"], ["0", "1"])
    assert ray.prefix(4) == ("1", "0", "1", "0")
    assert ray.clone().prefix(4) == ray.prefix(4)
    with pytest.raises(EdgeCutError) as info:
        RayHandle.periodic(tree, [], ["2"])
    assert info.value.code == "notaray"


def test_canonical_ray(countable_fan):
    assert canonical_ray(countable_fan).prefix(3) == ("*0", "~", "~")
    assert canonical_ray(countable_fan, ("*4",)).prefix(2) == ("*4", "~")
    with pytest.raises(EdgeCutError):
        canonical_ray(fan("countable", rays=False))


def test_marked_points(countable_fan):
    assert marked_point(countable_fan, ROOT) == Point.at(ROOT)
    with pytest.raises(EdgeCutError) as info:
        marked_point(countable_fan, ("*0",))
    assert info.value.code == "notinX"


def test_membership_examples():
    tree = uncountable_leaf_fan()
    ray = Point.end(canonical_ray(tree))
    assert basic_open_membership(BasicOpen.up(ROOT), ray)
    assert basic_open_membership(BasicOpen.up(ROOT), Point.at(ROOT))
    assert not basic_open_membership(BasicOpen.up(("*0",)), ray)
    assert basic_open_membership(BasicOpen.up(("ray",)), ray)


def test_component_membership_against_truncation():
    tree = binary_tree()
    rng = random.Random(9)
    depth = 6
    realized = truncate(tree, depth, 1)
    nodes = [v for v in realized.nodes if 1 <= len(v) <= 3]
    for _ in range(60):
        cut = set(rng.sample(nodes, 3))
        anchor = rng.choice(list(realized.nodes))
        if len(anchor) > 4:
            anchor = anchor[:4]
        basic = BasicOpen.component(cut, anchor)
        component = oracles.component_in_truncation(realized, cut, anchor)
        for _ in range(5):
            p = _binary_ray([rng.choice("01") for _ in range(depth)], ["0"], tree)
            assert basic_open_membership(basic, p) == (p.prefix(depth) in component)
        for v in realized.nodes:
            assert basic.contains_node(v) == (v in component)


def test_component_rejects_root_edge():
    with pytest.raises(EdgeCutError) as info:
        BasicOpen.component({ROOT}, ROOT)
    assert info.value.code == "notreeedge"


def test_neighbourhood_base_of_a_marked_root(countable_fan):
    base = neighbourhood_base(countable_fan, Point.at(ROOT), 3)
    assert [sorted(b.cut) for b in base] == [[("*0",)], [("*0",), ("*1",)], [("*0",), ("*1",), ("*2",)]]
    near, far = Point.end(canonical_ray(countable_fan, ("*0",))), Point.end(canonical_ray(countable_fan, ("*5",)))
    assert all(basic_open_membership(b, Point.at(ROOT)) for b in base)
    assert not any(basic_open_membership(b, near) for b in base)
    assert all(basic_open_membership(b, far) for b in base)


def test_neighbourhood_base_of_an_end():
    ray = _binary_ray([], ["1"])
    base = neighbourhood_base(binary_tree(), ray, 3)
    assert [b.anchor for b in base] == [("1",), ("1", "1"), ("1", "1", "1")]


def test_neighbourhood_base_rejects_uncountable(star_tree):
    with pytest.raises(EdgeCutError) as info:
        neighbourhood_base(star_tree, Point.at(ROOT), 2)
    assert info.value.code == "notmetrizable"


def test_realized_points(countable_fan):
    points = realized_points(countable_fan, 2, 2)
    assert [p.node for p in points if not p.is_end] == [ROOT]
    assert sorted(p.prefix(2) for p in points if p.is_end) == [("*0", "~"), ("*1", "~")]


def test_references_make_cycles():
    tree = SymbolicTree(NodeSpec(children=(("a", Ref("loop")),)), {"loop": ray_spec("loop")})
    assert tree.has_end(tree.root)
    assert tree.meets_x(tree.root)
    leafy = SymbolicTree(NodeSpec(children=(("a", NodeSpec()),)))
    assert not leafy.has_end(leafy.root)
    with pytest.raises(EdgeCutError) as info:
        tree.spec_at(("b",))
    assert info.value.code == "unknownnode"
