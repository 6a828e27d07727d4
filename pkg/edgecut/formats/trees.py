"""
JSON for symbolic trees and presented graphs.

    {"define": {"name": <node>, ...}, "root": <node> | {"ref": "name"}}

A node is {"marked", "children", "bulk", "padding", "ray"}; a child entry is
a node or {"ref": name}, either with an optional "label". "ray" hangs an
infinite path under the node (child label "~"): true for a bare path, or
{"prefix": [...], "cycle": [...]} giving the content of each path node.
Generated definitions for such paths are named "~<n>.<i>".
"""
import json
from pathlib import Path
from typing import Dict, List, Union

from ..constructions import PresentedGraph
from ..end_space import BulkGroup, Cardinality, NodeSpec, RayHandle, Ref, SymbolicTree, parse_node, canonical_ray
from ..errors import EdgeCutError

RAY_LABEL = "~"


class _TreeParser:
    def __init__(self, definitions: Dict[str, NodeSpec]):
        self.definitions = definitions
        self.counter = 0

    def fresh(self) -> str:
        while f"~{self.counter}.0" in self.definitions:
            self.counter += 1
        name = f"~{self.counter}"
        self.counter += 1
        return name

    def child(self, entry, position: int):
        if not isinstance(entry, dict):
            raise EdgeCutError("badformat", f"Child entry must be an object, got {entry!r}")
        label = str(entry.get("label", position))
        if "ref" in entry:
            return label, Ref(str(entry["ref"]))
        return label, self.node(entry)

    def node(self, data) -> NodeSpec:
        if not isinstance(data, dict):
            raise EdgeCutError("badformat", f"Tree node must be an object, got {data!r}")
        if "ref" in data:
            raise EdgeCutError("badformat", "A reference cannot stand for a node here")
        children = [self.child(entry, i) for i, entry in enumerate(data.get("children", []))]
        bulk = data.get("bulk")
        group = None
        if bulk is not None:
            if not isinstance(bulk, dict) or "card" not in bulk or "pattern" not in bulk:
                raise EdgeCutError("badformat", "bulk needs 'card' and 'pattern'")
            _, pattern = self.child(bulk["pattern"], 0)
            group = BulkGroup(Cardinality.parse(bulk["card"]), pattern)
        ray = data.get("ray")
        if ray:
            children.append((RAY_LABEL, self.ray(ray)))
        return NodeSpec(
            marked=bool(data.get("marked", False)),
            children=tuple(children),
            bulk=group,
            padding=bool(data.get("padding", False)),
        )

    def ray(self, ray) -> Union[NodeSpec, Ref]:
        if ray is True:
            prefix, cycle = [], [{}]
        elif isinstance(ray, dict):
            prefix, cycle = list(ray.get("prefix", [])), list(ray.get("cycle", [{}]))
        else:
            raise EdgeCutError("badformat", f"Bad ray description {ray!r}")
        if not cycle:
            raise EdgeCutError("badformat", "A ray needs a nonempty cycle")
        name = self.fresh()
        names = [f"{name}.{i}" for i in range(len(cycle))]
        for i, entry in enumerate(cycle):
            self.definitions[names[i]] = self.extend(entry, Ref(names[(i + 1) % len(cycle)]))
        head: Union[NodeSpec, Ref] = Ref(names[0])
        for entry in reversed(prefix):
            head = self.extend(entry, head)
        return head

    def extend(self, entry, nxt) -> NodeSpec:
        spec = self.node(entry)
        return NodeSpec(spec.marked, spec.children + ((RAY_LABEL, nxt),), spec.bulk, spec.padding)


def tree_from_dict(data) -> SymbolicTree:
    if not isinstance(data, dict):
        raise EdgeCutError("badformat", "Tree JSON must be an object")
    if "root" not in data:
        data = {"define": {}, "root": data}
    definitions: Dict[str, NodeSpec] = {}
    parser = _TreeParser(definitions)
    for name, node in (data.get("define") or {}).items():
        definitions[str(name)] = parser.node(node)
    root = data["root"]
    if isinstance(root, dict) and "ref" in root:
        try:
            root_spec = definitions[str(root["ref"])]
        except KeyError:
            raise EdgeCutError("badformat", f"Unknown root reference {root['ref']!r}") from None
    else:
        root_spec = parser.node(root)
    return SymbolicTree(root_spec, definitions)


def _child_to_dict(tree: SymbolicTree, label: str, child) -> dict:
    if isinstance(child, Ref):
        return {"label": label, "ref": child.name}
    return {"label": label, **_node_to_dict(tree, child)}


def _node_to_dict(tree: SymbolicTree, spec: NodeSpec) -> dict:
    out = {
        "marked": spec.marked,
        "children": [_child_to_dict(tree, label, c) for label, c in spec.children],
    }
    if spec.bulk is not None:
        pattern = _child_to_dict(tree, "0", spec.bulk.pattern)
        pattern.pop("label")
        out["bulk"] = {"card": str(spec.bulk.card), "pattern": pattern}
    if spec.padding:
        out["padding"] = True
    return out


def tree_to_dict(tree: SymbolicTree) -> dict:
    root_name = next((name for name, spec in tree.definitions.items() if spec is tree.root), None)
    return {
        "define": {name: _node_to_dict(tree, spec) for name, spec in sorted(tree.definitions.items())},
        "root": {"ref": root_name} if root_name is not None else _node_to_dict(tree, tree.root),
    }


def presented_from_dict(data) -> PresentedGraph:
    if not isinstance(data, dict):
        raise EdgeCutError("badformat", "Presented graph JSON must be an object")
    tree = tree_from_dict({k: v for k, v in data.items() if k != "rayEdges"})
    orders = {}
    for rule in data.get("rayEdges", []):
        if not isinstance(rule, dict) or "at" not in rule or "childOrder" not in rule:
            raise EdgeCutError("badformat", "rayEdges entries need 'at' and 'childOrder'")
        orders[str(rule["at"])] = tuple(str(token) for token in rule["childOrder"])
    return PresentedGraph(base=tree, orders=orders)


def presented_to_dict(graph: PresentedGraph) -> dict:
    out = tree_to_dict(graph.base)
    rules = []
    for spec in graph.base.specs:
        name = graph.base.name_of(spec)
        if spec.marked and name is not None:
            rules.append({"at": name, "childOrder": list(graph.child_order(spec))})
    out["rayEdges"] = sorted(rules, key=lambda r: r["at"])
    return out


def ray_from_dict(tree: SymbolicTree, data) -> RayHandle:
    """{"prefix": [labels], "cycle": [labels]} or {"canonical": node path}."""
    if isinstance(data, dict) and "canonical" in data:
        return canonical_ray(tree, parse_node(data["canonical"]))
    if isinstance(data, dict) and "cycle" in data:
        return RayHandle.periodic(tree, [str(x) for x in data.get("prefix", [])], [str(x) for x in data["cycle"]])
    raise EdgeCutError("badformat", f"Bad ray description {data!r}")


def _read_json(path: Union[str, Path]):
    with open(path, "r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise EdgeCutError("badformat", f"Invalid JSON in {path}: {e}", {"path": str(path)}) from None


def load_tree(path: Union[str, Path]) -> SymbolicTree:
    return tree_from_dict(_read_json(path))


def load_presented(path: Union[str, Path]) -> PresentedGraph:
    return presented_from_dict(_read_json(path))


def load_rays(tree: SymbolicTree, path: Union[str, Path]) -> List[RayHandle]:
    data = _read_json(path)
    if not isinstance(data, list):
        raise EdgeCutError("badformat", "Ray file must hold a list of rays")
    return [ray_from_dict(tree, entry) for entry in data]
