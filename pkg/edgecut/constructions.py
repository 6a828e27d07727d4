"""
The two constructions that connect tree end spaces with edge-end spaces.

build_GX turns a tree T with marked set X into a graph whose base tree is
finitely separating: every marked node x gets a ray through a countable
selection t_1, t_2, ... of its children, so the added ray R_x converges to x.
build_Tprime goes the other way and replaces every marked node by a spine
s_1 s_2 ... carrying its children, which turns X into the end space of a new
tree. TprimeMap is the natural bijection h between the two point sets.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple

import networkx as nx
from tqdm import tqdm

from .end_space import (
    BULK_PREFIX, LEAF, PADDING_PREFIX, ROOT, BasicOpen, BulkGroup, NodeId, NodeSpec, Point, RayHandle, Ref,
    SymbolicTree, basic_open_membership, canonical_ray, is_first_countable, node_path, realized_points,
    relevant_child_labels, render_node, truncate,
)
from .errors import EdgeCutError
from .fin_sep_tree import fundamental_cut
from .graph_core import Edge, MultiGraph, components_after_deletion

logger = logging.getLogger(__name__)

TREE_EDGE = "t:"
RAY_EDGE = "r:"
IRRELEVANT = "i:"
SPINE = "s"
HANG = "r"


def default_child_order(spec: NodeSpec) -> Tuple[str, ...]:
    """Explicit labels, then the bulk group, then the padding group."""
    order = [label for label, _ in spec.children]
    if spec.bulk is not None:
        order.append(BULK_PREFIX)
    if spec.padding:
        order.append(PADDING_PREFIX)
    return tuple(order)


@dataclass(frozen=True, eq=False)
class PresentedGraph:
    """
    A base tree plus, at every marked node, ray edges between consecutive
    children in a fixed selection order. Orders default to
    default_child_order and may be overridden per named specification.
    """

    base: SymbolicTree
    orders: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for name, order in self.orders.items():
            spec = self.base.root if name == "root" else self.base.definitions.get(name)
            if spec is None:
                raise EdgeCutError("badformat", f"rayEdges refers to unknown definition {name!r}")
            if sorted(order) != sorted(default_child_order(spec)):
                raise EdgeCutError("badformat", f"childOrder of {name!r} must list every child group once")

    def child_order(self, spec: NodeSpec) -> Tuple[str, ...]:
        name = self.base.name_of(spec)
        return tuple(self.orders.get(name, default_child_order(spec))) if name else default_child_order(spec)

    def selection(self, spec: NodeSpec, labels: List[str]) -> List[str]:
        """
        The given child labels arranged in selection order. The selection ends
        at the first group that is infinite or only partly realized, so the
        chain of a deeper truncation extends this one.
        """
        present = set(labels)
        chosen = []
        for token in self.child_order(spec):
            if token in (BULK_PREFIX, PADDING_PREFIX):
                group = [label for label in labels if label.startswith(token)]
                chosen.extend(sorted(group, key=lambda label: int(label[1:])))
                if token == PADDING_PREFIX or spec.bulk.card.is_infinite or len(group) < spec.bulk.card.n:
                    break
            elif token in present:
                chosen.append(token)
        return chosen

    def truncate(self, depth: int, witnesses: int) -> MultiGraph:
        """
        Realizes the truncation: tree edges `t:<child>` and ray edges
        `r:<x>:<i>` between the i-th and (i+1)-th realized selected children.
        """
        realized = truncate(self.base, depth, witnesses)
        edges = [
            Edge(TREE_EDGE + render_node(child), render_node(parent), render_node(child))
            for parent, child in realized.edges
        ]
        for x in realized.nodes:
            spec = realized.nodes[x]["spec"]
            if not spec.marked:
                continue
            labels = [child[-1] for child in realized.successors(x)]
            chain = self.selection(spec, labels)
            for i, (a, b) in enumerate(zip(chain, chain[1:])):
                edges.append(Edge(f"{RAY_EDGE}{render_node(x)}:{i}", render_node(x + (a,)), render_node(x + (b,))))
        graph = MultiGraph((render_node(v) for v in realized.nodes), edges)
        logger.debug(f"Truncated presentation at depth {depth}: {len(graph)} vertices, {len(graph.edges)} edges")
        return graph


def tree_edge_ids(graph: MultiGraph) -> FrozenSet[str]:
    return frozenset(eid for eid in graph.edge_ids if eid.startswith(TREE_EDGE))


def build_GX(tree: SymbolicTree) -> PresentedGraph:
    """Marked nodes of finite degree first get a countable group of new leaves."""

    def pad(spec: NodeSpec) -> NodeSpec:
        if spec.marked and not spec.infinite_degree:
            return replace(spec, padding=True)
        return spec

    padded = tree.transform(pad)
    logger.info(f"G_X over {len(padded.specs)} specifications")
    return PresentedGraph(base=padded)


@dataclass(frozen=True)
class PresentedRay:
    """Either the added ray R_x at a marked node x or a rooted ray of the base tree."""

    kind: str
    node: Optional[NodeId] = None
    ray: Optional[RayHandle] = None

    FAN = "fan"
    TREE = "tree"

    @classmethod
    def fan(cls, graph: PresentedGraph, x: NodeId) -> "PresentedRay":
        if not graph.base.spec_at(x).marked:
            raise EdgeCutError("notaray", f"No added ray at unmarked node {render_node(x)}", {"node": node_path(x)})
        return cls(cls.FAN, node=tuple(x))

    @classmethod
    def tree(cls, ray: RayHandle) -> "PresentedRay":
        return cls(cls.TREE, ray=ray)

    def tail_side(self, child: NodeId) -> bool:
        """Whether the tail of the ray lies in the up-closure of child."""
        if self.kind == self.FAN:
            return len(child) <= len(self.node) and self.node[:len(child)] == child
        return self.ray.prefix(len(child)) == child

    def toward(self, node: NodeId) -> Optional[str]:
        if self.kind == self.FAN:
            if len(node) < len(self.node) and self.node[:len(node)] == node:
                return self.node[len(node)]
            return None
        step = self.ray.prefix(len(node) + 1)
        return step[-1] if step[:-1] == node else None

    def path_nodes(self, depth: int) -> List[NodeId]:
        head = self.node if self.kind == self.FAN else self.ray.prefix(depth)
        return [head[:i] for i in range(min(len(head), depth) + 1)]


def phi(graph: PresentedGraph, ray: PresentedRay, depth: int, witnesses: int = 2) -> Point:
    """
    Orients every realized base-tree edge up to `depth` toward the side that
    holds the tail of the ray and returns the node all arrows point to; when
    the arrows leave the truncation the result is an end resolved to `depth`.
    """
    if ray.kind == PresentedRay.FAN:
        # R_x converges to x, so x has to be realized
        depth = max(depth, len(ray.node))
    realized = truncate(graph.base, depth, witnesses)
    nodes = set(realized.nodes) | set(ray.path_nodes(depth))
    arrows = nx.DiGraph()
    arrows.add_nodes_from(nodes)
    for child in nodes:
        if child == ROOT:
            continue
        parent = child[:-1]
        if ray.tail_side(child):
            arrows.add_edge(parent, child)
        else:
            arrows.add_edge(child, parent)
    sinks = sorted(v for v in arrows if arrows.out_degree(v) == 0)
    if len(sinks) != 1:
        raise EdgeCutError(
            "internal", "Edge orientation has no unique sink", {"sinks": [node_path(s) for s in sinks]}
        )
    sink = sinks[0]
    if len(sink) == depth and ray.toward(sink) is not None:
        return Point(Point.END, node=sink, ray=ray.ray, resolved_depth=depth)
    return Point.at(sink)


def edge_dominating_vertices(graph: PresentedGraph, ray: PresentedRay, depth: int, witnesses: int) -> FrozenSet[str]:
    """
    Vertices of the truncation lying on the tail side of every base-tree
    fundamental cut: the vertices no such finite cut separates from the ray.
    """
    realized = graph.truncate(depth, witnesses)
    tree = realized.edge_subgraph(tree_edge_ids(realized))
    survivors = realized.vertex_set
    for eid in sorted(tree_edge_ids(realized)):
        cut = fundamental_cut(realized, tree, eid)
        child_name = tree.edge(eid).id[len(TREE_EDGE):]
        child = tuple(child_name.split("/")[1:])
        sides = components_after_deletion(realized, cut.edges)
        holding_child = next(r.vertices for r in sides if child_name in r.vertices)
        survivors &= holding_child if ray.tail_side(child) else realized.vertex_set - holding_child
    return survivors


class TprimeMap:
    """
    The tree T' together with the bijection h from X onto the ends of T'.
    h sends a marked node x to its spine and an end to the translated ray.
    """

    def __init__(self, original: SymbolicTree):
        verdict = is_first_countable(original)
        if not verdict.metrizable:
            raise EdgeCutError("notmetrizable", verdict.reason, {"witness": node_path(verdict.witness)})
        self.original = original
        self.image = self._build()

    # -- relevant children

    def _explicit_split(self, spec: NodeSpec) -> Tuple[List[str], List[str]]:
        relevant, irrelevant = [], []
        for label, child in spec.children:
            (relevant if self.original.meets_x(self.original.resolve(child)) else irrelevant).append(label)
        return relevant, irrelevant

    def _bulk_relevant(self, spec: NodeSpec) -> bool:
        return (
            spec.bulk is not None
            and spec.bulk.card.admits(0)
            and self.original.meets_x(self.original.resolve(spec.bulk.pattern))
        )

    def relevant_label(self, spec: NodeSpec, k: int) -> Optional[str]:
        """Label of the k-th child (from 1) whose up-closure meets X."""
        explicit, _ = self._explicit_split(spec)
        if 1 <= k <= len(explicit):
            return explicit[k - 1]
        j = k - len(explicit) - 1
        if j >= 0 and self._bulk_relevant(spec) and spec.bulk.card.admits(j):
            return f"{BULK_PREFIX}{j}"
        return None

    def relevant_index(self, spec: NodeSpec, label: str) -> Optional[int]:
        explicit, _ = self._explicit_split(spec)
        if label in explicit:
            return explicit.index(label) + 1
        if label.startswith(BULK_PREFIX) and self._bulk_relevant(spec):
            return len(explicit) + int(label[1:]) + 1
        return None

    # -- construction

    def _build(self) -> SymbolicTree:
        tree = self.original
        names = {spec: f"n{i}" for i, spec in enumerate(s for s in tree.specs if s is not LEAF)}
        definitions: Dict[str, NodeSpec] = {}

        def ref(child) -> Ref:
            return Ref(names[tree.resolve(child)])

        for spec, name in names.items():
            if not spec.marked:
                definitions[name] = NodeSpec(
                    children=tuple((label, ref(c)) for label, c in spec.children),
                    bulk=None if spec.bulk is None else BulkGroup(spec.bulk.card, ref(spec.bulk.pattern)),
                    padding=spec.padding,
                )
                continue
            definitions.update(self._spine(spec, name, ref))

        image = SymbolicTree(definitions[names[tree.root]], definitions)
        logger.info(f"T' has {len(image.specs)} reachable specifications")
        return image

    def _spine(self, spec: NodeSpec, name: str, ref) -> Dict[str, NodeSpec]:
        explicit, irrelevant = self._explicit_split(spec)
        bulk_relevant = self._bulk_relevant(spec)
        countable = bulk_relevant and spec.bulk.card.is_infinite
        hosts = [ref(dict(spec.children)[label]) for label in explicit]
        if bulk_relevant and not countable:
            hosts.extend(ref(spec.bulk.pattern) for _ in range(spec.bulk.card.n))
        tail, bare = f"{name}.tail", f"{name}.bare"

        def spine_name(k: int) -> str:
            if k <= len(hosts):
                return name if k == 1 else f"{name}.s{k}"
            return tail if countable else bare

        def hung(k: int) -> Tuple[Tuple[str, Ref], ...]:
            if k <= len(hosts):
                return ((HANG, hosts[k - 1]),)
            return ((HANG, ref(spec.bulk.pattern)),) if countable else ()

        out: Dict[str, NodeSpec] = {}
        first_children = tuple((IRRELEVANT + label, ref(dict(spec.children)[label])) for label in irrelevant)
        first_children += hung(1) + ((SPINE, Ref(spine_name(2))),)
        keep_bulk = spec.bulk if spec.bulk is not None and not bulk_relevant else None
        out[name] = NodeSpec(
            children=first_children,
            bulk=None if keep_bulk is None else BulkGroup(keep_bulk.card, ref(keep_bulk.pattern)),
            padding=spec.padding,
        )
        for k in range(2, len(hosts) + 1):
            out[f"{name}.s{k}"] = NodeSpec(children=hung(k) + ((SPINE, Ref(spine_name(k + 1))),))
        if countable:
            out[tail] = NodeSpec(children=((HANG, ref(spec.bulk.pattern)), (SPINE, Ref(tail))))
        else:
            out[bare] = NodeSpec(children=((SPINE, Ref(bare)),))
        return out

    # -- the map h

    def translate_labels(self, labels) -> Iterator[str]:
        spec = self.original.root
        for label in labels:
            if spec.marked:
                k = self.relevant_index(spec, label)
                if k is not None:
                    yield from [SPINE] * (k - 1) + [HANG]
                elif any(label == name for name, _ in spec.children):
                    yield IRRELEVANT + label
                else:
                    yield label
            else:
                yield label
            spec = self.original.child_spec(spec, label)

    def translate(self, node: NodeId) -> NodeId:
        return tuple(self.translate_labels(node))

    def h(self, point: Point) -> RayHandle:
        if point.is_end:
            source = point.ray
            return RayHandle(self.image, lambda: self.translate_labels(source.labels()), f"h({source.description})")
        x = point.node
        if not self.original.spec_at(x).marked:
            raise EdgeCutError("notinX", f"{render_node(x)} is not a marked node", {"node": node_path(x)})
        return RayHandle.following(self.image, self.translate(x), lambda: itertools.repeat(SPINE), f"h({render_node(x)})")

    def untranslate(self, node: NodeId) -> Tuple[NodeId, Optional[int]]:
        """
        The node v of T that a node of T' belongs to, and the index k of the
        spine node s_k when v is marked.
        """
        tree = self.original
        spec, v = tree.root, ()
        k = 1 if spec.marked else None
        for label in node:
            if spec.marked and label == SPINE:
                k += 1
                continue
            if spec.marked and label == HANG:
                child = self.relevant_label(spec, k)
            elif spec.marked and k == 1 and label.startswith(IRRELEVANT):
                child = label[len(IRRELEVANT):]
            elif not spec.marked:
                child = label
            elif k == 1 and label[:1] in (BULK_PREFIX, PADDING_PREFIX) and self.relevant_index(spec, label) is None:
                child = label
            else:
                child = None
            if child is None:
                raise EdgeCutError("unknownnode", f"{render_node(node)} is not a node of T'", {"node": node_path(node)})
            v = v + (child,)
            spec = tree.child_spec(spec, child)
            k = 1 if spec.marked else None
        return v, k

    def basic_open_for(self, node: NodeId) -> BasicOpen:
        """The basic open of T whose X-points h maps onto the up-closure of a node of T'."""
        v, k = self.untranslate(node)
        cut = {v} if v != ROOT else set()
        spec = self.original.spec_at(v)
        for i in range(1, k + 1 if k else 1):
            label = self.relevant_label(spec, i)
            if label is not None:
                cut.add(v + (label,))
        return BasicOpen.component(cut, v)

    def some_point_below(self, v: NodeId) -> Point:
        spec = self.original.spec_at(v)
        if self.original.has_end(spec):
            return Point.end(canonical_ray(self.original, v))
        for node in truncate(self.original, len(v) + len(self.original.specs), 1, base=v):
            if self.original.spec_at(node).marked:
                return Point.at(node)
        raise EdgeCutError("internal", f"No point of X below {render_node(v)}")


def build_Tprime(tree: SymbolicTree) -> SymbolicTree:
    return TprimeMap(tree).image


@dataclass(frozen=True)
class CorrespondenceReport:
    depth: int
    points: int
    image_depth: int
    injective: bool
    failures: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.injective and not self.failures


def correspondence_report(tree: SymbolicTree, depth: int, witnesses: int) -> CorrespondenceReport:
    """
    Checks h on the truncated point set: distinct points get distinct images,
    every image pulls back to its point, every realized end of T' is hit,
    and images do not change when the truncation deepens.
    """
    h = TprimeMap(tree)
    points = realized_points(tree, depth, witnesses)
    heads = [p.node if not p.is_end else p.prefix(depth) for p in points]
    image_depth = max((len(h.translate(head)) for head in heads), default=0) + 1
    images = [h.h(p).prefix(image_depth) for p in points]
    failures = []

    for p, head, image in zip(points, heads, images):
        v, k = h.untranslate(image)
        if p.is_end and v[:depth] != head:
            failures.append(f"image of {p!r} pulls back to {render_node(v)}")
        if not p.is_end and (v != head or k is None):
            failures.append(f"image of {p!r} pulls back to {render_node(v)}")
        if h.h(p).prefix(image_depth + 1)[:image_depth] != image:
            failures.append(f"image of {p!r} is not prefix-monotone")

    image_tree = truncate(h.image, image_depth, witnesses)
    for z in image_tree.nodes:
        if len(z) != image_depth or not h.image.has_end(image_tree.nodes[z]["spec"]):
            continue
        v, k = h.untranslate(z)
        preimage = Point.at(v) if k is not None else h.some_point_below(v)
        if h.h(preimage).prefix(image_depth) != z:
            failures.append(f"end of T' through {render_node(z)} is not an image")

    deeper = {p.node: h.h(p).prefix(image_depth) for p in realized_points(tree, depth + 1, witnesses) if not p.is_end}
    for p, image in zip(points, images):
        if not p.is_end and deeper.get(p.node) != image:
            failures.append(f"image of {p!r} changed at depth {depth + 1}")

    report = CorrespondenceReport(
        depth=depth,
        points=len(points),
        image_depth=image_depth,
        injective=len(set(images)) == len(images),
        failures=tuple(failures),
    )
    logger.info(f"Correspondence at depth {depth}: {report.points} points, ok={report.ok}")
    return report


@dataclass(frozen=True)
class HomeomorphismWitness:
    direction: str
    tprime_node: NodeId
    anchor: NodeId
    cut: Tuple[NodeId, ...]
    checked: int
    ok: bool


@dataclass(frozen=True)
class HomeomorphismReport:
    depth: int
    witnesses: Tuple[HomeomorphismWitness, ...]
    failures: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_homeomorphism_witness(
    tree: SymbolicTree, tprime: SymbolicTree, depth: int, witnesses: int = 2, progress: bool = False
) -> HomeomorphismReport:
    """
    Continuity: every up-closure of a node of T' up to `depth` gets a finite
    edge set F of T whose component maps into it. Openness: every up-closure
    of a node of T and every basic neighbourhood C_n of a marked node gets a
    node of T' whose up-closure meets h(X) inside the image. Both are checked
    on the truncated point set.
    """
    h = TprimeMap(tree)
    failures: List[str] = []
    if set(truncate(tprime, depth, witnesses).nodes) != set(truncate(h.image, depth, witnesses).nodes):
        failures.append(f"T' differs from the construction at depth {depth}")

    points = realized_points(tree, depth + 1, witnesses)
    images: Dict[int, RayHandle] = {i: h.h(p) for i, p in enumerate(points)}

    def check(direction: str, t: NodeId, basic: BasicOpen) -> HomeomorphismWitness:
        ok = True
        for i, p in enumerate(points):
            inside = basic_open_membership(basic, p)
            hit = images[i].prefix(len(t)) == t
            if direction == "continuity" and inside and not hit:
                failures.append(f"{p!r} lies in the witness for {render_node(t)} but maps outside it")
                ok = False
            if direction == "openness" and hit and not inside:
                failures.append(f"{p!r} maps into {render_node(t)} but lies outside the open set")
                ok = False
        return HomeomorphismWitness(
            direction=direction,
            tprime_node=t,
            anchor=basic.anchor,
            cut=tuple(sorted(basic.cut or ())),
            checked=len(points),
            ok=ok,
        )

    found = []
    for t in tqdm(list(truncate(h.image, depth, witnesses).nodes), desc="Continuity", disable=not progress):
        if t != ROOT:
            found.append(check("continuity", t, h.basic_open_for(t)))

    for v in tqdm(list(truncate(tree, depth, witnesses).nodes), desc="Openness", disable=not progress):
        if v != ROOT:
            found.append(check("openness", h.translate(v), BasicOpen.component({v}, v)))
        spec = tree.spec_at(v)
        if not spec.marked:
            continue
        relevant = list(itertools.islice(relevant_child_labels(tree, spec), witnesses))
        for n in range(1, len(relevant) + 1):
            cut = ({v} if v != ROOT else set()) | {v + (label,) for label in relevant[:n]}
            found.append(check("openness", h.translate(v) + (SPINE,) * n, BasicOpen.component(cut, v)))

    report = HomeomorphismReport(depth=depth, witnesses=tuple(found), failures=tuple(failures))
    logger.info(f"Homeomorphism witnesses at depth {depth}: {len(found)} checked, {len(failures)} failures")
    return report
