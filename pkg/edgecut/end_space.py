"""
Rooted infinite trees given by finite presentations, and the subspaces X of
their node-and-end space that contain every end.

A tree is a set of node specifications. Each specification lists explicitly
labelled children, at most one bulk group of pattern-identical children with
a cardinality tag, and optionally a countable padding group of bare leaves.
Children may be named references into a table of definitions, which is how
infinite trees get finite descriptions. A node of the realized tree is the
tuple of child labels on its path from the root.

X consists of the marked nodes together with all ends. Points of X are
represented as nodes or as ray handles that produce a ray label by label.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

import networkx as nx

from .errors import EdgeCutError

logger = logging.getLogger(__name__)

NodeId = Tuple[str, ...]
ROOT: NodeId = ()

BULK_PREFIX = "*"
PADDING_PREFIX = "+"


@dataclass(frozen=True)
class Cardinality:
    kind: str
    n: Optional[int] = None

    FINITE = "finite"
    COUNTABLE = "countable"
    UNCOUNTABLE = "uncountable"

    @classmethod
    def parse(cls, text: str) -> "Cardinality":
        if text in (cls.COUNTABLE, cls.UNCOUNTABLE):
            return cls(text)
        if isinstance(text, str) and text.startswith("finite:"):
            try:
                n = int(text.split(":", 1)[1])
            except ValueError:
                n = -1
            if n >= 0:
                return cls(cls.FINITE, n)
        raise EdgeCutError("badformat", f"Bad cardinality tag {text!r}")

    def __str__(self) -> str:
        return f"finite:{self.n}" if self.kind == self.FINITE else self.kind

    @property
    def is_infinite(self) -> bool:
        return self.kind != self.FINITE

    @property
    def is_countable(self) -> bool:
        return self.kind != self.UNCOUNTABLE

    def sample(self, witnesses: int) -> int:
        return min(self.n, witnesses) if self.kind == self.FINITE else witnesses

    def admits(self, index: int) -> bool:
        return index >= 0 and (self.kind != self.FINITE or index < self.n)


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class BulkGroup:
    card: Cardinality
    pattern: "Child"


@dataclass(frozen=True, eq=False)
class NodeSpec:
    marked: bool = False
    children: Tuple[Tuple[str, "Child"], ...] = ()
    bulk: Optional[BulkGroup] = None
    padding: bool = False

    @property
    def infinite_degree(self) -> bool:
        return self.padding or (self.bulk is not None and self.bulk.card.is_infinite)


Child = Union[NodeSpec, Ref]

# shared by every padding group
LEAF = NodeSpec()


def render_node(node: NodeId) -> str:
    return "/".join(("root",) + tuple(node))


def node_path(node: NodeId) -> List[str]:
    return ["root", *node]


def parse_node(value: Union[str, Iterable[str]]) -> NodeId:
    parts = value.split("/") if isinstance(value, str) else list(value)
    if not parts or parts[0] != "root":
        raise EdgeCutError("badformat", f"Node paths start at 'root', got {value!r}")
    return tuple(str(p) for p in parts[1:])


@dataclass(frozen=True, eq=False)
class SymbolicTree:
    root: NodeSpec
    definitions: Mapping[str, NodeSpec] = field(default_factory=dict)

    def __post_init__(self):
        for spec in self.specs:
            for label, _ in spec.children:
                if not label or "/" in label or label[0] in (BULK_PREFIX, PADDING_PREFIX):
                    raise EdgeCutError("badformat", f"Bad explicit child label {label!r}")
            labels = [label for label, _ in spec.children]
            if len(set(labels)) != len(labels):
                raise EdgeCutError("badformat", f"Duplicate child labels {labels}")

    def resolve(self, child: Child) -> NodeSpec:
        if isinstance(child, Ref):
            try:
                return self.definitions[child.name]
            except KeyError:
                raise EdgeCutError("badformat", f"Unknown reference {child.name!r}") from None
        return child

    def name_of(self, spec: NodeSpec) -> Optional[str]:
        for name, candidate in self.definitions.items():
            if candidate is spec:
                return name
        return "root" if spec is self.root else None

    # -- the finite graph of specifications

    def _successors(self, spec: NodeSpec) -> List[NodeSpec]:
        found = [self.resolve(c) for _, c in spec.children]
        if spec.bulk is not None and spec.bulk.card.admits(0):
            found.append(self.resolve(spec.bulk.pattern))
        if spec.padding:
            found.append(LEAF)
        return found

    @cached_property
    def specs(self) -> List[NodeSpec]:
        """Reachable specifications in breadth-first order from the root."""
        order, seen = [self.root], {self.root}
        queue = deque([self.root])
        while queue:
            for nxt in self._successors(queue.popleft()):
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
        return order

    @cached_property
    def spec_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.specs)
        for spec in self.specs:
            graph.add_edges_from((spec, nxt) for nxt in self._successors(spec))
        return graph

    @cached_property
    def _with_end(self) -> FrozenSet[NodeSpec]:
        graph = self.spec_graph
        cyclic = {s for c in nx.strongly_connected_components(graph) if len(c) > 1 for s in c}
        cyclic.update(nx.nodes_with_selfloops(graph))
        return frozenset(s for s in graph if cyclic & (nx.descendants(graph, s) | {s}))

    @cached_property
    def _meeting_x(self) -> FrozenSet[NodeSpec]:
        graph = self.spec_graph
        marked = {s for s in graph if s.marked}
        return frozenset(
            s for s in graph if s in self._with_end or marked & (nx.descendants(graph, s) | {s})
        )

    def has_end(self, spec: NodeSpec) -> bool:
        """Whether the subtree below a node of this spec contains a ray."""
        return spec in self._with_end

    def meets_x(self, spec: NodeSpec) -> bool:
        return spec in self._meeting_x

    # -- children

    def child_spec(self, spec: NodeSpec, label: str) -> NodeSpec:
        for name, child in spec.children:
            if name == label:
                return self.resolve(child)
        if label.startswith(BULK_PREFIX) and spec.bulk is not None:
            index = _index(label)
            if index is not None and spec.bulk.card.admits(index):
                return self.resolve(spec.bulk.pattern)
        if label.startswith(PADDING_PREFIX) and spec.padding and _index(label) is not None:
            return LEAF
        raise EdgeCutError("unknownnode", f"No child labelled {label!r}", {"label": label})

    def child_labels(self, spec: NodeSpec, witnesses: int) -> List[str]:
        """Explicit labels, then sampled bulk labels, then sampled padding labels."""
        labels = [label for label, _ in spec.children]
        if spec.bulk is not None:
            labels.extend(f"{BULK_PREFIX}{j}" for j in range(spec.bulk.card.sample(witnesses)))
        if spec.padding:
            labels.extend(f"{PADDING_PREFIX}{j}" for j in range(witnesses))
        return labels

    def children(self, spec: NodeSpec, witnesses: int) -> List[Tuple[str, NodeSpec]]:
        return [(label, self.child_spec(spec, label)) for label in self.child_labels(spec, witnesses)]

    def spec_at(self, node: NodeId) -> NodeSpec:
        spec = self.root
        for label in node:
            spec = self.child_spec(spec, label)
        return spec

    def transform(self, fn: Callable[[NodeSpec], NodeSpec]) -> "SymbolicTree":
        """Rebuilds every specification bottom-up through fn; references keep their names."""
        memo: Dict[NodeSpec, NodeSpec] = {}

        def rebuild(spec: NodeSpec) -> NodeSpec:
            if spec in memo:
                return memo[spec]
            children = tuple((label, c if isinstance(c, Ref) else rebuild(c)) for label, c in spec.children)
            bulk = spec.bulk
            if bulk is not None and not isinstance(bulk.pattern, Ref):
                bulk = BulkGroup(bulk.card, rebuild(bulk.pattern))
            memo[spec] = fn(replace(spec, children=children, bulk=bulk))
            return memo[spec]

        definitions = {name: rebuild(spec) for name, spec in self.definitions.items()}
        return SymbolicTree(rebuild(self.root), definitions)


def _index(label: str) -> Optional[int]:
    tail = label[1:]
    return int(tail) if tail.isdigit() else None


def truncate(tree: SymbolicTree, depth: int, witnesses: int, base: NodeId = ROOT) -> nx.DiGraph:
    """
    Finite subtree below base down to absolute depth `depth`, keeping all
    explicit children and the first `witnesses` children of every bulk and
    padding group. Nodes carry `marked` and `spec` attributes.
    """
    if depth < 0 or witnesses < 1:
        raise EdgeCutError("badrange", f"Need depth >= 0 and witnesses >= 1, got {depth}, {witnesses}")
    out = nx.DiGraph()
    start = tree.spec_at(base)
    out.add_node(base, marked=start.marked, spec=start)
    queue = deque([(base, start)])
    while queue:
        node, spec = queue.popleft()
        if len(node) >= depth:
            continue
        for label, child in tree.children(spec, witnesses):
            child_id = node + (label,)
            out.add_node(child_id, marked=child.marked, spec=child)
            out.add_edge(node, child_id, label=label)
            queue.append((child_id, child))
    return out


class RayHandle:
    """
    A rooted ray, produced label by label. Every call to labels() starts a
    fresh generator, so a handle can be shared; the generators themselves are
    single-consumer.
    """

    def __init__(self, tree: SymbolicTree, factory: Callable[[], Iterator[str]], description: str = ""):
        self.tree = tree
        self._factory = factory
        self.description = description

    def labels(self) -> Iterator[str]:
        return self._factory()

    def clone(self) -> "RayHandle":
        return RayHandle(self.tree, self._factory, self.description)

    def prefix(self, n: int) -> NodeId:
        """The node at depth n on this ray, checked against the tree."""
        labels = tuple(itertools.islice(self.labels(), n))
        if len(labels) < n:
            raise EdgeCutError("notaray", f"Ray {self.description} ends after {len(labels)} steps")
        spec = self.tree.root
        for i, label in enumerate(labels):
            try:
                spec = self.tree.child_spec(spec, label)
            except EdgeCutError:
                raise EdgeCutError(
                    "notaray", f"Ray {self.description} leaves the tree at {render_node(labels[:i + 1])}",
                    {"node": node_path(labels[:i + 1])},
                ) from None
        return labels

    @classmethod
    def periodic(cls, tree: SymbolicTree, prefix: Iterable[str], cycle: Iterable[str]) -> "RayHandle":
        prefix, cycle = tuple(prefix), tuple(cycle)
        if not cycle:
            raise EdgeCutError("notaray", "A periodic ray needs a nonempty cycle")
        ray = cls(tree, lambda: itertools.chain(prefix, itertools.cycle(cycle)), f"{prefix}{cycle}*")
        # spec states repeat after at most one pass of the cycle per spec
        ray.prefix(len(prefix) + len(cycle) * (len(tree.specs) + 1))
        return ray

    @classmethod
    def following(cls, tree: SymbolicTree, head: NodeId, tail: Callable[[], Iterator[str]], description: str = "") -> "RayHandle":
        return cls(tree, lambda: itertools.chain(head, tail()), description or render_node(head))

    def __repr__(self) -> str:
        return f"RayHandle({self.description})"


def _first_child_with_end(tree: SymbolicTree, spec: NodeSpec) -> str:
    for label, child in spec.children:
        if tree.has_end(tree.resolve(child)):
            return label
    if spec.bulk is not None and spec.bulk.card.admits(0) and tree.has_end(tree.resolve(spec.bulk.pattern)):
        return f"{BULK_PREFIX}0"
    raise EdgeCutError("internal", "Spec with an end has no child with an end")


def canonical_ray(tree: SymbolicTree, node: NodeId = ROOT) -> RayHandle:
    """The ray through node that always takes the first child whose subtree has an end."""
    start = tree.spec_at(node)
    if not tree.has_end(start):
        raise EdgeCutError("notaray", f"No ray passes through {render_node(node)}", {"node": node_path(node)})

    def walk() -> Iterator[str]:
        spec = start
        while True:
            label = _first_child_with_end(tree, spec)
            yield label
            spec = tree.child_spec(spec, label)

    return RayHandle.following(tree, node, walk, f"canonical ray through {render_node(node)}")


@dataclass(frozen=True)
class Point:
    kind: str
    node: Optional[NodeId] = None
    ray: Optional[RayHandle] = None
    resolved_depth: Optional[int] = None

    NODE = "node"
    END = "end"

    @classmethod
    def at(cls, node: NodeId) -> "Point":
        return cls(cls.NODE, node=tuple(node))

    @classmethod
    def end(cls, ray: RayHandle, resolved_depth: Optional[int] = None) -> "Point":
        return cls(cls.END, ray=ray, resolved_depth=resolved_depth)

    @property
    def is_end(self) -> bool:
        return self.kind == self.END

    def prefix(self, n: int) -> NodeId:
        if self.is_end:
            return self.ray.prefix(n)
        return self.node[:n]

    def __repr__(self) -> str:
        if self.is_end:
            return f"Point(end, {self.ray.description})"
        return f"Point(node, {render_node(self.node)})"


def marked_point(tree: SymbolicTree, node: NodeId) -> Point:
    if not tree.spec_at(node).marked:
        raise EdgeCutError("notinX", f"{render_node(node)} is not a marked node", {"node": node_path(node)})
    return Point.at(node)


def end_distance(tree: SymbolicTree, p: Point, q: Point, max_depth: int) -> Fraction:
    """
    2^-n for the depth n of the last common node of two rays; 0 when they
    agree down to max_depth (indistinguishable at that depth).
    """
    for point in (p, q):
        if not point.is_end:
            raise EdgeCutError("notanend", f"{point!r} is not an end")
    a, b = p.prefix(max_depth), q.prefix(max_depth)
    if a == b:
        return Fraction(0)
    n = next(i for i, (x, y) in enumerate(zip(a, b)) if x != y)
    return Fraction(1, 2 ** n)


@dataclass(frozen=True)
class BasicOpen:
    """
    Either the up-closure of the anchor (cut is None) or the component of
    T - F holding the anchor, with F given by the child ends of its edges.
    """

    anchor: NodeId
    cut: Optional[FrozenSet[NodeId]] = None

    @classmethod
    def up(cls, node: NodeId) -> "BasicOpen":
        return cls(anchor=tuple(node))

    @classmethod
    def component(cls, cut: Iterable[NodeId], anchor: NodeId) -> "BasicOpen":
        edges = frozenset(tuple(c) for c in cut)
        if ROOT in edges:
            raise EdgeCutError("notreeedge", "The root has no parent edge")
        return cls(anchor=tuple(anchor), cut=edges)

    @property
    def horizon(self) -> int:
        """Depth below which membership of an end is settled."""
        return max([len(self.anchor)] + [len(c) for c in self.cut or ()])

    def contains_node(self, node: NodeId) -> bool:
        if self.cut is None:
            return node[:len(self.anchor)] == self.anchor
        m = 0
        while m < min(len(node), len(self.anchor)) and node[m] == self.anchor[m]:
            m += 1
        crossed = {self.anchor[:i] for i in range(m + 1, len(self.anchor) + 1)}
        crossed |= {node[:i] for i in range(m + 1, len(node) + 1)}
        return not crossed & self.cut


def basic_open_membership(basic: BasicOpen, point: Point) -> bool:
    if point.is_end:
        return basic.contains_node(point.ray.prefix(basic.horizon))
    return basic.contains_node(point.node)


def relevant_child_labels(tree: SymbolicTree, spec: NodeSpec) -> Iterator[str]:
    """Children whose up-closure meets X, explicit ones first."""
    for label, child in spec.children:
        if tree.meets_x(tree.resolve(child)):
            yield label
    if spec.bulk is not None and spec.bulk.card.admits(0) and tree.meets_x(tree.resolve(spec.bulk.pattern)):
        if not spec.bulk.card.is_countable:
            raise EdgeCutError("notmetrizable", "Uncountably many children meet X")
        bound = range(spec.bulk.card.n) if not spec.bulk.card.is_infinite else itertools.count()
        yield from (f"{BULK_PREFIX}{j}" for j in bound)


def neighbourhood_base(tree: SymbolicTree, point: Point, n: int) -> List[BasicOpen]:
    """
    The first n members of a countable neighbourhood base: up-closures along
    the ray for an end; for a marked node x, the components of T - F_i around
    x where F_i holds x's parent edge and its edges to the first i children
    meeting X.
    """
    if point.is_end:
        return [BasicOpen.up(point.ray.prefix(i)) for i in range(1, n + 1)]
    x = point.node
    spec = tree.spec_at(x)
    if not spec.marked:
        raise EdgeCutError("notinX", f"{render_node(x)} is not a marked node", {"node": node_path(x)})
    base_cut = {x} if x != ROOT else set()
    relevant = list(itertools.islice(relevant_child_labels(tree, spec), n))
    opens = []
    for i in range(1, n + 1):
        cut = base_cut | {x + (label,) for label in relevant[:i]}
        opens.append(BasicOpen.component(cut, x))
    return opens


@dataclass(frozen=True)
class Verdict:
    metrizable: bool
    witness: Optional[NodeId] = None
    reason: str = ""


def is_first_countable(tree: SymbolicTree, include_all_ends: bool = True) -> Verdict:
    """
    X is first countable (equivalently metrizable) iff no marked node has
    uncountably many children whose up-closure meets X. Only uncountable bulk
    groups can violate this, so one breadth-first pass over the
    specifications finds the shallowest witness.
    """
    if not include_all_ends:
        raise EdgeCutError("unsupported", "Only subspaces containing every end are supported")
    seen = {tree.root}
    queue = deque([(ROOT, tree.root)])
    while queue:
        node, spec = queue.popleft()
        if spec.marked and spec.bulk is not None and not spec.bulk.card.is_countable:
            if tree.meets_x(tree.resolve(spec.bulk.pattern)):
                logger.info(f"Not first countable at {render_node(node)}")
                return Verdict(
                    metrizable=False,
                    witness=node,
                    reason=f"marked node {render_node(node)} has uncountably many children whose up-closure meets X",
                )
        successors = [(label, tree.resolve(c)) for label, c in spec.children]
        if spec.bulk is not None and spec.bulk.card.admits(0):
            successors.append((f"{BULK_PREFIX}0", tree.resolve(spec.bulk.pattern)))
        for label, child in successors:
            if child not in seen:
                seen.add(child)
                queue.append((node + (label,), child))
    return Verdict(
        metrizable=True,
        reason="every marked node has only countably many children whose up-closure meets X",
    )


def realized_points(tree: SymbolicTree, depth: int, witnesses: int) -> List[Point]:
    """Marked nodes of the truncation, then one canonical end through each depth-d node with an end below it."""
    realized = truncate(tree, depth, witnesses)
    nodes = list(realized.nodes)
    points = [Point.at(v) for v in nodes if realized.nodes[v]["marked"]]
    points.extend(
        Point.end(canonical_ray(tree, v)) for v in nodes
        if len(v) == depth and tree.has_end(realized.nodes[v]["spec"])
    )
    return points
