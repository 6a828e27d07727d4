import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Tuple, Union

import networkx as nx

from .edge_blocks import BlockPartition, GomoryHuTree, k_edge_blocks
from .errors import EdgeCutError
from .fin_sep_tree import SpanningTreeCertificate
from .graph_core import Cut, Edge, MultiGraph, Region, components_after_deletion

logger = logging.getLogger(__name__)

TreeEdgeRef = Union[str, Tuple[str, str]]


@dataclass(frozen=True, eq=False)
class TreeCutDecomposition:
    graph: MultiGraph
    tree: MultiGraph
    parts: Mapping[str, FrozenSet[str]]

    def __post_init__(self):
        if set(self.parts) != set(self.tree.vertices):
            raise EdgeCutError("baddecomposition", "Parts must be indexed exactly by the tree nodes")
        seen: set = set()
        for node in self.tree.vertices:
            part = self.parts[node]
            if not part:
                raise EdgeCutError("baddecomposition", f"Part of node {node!r} is empty")
            if seen & part:
                raise EdgeCutError("baddecomposition", f"Part of node {node!r} overlaps another part")
            seen |= part
        if seen != set(self.graph.vertices):
            raise EdgeCutError("baddecomposition", "Parts do not cover the vertex set")
        if not nx.is_tree(self.tree.nx):
            raise EdgeCutError("baddecomposition", "The decomposition tree is not a tree")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeCutDecomposition):
            return NotImplemented
        return self.graph == other.graph and self.tree == other.tree and dict(self.parts) == dict(other.parts)

    def lift(self, nodes: Iterable[str]) -> FrozenSet[str]:
        return frozenset().union(*(self.parts[t] for t in nodes))


@dataclass(frozen=True)
class AdhesionReport:
    adhesion: Tuple[Tuple[str, Cut], ...]

    @property
    def sizes(self) -> Dict[str, int]:
        return {eid: cut.size for eid, cut in self.adhesion}

    @property
    def max_adhesion(self) -> int:
        return max((cut.size for _, cut in self.adhesion), default=0)


Certificate = Union[SpanningTreeCertificate, GomoryHuTree]


class DecompositionResult(NamedTuple):
    decomposition: TreeCutDecomposition
    report: AdhesionReport
    certificate: Certificate
    blocks: BlockPartition


def _tree_edge(decomposition: TreeCutDecomposition, e: TreeEdgeRef) -> Edge:
    tree = decomposition.tree
    if isinstance(e, str):
        if e not in tree.edge_ids:
            raise EdgeCutError("notreeedge", f"{e!r} is not a tree edge", {"edge": e})
        return tree.edge(e)
    u, v = e
    joining = tree.edges_joining(u, v) if tree.has_vertex(u) and tree.has_vertex(v) else []
    if not joining:
        raise EdgeCutError("notreeedge", f"{u!r}-{v!r} is not a tree edge", {"edge": [u, v]})
    return tree.edge(joining[0])


def fundamental_sides(decomposition: TreeCutDecomposition, e: TreeEdgeRef) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """Node sets of the two components of T - e, the one holding e's first endpoint first."""
    edge = _tree_edge(decomposition, e)
    components = components_after_deletion(decomposition.tree, {edge.id})
    first = next(r.vertices for r in components if edge.u in r.vertices)
    return first, decomposition.tree.vertex_set - first


def adhesion_set(decomposition: TreeCutDecomposition, e: TreeEdgeRef) -> Cut:
    near, _ = fundamental_sides(decomposition, e)
    return decomposition.graph.cut_of(decomposition.lift(near))


def adhesion_report(decomposition: TreeCutDecomposition) -> AdhesionReport:
    return AdhesionReport(adhesion=tuple(
        (edge.id, adhesion_set(decomposition, edge.id)) for edge in decomposition.tree.edges
    ))


def has_adjacency_property(decomposition: TreeCutDecomposition) -> bool:
    """Every tree edge t1t2 is witnessed by an edge of G between X_t1 and X_t2."""
    graph, parts = decomposition.graph, decomposition.parts
    return all(graph.edges_between(parts[e.u], parts[e.v]) for e in decomposition.tree.edges)


def validate_decomposition(decomposition: TreeCutDecomposition, k: int, certificate: Certificate = None) -> List[str]:
    """
    Checks a k-block decomposition: parts are exactly the k-edge blocks, and
    adjacent parts are joined (spanning-tree certificate) or adhesion stays
    below k (Gomory-Hu certificate). Returns the violations found.
    """
    problems = []
    expected = set(k_edge_blocks(decomposition.graph, k).blocks)
    if set(decomposition.parts.values()) != expected:
        problems.append("parts differ from the k-edge blocks")
    if isinstance(certificate, SpanningTreeCertificate):
        if not has_adjacency_property(decomposition):
            problems.append("a tree edge joins parts with no edge between them")
        problems.extend(certificate.replay())
    elif isinstance(certificate, GomoryHuTree):
        report = adhesion_report(decomposition)
        problems.extend(
            f"adhesion of {eid} is {cut.size}, not below {k}" for eid, cut in report.adhesion if cut.size >= k
        )
    return problems


def quotient_graph(graph: MultiGraph, partition: BlockPartition) -> MultiGraph:
    """
    Simple graph on the blocks (named by their least vertex). Each block pair
    joined in G gets one edge, carrying the least id among the joining edges.
    """
    representative = {v: min(block) for block in partition.blocks for v in block}
    missing = sorted(set(graph.vertices) - set(representative))
    if missing:
        raise EdgeCutError("badpartition", f"Vertices {missing} are in no block")
    witness: Dict[Tuple[str, str], str] = {}
    for e in graph.edges:
        a, b = sorted((representative[e.u], representative[e.v]))
        if a != b and (a, b) not in witness:
            witness[(a, b)] = e.id
    return MultiGraph(
        set(representative.values()),
        (Edge(eid, a, b) for (a, b), eid in witness.items()),
    )


def decompose_into_k_blocks(graph: MultiGraph, k: int, backend: str = "paper") -> DecompositionResult:
    from .backends import get_backend

    if not graph.is_connected():
        raise EdgeCutError("disconnected", "The graph is not connected")
    provider = get_backend(backend)
    blocks = k_edge_blocks(graph, k)
    decomposition, certificate = provider.decompose(graph, blocks)
    report = adhesion_report(decomposition)
    logger.info(
        f"Decomposition ({provider.name}): {len(decomposition.parts)} parts, "
        f"max adhesion {report.max_adhesion}"
    )
    return DecompositionResult(decomposition, report, certificate, blocks)


def _tree_nodes(decomposition: TreeCutDecomposition, nodes: Union[Region, Iterable[str]]) -> FrozenSet[str]:
    if isinstance(nodes, Region):
        nodes = nodes.vertices
    chosen = decomposition.tree.require_vertices(nodes)
    if not chosen or not decomposition.tree.is_connected(chosen):
        raise EdgeCutError("notregion", "Tree node set is empty or not connected in T", {"nodes": sorted(chosen)})
    return chosen


def region_up(decomposition: TreeCutDecomposition, tree_region: Union[Region, Iterable[str]]) -> Region:
    """The region of G spanned by the parts of a connected set of tree nodes."""
    nodes = _tree_nodes(decomposition, tree_region)
    vertices = decomposition.lift(nodes)
    if not decomposition.graph.is_connected(vertices):
        raise EdgeCutError(
            "disconnectedlift", "The lifted vertex set does not induce a connected subgraph",
            {"nodes": sorted(nodes)},
        )
    return Region(decomposition.graph, vertices)


def region_down(decomposition: TreeCutDecomposition, region: Union[Region, Iterable[str]]) -> List[Region]:
    """Pairwise disjoint tree regions whose lifted union is the given region."""
    if isinstance(region, Region):
        vertices = region.vertices
    else:
        vertices = Region(decomposition.graph, frozenset(region)).vertices
    inside = []
    for node in decomposition.tree.vertices:
        part = decomposition.parts[node]
        if part <= vertices:
            inside.append(node)
        elif part & vertices:
            raise EdgeCutError(
                "splitspart", f"Region splits the part of node {node!r}",
                {"node": node, "part": sorted(part)},
            )
    tree = decomposition.tree
    components = [frozenset(c) for c in nx.connected_components(tree.nx.subgraph(inside))]
    components.sort(key=min)
    return [Region(tree, c) for c in components]
