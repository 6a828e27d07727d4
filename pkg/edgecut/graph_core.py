"""
Finite multigraphs with stable vertex and edge ids, plus the cut vocabulary
(regions, boundaries, cuts, bonds) the rest of the package is written in.

Every value here is immutable after construction. Iteration order is always
the sorted order of ids so that results are reproducible.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import EdgeCutError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str

    @property
    def endpoints(self) -> Tuple[str, str]:
        return (self.u, self.v)

    def other(self, x: str) -> str:
        return self.v if x == self.u else self.u

    def crosses(self, side: FrozenSet[str]) -> bool:
        return (self.u in side) != (self.v in side)


class MultiGraph:
    """
    Undirected multigraph: parallel edges allowed, loops forbidden.
    Backed by a frozen networkx MultiGraph keyed by edge id.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge]):
        self._vertices: Tuple[str, ...] = tuple(sorted(set(vertices)))
        vertex_set = frozenset(self._vertices)
        by_id: Dict[str, Edge] = {}
        for edge in edges:
            if edge.u == edge.v:
                raise EdgeCutError("loop", f"Loop edge at {edge.u!r}", {"edge": [edge.u, edge.v]})
            if edge.u not in vertex_set or edge.v not in vertex_set:
                raise EdgeCutError(
                    "unknownvertex", f"Edge {edge.id} has an endpoint outside the vertex set",
                    {"edge": [edge.u, edge.v]},
                )
            if edge.id in by_id:
                raise EdgeCutError("badformat", f"Duplicate edge id {edge.id}")
            u, v = sorted((edge.u, edge.v))
            by_id[edge.id] = Edge(edge.id, u, v)
        self._edges: Dict[str, Edge] = {eid: by_id[eid] for eid in sorted(by_id)}
        self._vertex_set = vertex_set

        graph = nx.MultiGraph()
        graph.add_nodes_from(self._vertices)
        for edge in self._edges.values():
            graph.add_edge(edge.u, edge.v, key=edge.id)
        self._nx = nx.freeze(graph)

    # -- basic accessors

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self._vertices

    @property
    def vertex_set(self) -> FrozenSet[str]:
        return self._vertex_set

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def edge_ids(self) -> FrozenSet[str]:
        return frozenset(self._edges)

    @property
    def nx(self) -> nx.MultiGraph:
        return self._nx

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise EdgeCutError("unknownedge", f"No edge with id {edge_id!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_set

    def require_vertices(self, vertices: Iterable[str]) -> FrozenSet[str]:
        vs = frozenset(vertices)
        missing = sorted(vs - self._vertex_set)
        if missing:
            raise EdgeCutError("unknownvertex", f"Unknown vertices {missing}", {"vertices": missing})
        return vs

    def require_edges(self, edge_ids: Iterable[str]) -> FrozenSet[str]:
        es = frozenset(edge_ids)
        missing = sorted(es - self.edge_ids)
        if missing:
            raise EdgeCutError("unknownedge", f"Unknown edges {missing}", {"edges": missing})
        return es

    def neighbors(self, v: str) -> List[str]:
        return sorted(self._nx.adj[v])

    def incident(self, v: str) -> List[Edge]:
        return [self._edges[key] for _, _, key in sorted(self._nx.edges(v, keys=True), key=lambda t: t[2])]

    def edges_joining(self, u: str, v: str) -> List[str]:
        return sorted(self._nx.adj[u].get(v, {}))

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.values())))

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"

    # -- derived graphs

    def delete_edges(self, edge_ids: Iterable[str]) -> "MultiGraph":
        drop = self.require_edges(edge_ids)
        return MultiGraph(self._vertices, (e for e in self._edges.values() if e.id not in drop))

    def subgraph(self, vertices: Iterable[str]) -> "MultiGraph":
        keep = self.require_vertices(vertices)
        return MultiGraph(keep, (e for e in self._edges.values() if e.u in keep and e.v in keep))

    def edge_subgraph(self, edge_ids: Iterable[str]) -> "MultiGraph":
        """Spanning subgraph keeping all vertices but only the given edges."""
        keep = self.require_edges(edge_ids)
        return MultiGraph(self._vertices, (self._edges[eid] for eid in sorted(keep)))

    def contract(self, blocks: Iterable[Iterable[str]]) -> "MultiGraph":
        """
        Contracts every block to its least vertex. Edge ids survive, edges
        inside a block disappear, parallel edges between blocks are kept.
        """
        representative: Dict[str, str] = {}
        for block in blocks:
            members = sorted(block)
            for v in members:
                representative[v] = members[0]
        missing = sorted(self._vertex_set - set(representative))
        if missing:
            raise EdgeCutError("badpartition", f"Vertices {missing} are in no block")
        edges = []
        for e in self._edges.values():
            a, b = representative[e.u], representative[e.v]
            if a != b:
                edges.append(Edge(e.id, a, b))
        return MultiGraph(set(representative.values()), edges)

    # -- cut helpers

    def is_connected(self, vertices: Optional[Iterable[str]] = None) -> bool:
        if vertices is None:
            return len(self._vertices) > 0 and nx.is_connected(self._nx)
        vs = self.require_vertices(vertices)
        return len(vs) > 0 and nx.is_connected(self._nx.subgraph(vs))

    def edges_between(self, a: Iterable[str], b: Iterable[str]) -> FrozenSet[str]:
        sa, sb = frozenset(a), frozenset(b)
        return frozenset(
            e.id for e in self._edges.values()
            if (e.u in sa and e.v in sb) or (e.u in sb and e.v in sa)
        )

    def cut_of(self, side: Iterable[str]) -> "Cut":
        a = self.require_vertices(side)
        b = self._vertex_set - a
        if not a or not b:
            raise EdgeCutError("empty", "Both sides of a cut must be nonempty")
        return Cut(edges=self.edges_between(a, b), sides=(a, b))


@dataclass(frozen=True)
class Cut:
    edges: FrozenSet[str]
    sides: Tuple[FrozenSet[str], FrozenSet[str]]

    @property
    def size(self) -> int:
        return len(self.edges)

    def side_of(self, v: str) -> int:
        return 0 if v in self.sides[0] else 1

    def separates(self, a: Iterable[str], b: Iterable[str]) -> bool:
        sa, sb = frozenset(a), frozenset(b)
        return (sa <= self.sides[0] and sb <= self.sides[1]) or (sa <= self.sides[1] and sb <= self.sides[0])


@dataclass(frozen=True)
class Bond(Cut):
    """A cut whose two sides both induce connected subgraphs."""

    @classmethod
    def from_cut(cls, graph: MultiGraph, cut: Cut) -> "Bond":
        for side in cut.sides:
            if not graph.is_connected(side):
                raise EdgeCutError("notbond", "A side of the cut is not connected", {"side": sorted(side)})
        return cls(edges=cut.edges, sides=cut.sides)


@dataclass(frozen=True)
class Region:
    graph: MultiGraph
    vertices: FrozenSet[str]

    def __post_init__(self):
        if not self.vertices:
            raise EdgeCutError("notregion", "A region needs at least one vertex")
        if not self.graph.is_connected(self.vertices):
            raise EdgeCutError("notregion", "Region vertex set is not connected", {"vertices": sorted(self.vertices)})

    def __repr__(self) -> str:
        return f"Region({sorted(self.vertices)})"


def build_graph(edge_list: Sequence[Tuple[str, str]], isolated_vertices: Sequence[str] = ()) -> MultiGraph:
    """
    Builds a multigraph from endpoint pairs. Edges get fresh zero-padded ids
    e0, e1, ... in list order, so sorted id order equals input order.
    """
    width = len(str(max(len(edge_list) - 1, 0)))
    edges = []
    vertices = set(str(v) for v in isolated_vertices)
    for i, (u, v) in enumerate(edge_list):
        u, v = str(u), str(v)
        if u == v:
            raise EdgeCutError("loop", f"Loop edge at {u!r}", {"edge": [u, v]})
        vertices.update((u, v))
        edges.append(Edge(f"e{i:0{width}d}", u, v))
    return MultiGraph(vertices, edges)


def boundary(region: Region) -> FrozenSet[str]:
    """Edges with exactly one endpoint inside the region."""
    inside = region.vertices
    return frozenset(e.id for e in region.graph.edges if e.crosses(inside))


def components_after_deletion(graph: MultiGraph, edge_ids: Iterable[str]) -> List[Region]:
    remainder = graph.delete_edges(edge_ids)
    components = [frozenset(c) for c in nx.connected_components(remainder.nx)]
    components.sort(key=min)
    return [Region(remainder, c) for c in components]


def is_bond(graph: MultiGraph, edge_ids: Iterable[str]) -> bool:
    cut = graph.require_edges(edge_ids)
    components = components_after_deletion(graph, cut)
    if len(components) != 2:
        return False
    left = components[0].vertices
    return all(graph.edge(eid).crosses(left) for eid in cut)
