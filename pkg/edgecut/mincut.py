"""Minimum edge cuts certified by edge-disjoint paths, and bond extraction."""
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx

from . import flows
from .errors import EdgeCutError
from .graph_core import Bond, Cut, MultiGraph, components_after_deletion

logger = logging.getLogger(__name__)

_SOURCE = ("source",)
_SINK = ("sink",)


@dataclass(frozen=True)
class EdgePath:
    vertices: Tuple[str, ...]
    edges: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CutCertificate:
    value: int
    cut: Cut
    paths: Tuple[EdgePath, ...]

    def violations(self, graph: MultiGraph) -> List[str]:
        """Everything wrong with this certificate; empty when it is sound."""
        problems = []
        if self.cut.size != self.value:
            problems.append(f"cut has {self.cut.size} edges, value is {self.value}")
        if len(self.paths) != self.value:
            problems.append(f"{len(self.paths)} paths, value is {self.value}")
        if self.cut.edges != graph.edges_between(*self.cut.sides):
            problems.append("cut edge set does not match its sides")
        used = set()
        for path in self.paths:
            for i, eid in enumerate(path.edges):
                edge = graph.edge(eid)
                if {edge.u, edge.v} != {path.vertices[i], path.vertices[i + 1]}:
                    problems.append(f"edge {eid} does not join {path.vertices[i]} and {path.vertices[i + 1]}")
            shared = used.intersection(path.edges)
            if shared:
                problems.append(f"paths share edges {sorted(shared)}")
            used.update(path.edges)
            if not self.cut.edges.intersection(path.edges):
                problems.append(f"path {path.vertices} does not cross the cut")
        return problems


def _network(graph: MultiGraph, sources: FrozenSet[str], sinks: FrozenSet[str]) -> nx.DiGraph:
    """Unit capacity per parallel edge, both directions; super terminals with unbounded arcs."""
    multiplicity: Dict[Tuple[str, str], int] = defaultdict(int)
    for e in graph.edges:
        multiplicity[(e.u, e.v)] += 1
    network = nx.DiGraph()
    network.add_nodes_from([_SOURCE, _SINK])
    network.add_nodes_from(("v", v) for v in graph.vertices)
    for (u, v), m in sorted(multiplicity.items()):
        network.add_edge(("v", u), ("v", v), capacity=m)
        network.add_edge(("v", v), ("v", u), capacity=m)
    for a in sorted(sources):
        network.add_edge(_SOURCE, ("v", a))
    for b in sorted(sinks):
        network.add_edge(("v", b), _SINK)
    return network


def _solve(graph: MultiGraph, sources: FrozenSet[str], sinks: FrozenSet[str]) -> CutCertificate:
    R = flows.residual(_network(graph, sources, sinks), _SOURCE, _SINK)
    reachable = flows.source_side(R, _SOURCE)
    side = frozenset(node[1] for node in reachable if node[0] == "v")
    cut = graph.cut_of(side)

    # every unit of flow on a vertex pair gets its own parallel edge
    pool: Dict[Tuple[str, str], List[str]] = {}
    for e in graph.edges:
        pool.setdefault((e.u, e.v), []).append(e.id)
    paths = []
    for walk in flows.decompose_paths(R, _SOURCE, _SINK):
        vertices = tuple(node[1] for node in walk[1:-1])
        edge_ids = []
        for u, v in zip(vertices, vertices[1:]):
            edge_ids.append(pool[tuple(sorted((u, v)))].pop(0))
        paths.append(EdgePath(vertices, tuple(edge_ids)))
    certificate = CutCertificate(value=flows.flow_value(R), cut=cut, paths=tuple(paths))
    logger.debug(f"Min cut {sorted(sources)} | {sorted(sinks)}: value {certificate.value}")
    return certificate


def min_edge_cut(graph: MultiGraph, s: str, t: str) -> CutCertificate:
    if s == t:
        raise EdgeCutError("samevertex", f"Source and target are both {s!r}", {"vertex": s})
    graph.require_vertices((s, t))
    return _solve(graph, frozenset((s,)), frozenset((t,)))


def _check_sets(graph: MultiGraph, a: Iterable[str], b: Iterable[str]) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    sa, sb = graph.require_vertices(a), graph.require_vertices(b)
    if not sa or not sb:
        raise EdgeCutError("empty", "Both vertex sets must be nonempty")
    overlap = sorted(sa & sb)
    if overlap:
        raise EdgeCutError("overlap", f"Vertex sets share {overlap}", {"vertices": overlap})
    return sa, sb


def min_cut_between_sets(graph: MultiGraph, a: Iterable[str], b: Iterable[str]) -> CutCertificate:
    sa, sb = _check_sets(graph, a, b)
    return _solve(graph, sa, sb)


def finite_bond_separating(graph: MultiGraph, a: Iterable[str], b: Iterable[str]) -> Bond:
    """
    A bond with A on one side and B on the other. A minimum A-B cut is
    reduced to the boundary of the component holding A, then to the boundary
    of the component holding B; both sides of the result are connected.
    """
    sa, sb = _check_sets(graph, a, b)
    for name, vs in (("A", sa), ("B", sb)):
        if not graph.is_connected(vs):
            raise EdgeCutError("hypothesis", f"{name} does not induce a connected subgraph", {name: sorted(vs)})
    if not graph.is_connected():
        raise EdgeCutError("disconnected", "The graph is not connected")

    certificate = _solve(graph, sa, sb)
    near = _component_containing(graph, certificate.cut.edges, min(sa))
    far = _component_containing(graph, graph.cut_of(near).edges, min(sb))
    cut = graph.cut_of(graph.vertex_set - far)
    bond = Bond.from_cut(graph, cut)
    logger.debug(f"Bond of size {bond.size} separating {sorted(sa)} from {sorted(sb)}")
    return bond


def _component_containing(graph: MultiGraph, edge_ids: Iterable[str], v: str) -> FrozenSet[str]:
    for region in components_after_deletion(graph, edge_ids):
        if v in region.vertices:
            return region.vertices
    raise EdgeCutError("internal", f"Vertex {v} lies in no component")
