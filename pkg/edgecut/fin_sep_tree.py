"""Spanning trees whose fundamental cuts stay bounded by the edges excluded while growing them."""
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from .errors import EdgeCutError
from .graph_core import Bond, Cut, MultiGraph, components_after_deletion, is_bond
from .mincut import finite_bond_separating

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreeStep:
    edge: str
    bond: Bond
    excluded: FrozenSet[str]
    target: str
    distance: int
    path: Tuple[str, ...]


@dataclass(frozen=True)
class SpanningTreeCertificate:
    graph: MultiGraph
    root: str
    steps: Tuple[TreeStep, ...]
    final_excluded: FrozenSet[str]

    @property
    def tree_edges(self) -> FrozenSet[str]:
        return frozenset(step.edge for step in self.steps)

    @property
    def tree(self) -> MultiGraph:
        return self.graph.edge_subgraph(self.tree_edges)

    def step_of(self, edge_id: str) -> TreeStep:
        for step in self.steps:
            if step.edge == edge_id:
                return step
        raise EdgeCutError("notreeedge", f"{edge_id!r} is not a tree edge")

    def replay(self) -> List[str]:
        """Re-checks every invariant of the construction; returns the violations found."""
        problems = []
        graph = self.graph
        tree = self.tree
        if len(self.tree_edges) != len(graph) - 1 or not nx.is_tree(tree.nx):
            problems.append("tree is not a spanning tree")
        if self.tree_edges & self.final_excluded:
            problems.append(f"tree edges excluded: {sorted(self.tree_edges & self.final_excluded)}")

        previous: FrozenSet[str] = frozenset()
        last_target, last_distance = None, None
        for n, step in enumerate(self.steps, start=1):
            if step.edge not in step.bond.edges:
                problems.append(f"step {n}: e_n not in F_n")
            if step.excluded != previous | (step.bond.edges - {step.edge}):
                problems.append(f"step {n}: E_n is not E_(n-1) + (F_n - e_n)")
            before = graph.delete_edges(previous)
            if not is_bond(before, step.bond.edges):
                problems.append(f"step {n}: F_n is not a bond of G_(n-1)")
            after = graph.delete_edges(step.excluded)
            if not after.is_connected():
                problems.append(f"step {n}: G_n is disconnected")
            sides = components_after_deletion(after, {step.edge})
            if len(sides) != 2:
                problems.append(f"step {n}: e_n is not a bridge of G_n")
            else:
                cut = fundamental_cut(graph, tree, step.edge)
                if not cut.edges <= step.excluded | {step.edge}:
                    problems.append(f"step {n}: fundamental cut escapes E_n + e_n")
                if {cut.sides[0], cut.sides[1]} != {sides[0].vertices, sides[1].vertices}:
                    problems.append(f"step {n}: tree sides differ from the components of G_n - e_n")
            # a target reached at distance 1 may come back as the target of the next block
            if step.target == last_target and last_distance > 1 and step.distance >= last_distance:
                problems.append(f"step {n}: distance to {step.target} did not decrease")
            last_target, last_distance = step.target, step.distance
            previous = step.excluded
        if previous != self.final_excluded:
            problems.append("final excluded set differs from the last E_n")
        return problems


def fundamental_cut(graph: MultiGraph, tree: MultiGraph, edge_id: str) -> Cut:
    if edge_id not in tree.edge_ids:
        raise EdgeCutError("notreeedge", f"{edge_id!r} is not a tree edge", {"edge": edge_id})
    if tree.vertex_set != graph.vertex_set:
        raise EdgeCutError("notspanning", "The tree does not span the graph")
    start = tree.edge(edge_id).u
    side = next(r.vertices for r in components_after_deletion(tree, {edge_id}) if start in r.vertices)
    return graph.cut_of(side)


def _shortest_path(graph: MultiGraph, sources: Set[str], target: str) -> Tuple[str, ...]:
    """Lexicographically least among the shortest paths from the source set to target."""
    dist = nx.single_source_shortest_path_length(graph.nx, target)
    reachable = [s for s in sorted(sources) if s in dist]
    if not reachable:
        raise EdgeCutError("disconnected", f"{target!r} cannot be reached from the tree")
    best = min(dist[s] for s in reachable)
    path = [next(s for s in reachable if dist[s] == best)]
    while path[-1] != target:
        here = dist[path[-1]]
        path.append(next(v for v in graph.neighbors(path[-1]) if dist.get(v) == here - 1))
    return tuple(path)


def _grow(graph: MultiGraph, root: str, members: FrozenSet[str], excluded: Set[str], steps: List[TreeStep]):
    in_tree = {root}
    order = sorted(members)
    whole = members == graph.vertex_set
    while len(in_tree) < len(members):
        target = next(v for v in order if v not in in_tree)
        current = graph.delete_edges(excluded)
        local = current if whole else current.subgraph(members)
        path = _shortest_path(local, in_tree, target)
        edge = local.edges_joining(path[0], path[1])[0]
        bond = finite_bond_separating(local, in_tree, path[1:])
        if not whole:
            # a bond of a block is a bond of the whole graph; recompute its sides there
            side = next(r.vertices for r in components_after_deletion(current, bond.edges) if root in r.vertices)
            bond = Bond.from_cut(current, current.cut_of(side))
        excluded |= bond.edges - {edge}
        in_tree.add(path[1])
        steps.append(TreeStep(
            edge=edge,
            bond=bond,
            excluded=frozenset(excluded),
            target=target,
            distance=len(path) - 1,
            path=path,
        ))
        logger.debug(f"Step {len(steps)}: edge {edge} towards {target}, bond size {bond.size}")


def finitely_separating_spanning_tree(
    graph: MultiGraph, root: Optional[str] = None, reduce_to_blocks: bool = False
) -> SpanningTreeCertificate:
    if not graph.is_connected():
        raise EdgeCutError("disconnected", "The graph is not connected")
    root = graph.vertices[0] if root is None else root
    graph.require_vertices((root,))

    excluded: Set[str] = set()
    steps: List[TreeStep] = []
    if reduce_to_blocks and len(graph) > 1:
        blocks = sorted((frozenset(b) for b in nx.biconnected_components(nx.Graph(graph.nx))), key=min)
        for block in blocks:
            _grow(graph, root if root in block else min(block), block, excluded, steps)
    else:
        _grow(graph, root, graph.vertex_set, excluded, steps)

    certificate = SpanningTreeCertificate(
        graph=graph, root=root, steps=tuple(steps), final_excluded=frozenset(excluded)
    )
    logger.info(f"Spanning tree with {len(steps)} edges, {len(excluded)} excluded")
    return certificate
