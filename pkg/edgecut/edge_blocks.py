import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from tqdm import tqdm

from .errors import EdgeCutError
from .graph_core import Cut, MultiGraph
from .mincut import min_edge_cut

logger = logging.getLogger(__name__)


def local_edge_connectivity(graph: MultiGraph, u: str, v: str) -> int:
    return min_edge_cut(graph, u, v).value


@dataclass(frozen=True)
class TreeEdge:
    child: str
    parent: str
    weight: int
    cut: Cut


@dataclass(frozen=True)
class GomoryHuTree:
    graph: MultiGraph
    root: Optional[str]
    edges: Tuple[TreeEdge, ...]

    @property
    def tree(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(self.graph.vertices)
        for e in self.edges:
            tree.add_edge(e.child, e.parent, weight=e.weight)
        return tree

    def path_min(self, u: str, v: str) -> int:
        if u == v:
            raise EdgeCutError("samevertex", f"Both endpoints are {u!r}")
        tree = self.tree
        path = nx.shortest_path(tree, u, v)
        return min(tree[a][b]["weight"] for a, b in zip(path, path[1:]))


def gomory_hu(graph: MultiGraph, progress: bool = False) -> GomoryHuTree:
    """
    Gusfield's variant: n-1 minimum cuts in the original graph, re-hanging
    tree neighbours instead of contracting.
    """
    if not graph.is_connected():
        raise EdgeCutError("disconnected", "Gomory-Hu trees need a connected graph")
    nodes = list(graph.vertices)
    root = nodes[0]
    pred: Dict[str, Optional[str]] = {n: root for n in nodes}
    pred[root] = None
    weight: Dict[str, int] = {n: 0 for n in nodes}

    for n in tqdm(nodes[1:], desc="Gomory-Hu", disable=not progress):
        pn = pred[n]
        certificate = min_edge_cut(graph, n, pn)
        cut_value = certificate.value
        source_side = certificate.cut.sides[0]
        weight[n] = cut_value

        # siblings on n's side become n's children
        for nn in nodes:
            if nn != n and nn in source_side and pred[nn] == pn:
                pred[nn] = n

        # n swaps with its parent when the grandparent is on n's side
        if pred[pn] is not None and pred[pn] in source_side:
            pred[n] = pred[pn]
            pred[pn] = n
            weight[n] = weight[pn]
            weight[pn] = cut_value
        logger.debug(f"Gomory-Hu step {n}: cut value {cut_value} against {pn}")

    tree = nx.Graph()
    tree.add_nodes_from(nodes)
    tree.add_edges_from((n, p) for n, p in pred.items() if p is not None)
    edges = []
    for n in nodes:
        p = pred[n]
        if p is None:
            continue
        cut = _fundamental_cut(graph, tree, n, p)
        edges.append(TreeEdge(child=n, parent=p, weight=weight[n], cut=cut))
    return GomoryHuTree(graph=graph, root=root, edges=tuple(edges))


def _fundamental_cut(graph: MultiGraph, tree: nx.Graph, a: str, b: str) -> Cut:
    pruned = tree.copy()
    pruned.remove_edge(a, b)
    side = nx.node_connected_component(pruned, a)
    return graph.cut_of(side)


@dataclass(frozen=True)
class BlockPartition:
    k: int
    blocks: Tuple[FrozenSet[str], ...]

    def block_of(self, v: str) -> FrozenSet[str]:
        for block in self.blocks:
            if v in block:
                return block
        raise EdgeCutError("unknownvertex", f"Vertex {v!r} is in no block")

    def representative(self, v: str) -> str:
        return min(self.block_of(v))

    def __len__(self) -> int:
        return len(self.blocks)


def k_edge_blocks(graph: MultiGraph, k: int, gh: Optional[GomoryHuTree] = None) -> BlockPartition:
    """Classes of the relation lambda(u, v) >= k, read off the Gomory-Hu tree."""
    if k < 1:
        raise EdgeCutError("badk", f"k must be at least 1, got {k}", {"k": k})
    gh = gh or gomory_hu(graph)
    strong = nx.Graph()
    strong.add_nodes_from(graph.vertices)
    strong.add_edges_from((e.child, e.parent) for e in gh.edges if e.weight >= k)
    blocks: List[FrozenSet[str]] = [frozenset(c) for c in nx.connected_components(strong)]
    blocks.sort(key=min)
    logger.info(f"{len(blocks)} blocks at k={k}")
    return BlockPartition(k=k, blocks=tuple(blocks))
