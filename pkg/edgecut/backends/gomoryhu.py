import logging

from ..edge_blocks import gomory_hu
from ..graph_core import Edge, MultiGraph
from ..tree_cut import TreeCutDecomposition
from .base import DecompositionBackend

logger = logging.getLogger(__name__)


class GomoryHuBackend(DecompositionBackend):
    """
    Gomory-Hu tree of G with every block contracted to its least vertex.
    Adhesion sets are minimum cuts between blocks, hence smaller than k;
    adjacent parts need not be joined by an edge.
    """

    name = "gomoryhu"

    def decompose(self, graph, blocks):
        contracted = graph.contract(blocks.blocks)
        gh = gomory_hu(contracted)
        width = len(str(max(len(gh.edges) - 1, 0)))
        tree = MultiGraph(
            contracted.vertices,
            (Edge(f"t{i:0{width}d}", e.child, e.parent) for i, e in enumerate(gh.edges)),
        )
        logger.debug(f"Contracted graph: {len(contracted)} nodes, tree weights {[e.weight for e in gh.edges]}")
        parts = {min(block): block for block in blocks.blocks}
        return TreeCutDecomposition(graph=graph, tree=tree, parts=parts), gh
