import logging

from ..fin_sep_tree import finitely_separating_spanning_tree
from ..tree_cut import TreeCutDecomposition, quotient_graph
from .base import DecompositionBackend

logger = logging.getLogger(__name__)


class PaperBackend(DecompositionBackend):
    """
    Spanning tree of the block quotient grown by the bond-exclusion algorithm.
    Every tree edge is an edge of the quotient, so adjacent parts are always
    joined by an edge of G; the certificate is the spanning-tree replay record.
    """

    name = "paper"

    def decompose(self, graph, blocks):
        quotient = quotient_graph(graph, blocks)
        logger.debug(f"Quotient graph: {len(quotient)} blocks, {len(quotient.edges)} edges")
        certificate = finitely_separating_spanning_tree(quotient)
        parts = {min(block): block for block in blocks.blocks}
        return TreeCutDecomposition(graph=graph, tree=certificate.tree, parts=parts), certificate
