from abc import ABC, abstractmethod
from typing import Tuple

from ..edge_blocks import BlockPartition
from ..graph_core import MultiGraph
from ..tree_cut import Certificate, TreeCutDecomposition


class DecompositionBackend(ABC):
    name: str = ""

    @abstractmethod
    def decompose(self, graph: MultiGraph, blocks: BlockPartition) -> Tuple[TreeCutDecomposition, Certificate]:
        """
        Arrange the given blocks of a connected graph along a tree.
        Returns the decomposition and the certificate its guarantees rest on.
        """
        pass
