"""edgecut: edge cuts, k-edge blocks, tree-cut decompositions and edge-end spaces."""
from .errors import EdgeCutError
from .graph_core import Bond, Cut, Edge, MultiGraph, Region, build_graph

__version__ = "1.0.0"

__all__ = ["EdgeCutError", "Bond", "Cut", "Edge", "MultiGraph", "Region", "build_graph", "__version__"]
