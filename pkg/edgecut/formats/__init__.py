from pathlib import Path
from typing import Union

from ..errors import EdgeCutError
from .base import GraphFormat
from .dimacs import DimacsGraphFormat
from .json_graph import JsonGraphFormat, graph_from_dict, graph_to_dict
from .trees import load_presented, load_rays, load_tree, presented_from_dict, presented_to_dict, tree_from_dict, tree_to_dict


def get_format(path_or_name: Union[str, Path]) -> GraphFormat:
    """
    Factory to get the graph format by name or by file suffix.
    """
    key = str(path_or_name).lower()
    for fmt in (JsonGraphFormat(), DimacsGraphFormat()):
        if key == fmt.name or any(key.endswith(suffix) for suffix in fmt.suffixes):
            return fmt
    raise EdgeCutError("badformat", f"Unknown graph format: {path_or_name}")


def load_graph(path: Union[str, Path]):
    return get_format(path).read_file(path)


__all__ = [
    "GraphFormat", "JsonGraphFormat", "DimacsGraphFormat", "get_format", "load_graph",
    "graph_from_dict", "graph_to_dict", "tree_from_dict", "tree_to_dict",
    "presented_from_dict", "presented_to_dict", "load_tree", "load_presented", "load_rays",
]
