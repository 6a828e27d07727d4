import json
import logging

from ..errors import EdgeCutError
from ..graph_core import Edge, MultiGraph, build_graph
from .base import GraphFormat

logger = logging.getLogger(__name__)


def graph_to_dict(graph: MultiGraph) -> dict:
    return {
        "vertices": list(graph.vertices),
        "edges": [{"id": e.id, "u": e.u, "v": e.v} for e in graph.edges],
    }


def graph_from_dict(data: dict) -> MultiGraph:
    """
    Edges are either [u, v] pairs, which get ids e0, e1, ... in order, or
    {"id", "u", "v"} objects keeping their ids. Listed vertices may be isolated.
    """
    if not isinstance(data, dict) or not isinstance(data.get("edges"), list):
        raise EdgeCutError("badformat", "Graph JSON needs an 'edges' list")
    edges = data["edges"]
    vertices = [str(v) for v in data.get("vertices", [])]
    if all(isinstance(e, (list, tuple)) for e in edges):
        if any(len(e) != 2 for e in edges):
            raise EdgeCutError("badformat", "Edge pairs must have exactly two endpoints")
        return build_graph([(str(u), str(v)) for u, v in edges], vertices)
    if all(isinstance(e, dict) for e in edges):
        try:
            parsed = [Edge(str(e["id"]), str(e["u"]), str(e["v"])) for e in edges]
        except KeyError as missing:
            raise EdgeCutError("badformat", f"Edge object is missing {missing}") from None
        vertices.extend(v for e in parsed for v in (e.u, e.v))
        return MultiGraph(vertices, parsed)
    raise EdgeCutError("badformat", "Edges must be all pairs or all objects")


class JsonGraphFormat(GraphFormat):
    name = "json"
    suffixes = (".json",)

    def read(self, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise EdgeCutError("badformat", f"Invalid JSON: {e}") from None
        graph = graph_from_dict(data)
        logger.debug(f"Read {graph!r} from JSON")
        return graph

    def write(self, graph):
        return json.dumps(graph_to_dict(graph), indent=2, sort_keys=True) + "\n"
