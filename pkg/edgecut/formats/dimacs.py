import logging

from ..errors import EdgeCutError
from ..graph_core import build_graph
from .base import GraphFormat

logger = logging.getLogger(__name__)


class DimacsGraphFormat(GraphFormat):
    """
    `p edge <n> <m>` followed by `e <u> <v>` lines over vertices 1..n;
    `c` lines are comments. Repeated edges are parallel edges.
    """

    name = "dimacs"
    suffixes = (".dimacs", ".col", ".gr")

    def read(self, text):
        n, declared = None, None
        pairs = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            fields = line.split()
            if not fields or fields[0] == "c":
                continue
            if fields[0] == "p":
                if len(fields) != 4 or n is not None:
                    raise EdgeCutError("badformat", f"Bad problem line at {lineno}", {"line": lineno})
                try:
                    n, declared = int(fields[2]), int(fields[3])
                except ValueError:
                    raise EdgeCutError("badformat", f"Bad problem line at {lineno}", {"line": lineno}) from None
            elif fields[0] in ("e", "a"):
                if n is None or len(fields) < 3:
                    raise EdgeCutError("badformat", f"Edge before problem line or malformed at {lineno}", {"line": lineno})
                u, v = fields[1], fields[2]
                if not (u.isdigit() and v.isdigit() and 1 <= int(u) <= n and 1 <= int(v) <= n):
                    raise EdgeCutError("badformat", f"Endpoint out of range at {lineno}", {"line": lineno})
                pairs.append((u, v))
            else:
                raise EdgeCutError("badformat", f"Unknown line type {fields[0]!r} at {lineno}", {"line": lineno})
        if n is None:
            raise EdgeCutError("badformat", "Missing problem line")
        if declared != len(pairs):
            logger.warning(f"Problem line declares {declared} edges, found {len(pairs)}")
        return build_graph(pairs, [str(i) for i in range(1, n + 1)])

    def write(self, graph):
        index = {v: i for i, v in enumerate(graph.vertices, start=1)}
        lines = [f"c vertices {' '.join(graph.vertices)}", f"p edge {len(graph)} {len(graph.edges)}"]
        lines.extend(f"e {index[e.u]} {index[e.v]}" for e in graph.edges)
        return "\n".join(lines) + "\n"
