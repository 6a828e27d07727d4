"""Graphviz DOT writers. Identifiers are always quoted; nothing is laid out here."""
from typing import Iterable, List, Optional

from ..edge_blocks import GomoryHuTree
from ..graph_core import MultiGraph
from ..halin import Subdivision
from ..tree_cut import AdhesionReport, TreeCutDecomposition


def _q(name: str) -> str:
    return '"' + str(name).replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(graph: MultiGraph, name: str = "G", highlight: Iterable[str] = ()) -> str:
    bold = set(highlight)
    lines = [f"graph {_q(name)} {{"]
    lines.extend(f"  {_q(v)};" for v in graph.vertices)
    for e in graph.edges:
        style = ", style=bold, color=red" if e.id in bold else ""
        lines.append(f"  {_q(e.u)} -- {_q(e.v)} [label={_q(e.id)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def decomposition_to_dot(decomposition: TreeCutDecomposition, report: Optional[AdhesionReport] = None) -> str:
    """Parts become boxed nodes listing their vertices; tree edges show adhesion sizes."""
    sizes = report.sizes if report is not None else {}
    lines = ['graph "decomposition" {', "  node [shape=box];"]
    for node, part in sorted(decomposition.parts.items()):
        lines.append(f"  {_q(node)} [label={_q(', '.join(sorted(part)))}];")
    for e in decomposition.tree.edges:
        label = f" [label={_q(sizes[e.id])}]" if e.id in sizes else ""
        lines.append(f"  {_q(e.u)} -- {_q(e.v)}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def gomory_hu_to_dot(gh: GomoryHuTree) -> str:
    lines = ['graph "gomory_hu" {']
    lines.extend(f"  {_q(v)};" for v in gh.graph.vertices)
    lines.extend(f"  {_q(e.child)} -- {_q(e.parent)} [label={_q(e.weight)}];" for e in gh.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def subdivision_to_dot(graph: MultiGraph, subdivision: Subdivision) -> str:
    """The host graph with every spoke edge drawn bold; hubs and centers are filled."""
    used: List[str] = []
    for paths in subdivision.spokes:
        for path in paths:
            used.extend(graph.edges_joining(a, b)[0] for a, b in zip(path, path[1:]))
    body = graph_to_dot(graph, "subdivision", highlight=used).splitlines()
    marks = [f"  {_q(v)} [style=filled, fillcolor=lightblue];" for v in subdivision.hubs]
    marks += [f"  {_q(v)} [style=filled, fillcolor=lightgrey];" for v in subdivision.centers]
    return "\n".join(body[:-1] + marks + body[-1:]) + "\n"
