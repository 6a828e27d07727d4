import functools
from typing import Any, Callable, Dict, List, TypeVar

from ..constructions import CorrespondenceReport, HomeomorphismReport
from ..edge_blocks import BlockPartition, GomoryHuTree, TreeEdge
from ..end_space import Point, Verdict, node_path, parse_node
from ..errors import EdgeCutError
from ..fin_sep_tree import SpanningTreeCertificate, TreeStep
from ..graph_core import Bond, Cut, MultiGraph
from ..halin import ExternalStar, SaturationRound, Subdivision, SubdivisionSearch
from ..mincut import CutCertificate, EdgePath
from ..tree_cut import AdhesionReport, TreeCutDecomposition
from .json_graph import graph_from_dict, graph_to_dict

T = TypeVar("T")


def _parser(what: str) -> Callable[[Callable[..., T]], Callable[..., T]]:
    """Malformed payloads surface as badformat instead of KeyError and friends."""

    def wrap(fn: Callable[..., T]) -> Callable[..., T]:
        @functools.wraps(fn)
        def parse(*args, **kwargs) -> T:
            try:
                return fn(*args, **kwargs)
            except EdgeCutError:
                raise
            except KeyError as missing:
                raise EdgeCutError("badformat", f"{what} is missing {missing}") from None
            except (IndexError, TypeError, ValueError, AttributeError) as e:
                raise EdgeCutError("badformat", f"Malformed {what}: {e}") from None

        return parse

    return wrap


def _sides(cut: Cut) -> List[List[str]]:
    return [sorted(cut.sides[0]), sorted(cut.sides[1])]


def cut_to_dict(cut: Cut) -> Dict[str, Any]:
    return {"edges": sorted(cut.edges), "sides": _sides(cut), "size": cut.size}


@_parser("cut")
def cut_from_dict(data: Dict[str, Any], bond: bool = False) -> Cut:
    cls = Bond if bond else Cut
    return cls(edges=frozenset(data["edges"]), sides=(frozenset(data["sides"][0]), frozenset(data["sides"][1])))


def certificate_to_dict(certificate: CutCertificate) -> Dict[str, Any]:
    return {
        "value": certificate.value,
        "cut": cut_to_dict(certificate.cut),
        "paths": [{"vertices": list(p.vertices), "edges": list(p.edges)} for p in certificate.paths],
    }


@_parser("cut certificate")
def certificate_from_dict(data: Dict[str, Any]) -> CutCertificate:
    return CutCertificate(
        value=int(data["value"]),
        cut=cut_from_dict(data["cut"]),
        paths=tuple(EdgePath(tuple(p["vertices"]), tuple(p["edges"])) for p in data["paths"]),
    )


def gomory_hu_to_dict(gh: GomoryHuTree) -> Dict[str, Any]:
    return {
        "root": gh.root,
        "edges": [
            {"child": e.child, "parent": e.parent, "weight": e.weight, "cut": cut_to_dict(e.cut)}
            for e in gh.edges
        ],
    }


@_parser("Gomory-Hu tree")
def gomory_hu_from_dict(graph: MultiGraph, data: Dict[str, Any]) -> GomoryHuTree:
    edges = tuple(
        TreeEdge(child=e["child"], parent=e["parent"], weight=int(e["weight"]), cut=cut_from_dict(e["cut"]))
        for e in data["edges"]
    )
    return GomoryHuTree(graph=graph, root=data["root"], edges=edges)


def blocks_to_dict(partition: BlockPartition) -> Dict[str, Any]:
    return {"k": partition.k, "count": len(partition), "blocks": [sorted(b) for b in partition.blocks]}


@_parser("block partition")
def blocks_from_dict(data: Dict[str, Any]) -> BlockPartition:
    return BlockPartition(k=int(data["k"]), blocks=tuple(frozenset(b) for b in data["blocks"]))


def decomposition_to_dict(decomposition: TreeCutDecomposition, report: AdhesionReport) -> Dict[str, Any]:
    return {
        "tree": graph_to_dict(decomposition.tree),
        "parts": {node: sorted(part) for node, part in sorted(decomposition.parts.items())},
        "adhesion": {eid: sorted(cut.edges) for eid, cut in report.adhesion},
        "maxAdhesion": report.max_adhesion,
    }


@_parser("tree-cut decomposition")
def decomposition_from_dict(graph: MultiGraph, data: Dict[str, Any]) -> TreeCutDecomposition:
    return TreeCutDecomposition(
        graph=graph,
        tree=graph_from_dict(data["tree"]),
        parts={str(node): frozenset(part) for node, part in data["parts"].items()},
    )


def spanning_certificate_to_dict(certificate: SpanningTreeCertificate) -> Dict[str, Any]:
    return {
        "root": certificate.root,
        "treeEdges": sorted(certificate.tree_edges),
        "steps": [
            {
                "edge": step.edge,
                "bond": cut_to_dict(step.bond),
                "excluded": sorted(step.excluded),
                "target": step.target,
                "distance": step.distance,
                "path": list(step.path),
            }
            for step in certificate.steps
        ],
        "finalExcluded": sorted(certificate.final_excluded),
    }


@_parser("spanning-tree certificate")
def spanning_certificate_from_dict(graph: MultiGraph, data: Dict[str, Any]) -> SpanningTreeCertificate:
    steps = tuple(
        TreeStep(
            edge=s["edge"],
            bond=cut_from_dict(s["bond"], bond=True),
            excluded=frozenset(s["excluded"]),
            target=s["target"],
            distance=int(s["distance"]),
            path=tuple(s["path"]),
        )
        for s in data["steps"]
    )
    return SpanningTreeCertificate(
        graph=graph, root=data["root"], steps=steps, final_excluded=frozenset(data["finalExcluded"])
    )


def star_to_dict(star: ExternalStar) -> Dict[str, Any]:
    return {
        "center": star.center,
        "branches": [list(b) for b in star.branches],
        "attachment": sorted(star.attachment),
    }


def subdivision_to_dict(subdivision: Subdivision) -> Dict[str, Any]:
    return {
        "k": subdivision.k,
        "m": subdivision.m,
        "hubs": list(subdivision.hubs),
        "centers": list(subdivision.centers),
        "spokes": [[list(path) for path in paths] for paths in subdivision.spokes],
    }


@_parser("subdivision")
def subdivision_from_dict(data: Dict[str, Any]) -> Subdivision:
    return Subdivision(
        k=int(data["k"]),
        m=int(data["m"]),
        hubs=tuple(data["hubs"]),
        centers=tuple(data["centers"]),
        spokes=tuple(tuple(tuple(path) for path in paths) for paths in data["spokes"]),
    )


def search_to_dict(search: SubdivisionSearch) -> Dict[str, Any]:
    return {
        "found": search.found,
        "exhaustive": search.exhaustive,
        "subdivision": subdivision_to_dict(search.subdivision) if search.found else None,
        "rounds": [
            {"round": r.index, "uSize": r.u_size, "packing": r.packing_size, "largestGroup": r.largest_group}
            for r in search.rounds
        ],
        "finalU": sorted(search.final_u),
    }



@_parser("subdivision search")
def search_from_dict(data: Dict[str, Any]) -> SubdivisionSearch:
    found = data["subdivision"]
    return SubdivisionSearch(
        subdivision=subdivision_from_dict(found) if found is not None else None,
        rounds=tuple(
            SaturationRound(
                index=int(r["round"]),
                u_size=int(r["uSize"]),
                packing_size=int(r["packing"]),
                largest_group=int(r["largestGroup"]),
            )
            for r in data["rounds"]
        ),
        final_u=frozenset(data["finalU"]),
        exhaustive=bool(data.get("exhaustive", False)),
    )


def verdict_to_dict(verdict: Verdict) -> Dict[str, Any]:
    return {
        "metrizable": verdict.metrizable,
        "witness": node_path(verdict.witness) if verdict.witness is not None else None,
        "reason": verdict.reason,
    }


@_parser("verdict")
def verdict_from_dict(data: Dict[str, Any]) -> Verdict:
    witness = data.get("witness")
    return Verdict(
        metrizable=bool(data["metrizable"]),
        witness=parse_node(witness) if witness is not None else None,
        reason=data.get("reason", ""),
    )


def point_to_dict(point: Point) -> Dict[str, Any]:
    if not point.is_end:
        return {"kind": "node", "node": node_path(point.node)}
    out = {"kind": "end"}
    if point.resolved_depth is not None:
        out["resolvedDepth"] = point.resolved_depth
        out["prefix"] = node_path(point.node)
    return out


def correspondence_to_dict(report: CorrespondenceReport) -> Dict[str, Any]:
    return {
        "depth": report.depth,
        "points": report.points,
        "imageDepth": report.image_depth,
        "injective": report.injective,
        "failures": list(report.failures),
        "ok": report.ok,
    }


def homeomorphism_to_dict(report: HomeomorphismReport) -> Dict[str, Any]:
    return {
        "depth": report.depth,
        "ok": report.ok,
        "failures": list(report.failures),
        "witnesses": [
            {
                "direction": w.direction,
                "tprimeNode": node_path(w.tprime_node),
                "anchor": node_path(w.anchor),
                "cut": [node_path(c) for c in w.cut],
                "checked": w.checked,
                "ok": w.ok,
            }
            for w in report.witnesses
        ],
    }
