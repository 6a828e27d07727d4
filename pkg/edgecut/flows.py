"""
Thin layer over networkx max-flow. Flow nodes are tuples of strings throughout
so that graph vertices, split vertices and super terminals still sort.
"""
import logging
from typing import Dict, Hashable, List, Optional, Set

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

logger = logging.getLogger(__name__)


def residual(network: nx.DiGraph, source: Hashable, sink: Hashable) -> nx.DiGraph:
    """Runs Edmonds-Karp; arcs without a capacity attribute are unbounded."""
    R = edmonds_karp(network, source, sink)
    logger.debug(f"Max flow {source} -> {sink}: {R.graph['flow_value']}")
    return R


def flow_value(R: nx.DiGraph) -> int:
    return int(R.graph["flow_value"])


def source_side(R: nx.DiGraph, source: Hashable) -> Set[Hashable]:
    """Vertices reachable from the source in the residual network (the minimal source side)."""
    seen = {source}
    stack = [source]
    while stack:
        u = stack.pop()
        for v, attr in R[u].items():
            if v not in seen and attr["flow"] < attr["capacity"]:
                seen.add(v)
                stack.append(v)
    return seen


def decompose_paths(R: nx.DiGraph, source: Hashable, sink: Hashable, limit: Optional[int] = None) -> List[List[Hashable]]:
    """
    Splits the flow of R into unit source-sink paths, cancelling flow cycles on
    the way. Ties are broken by the least next node.
    """
    flow: Dict[Hashable, Dict[Hashable, int]] = {
        u: {v: int(attr["flow"]) for v, attr in R[u].items() if attr["flow"] > 0} for u in R
    }

    def consume(a, b):
        flow[a][b] -= 1
        if flow[a][b] == 0:
            del flow[a][b]

    total = flow_value(R) if limit is None else min(limit, flow_value(R))
    paths = []
    while len(paths) < total:
        walk = [source]
        position = {source: 0}
        while walk[-1] != sink:
            u = walk[-1]
            v = min(flow[u])
            if v in position:
                start = position[v]
                loop = walk[start:] + [v]
                for a, b in zip(loop, loop[1:]):
                    consume(a, b)
                for x in walk[start + 1:]:
                    del position[x]
                walk = walk[:start + 1]
            else:
                position[v] = len(walk)
                walk.append(v)
        for a, b in zip(walk, walk[1:]):
            consume(a, b)
        paths.append(walk)
    return paths
