"""
Brute-force reference answers for small instances. Nothing here calls into
the flow, Gomory-Hu or star-packing code under test.
"""
import itertools
from typing import FrozenSet, Iterable, List, Optional, Sequence

import networkx as nx

from edgecut.graph_core import MultiGraph


def _crossing(graph: MultiGraph, side: FrozenSet[str]) -> int:
    return sum(1 for e in graph.edges if (e.u in side) != (e.v in side))


def min_cut_value(graph: MultiGraph, a: Iterable[str], b: Iterable[str]) -> int:
    """Minimum over all bipartitions with A on one side and B on the other."""
    a, b = frozenset(a), frozenset(b)
    free = [v for v in graph.vertices if v not in a and v not in b]
    best = None
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            value = _crossing(graph, a | frozenset(extra))
            best = value if best is None else min(best, value)
    return best


def min_cut_by_edge_subsets(graph: MultiGraph, s: str, t: str) -> int:
    """Smallest edge set whose deletion separates s from t."""
    ids = sorted(graph.edge_ids)
    for r in range(len(ids) + 1):
        for subset in itertools.combinations(ids, r):
            rest = graph.delete_edges(subset)
            if not nx.has_path(rest.nx, s, t):
                return r
    raise AssertionError("deleting every edge always separates")


def all_pairs_lambda(graph: MultiGraph) -> dict:
    return {
        (u, v): min_cut_value(graph, {u}, {v})
        for u, v in itertools.combinations(graph.vertices, 2)
    }


def lambda_classes(graph: MultiGraph, k: int) -> set:
    """Classes of lambda >= k, checking on the way that the relation is transitive."""
    lam = all_pairs_lambda(graph)

    def strong(u, v):
        return u == v or lam[tuple(sorted((u, v)))] >= k

    classes: List[set] = []
    for v in graph.vertices:
        home = next((c for c in classes if strong(v, next(iter(c)))), None)
        if home is None:
            classes.append({v})
        else:
            assert all(strong(v, w) for w in home), "lambda >= k is not transitive"
            home.add(v)
    return {frozenset(c) for c in classes}


def connected_simple_graphs(n: int):
    names = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(names, 2))
    for mask in range(1 << len(pairs)):
        chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = nx.Graph(chosen)
        g.add_nodes_from(names)
        if nx.is_connected(g):
            yield chosen, names


def fan_exists(graph: MultiGraph, attach: Iterable[str], v: str, k: int, forbidden: Iterable[str] = ()) -> bool:
    """Backtracking over simple paths for k branches from v ending in distinct attachment vertices."""
    attach, forbidden = frozenset(attach), frozenset(forbidden) - frozenset(attach)
    if v in forbidden:
        return False
    simple = nx.Graph(graph.nx)
    candidates = []
    for w in sorted(attach):
        allowed = (set(graph.vertices) - attach - forbidden) | {w, v}
        sub = simple.subgraph(allowed)
        if w in sub and v in sub:
            candidates.extend(tuple(p) for p in nx.all_simple_paths(sub, v, w))

    def extend(chosen: List[tuple], start: int) -> bool:
        if len(chosen) == k:
            return True
        used = {x for p in chosen for x in p[1:]}
        for i in range(start, len(candidates)):
            path = candidates[i]
            if not used & set(path[1:]):
                if extend(chosen + [path], i + 1):
                    return True
        return False

    return extend([], 0)


def has_Kkm_subdivision(graph: MultiGraph, k: int, m: int) -> bool:
    """Exhaustive search for tiny graphs: hubs, centers, then disjoint spokes."""
    simple = nx.Graph(graph.nx)
    hubs_pool = [v for v in graph.vertices if simple.degree(v) >= m]
    centers_pool = [v for v in graph.vertices if simple.degree(v) >= k]
    for hubs in itertools.combinations(hubs_pool, k):
        for centers in itertools.combinations([c for c in centers_pool if c not in hubs], m):
            branch = set(hubs) | set(centers)
            pairs = [(c, h) for c in centers for h in hubs]

            def place(i: int, used: set) -> bool:
                if i == len(pairs):
                    return True
                c, h = pairs[i]
                sub = simple.subgraph((set(simple) - branch - used) | {c, h})
                for path in nx.all_simple_paths(sub, c, h):
                    if place(i + 1, used | set(path[1:-1])):
                        return True
                return False

            if place(0, set()):
                return True
    return False


def component_in_truncation(truncation: nx.DiGraph, cut: Iterable[tuple], anchor: tuple) -> set:
    """Nodes of a truncated tree reachable from anchor without crossing the parent edges of `cut`."""
    undirected = nx.Graph(truncation.to_undirected())
    for c in cut:
        if c in undirected and c[:-1] in undirected:
            undirected.remove_edge(c[:-1], c)
    return nx.node_connected_component(undirected, anchor)


def common_prefix_depth(a: Sequence[str], b: Sequence[str]) -> Optional[int]:
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None


def bonds_by_enumeration(graph: MultiGraph) -> set:
    """Inclusion-minimal nonempty edge cuts of a connected graph, from every bipartition."""
    first, rest = graph.vertices[0], graph.vertices[1:]
    cuts = set()
    for r in range(len(rest)):
        for extra in itertools.combinations(rest, r):
            side = {first, *extra}
            cuts.add(frozenset(e.id for e in graph.edges if (e.u in side) != (e.v in side)))
    cuts.discard(frozenset())
    return {c for c in cuts if not any(other < c for other in cuts)}
