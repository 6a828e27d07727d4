import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
from tqdm import tqdm

from . import flows
from .errors import EdgeCutError
from .graph_core import MultiGraph

logger = logging.getLogger(__name__)

_SINK = ("sink",)


@dataclass(frozen=True)
class ExternalStar:
    """k paths from a center outside W, disjoint apart from the center, with only their last vertices in W."""

    center: str
    branches: Tuple[Tuple[str, ...], ...]

    @property
    def attachment(self) -> FrozenSet[str]:
        return frozenset(branch[-1] for branch in self.branches)

    @property
    def interior(self) -> FrozenSet[str]:
        """Every vertex of the star except its leaves."""
        return frozenset(v for branch in self.branches for v in branch[:-1])

    @property
    def vertices(self) -> FrozenSet[str]:
        return frozenset(v for branch in self.branches for v in branch)


@dataclass(frozen=True)
class Subdivision:
    k: int
    m: int
    hubs: Tuple[str, ...]
    centers: Tuple[str, ...]
    spokes: Tuple[Tuple[Tuple[str, ...], ...], ...]


@dataclass(frozen=True)
class SaturationRound:
    index: int
    u_size: int
    packing_size: int
    largest_group: int


@dataclass(frozen=True)
class SubdivisionSearch:
    subdivision: Optional[Subdivision]
    rounds: Tuple[SaturationRound, ...]
    final_u: FrozenSet[str]
    # a miss is not a proof of absence: packings are greedy
    exhaustive: bool = False

    @property
    def found(self) -> bool:
        return self.subdivision is not None


def _fan_network(graph: MultiGraph, attach: FrozenSet[str], center: str, blocked: FrozenSet[str]) -> nx.DiGraph:
    # vertices outside W split into in/out pairs of capacity one; W drains into the sink
    network = nx.DiGraph()
    network.add_node(("out", center))
    network.add_node(_SINK)
    usable = [x for x in graph.vertices if x != center and x not in blocked]
    for x in usable:
        if x in attach:
            network.add_edge(("in", x), _SINK, capacity=1)
        else:
            network.add_edge(("in", x), ("out", x), capacity=1)
    allowed = set(usable)
    for x in [center] + [x for x in usable if x not in attach]:
        for y in graph.neighbors(x):
            if y in allowed:
                network.add_edge(("out", x), ("in", y), capacity=1)
    return network


def external_star(
    graph: MultiGraph, attach: Iterable[str], v: str, k: int, forbidden: Iterable[str] = ()
) -> Optional[ExternalStar]:
    """
    A k-star centered at v attached to the given set, avoiding the forbidden
    vertices, or None when no such star exists.
    """
    attach = graph.require_vertices(attach)
    blocked = graph.require_vertices(forbidden) - attach
    graph.require_vertices((v,))
    if v in attach:
        raise EdgeCutError("centerinW", f"Center {v!r} lies in the attachment set", {"vertex": v})
    if k < 1:
        raise EdgeCutError("badk", f"k must be at least 1, got {k}", {"k": k})
    if v in blocked:
        return None

    R = flows.residual(_fan_network(graph, attach, v, blocked), ("out", v), _SINK)
    if flows.flow_value(R) < k:
        return None
    branches = []
    for walk in flows.decompose_paths(R, ("out", v), _SINK, limit=k):
        branches.append((v,) + tuple(node[1] for node in walk[1:-1] if node[0] == "in"))
    branches.sort(key=lambda b: b[-1])
    return ExternalStar(center=v, branches=tuple(branches))


def maximal_star_packing(graph: MultiGraph, attach: Iterable[str], k: int) -> List[ExternalStar]:
    """
    Greedy pass over the vertices outside the attachment set in sorted order.
    Forbidden sets only grow, so a vertex that fails once fails for good and
    the packing is inclusion-maximal.
    """
    attach = graph.require_vertices(attach)
    used: set = set()
    packing = []
    for v in graph.vertices:
        if v in attach:
            continue
        star = external_star(graph, attach, v, k, forbidden=used)
        if star is not None:
            packing.append(star)
            used |= star.interior
    logger.debug(f"Packing of {len(packing)} {k}-stars attached to {len(attach)} vertices")
    return packing


def is_maximal_packing(graph: MultiGraph, attach: Iterable[str], k: int, packing: List[ExternalStar]) -> bool:
    attach = graph.require_vertices(attach)
    used: set = set()
    for star in packing:
        if used & star.interior or not _is_external_star(graph, attach, k, star):
            return False
        used |= star.interior
    return all(
        external_star(graph, attach, v, k, forbidden=used) is None
        for v in graph.vertices if v not in attach
    )


def _is_external_star(graph: MultiGraph, attach: FrozenSet[str], k: int, star: ExternalStar) -> bool:
    if len(star.branches) != k or len(star.attachment) != k:
        return False
    seen = {star.center}
    for branch in star.branches:
        if branch[0] != star.center or len(branch) < 2:
            return False
        if branch[-1] not in attach or any(x in attach for x in branch[:-1]):
            return False
        if any(not graph.edges_joining(a, b) for a, b in zip(branch, branch[1:])):
            return False
        if seen & set(branch[1:]):
            return False
        seen |= set(branch[1:])
    return True


def is_k_connected(graph: MultiGraph, k: int) -> bool:
    if len(graph) <= k:
        return False
    return nx.node_connectivity(nx.Graph(graph.nx)) >= k


def _assemble(k: int, m: int, stars: List[ExternalStar]) -> Subdivision:
    chosen = stars[:m]
    hubs = tuple(sorted(chosen[0].attachment))
    return Subdivision(
        k=k,
        m=m,
        hubs=hubs,
        centers=tuple(star.center for star in chosen),
        spokes=tuple(star.branches for star in chosen),
    )


def find_Kkm_subdivision(
    graph: MultiGraph, k: int, m: int, seed_size: int = 2, progress: bool = False
) -> SubdivisionSearch:
    """
    Grows U from the first seed_size vertices by adding every vertex of a
    maximal packing of external k-stars attached to U, until some m stars of
    one packing share their attachment set or U stops growing.
    """
    if k < 1 or m < 1:
        raise EdgeCutError("badk", f"k and m must be at least 1, got k={k}, m={m}", {"k": k, "m": m})
    u = frozenset(graph.vertices[:seed_size])
    rounds: List[SaturationRound] = []
    subdivision = None

    for index in tqdm(range(1, len(graph) + 2), desc="Saturation", disable=not progress):
        packing = maximal_star_packing(graph, u, k)
        groups: Dict[FrozenSet[str], List[ExternalStar]] = defaultdict(list)
        for star in packing:
            groups[star.attachment].append(star)
        largest = max((len(g) for g in groups.values()), default=0)
        rounds.append(SaturationRound(index=index, u_size=len(u), packing_size=len(packing), largest_group=largest))
        logger.debug(f"Round {index}: |U|={len(u)}, {len(packing)} stars, largest group {largest}")

        hits = sorted((tuple(sorted(a)) for a, g in groups.items() if len(g) >= m))
        if hits:
            subdivision = _assemble(k, m, groups[frozenset(hits[0])])
            break
        grown = u.union(*(star.vertices for star in packing))
        if grown == u:
            break
        u = grown

    if subdivision is None and u != graph.vertex_set and is_k_connected(graph, k):
        logger.warning(f"Saturation stopped at {len(u)} of {len(graph)} vertices in a {k}-connected graph")
    logger.info(f"K_{k},{m} search: {'found' if subdivision else 'none found'} after {len(rounds)} rounds")
    return SubdivisionSearch(subdivision=subdivision, rounds=tuple(rounds), final_u=u)


def validate_subdivision(graph: MultiGraph, subdivision: Subdivision) -> bool:
    """Checks a witness edge by edge; shares no code with the finder."""
    s = subdivision
    hubs, centers = list(s.hubs), list(s.centers)
    if len(hubs) != s.k or len(set(hubs)) != s.k or len(centers) != s.m or len(set(centers)) != s.m:
        return False
    if set(hubs) & set(centers) or not set(hubs + centers) <= graph.vertex_set:
        return False
    if len(s.spokes) != s.m:
        return False
    interiors: List[str] = []
    for center, paths in zip(centers, s.spokes):
        if len(paths) != s.k or sorted(p[-1] for p in paths if p) != sorted(hubs):
            return False
        for path in paths:
            if len(path) < 2 or path[0] != center or len(set(path)) != len(path):
                return False
            for a, b in zip(path, path[1:]):
                if not graph.has_vertex(a) or not graph.has_vertex(b) or not graph.edges_joining(a, b):
                    return False
            interiors.extend(path[1:-1])
    if len(set(interiors)) != len(interiors):
        return False
    return not set(interiors) & set(hubs + centers)
