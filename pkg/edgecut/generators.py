"""Seeded graph and tree families for the tests and the `generate` command."""
import logging
import random
from typing import List, Optional, Tuple

from .end_space import BulkGroup, Cardinality, NodeSpec, Ref, SymbolicTree
from .graph_core import MultiGraph, build_graph

logger = logging.getLogger(__name__)


def random_connected_multigraph(n: int, m: int, seed: int) -> MultiGraph:
    """A random spanning tree on v0..v{n-1} plus m - (n - 1) random extra edges (parallels allowed)."""
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(n)]
    pairs: List[Tuple[str, str]] = []
    for i in range(1, n):
        pairs.append((names[rng.randrange(i)], names[i]))
    if n > 1:
        for _ in range(max(m - (n - 1), 0)):
            u, v = rng.sample(names, 2)
            pairs.append((u, v))
    return build_graph(pairs, names)


def random_connected_set(graph: MultiGraph, size: int, rng: random.Random, avoid=frozenset()) -> frozenset:
    """Grows a connected vertex set from a random start, outside `avoid`."""
    pool = [v for v in graph.vertices if v not in avoid]
    if not pool:
        return frozenset()
    chosen = {rng.choice(pool)}
    while len(chosen) < size:
        frontier = sorted({w for v in chosen for w in graph.neighbors(v)} - chosen - set(avoid))
        if not frontier:
            break
        chosen.add(rng.choice(frontier))
    return frozenset(chosen)


def path(n: int) -> MultiGraph:
    return build_graph([(f"v{i}", f"v{i + 1}") for i in range(n - 1)], [f"v{i}" for i in range(n)])


def cycle(n: int) -> MultiGraph:
    return build_graph([(f"v{i}", f"v{(i + 1) % n}") for i in range(n)])


def complete(n: int) -> MultiGraph:
    return build_graph([(f"v{i}", f"v{j}") for i in range(n) for j in range(i + 1, n)], [f"v{i}" for i in range(n)])


def complete_bipartite(a: int, b: int) -> MultiGraph:
    """Hubs a0.. on one side, centers b0.. on the other."""
    return build_graph([(f"a{i}", f"b{j}") for j in range(b) for i in range(a)])


def subdivided_complete_bipartite(a: int, b: int) -> MultiGraph:
    """K_{a,b} with every edge a_i b_j replaced by a path a_i s_i_j b_j."""
    pairs = []
    for j in range(b):
        for i in range(a):
            pairs.extend([(f"a{i}", f"s_{i}_{j}"), (f"s_{i}_{j}", f"b{j}")])
    return build_graph(pairs)


def two_triangles(bridges: int = 1) -> MultiGraph:
    """Triangles a0 a1 a2 and b0 b1 b2 joined by `bridges` parallel edges a0 b0."""
    pairs = [("a0", "a1"), ("a1", "a2"), ("a2", "a0"), ("b0", "b1"), ("b1", "b2"), ("b2", "b0")]
    pairs += [("a0", "b0")] * bridges
    return build_graph(pairs)


# -- symbolic trees

def binary_tree(marked: bool = False) -> SymbolicTree:
    node = NodeSpec(marked=marked, children=(("0", Ref("b")), ("1", Ref("b"))))
    return SymbolicTree(node, {"b": node})


def ray_spec(name: str) -> NodeSpec:
    return NodeSpec(children=(("~", Ref(name)),))


def fan(card: str = "countable", marked: bool = True, rays: bool = True) -> SymbolicTree:
    """A root with a bulk group of children, each heading a ray (or a bare leaf)."""
    definitions = {"ray": ray_spec("ray")}
    pattern = Ref("ray") if rays else NodeSpec()
    return SymbolicTree(NodeSpec(marked=marked, bulk=BulkGroup(Cardinality.parse(card), pattern)), definitions)


def uncountable_leaf_fan() -> SymbolicTree:
    """Marked root with uncountably many bare leaves plus one ray."""
    definitions = {"ray": ray_spec("ray")}
    root = NodeSpec(
        marked=True,
        children=(("ray", Ref("ray")),),
        bulk=BulkGroup(Cardinality.parse("uncountable"), NodeSpec()),
    )
    return SymbolicTree(root, definitions)


def random_symbolic_tree(
    seed: int, specs: int = 4, max_children: int = 2, allow_uncountable: bool = True, mark_rate: float = 0.4
) -> SymbolicTree:
    """
    A presentation with `specs` named definitions d0.. (d0 is the root).
    Children are references, so cycles and therefore ends appear freely.
    With allow_uncountable=False no marked spec gets an uncountable group,
    which keeps the tree first countable.
    """
    rng = random.Random(seed)
    names = [f"d{i}" for i in range(specs)]
    definitions = {}
    for i, name in enumerate(names):
        marked = rng.random() < mark_rate
        children = tuple((str(j), Ref(rng.choice(names))) for j in range(rng.randint(0, max_children)))
        bulk: Optional[BulkGroup] = None
        roll = rng.random()
        if roll < 0.5:
            choices = ["finite:2", "countable"] + (["uncountable"] if allow_uncountable or not marked else [])
            bulk = BulkGroup(Cardinality.parse(rng.choice(choices)), Ref(rng.choice(names)))
        definitions[name] = NodeSpec(marked=marked, children=children, bulk=bulk, padding=rng.random() < 0.15)
    tree = SymbolicTree(definitions["d0"], definitions)
    logger.debug(f"Random tree {seed}: {len(tree.specs)} reachable specs")
    return tree
