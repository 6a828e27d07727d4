import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

from dotenv import load_dotenv

from . import formats
from .config import BACKENDS, load_config
from .constructions import (
    TprimeMap, build_GX, check_homeomorphism_witness, correspondence_report, tree_edge_ids,
)
from .edge_blocks import gomory_hu, k_edge_blocks, local_edge_connectivity
from .end_space import Point, end_distance, is_first_countable
from .errors import EdgeCutError
from .fin_sep_tree import finitely_separating_spanning_tree, fundamental_cut
from .formats import objects
from .formats.dot import decomposition_to_dot, gomory_hu_to_dot, graph_to_dot, subdivision_to_dot
from .generators import random_connected_multigraph, random_symbolic_tree
from .halin import find_Kkm_subdivision, validate_subdivision
from .mincut import finite_bond_separating, min_cut_between_sets, min_edge_cut
from .reporting import RunContext
from .tree_cut import decompose_into_k_blocks, validate_decomposition

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "v1"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

Payload = Tuple[dict, Optional[str]]


def _vertex_list(text: str):
    return [v for v in text.split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgecut", description="Edge cuts, tree-cut decompositions and end spaces.")
    parser.add_argument("--config", help="Path to config file. Defaults to config.yaml next to the package.")
    parser.add_argument("--seed", type=int, help="Seed for generated families (overrides config and EDGECUT_SEED).")
    parser.add_argument("--format", choices=["json", "dot"], help="Output format where applicable.")
    parser.add_argument("--report", action="store_true", help="Write a Markdown run report.")
    parser.add_argument("--progress", action="store_true", help="Show progress bars on long loops.")
    parser.add_argument("--log-level", help="Logging level (DEBUG, INFO, WARNING, ...).")
    parser.add_argument("--log-file", help="Also write the log to this file.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mincut", help="Minimum edge cut between two vertices.")
    p.add_argument("graph")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--validate", action="store_true")

    p = sub.add_parser("bond", help="Bond separating two connected vertex sets.")
    p.add_argument("graph")
    p.add_argument("--a", required=True, type=_vertex_list, help="Comma-separated vertex set A.")
    p.add_argument("--b", required=True, type=_vertex_list, help="Comma-separated vertex set B.")
    p.add_argument("--sets-only", action="store_true", help="Report the minimum A-B cut instead of a bond.")

    p = sub.add_parser("lambda", help="Local edge connectivity of two vertices.")
    p.add_argument("graph")
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("gomory-hu", help="Gomory-Hu cut tree.")
    p.add_argument("graph")

    p = sub.add_parser("blocks", help="Partition into k-edge blocks.")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("treecut", help="Tree-cut decomposition into k-edge blocks.")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--backend", choices=list(BACKENDS))
    p.add_argument("--validate", action="store_true")

    p = sub.add_parser("finseptree", help="Finitely separating spanning tree with its certificate.")
    p.add_argument("graph")
    p.add_argument("--root")
    p.add_argument("--blocks", action="store_true", help="Run per biconnected block.")
    p.add_argument("--validate", action="store_true")

    p = sub.add_parser("halin", help="Search for a subdivided K_{k,m}.")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed-size", type=int)

    p = sub.add_parser("endspace", help="Tree end spaces.")
    endspace = p.add_subparsers(dest="action", required=True)
    q = endspace.add_parser("check", help="Decide first countability (metrizability).")
    q.add_argument("tree")
    q = endspace.add_parser("distance", help="Ultrametric distance of two rays.")
    q.add_argument("tree")
    q.add_argument("rays", help="JSON list of two rays.")
    q.add_argument("--max-depth", type=int)

    p = sub.add_parser("construct", help="Build G_X or T' from a tree.")
    construct = p.add_subparsers(dest="action", required=True)
    for action in ("gx", "tprime"):
        q = construct.add_parser(action)
        q.add_argument("tree")
        q.add_argument("--depth", type=int)
        q.add_argument("--witnesses", type=int)

    p = sub.add_parser("verify", help="Check constructions on truncations.")
    verify = p.add_subparsers(dest="action", required=True)
    q = verify.add_parser("homeo", help="Continuity and openness witnesses of h.")
    q.add_argument("tree")
    q.add_argument("--tprime", help="T' to check; built from the tree when omitted.")
    q.add_argument("--depth", type=int)
    q.add_argument("--witnesses", type=int)

    p = sub.add_parser("generate", help="Emit a member of a seeded family.")
    generate = p.add_subparsers(dest="action", required=True)
    q = generate.add_parser("graph")
    q.add_argument("--n", type=int, default=6)
    q.add_argument("--m", type=int, default=9)
    q = generate.add_parser("tree")
    q.add_argument("--specs", type=int, default=4)
    q.add_argument("--first-countable", action="store_true")
    return parser


def _configure_logging(level: str, log_file: Optional[str]):
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING), format=LOG_FORMAT, handlers=handlers, force=True)


def _no_dot(name: str) -> None:
    raise EdgeCutError("badformat", f"DOT output is not available for {name}")


# -- command handlers: (args, config, context) -> (payload, dot text)

def cmd_mincut(args, config, context) -> Payload:
    graph = formats.load_graph(args.graph)
    certificate = min_edge_cut(graph, args.source, args.target)
    payload = objects.certificate_to_dict(certificate)
    if args.validate:
        payload["violations"] = certificate.violations(graph)
    context.stats["value"] = certificate.value
    return payload, graph_to_dot(graph, "mincut", certificate.cut.edges)


def cmd_bond(args, config, context) -> Payload:
    graph = formats.load_graph(args.graph)
    if args.sets_only:
        certificate = min_cut_between_sets(graph, args.a, args.b)
        return objects.certificate_to_dict(certificate), graph_to_dot(graph, "cut", certificate.cut.edges)
    bond = finite_bond_separating(graph, args.a, args.b)
    context.stats["bond size"] = bond.size
    return objects.cut_to_dict(bond), graph_to_dot(graph, "bond", bond.edges)


def cmd_lambda(args, config, context) -> Payload:
    graph = formats.load_graph(args.graph)
    value = local_edge_connectivity(graph, args.u, args.v)
    return {"u": args.u, "v": args.v, "lambda": value}, None


def cmd_gomory_hu(args, config, context) -> Payload:
    graph = formats.load_graph(args.graph)
    gh = gomory_hu(graph, progress=args.progress)
    return objects.gomory_hu_to_dict(gh), gomory_hu_to_dot(gh)


def cmd_blocks(args, config, context) -> Payload:
    graph = formats.load_graph(args.graph)
    partition = k_edge_blocks(graph, args.k, gomory_hu(graph, progress=args.progress))
    context.stats["blocks"] = len(partition)
    return objects.blocks_to_dict(partition), None


def cmd_treecut(args, config, context) -> Payload:
    graph = formats.load_graph(args.graph)
    backend = args.backend or config["treecut"]["backend"]
    result = decompose_into_k_blocks(graph, args.k, backend=backend)
    payload = objects.decomposition_to_dict(result.decomposition, result.report)
    payload["backend"] = backend
    payload["k"] = args.k
    if args.validate:
        payload["violations"] = validate_decomposition(result.decomposition, args.k, result.certificate)
    context.stats["parts"] = len(result.decomposition.parts)
    context.stats["max adhesion"] = result.report.max_adhesion
    return payload, decomposition_to_dot(result.decomposition, result.report)


def cmd_finseptree(args, config, context) -> Payload:
    graph = formats.load_graph(args.graph)
    certificate = finitely_separating_spanning_tree(graph, root=args.root, reduce_to_blocks=args.blocks)
    payload = objects.spanning_certificate_to_dict(certificate)
    tree = certificate.tree
    payload["fundamentalCuts"] = {
        eid: sorted(fundamental_cut(graph, tree, eid).edges) for eid in sorted(certificate.tree_edges)
    }
    if args.validate:
        payload["violations"] = certificate.replay()
    return payload, graph_to_dot(graph, "finseptree", certificate.tree_edges)


def cmd_halin(args, config, context) -> Payload:
    graph = formats.load_graph(args.graph)
    seed_size = args.seed_size or config["halin"]["seed_size"]
    search = find_Kkm_subdivision(graph, args.k, args.m, seed_size=seed_size, progress=args.progress)
    payload = objects.search_to_dict(search)
    payload["valid"] = validate_subdivision(graph, search.subdivision) if search.found else None
    context.stats["rounds"] = len(search.rounds)
    dot = subdivision_to_dot(graph, search.subdivision) if search.found else graph_to_dot(graph, "halin")
    return payload, dot


def cmd_endspace(args, config, context) -> Payload:
    tree = formats.load_tree(args.tree)
    if args.action == "check":
        return objects.verdict_to_dict(is_first_countable(tree)), None
    rays = formats.load_rays(tree, args.rays)
    if len(rays) < 2:
        raise EdgeCutError("badformat", "The ray file needs two rays")
    depth = args.max_depth if args.max_depth is not None else config["truncation"]["depth"]
    value = end_distance(tree, Point.end(rays[0]), Point.end(rays[1]), depth)
    return {"distance": str(value), "value": float(value), "indistinguishable": value == 0, "maxDepth": depth}, None


def _truncation(args, config) -> Tuple[int, int]:
    depth = args.depth if args.depth is not None else config["truncation"]["depth"]
    witnesses = args.witnesses if args.witnesses is not None else config["truncation"]["witnesses"]
    return depth, witnesses


def cmd_construct(args, config, context) -> Payload:
    tree = formats.load_tree(args.tree)
    depth, witnesses = _truncation(args, config)
    if args.action == "tprime":
        image = TprimeMap(tree).image
        return formats.tree_to_dict(image), None
    presented = build_GX(tree)
    realized = presented.truncate(depth, witnesses)
    base = realized.edge_subgraph(tree_edge_ids(realized))
    sizes = [fundamental_cut(realized, base, eid).size for eid in sorted(tree_edge_ids(realized))]
    payload = formats.presented_to_dict(presented)
    payload["truncation"] = {
        "depth": depth,
        "witnesses": witnesses,
        "graph": formats.graph_to_dict(realized),
        "maxFundamentalCut": max(sizes, default=0),
    }
    context.stats["truncated vertices"] = len(realized)
    return payload, graph_to_dot(realized, "G_X", tree_edge_ids(realized))


def cmd_verify(args, config, context) -> Payload:
    tree = formats.load_tree(args.tree)
    depth, witnesses = _truncation(args, config)
    tprime = formats.load_tree(args.tprime) if args.tprime else TprimeMap(tree).image
    report = check_homeomorphism_witness(tree, tprime, depth, witnesses, progress=args.progress)
    correspondence = correspondence_report(tree, depth, witnesses)
    context.stats["witnesses"] = len(report.witnesses)
    context.stats["failures"] = len(report.failures) + len(correspondence.failures)
    return {
        "homeomorphism": objects.homeomorphism_to_dict(report),
        "correspondence": objects.correspondence_to_dict(correspondence),
    }, None


def cmd_generate(args, config, context) -> Payload:
    seed = context.seed
    if args.action == "graph":
        graph = random_connected_multigraph(args.n, args.m, seed)
        return formats.graph_to_dict(graph), graph_to_dot(graph, f"random_{seed}")
    tree = random_symbolic_tree(seed, specs=args.specs, allow_uncountable=not args.first_countable)
    return formats.tree_to_dict(tree), None


HANDLERS: Dict[str, Callable] = {
    "mincut": cmd_mincut,
    "bond": cmd_bond,
    "lambda": cmd_lambda,
    "gomory-hu": cmd_gomory_hu,
    "blocks": cmd_blocks,
    "treecut": cmd_treecut,
    "finseptree": cmd_finseptree,
    "halin": cmd_halin,
    "endspace": cmd_endspace,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "generate": cmd_generate,
}


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def run(argv=None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    command = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    context = RunContext(command=command, input_path=str(getattr(args, "graph", None) or getattr(args, "tree", "")))

    try:
        config = load_config(args.config)
    except (EdgeCutError, FileNotFoundError) as e:
        _configure_logging("WARNING", args.log_file)
        error = e.to_dict() if isinstance(e, EdgeCutError) else {"code": "io", "message": str(e), "details": {}}
        _emit({"schema": f"edgecut/error/{SCHEMA_VERSION}", "error": error})
        return 1

    _configure_logging(args.log_level or config["logging"]["level"], args.log_file)
    context.seed = args.seed if args.seed is not None else config["seed"]
    context.output_format = args.format or config["output"]["format"]
    logger.info(f"Running {command}")

    start = time.time()
    exit_code = 0
    try:
        payload, dot = HANDLERS[args.command](args, config, context)
        context.add_step("Compute", start, f"{command} finished")
        if context.output_format == "dot":
            if dot is None:
                _no_dot(command)
            sys.stdout.write(dot)
        else:
            payload["schema"] = f"edgecut/{command.replace(' ', '/')}/{SCHEMA_VERSION}"
            _emit(payload)
    except EdgeCutError as e:
        context.add_step("Compute", start, f"{command} stopped", error=e.code)
        _emit({"schema": f"edgecut/error/{SCHEMA_VERSION}", "error": e.to_dict()})
        exit_code = 1
    except OSError as e:
        context.add_step("Compute", start, f"{command} stopped", error="io")
        _emit({"schema": f"edgecut/error/{SCHEMA_VERSION}", "error": {"code": "io", "message": str(e), "details": {}}})
        exit_code = 1

    sys.stderr.write(context.generate_summary() + "\n")
    if args.report:
        report_dir = Path(config["report"]["directory"])
        report_dir.mkdir(parents=True, exist_ok=True)
        report_path = report_dir / f"report_{command.replace(' ', '_')}.md"
        with open(report_path, "w", encoding="utf-8") as f:
            f.write(context.generate_markdown())
        logger.info(f"Report saved to {report_path}")
    return exit_code


def main():
    sys.exit(run())
