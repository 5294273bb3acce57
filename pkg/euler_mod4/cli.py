"""
euler-mod4 Command Line

Subcommands tie the modules together: classify, generate, families, label,
verify-graceful, search-graceful, search-regular, check, rules and
export-dot.

Exit statuses:
    0  success
    1  negative verdict (not Eulerian, invalid labeling, graceful absence,
       counterexample or failed rule row)
    2  usage error (bad arguments, unreadable or malformed input)
    3  internal or scale error (guard exceeded, truncated enumeration,
       inconclusive search)

Usage:
    euler-mod4 classify k5.txt --json
    euler-mod4 generate gts --t 4 --s 3 --out g43.txt
    euler-mod4 label gts --t 4 --s 3 --check
    euler-mod4 check --theorem conjecture --max 8

    # Settings file and worker processes
    euler-mod4 --settings ./settings.json --workers 4 search-regular --order 9 --degree 4
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from .config import (
    EulerMod4Config,
    apply_env_overrides,
    load_config_from_json,
    resolve_workers,
    setup_logging,
)
from .cycles import class_name, cycle_type_profile, rule_tables, verify_rule_tables
from .errors import (
    EulerMod4Error,
    GraphError,
    GraphFormatError,
    LabelingFormatError,
    LabelingMismatchError,
    ParameterError,
    ScaleGuardError,
    TruncatedEnumerationError,
)
from .families import (
    FAMILIES,
    GtsParams,
    HandleSpec,
    attach_handle,
    block_cycle_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    gts,
    hypercube,
    random_graph,
    theta_graph,
)
from .graceful import (
    ABSENT,
    FOUND,
    gts_labeling,
    gts_serial_order,
    parse_labeling,
    search_graceful,
    serialize_labeling,
    verify_graceful,
)
from .graph_core import (
    Graph,
    degree_sequence,
    export_dot,
    is_bipartite,
    is_connected,
    is_eulerian,
    parse_graph,
    serialize_graph,
)
from .reports import CommandReport
from .search import (
    check_conjecture_three_types,
    check_evenness,
    check_theorem_at_most_two,
    check_theorem_bipartite_pure,
    check_theorem_pure_regular,
    check_theorem_two_types,
    enumerate_regular_graphs,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

# Checked in order; the first matching class decides the exit status.
EXIT_CODES = (
    (GraphFormatError, EXIT_USAGE),
    (GraphError, EXIT_USAGE),
    (ParameterError, EXIT_USAGE),
    (LabelingMismatchError, EXIT_USAGE),
    (LabelingFormatError, EXIT_USAGE),
    (ScaleGuardError, EXIT_INTERNAL),
    (TruncatedEnumerationError, EXIT_INTERNAL),
)


# ============================================================================
# Helpers
# ============================================================================


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParameterError(f"cannot read {path}: {e.strerror}") from e
    except UnicodeDecodeError as e:
        raise ParameterError(
            f"cannot read {path}: not UTF-8 text ({e.reason} at byte {e.start})"
        ) from e


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ParameterError(f"cannot write {path}: {e.strerror}") from e
    logger.info(f"Wrote {path}")


def _load_graph(path: Path) -> Graph:
    return parse_graph(_read_text(path))


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ParameterError(f"expected comma-separated integers, got {text!r}")


def _require(args: argparse.Namespace, family: str, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise ParameterError(f"family '{family}' needs {', '.join(missing)}")


# ============================================================================
# Commands
# ============================================================================


def cmd_classify(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    """Predicates, cycle-type profile and ε-class of a graph file."""
    graph = _load_graph(args.graph)
    cap = args.cap or config.cycles.cap
    eulerian = is_eulerian(graph)
    connected = is_connected(graph)
    result: Dict[str, Any] = {
        "order": graph.order,
        "size": graph.size,
        "connected": connected,
        "eulerian": eulerian,
        "bipartite": is_bipartite(graph),
        "degree_sequence": degree_sequence(graph),
    }
    report = CommandReport(command="classify", inputs={"graph": str(args.graph), "cap": cap})

    if not connected:
        report.result = result
        report.exit_status = EXIT_NEGATIVE
        return report

    profile = cycle_type_profile(graph, cap, resolve_workers(config))
    result["profile"] = profile.to_report().model_dump()
    if profile.truncated:
        report.result = result
        report.exit_status = EXIT_INTERNAL
        report.error = f"cycle enumeration truncated at cap={cap}"
        return report

    if eulerian and profile.residues:
        name = class_name(profile.residues)
        result["class"] = name.label
        result["class_ascii"] = name.ascii_label
        result["kind"] = name.kind_label
    else:
        result["class"] = None
    report.result = result
    report.exit_status = EXIT_OK if result["class"] else EXIT_NEGATIVE
    return report


def _build_family(args: argparse.Namespace, config: EulerMod4Config) -> Dict[str, Any]:
    family = args.family
    built: Dict[str, Any] = {}
    if family == "cycle":
        _require(args, family, "n")
        built["graph"] = cycle_graph(args.n)
    elif family == "blocks":
        _require(args, family, "lengths")
        built["graph"] = block_cycle_graph(_int_list(args.lengths))
    elif family == "hypercube":
        _require(args, family, "n")
        built["graph"] = hypercube(args.n)
    elif family == "gts":
        _require(args, family, "t", "s")
        layout = gts(GtsParams(t=args.t, s=args.s))
        built["graph"] = layout.graph
        built["layout"] = layout.to_document().model_dump()
    elif family == "handle":
        _require(args, family, "input", "u", "v", "length")
        host = _load_graph(args.input)
        spec = HandleSpec(u=args.u, v=args.v, path_length=args.length, count=args.count or 1)
        built["graph"] = attach_handle(host, spec)
    elif family == "complete":
        _require(args, family, "n")
        built["graph"] = complete_graph(args.n)
    elif family == "bipartite":
        _require(args, family, "a", "b")
        built["graph"] = complete_bipartite_graph(args.a, args.b)
    elif family == "theta":
        _require(args, family, "lengths")
        lengths = _int_list(args.lengths)
        if len(lengths) != 3:
            raise ParameterError(f"theta needs exactly three path lengths, got {lengths}")
        built["graph"] = theta_graph(*lengths)
    elif family == "random":
        _require(args, family, "n", "p")
        built["graph"] = random_graph(args.n, args.p, seed=config.seed)
    return built


def cmd_generate(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    """Build a family member, write it as an edge list, optionally classify it."""
    built = _build_family(args, config)
    graph: Graph = built["graph"]
    text = serialize_graph(graph)
    result: Dict[str, Any] = {"p": graph.order, "q": graph.size, "eulerian": is_eulerian(graph)}

    if args.out:
        _write_text(args.out, text)
        result["out"] = str(args.out)
    else:
        result["edge_list"] = text
    if "layout" in built:
        if args.layout:
            _write_text(args.layout, json.dumps(built["layout"], indent=2) + "\n")
        result["layout"] = built["layout"]
    if args.classify:
        if not is_connected(graph):
            raise ParameterError("--classify needs a connected graph")
        profile = cycle_type_profile(graph, config.cycles.cap, resolve_workers(config))
        result["profile"] = profile.to_report().model_dump()

    logger.info(f"Generated {args.family}: p={graph.order}, q={graph.size}")
    inputs = {k: v for k, v in vars(args).items() if k not in ("handler", "json") and v is not None}
    return CommandReport(
        command="generate",
        inputs={k: str(v) if isinstance(v, Path) else v for k, v in inputs.items()},
        result=result,
    )


def cmd_families(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    return CommandReport(command="families", result={"families": dict(FAMILIES)})


def cmd_label(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    """Closed-form G(t,s) numbering, optionally verified."""
    params = GtsParams(t=args.t, s=args.s)
    labeling = gts_labeling(params)
    result: Dict[str, Any] = {"labeling": labeling.to_document().model_dump()}
    if args.out:
        _write_text(args.out, serialize_labeling(labeling))
        result["out"] = str(args.out)
    if args.serial:
        ranks = gts_serial_order(params).ranks
        result["serial_order"] = {str(u): rank for u, rank in sorted(ranks.items())}

    exit_status = EXIT_OK
    if args.check:
        verdict = verify_graceful(gts(params).graph, labeling)
        result["check"] = verdict.model_dump()
        exit_status = EXIT_OK if verdict.valid else EXIT_NEGATIVE
    return CommandReport(
        command="label", inputs={"family": "gts", "t": args.t, "s": args.s}, result=result,
        exit_status=exit_status,
    )


def cmd_verify(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    graph = _load_graph(args.graph)
    labeling = parse_labeling(_read_text(args.labeling))
    verdict = verify_graceful(graph, labeling)
    return CommandReport(
        command="verify-graceful",
        inputs={"graph": str(args.graph), "labeling": str(args.labeling)},
        result=verdict.model_dump(),
        exit_status=EXIT_OK if verdict.valid else EXIT_NEGATIVE,
    )


def cmd_search_graceful(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    graph = _load_graph(args.graph)
    budget = args.budget or config.graceful.budget
    outcome = search_graceful(graph, budget)
    result: Dict[str, Any] = {"status": outcome.status, "assignments": outcome.assignments}
    if outcome.labeling is not None:
        result["labeling"] = outcome.labeling.to_document().model_dump()
        if args.out:
            _write_text(args.out, serialize_labeling(outcome.labeling))
    exit_status = {FOUND: EXIT_OK, ABSENT: EXIT_NEGATIVE}.get(outcome.status, EXIT_INTERNAL)
    return CommandReport(
        command="search-graceful",
        inputs={"graph": str(args.graph), "budget": budget},
        result=result,
        exit_status=exit_status,
    )


def cmd_search_regular(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    graphs = list(enumerate_regular_graphs(args.order, args.degree, not args.all, config))
    edge_lists = [serialize_graph(g) for g in graphs]
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        for index, text in enumerate(edge_lists):
            _write_text(args.out_dir / f"n{args.order}_k{args.degree}_{index:04d}.txt", text)
    return CommandReport(
        command="search-regular",
        inputs={"order": args.order, "degree": args.degree, "connected_only": not args.all},
        result={"count": len(graphs), "graphs": edge_lists},
    )


def cmd_check(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    theorem = args.theorem
    if theorem == "conjecture":
        report = check_conjecture_three_types(args.min or 6, args.max, config)
    elif theorem == "evenness":
        report = check_evenness(args.max, samples=args.samples, config=config)
    else:
        sweeps: Dict[str, Callable[..., Any]] = {
            "pure": check_theorem_pure_regular,
            "two": check_theorem_two_types,
            "bipartite": check_theorem_bipartite_pure,
            "composite": check_theorem_at_most_two,
        }
        report = sweeps[theorem](args.max, args.min or 3, config)
    return CommandReport(
        command="check",
        inputs={"theorem": theorem, "max": args.max, "min": args.min},
        result=report.model_dump(),
        exit_status=EXIT_OK if not report.counterexamples else EXIT_NEGATIVE,
    )


def cmd_rules(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    if not args.verify:
        tables = {
            str(number): {"case": list(case), "rows": [list(row) for row in rows]}
            for number, (case, rows) in rule_tables().items()
        }
        return CommandReport(command="rules", result={"tables": tables})
    report = verify_rule_tables(config.cycles.cap)
    return CommandReport(
        command="rules",
        inputs={"verify": True},
        result=report.model_dump(),
        exit_status=EXIT_OK if report.all_passed else EXIT_NEGATIVE,
    )


def cmd_export_dot(args: argparse.Namespace, config: EulerMod4Config) -> CommandReport:
    graph = _load_graph(args.graph)
    labeling = parse_labeling(_read_text(args.labeling)) if args.labeling else None
    dot = export_dot(graph, labeling)
    result: Dict[str, Any] = {}
    if args.out:
        _write_text(args.out, dot)
        result["out"] = str(args.out)
    else:
        result["dot"] = dot
    return CommandReport(command="export-dot", inputs={"graph": str(args.graph)}, result=result)


# ============================================================================
# Parser
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--json", action="store_true", help="Emit one JSON document on stdout")

    parser = argparse.ArgumentParser(
        prog="euler-mod4", description="Cycle types mod 4 of Euler graphs", allow_abbrev=False
    )
    parser.add_argument("--settings", type=Path, help="Path to settings.json file")
    parser.add_argument(
        "--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Logging level"
    )
    parser.add_argument("--workers", type=int, help="Worker processes for cycle enumeration and exhaustive search")
    parser.add_argument("--seed", type=int, help="Seed for randomized generators")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="Profile and ε-class of a graph")
    p.add_argument("graph", type=Path)
    p.add_argument("--cap", type=int, help="Simple-cycle enumeration cap")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("generate", parents=[common], help="Build a family member")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--n", type=int)
    p.add_argument("--lengths")
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--in", dest="input", type=Path)
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--len", dest="length", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--out", type=Path, help="Edge-list output file")
    p.add_argument("--layout", type=Path, help="G(t,s) grid JSON output file")
    p.add_argument("--classify", action="store_true", help="Also report the profile")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("families", parents=[common], help="List generator families")
    p.set_defaults(handler=cmd_families)

    p = sub.add_parser("label", parents=[common], help="Closed-form graceful numbering")
    p.add_argument("family", choices=["gts"])
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--out", type=Path, help="Labeling JSON output file")
    p.add_argument("--check", action="store_true", help="Verify the labeling")
    p.add_argument("--serial", action="store_true", help="Include the serial order")
    p.set_defaults(handler=cmd_label)

    p = sub.add_parser("verify-graceful", parents=[common], help="Check a labeling file")
    p.add_argument("graph", type=Path)
    p.add_argument("labeling", type=Path)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("search-graceful", parents=[common], help="Backtracking graceful search")
    p.add_argument("graph", type=Path)
    p.add_argument("--budget", type=int, help="Node-label assignment budget")
    p.add_argument("--out", type=Path, help="Labeling JSON output file")
    p.set_defaults(handler=cmd_search_graceful)

    p = sub.add_parser("search-regular", parents=[common], help="Enumerate regular graphs")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--all", action="store_true", help="Include disconnected graphs")
    p.add_argument("--out-dir", type=Path, help="Write one edge-list file per graph")
    p.set_defaults(handler=cmd_search_regular)

    p = sub.add_parser("check", parents=[common], help="Exhaustive theorem sweeps")
    p.add_argument(
        "--theorem",
        required=True,
        choices=["pure", "two", "conjecture", "bipartite", "composite", "evenness"],
    )
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--min", type=int)
    p.add_argument("--samples", type=int, default=0, help="Random graphs for evenness")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("rules", parents=[common], help="Combined-cycle rule tables")
    p.add_argument("--verify", action="store_true", help="Check every printed row")
    p.set_defaults(handler=cmd_rules)

    p = sub.add_parser("export-dot", parents=[common], help="DOT rendering")
    p.add_argument("graph", type=Path)
    p.add_argument("--labeling", type=Path)
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=cmd_export_dot)

    return parser


def _configure(args: argparse.Namespace) -> EulerMod4Config:
    config = apply_env_overrides(load_config_from_json(args.settings))
    if args.workers is not None:
        if args.workers < 1:
            raise ParameterError(f"--workers must be >= 1, got {args.workers}")
        config = replace(config, search=replace(config.search, workers=args.workers))
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    if args.log_level:
        config = replace(config, log_level=args.log_level)
    return config


def _exit_status_for(error: Exception) -> int:
    for error_class, status in EXIT_CODES:
        if isinstance(error, error_class):
            return status
    return EXIT_INTERNAL


def _render_text(report: CommandReport) -> str:
    lines = [f"{report.command}: exit {report.exit_status}"]
    if report.error:
        lines.append(f"error: {report.error}")
    for key, value in report.result.items():
        if isinstance(value, str) and "\n" in value:
            lines.append(f"{key}:")
            lines.append(value.rstrip("\n"))
        elif isinstance(value, (dict, list)):
            lines.append(f"{key}: {json.dumps(value, ensure_ascii=False)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch, print the report; returns the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = _configure(args)
        setup_logging(config)
        report = args.handler(args, config)
    except EulerMod4Error as e:
        status = _exit_status_for(e)
        logger.error(f"{args.command} failed: {e}")
        report = CommandReport(command=args.command, exit_status=status, error=str(e))
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        report = CommandReport(command=args.command, exit_status=EXIT_INTERNAL, error=str(e))

    if getattr(args, "json", False):
        print(report.model_dump_json(indent=2))
    else:
        print(_render_text(report))
    return report.exit_status


def main() -> None:
    """
    Main entry point for the euler-mod4 command.
    """
    sys.exit(run())


if __name__ == "__main__":
    main()
