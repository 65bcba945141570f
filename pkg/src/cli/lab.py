"""
CLI interface for contractad-lab.

Subcommands count Hamiltonian paths and PlanEq tuples, run verification
sweeps over labeled connected graphs, check Koszulity, and print
generating series. Reports go to stdout; logs go to stderr.
"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional

from core.config import LabConfig, parse_budget_assignment, reset_budgets
from core.constants import FormatConstants
from core.errors import ContractadLabError
from core.graph_core import Graph, edge_list_of, parse_graph_spec
from core.graphic_functions import builtin, builtin_names
from core.hamiltonian import (
    acyclic_orientation_count,
    ham_cycle_count,
    ham_path_count,
)
from core.koszul_homology import (
    build_cycham_koszul,
    build_ham_koszul,
    check_koszul,
)
from core.planeq import (
    avoider_set,
    cyceq_count,
    cyceq_tuples,
    parse_pattern,
    planeq_count,
    planeq_tuples,
)
from core.series_lab import (
    RationalSeries,
    cyclic_hertzsprung,
    format_coefficient,
    hertzsprung,
    ogf_cycle,
    ogf_path,
    schroder_series,
)
from core.symmetric_functions import (
    IntegerPartition,
    hc_multipartite,
    hp_multipartite,
    multipartite_graph,
    rows_for_output,
    young_generating,
)
from core.verification import (
    IDENTITY_ALIASES,
    IDENTITY_NAMES,
    koszul_sweep,
    series_checks,
    sweep_identities,
)

from .report import RunReport

logger = logging.getLogger(__name__)

COUNTERS: Dict[str, Callable[[Graph], int]] = {
    "hp": ham_path_count,
    "hc": ham_cycle_count,
    "acyclic": acyclic_orientation_count,
    "pe": planeq_count,
    "ce": cyceq_count,
}

NAMED_SERIES = ("hertzsprung", "cyclic-hertzsprung", "schroder")


def setup_logging(verbose: bool = False) -> None:
    """
    Setup logging configuration on stderr.

    Args:
        verbose: DEBUG everywhere; otherwise INFO for the CLI and WARNING
            for library modules
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )
    logging.getLogger("cli").setLevel(logging.DEBUG if verbose else logging.INFO)


def _add_format(parser: argparse.ArgumentParser, choices: List[str], default: str) -> None:
    parser.add_argument(
        "--format",
        choices=choices,
        default=default,
        help=f"Output format (default: {default})",
    )


def parse_args(args: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parse command line arguments.

    Args:
        args: Optional list of arguments (for testing)

    Returns:
        Parsed arguments namespace
    """
    parser = argparse.ArgumentParser(
        prog="contractad-lab",
        description="Hamiltonian paths and cycles, PlanEq tuples and their generating series",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s count --graph K2,2 --what hp
  %(prog)s planeq --graph C5 --list
  %(prog)s avoiders --n 6 --patterns 2413,3142
  %(prog)s --jobs 4 verify-identities --max-n 6
  %(prog)s koszul-check --graph K3 --module cycham
  %(prog)s multipartite --k 2 --lambda 3,2 --what hc --check
  %(prog)s young-series --f hp --max-weight 5
  %(prog)s series --name schroder --order 6
  %(prog)s --budget koszul_vertices=7 koszul-check --max-n 4 --module ham
        """,
    )

    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    parser.add_argument(
        "--pretty", action="store_true", help="Human-readable text instead of JSON/CSV"
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=None,
        help=f"Worker processes for sweeps (default: ${FormatConstants.ENV_JOBS} or 1)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"Seed of the sampled 7-vertex sweep (default: ${FormatConstants.ENV_SEED} or "
        f"{FormatConstants.DEFAULT_SEED})",
    )
    parser.add_argument(
        "--budget",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="Override a size budget, e.g. koszul_vertices=7 (repeatable)",
    )

    commands = parser.add_subparsers(dest="command", required=True)

    count = commands.add_parser("count", help="Count Hamiltonian paths, cycles, orientations")
    count.add_argument("--graph", required=True, help="Graph spec: P5, C6, K4, K2,2,1 or a file")
    count.add_argument("--what", choices=sorted(COUNTERS), default="hp")
    _add_format(count, FormatConstants.OUTPUT_FORMATS, "json")

    planeq = commands.add_parser("planeq", help="Count or list PlanEq / CycEq tuples")
    planeq.add_argument("--graph", required=True, help="Graph spec")
    mode = planeq.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="Print the number of tuples (default)")
    mode.add_argument("--list", action="store_true", help="Print every tuple")
    planeq.add_argument("--cyclic", action="store_true", help="Use CycEq instead of PlanEq")
    planeq.add_argument("--method", choices=["dp", "sweep"], default="dp")
    _add_format(planeq, FormatConstants.OUTPUT_FORMATS, "json")

    avoid = commands.add_parser("avoiders", help="Count permutations avoiding patterns")
    avoid.add_argument("--n", type=int, required=True, help="Permutation length")
    avoid.add_argument(
        "--patterns", default="2413,3142", help="Comma-separated patterns (default: 2413,3142)"
    )
    avoid.add_argument("--list", action="store_true", help="Print every avoider")
    _add_format(avoid, FormatConstants.OUTPUT_FORMATS, "json")

    verify = commands.add_parser("verify-identities", help="Sweep graphic function identities")
    verify.add_argument("--max-n", type=int, default=4, help="Largest vertex count (default: 4)")
    verify.add_argument(
        "--identity",
        action="append",
        choices=IDENTITY_NAMES + tuple(IDENTITY_ALIASES),
        help="Identity to check (repeatable; default: all; theorem5 is recurrences)",
    )
    verify.add_argument(
        "--sample-n7", action="store_true", help="Add a seeded sample of 7-vertex graphs"
    )
    verify.add_argument("--sample-size", type=int, default=None)
    verify.add_argument(
        "--show-all", action="store_true", help="List passing items, not only counterexamples"
    )
    _add_format(verify, FormatConstants.OUTPUT_FORMATS, "json")

    koszul = commands.add_parser("koszul-check", help="Homology of Koszul complexes")
    target = koszul.add_mutually_exclusive_group(required=True)
    target.add_argument("--graph", help="Graph spec")
    target.add_argument("--max-n", type=int, help="Sweep all connected graphs up to this size")
    koszul.add_argument("--module", choices=["ham", "cycham"], default="ham")
    koszul.add_argument(
        "--dump-matrices", metavar="PATH", help="Write differentials as sparse triplets"
    )
    _add_format(koszul, FormatConstants.OUTPUT_FORMATS, "json")

    multi = commands.add_parser("multipartite", help="HP/HC of K_{(1^k) ∪ λ} by formula")
    multi.add_argument("--k", type=int, default=0, help="Number of singleton parts")
    multi.add_argument("--lambda", dest="lam", default="", help="Parts of λ, e.g. 3,2")
    multi.add_argument("--what", choices=["hp", "hc"], default="hp")
    multi.add_argument("--check", action="store_true", help="Also count by enumeration")
    _add_format(multi, FormatConstants.OUTPUT_FORMATS, "json")

    young = commands.add_parser("young-series", help="Young generating function coefficients")
    young.add_argument("--f", dest="function", default="hp", help="Graphic function name")
    young.add_argument("--max-weight", type=int, default=6)
    _add_format(young, FormatConstants.OUTPUT_FORMATS, "json")

    series = commands.add_parser("series", help="Path/cycle generating series")
    series.add_argument(
        "--name",
        required=True,
        help="hertzsprung, cyclic-hertzsprung, schroder, fp-<f> or fc-<f> (e.g. fp-hp, fc-pe)",
    )
    series.add_argument("--order", type=int, default=10)
    series.add_argument(
        "--counts", action="store_true", help="Multiply cycle-type coefficients by n"
    )
    _add_format(series, FormatConstants.SERIES_FORMATS, "csv")

    verify_series = commands.add_parser("verify-series", help="Series-level identities")
    verify_series.add_argument("--order", type=int, default=8)
    verify_series.add_argument("--weight", type=int, default=5)
    verify_series.add_argument("--avoider-n", type=int, default=7)
    _add_format(verify_series, FormatConstants.OUTPUT_FORMATS, "json")

    return parser.parse_args(args)


def _emit(args: argparse.Namespace, record: Dict[str, object], text: str) -> None:
    """Print a JSON record or its text rendering."""
    if args.format == "json" and not args.pretty:
        print(json.dumps(record))
    else:
        print(text)


def _emit_report(args: argparse.Namespace, report: RunReport) -> int:
    report.finish()
    if args.format == "text" or args.pretty:
        print(report.to_text())
    else:
        print(report.to_json())
    if not report.passed:
        logger.info(f"{len(report.counterexamples)} counterexamples")
    return 0 if report.passed else 1


def command_count(args: argparse.Namespace) -> int:
    g = parse_graph_spec(args.graph)
    value = COUNTERS[args.what](g)
    _emit(
        args,
        {"graph": args.graph, "n": g.n, "edges": edge_list_of(g), "what": args.what, "value": value},
        str(value),
    )
    return 0


def command_planeq(args: argparse.Namespace) -> int:
    g = parse_graph_spec(args.graph)
    if args.list:
        tuples = [list(t.vertices) for t in cyceq_tuples(g)] if args.cyclic else [
            list(t) for t in planeq_tuples(g)
        ]
        text = "\n".join(",".join(map(str, t)) for t in tuples)
        _emit(args, {"graph": args.graph, "cyclic": args.cyclic, "tuples": tuples}, text)
        return 0
    value = cyceq_count(g) if args.cyclic else planeq_count(g, args.method)
    _emit(args, {"graph": args.graph, "cyclic": args.cyclic, "count": value}, str(value))
    return 0


def command_avoiders(args: argparse.Namespace) -> int:
    patterns = [parse_pattern(p) for p in args.patterns.split(",") if p.strip()]
    found = sorted(avoider_set(args.n, patterns))
    record: Dict[str, object] = {
        "n": args.n,
        "patterns": [list(p) for p in patterns],
        "count": len(found),
    }
    text = str(len(found))
    if args.list:
        record["avoiders"] = [list(p) for p in found]
        text = "\n".join("".join(map(str, p)) if args.n < 10 else ",".join(map(str, p)) for p in found)
    _emit(args, record, text)
    return 0


def command_verify_identities(args: argparse.Namespace, config: LabConfig) -> int:
    report = RunReport(["verify-identities", f"--max-n={args.max_n}"] + [
        f"--identity={name}" for name in args.identity or []
    ])
    checks = sweep_identities(
        args.max_n,
        names=args.identity,
        jobs=args.jobs,
        sample_n7=args.sample_n7,
        seed=args.seed,
        sample_size=args.sample_size if args.sample_size is not None else config.sample_size,
    )
    graphs = len({check.graph for check in checks})
    for check in checks:
        if args.show_all or not check.passed:
            report.add_item(check.to_dict(), check.passed)
    report.add_item({"summary": True, "graphs": graphs, "equations": len(checks)})
    logger.info(f"Checked {len(checks)} equations on {graphs} graphs")
    return _emit_report(args, report)


def _koszul_item(check) -> Dict[str, object]:
    return {
        "module": check.module,
        "n": check.graph.n,
        "edges": edge_list_of(check.graph),
        "betti": check.betti,
        "expected": check.expected,
        "passed": check.passed,
    }


def command_koszul_check(args: argparse.Namespace) -> int:
    report = RunReport(["koszul-check", f"--module={args.module}"])
    if args.max_n is not None:
        report.command.append(f"--max-n={args.max_n}")
        checks = koszul_sweep(args.max_n, args.module, jobs=args.jobs)
    else:
        report.command.append(f"--graph={args.graph}")
        g = parse_graph_spec(args.graph)
        checks = [check_koszul(g, args.module)]
        if args.dump_matrices:
            complex_ = build_ham_koszul(g) if args.module == "ham" else build_cycham_koszul(g)
            complex_.dump_triplets(args.dump_matrices)
            logger.info(f"Wrote differentials to {args.dump_matrices}")
    for check in checks:
        report.add_item(_koszul_item(check), check.passed)
    return _emit_report(args, report)


def _parse_lambda(text: str) -> IntegerPartition:
    try:
        parts = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ValueError(f"Partition must be comma-separated positive integers, got: {text}")
    return IntegerPartition(tuple(sorted(parts, reverse=True)))


def command_multipartite(args: argparse.Namespace) -> int:
    lam = _parse_lambda(args.lam)
    formula = hp_multipartite if args.what == "hp" else hc_multipartite
    value = formula(args.k, lam)
    record: Dict[str, object] = {
        "k": args.k,
        "lambda": list(lam.parts),
        "what": args.what,
        "value": value,
    }
    text = str(value)
    passed = True
    if args.check:
        counter = ham_path_count if args.what == "hp" else ham_cycle_count
        oracle = counter(multipartite_graph(args.k, lam))
        passed = oracle == value
        record["enumerated"] = oracle
        record["passed"] = passed
        text = f"{value} (enumerated {oracle})"
    _emit(args, record, text)
    return 0 if passed else 1


def command_young_series(args: argparse.Namespace) -> int:
    series = young_generating(builtin(args.function), args.max_weight)
    rows = rows_for_output(series)
    text = "\n".join(
        f"z^{row['n']} m{tuple(row['lambda'])}: {row['numerator']}"
        + (f"/{row['denominator']}" if row["denominator"] != 1 else "")
        for row in rows
    )
    _emit(
        args,
        {"f": builtin(args.function).name, "max_weight": args.max_weight, "rows": rows},
        text,
    )
    return 0


def compute_series(name: str, order: int) -> RationalSeries:
    """
    Series by CLI name.

    Raises:
        KeyError: If the name is unknown
    """
    if name == "hertzsprung":
        return hertzsprung(order)
    if name == "cyclic-hertzsprung":
        return cyclic_hertzsprung(order)
    if name == "schroder":
        return schroder_series(order)
    prefix, _, function = name.partition("-")
    if prefix in ("fp", "fc") and function:
        f = builtin(function)
        return ogf_path(f, order) if prefix == "fp" else ogf_cycle(f, order)
    raise KeyError(
        f"Unknown series {name}; known: {', '.join(NAMED_SERIES)}, fp-<f>, fc-<f> "
        f"with f in {', '.join(builtin_names())}"
    )


def _is_cyclic_series(name: str) -> bool:
    return name == "cyclic-hertzsprung" or name.startswith("fc-")


def command_series(args: argparse.Namespace) -> int:
    series = compute_series(args.name, args.order)
    values = [series[n] for n in range(1, args.order + 1)]
    if args.counts and _is_cyclic_series(args.name):
        values = [n * v for n, v in enumerate(values, start=1)]
    formatted = [format_coefficient(v) for v in values]
    fmt = "text" if args.pretty else args.format
    if fmt == "csv":
        print(",".join(formatted))
    elif fmt == "json":
        print(
            json.dumps(
                {
                    "name": args.name,
                    "order": args.order,
                    "counts": args.counts,
                    "coefficients": formatted,
                }
            )
        )
    else:
        print("\n".join(f"t^{n}: {c}" for n, c in enumerate(formatted, start=1)))
    return 0


def command_verify_series(args: argparse.Namespace) -> int:
    report = RunReport(
        ["verify-series", f"--order={args.order}", f"--weight={args.weight}",
         f"--avoider-n={args.avoider_n}"]
    )
    for check in series_checks(args.order, args.weight, args.avoider_n):
        report.add_item(check.to_dict(), check.passed)
    return _emit_report(args, report)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main CLI entry point.

    Returns:
        int: Exit code (0 for success, 1 for a failed check, 2 for usage errors)
    """
    try:
        args = parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)

    setup_logging(args.verbose)

    config = LabConfig()
    is_valid, errors = config.validate()
    if not is_valid:
        for error in errors:
            logger.error(f"Configuration error: {error}")
        print(f"Error: {'; '.join(errors)}", file=sys.stderr)
        return 2

    try:
        overrides = dict(parse_budget_assignment(text) for text in args.budget)
        config.apply(overrides)
        if args.jobs is None:
            args.jobs = config.jobs
        if args.seed is None:
            args.seed = config.seed
        if args.jobs < 1:
            raise ValueError(f"--jobs must be at least 1, got {args.jobs}")

        if args.command == "count":
            return command_count(args)
        if args.command == "planeq":
            return command_planeq(args)
        if args.command == "avoiders":
            return command_avoiders(args)
        if args.command == "verify-identities":
            return command_verify_identities(args, config)
        if args.command == "koszul-check":
            return command_koszul_check(args)
        if args.command == "multipartite":
            return command_multipartite(args)
        if args.command == "young-series":
            return command_young_series(args)
        if args.command == "series":
            return command_series(args)
        return command_verify_series(args)

    except (ContractadLabError, KeyError, ValueError) as e:
        message = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        logger.error(f"{args.command} aborted: {message}")
        print(f"Error: {message}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print("\nOperation cancelled by user", file=sys.stderr)
        return 1
    finally:
        reset_budgets()


if __name__ == "__main__":
    sys.exit(main())
