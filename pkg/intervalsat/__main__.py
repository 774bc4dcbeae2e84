"""
Main entry point for the interval satisfiability solver
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List

from intervalsat import __version__
from intervalsat.allen.catalog import AlgebraId, generate, member
from intervalsat.allen.closure import MaximalityMode, close, verify_catalog, verify_maximality
from intervalsat.allen.composition import compose, default_table
from intervalsat.exporters.report_exporter import (
    algebra_lines,
    catalog_lines,
    closure_lines,
    maximality_lines,
    model_lines,
    solve_lines,
    validation_lines,
)
from intervalsat.oracle import OracleError, OracleMethod, brute_force_isat, derive_composition_table, endpoint_projection_mismatches
from intervalsat.parsers.instance_parser import InstanceSyntaxError, load_instance
from intervalsat.parsers.relation_parser import RelationSyntaxError, parse_relation
from intervalsat.solver import InstanceValidationError, IntervalSolver, SolverOptions
from intervalsat.utils import InternalInconsistencyError, setup_logger

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def get_parser() -> argparse.ArgumentParser:
    """Create argument parser"""
    parser = argparse.ArgumentParser(
        prog="intervalsat",
        description="Decide interval constraint networks with metric constraints on starting or ending points"
    )

    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument("--log-file", type=str, help="Also append log messages to this file")

    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="Decide an instance file and print a model")
    solve.add_argument("file", type=str, help="Instance file")
    solve.add_argument("--no-model", action="store_true", help="Print the verdict only")
    solve.add_argument("--lp", action="store_true", help="Use the Horn DLR procedure even for point constraints")

    catalog = commands.add_parser("catalog", help="Inspect the tractable algebras")
    catalog_commands = catalog.add_subparsers(dest="catalog_command", required=True)
    catalog_commands.add_parser("verify", help="Check sizes and closure of every algebra")
    catalog_member = catalog_commands.add_parser("member", help="Test membership of a relation")
    catalog_member.add_argument("algebra", type=str, help="Algebra name, e.g. S(pi)")
    catalog_member.add_argument("relation", type=str, help="Relation, e.g. {p pi}")
    catalog_show = catalog_commands.add_parser("show", help="Print the members of an algebra")
    catalog_show.add_argument("algebra", type=str, help="Algebra name, e.g. E*")
    catalog_show.add_argument("--basics", action="store_true", help="Only the basic relations")

    closure = commands.add_parser("closure", help="Close a set of relations")
    closure.add_argument("relations", nargs="+", type=str, help="Relations, e.g. {m}")
    closure.add_argument("--size", action="store_true", help="Print the size only")

    maximality = commands.add_parser("maximality", help="Check that every extension of an algebra is NP-hard")
    maximality.add_argument("algebra", type=str, help="Algebra name")
    maximality.add_argument("--sample", type=int, default=None, help="Check N random extensions instead of all")
    maximality.add_argument("--seed", type=int, default=0, help="Seed for --sample")
    maximality.add_argument("--jobs", type=int, default=1, help="Worker processes")
    maximality.add_argument("--no-early-exit", action="store_true", help="Run every closure to its fixed point")
    maximality.add_argument("--all", action="store_true", help="List witnessed extensions as well")

    compose_cmd = commands.add_parser("compose", help="Compose two relations")
    compose_cmd.add_argument("first", type=str)
    compose_cmd.add_argument("second", type=str)

    converse_cmd = commands.add_parser("converse", help="Converse of a relation")
    converse_cmd.add_argument("relation", type=str)

    oracle = commands.add_parser("oracle", help="Brute-force decision for small instances")
    oracle_commands = oracle.add_subparsers(dest="oracle_command", required=True)
    oracle_solve = oracle_commands.add_parser("solve", help="Decide an instance by enumeration")
    oracle_solve.add_argument("file", type=str, help="Instance file")
    oracle_solve.add_argument(
        "--method",
        choices=[m.value for m in OracleMethod],
        default=OracleMethod.enumerate.value,
        help="Search method"
    )

    commands.add_parser("selftest", help="Check the composition table and endpoint projections against the oracle")

    return parser


def validate_arguments(args: argparse.Namespace) -> bool:
    """
    Validate command line arguments

    Returns:
        True if valid, False otherwise
    """
    if args.command == "maximality":
        if args.sample is not None and args.sample < 0:
            logging.error("--sample must not be negative")
            return False
        if args.jobs < 1:
            logging.error("--jobs must be at least 1")
            return False
    return True


# ---------------- COMMANDS ----------------
def _print(lines: List[str]):
    for line in lines:
        print(line)


def run_solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.file)
    solver = IntervalSolver(SolverOptions(point_algebra_fast_path=not args.lp))
    try:
        report = solver.solve(instance)
    except InstanceValidationError as e:
        logging.error(f"{e.reason.value}: {e}")
        _print(validation_lines())
        return EXIT_INPUT
    _print(solve_lines(report, with_model=not args.no_model))
    return EXIT_OK if report.satisfiable else EXIT_FAILED


def run_catalog(args: argparse.Namespace) -> int:
    if args.catalog_command == "verify":
        checks = verify_catalog()
        _print(catalog_lines(checks))
        return EXIT_OK if all(check.ok for check in checks) else EXIT_FAILED
    algebra = AlgebraId.from_name(args.algebra)
    if args.catalog_command == "member":
        print("true" if member(algebra, parse_relation(args.relation)) else "false")
        return EXIT_OK
    _print(algebra_lines(generate(algebra), basics_only=args.basics))
    return EXIT_OK


def run_closure(args: argparse.Namespace) -> int:
    report = close([parse_relation(text) for text in args.relations])
    _print(closure_lines(report, size_only=args.size))
    return EXIT_OK


def run_maximality(args: argparse.Namespace) -> int:
    report = verify_maximality(
        AlgebraId.from_name(args.algebra),
        mode=MaximalityMode.full if args.sample is None else MaximalityMode.sample,
        sample_size=args.sample or 0,
        seed=args.seed,
        jobs=args.jobs,
        early_exit=not args.no_early_exit,
    )
    _print(maximality_lines(report, show_all=args.all))
    return EXIT_FAILED if report.failures else EXIT_OK


def run_compose(args: argparse.Namespace) -> int:
    print(compose(parse_relation(args.first), parse_relation(args.second)))
    return EXIT_OK


def run_converse(args: argparse.Namespace) -> int:
    print(parse_relation(args.relation).converse())
    return EXIT_OK


def run_oracle(args: argparse.Namespace) -> int:
    instance = load_instance(args.file)
    result = brute_force_isat(instance, OracleMethod(args.method))
    if not result:
        print("UNSAT")
        return EXIT_FAILED
    _print(["SAT"] + model_lines(result.model))
    return EXIT_OK


def run_selftest(args: argparse.Namespace) -> int:
    success = True
    differences = default_table().differences(derive_composition_table())
    for difference in differences:
        logging.error(f"Composition table mismatch: {difference}")
    print(f"composition table: {'ok' if not differences else f'{len(differences)} mismatches'}")
    success &= not differences

    mismatches = endpoint_projection_mismatches()
    for mismatch in mismatches:
        logging.error(f"Endpoint projection mismatch: {mismatch}")
    print(f"endpoint projections: {'ok' if not mismatches else f'{len(mismatches)} mismatches'}")
    success &= not mismatches
    return EXIT_OK if success else EXIT_FAILED


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "solve": run_solve,
    "catalog": run_catalog,
    "closure": run_closure,
    "maximality": run_maximality,
    "compose": run_compose,
    "converse": run_converse,
    "oracle": run_oracle,
    "selftest": run_selftest,
}


def main(argv: List[str] = None) -> int:
    """
    Main execution function

    Args:
        argv: Command line arguments

    Returns:
        Exit code (0 SAT / success, 1 UNSAT / failed check, 2 bad input, 3 internal error)
    """
    if argv is None:
        argv = sys.argv[1:]

    # Parse arguments
    parser = get_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_INPUT if err.code else EXIT_OK

    # Setup logging
    log_level = logging.DEBUG if args.debug else logging.INFO
    setup_logger(log_level, args.log_file)
    logging.debug(f"intervalsat v{__version__}: {args.command}")

    if not validate_arguments(args):
        return EXIT_INPUT

    try:
        return COMMANDS[args.command](args)
    except (InstanceSyntaxError, RelationSyntaxError, OracleError, ValueError, OSError) as e:
        logging.error(f"{e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInconsistencyError as e:
        logging.error(f"Internal inconsistency: {e}", exc_info=True)
        print(f"Internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
