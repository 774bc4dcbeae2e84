"""
Report exporter: text rendering of solver, catalog, closure and
maximality results
"""

from typing import List, Sequence

from intervalsat.allen.catalog import AlgebraSet
from intervalsat.allen.closure import CatalogCheck, ClosureReport, ExtensionResult, MaximalityReport
from intervalsat.parameters_instance import Model
from intervalsat.solver import SolveReport, SolveStage
from intervalsat.utils import format_rational


def model_lines(model: Model) -> List[str]:
    """One "A = [p/q, r/s]" line per interval"""
    return [
        f"{name} = [{format_rational(start)}, {format_rational(end)}]"
        for name, (start, end) in model.assignment.items()
    ]


def solve_lines(report: SolveReport, with_model: bool = True) -> List[str]:
    if not report.satisfiable:
        return [f"UNSAT stage={report.stage.value}"]
    lines = ["SAT"]
    if with_model and report.model is not None:
        lines.extend(model_lines(report.model))
    return lines


def validation_lines() -> List[str]:
    return [f"UNSAT stage={SolveStage.validation.value}"]


def closure_lines(report: ClosureReport, size_only: bool = False) -> List[str]:
    lines = [f"closure_size={report.size} iterations={report.iterations}"]
    if not size_only:
        lines.extend(str(r) for r in sorted(report.closed_set))
    return lines


def extension_line(result: ExtensionResult) -> str:
    witness = result.witness.value if result.witness else "none"
    return f"{result.relation} -> witness={witness} closure_size={result.closure_size}"


def maximality_lines(report: MaximalityReport, show_all: bool = False) -> List[str]:
    """
    Summary of a maximality run

    Failures are always listed; witnessed extensions only with show_all.
    """
    witnessed = len(report.results) - len(report.failures)
    lines = [
        f"{report.algebra.value} mode={report.mode.value} extensions={len(report.results)} "
        f"witnessed={witnessed} verdict={report.verdict.value}"
    ]
    shown = report.results if show_all else report.failures
    lines.extend(extension_line(result) for result in shown)
    return lines


def catalog_lines(checks: Sequence[CatalogCheck]) -> List[str]:
    lines = [f"{'algebra':<8} {'size':>6} {'expected':>8}  closed"]
    for check in checks:
        closed = "yes" if check.closed else f"no ({check.closed.counterexample})"
        lines.append(f"{check.algebra.value:<8} {check.size:>6} {check.expected:>8}  {closed}")
    return lines


def algebra_lines(algebra: AlgebraSet, basics_only: bool = False) -> List[str]:
    if basics_only:
        members = [r for r in algebra.sorted_members() if len(r) == 1]
    else:
        members = algebra.sorted_members()
    return [f"{algebra.id.value} size={len(algebra)}"] + [str(r) for r in members]
