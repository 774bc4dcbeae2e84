"""
Solver for interval satisfiability with metric constraints on starting
(or ending) points

Pipeline: validate -> make the implied point relations explicit ->
decide (Horn DLR satisfiability, forced =/≠ per edge, point algebra on
the other endpoints) -> assemble a local model -> construct a model.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from intervalsat.allen.catalog import AlgebraId, detect_algebras, member
from intervalsat.allen.parameters_allen import PointRelation, Side, endpoint_relation, endpoint_variable
from intervalsat.construction import assemble_local_model, check_model, construct_model
from intervalsat.dlr.horn_dlr import horn_dlr_sat
from intervalsat.dlr.parameters_dlr import DisjunctiveLinearRelation, HornDLR
from intervalsat.dlr.point_algebra import PointConstraint, as_fractions, pa_sat, point_constraint_from_dlr
from intervalsat.parameters_instance import Edge, MIsatInstance, Model
from intervalsat.utils import InternalInconsistencyError


class ValidationReason(Enum):
    mixed_endpoint = "mixed-endpoint"
    outside_catalog = "outside-catalog"
    non_horn = "non-horn"
    unknown_variable = "unknown-variable"
    unknown_interval = "unknown-interval"
    algebra_mismatch = "algebra-mismatch"


class InstanceValidationError(ValueError):
    """Instance is outside the tractable fragment handled by the solver"""

    def __init__(self, reason: ValidationReason, message: str):
        super().__init__(message)
        self.reason = reason


class SolveStage(Enum):
    line2 = "line2"
    line13 = "line13"
    validation = "validation"


@dataclass
class SolverOptions:
    algebra: Optional[AlgebraId] = None
    point_algebra_fast_path: bool = True
    verify_model: bool = True


@dataclass
class SolveReport:
    satisfiable: bool
    stage: Optional[SolveStage] = None
    algebra: Optional[AlgebraId] = None
    explicit: List[DisjunctiveLinearRelation] = field(default_factory=list)
    forced: List[PointConstraint] = field(default_factory=list)
    ending_points: List[PointConstraint] = field(default_factory=list)
    equal_starts: List[bool] = field(default_factory=list)
    start_witness: Dict[str, Fraction] = field(default_factory=dict)
    end_witness: Dict[str, Fraction] = field(default_factory=dict)
    local: Dict[str, Fraction] = field(default_factory=dict)
    model: Optional[Model] = None
    trace: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "SAT" if self.satisfiable else "UNSAT"


def _point_relation_constraint(edge: Edge, rel: PointRelation, side: Side) -> Optional[DisjunctiveLinearRelation]:
    """u(side) rel v(side) as a DLR, with > and >= turned around; None for top"""
    if rel is PointRelation.top:
        return None
    constraint = PointConstraint(endpoint_variable(edge.source, side), rel, endpoint_variable(edge.target, side))
    if rel in (PointRelation.gt, PointRelation.ge):
        constraint = constraint.converse()
    return constraint.to_dlr()


class IntervalSolver:
    """Decides instances and builds witness models"""

    def __init__(self, options: Optional[SolverOptions] = None):
        """
        Initialize solver

        Args:
            options: Solver options (defaults when omitted)
        """
        self.options = options or SolverOptions()

    # ---------------- VALIDATION ----------------
    def validate(self, instance: MIsatInstance) -> AlgebraId:
        """
        Check that the instance is in the tractable fragment and choose an algebra

        Returns:
            The declared algebra, or the first matching one in the fixed order

        Raises:
            InstanceValidationError: with a machine-readable reason
        """
        names = set(instance.intervals)
        for edge in instance.edges:
            for name in (edge.source, edge.target):
                if name not in names:
                    raise InstanceValidationError(
                        ValidationReason.unknown_interval, f"edge {edge} mentions undeclared interval {name}"
                    )

        own = instance.endpoint_variables(instance.mode)
        other = instance.endpoint_variables(instance.mode.other())
        for dlr in instance.metric:
            try:
                HornDLR(disjuncts=dlr.disjuncts)
            except ValidationError:
                raise InstanceValidationError(ValidationReason.non_horn, f"not a Horn DLR: {dlr}") from None
            for variable in sorted(dlr.variables):
                if variable in other:
                    raise InstanceValidationError(
                        ValidationReason.mixed_endpoint,
                        f"metric constraint {dlr} uses {variable} in {instance.mode.value} mode",
                    )
                if variable not in own:
                    raise InstanceValidationError(
                        ValidationReason.unknown_variable, f"metric constraint {dlr} uses unknown variable {variable}"
                    )

        declared = self.options.algebra or instance.algebra
        if declared is not None:
            if declared.family is not instance.mode:
                raise InstanceValidationError(
                    ValidationReason.algebra_mismatch,
                    f"{declared.value} does not match {instance.mode.value} mode",
                )
            for edge in instance.edges:
                if not member(declared, edge.relation):
                    raise InstanceValidationError(
                        ValidationReason.algebra_mismatch, f"label of {edge} is not in {declared.value}"
                    )
            return declared

        matches = detect_algebras(instance.labels, family=instance.mode)
        if not matches:
            raise InstanceValidationError(
                ValidationReason.outside_catalog,
                f"no {instance.mode.value} point algebra contains every edge label",
            )
        return matches[0]

    # ---------------- DECISION ----------------
    def explicit_points(self, instance: MIsatInstance) -> MIsatInstance:
        """
        Add the point relation implied by every edge on the mode-side endpoints

        Returns:
            Copy of the instance whose metric part is H ∪ {u sprel(r) v}
            (eprel in end mode)
        """
        side = instance.mode
        metric = list(instance.metric)
        for edge in instance.edges:
            dlr = _point_relation_constraint(edge, endpoint_relation(edge.relation, side), side)
            if dlr is not None:
                metric.append(dlr)
        return MIsatInstance(
            intervals=list(instance.intervals),
            edges=list(instance.edges),
            metric=metric,
            mode=instance.mode,
            algebra=instance.algebra,
        )

    def _satisfiable(self, clauses: List[DisjunctiveLinearRelation]) -> Tuple[bool, Dict[str, Fraction]]:
        if self.options.point_algebra_fast_path:
            constraints = [point_constraint_from_dlr(clause) for clause in clauses]
            if all(c is not None for c in constraints):
                result = pa_sat(constraints)
                return result.satisfiable, as_fractions(result.witness)
        result = horn_dlr_sat(clauses)
        return result.satisfiable, result.witness

    def decide(self, instance: MIsatInstance) -> SolveReport:
        """
        Decide satisfiability without building a model

        Returns:
            SolveReport with the verdict, the stage of rejection and the
            intermediate sets (H', K, P) and witnesses
        """
        algebra = self.validate(instance)
        side = instance.mode
        report = SolveReport(satisfiable=False, algebra=algebra)
        logging.info(
            f"Deciding {len(instance.intervals)} intervals, {len(instance.edges)} edges, "
            f"{len(instance.metric)} metric constraints with {algebra.value}"
        )

        explicit = self.explicit_points(instance).metric
        report.explicit = explicit
        satisfiable, _ = self._satisfiable(explicit)
        if not satisfiable:
            report.stage = SolveStage.line2
            logging.info("UNSAT: the explicit point constraints are inconsistent")
            return report

        forced: List[DisjunctiveLinearRelation] = []
        for edge in instance.edges:
            u = endpoint_variable(edge.source, side)
            v = endpoint_variable(edge.target, side)
            rel = endpoint_relation(edge.relation, side)
            if rel is PointRelation.eq:
                report.equal_starts.append(True)
                continue
            if rel in (PointRelation.lt, PointRelation.gt, PointRelation.ne):
                report.equal_starts.append(False)
                continue
            distinct = PointConstraint(u, PointRelation.ne, v)
            can_differ, _ = self._satisfiable(explicit + [distinct.to_dlr()])
            constraint = distinct if can_differ else PointConstraint(u, PointRelation.eq, v)
            logging.debug(f"Forced {constraint}")
            report.forced.append(constraint)
            report.equal_starts.append(not can_differ)
            forced.append(constraint.to_dlr())

        satisfiable, start_witness = self._satisfiable(explicit + forced)
        if not satisfiable:
            # the forced disequalities are individually consistent, hence jointly consistent
            raise InternalInconsistencyError("explicit constraints with the forced =/≠ set are inconsistent")
        report.start_witness = start_witness

        other = side.other()
        for edge, equal in zip(instance.edges, report.equal_starts):
            if not equal:
                continue
            rel = endpoint_relation(edge.relation, other, restricted=True)
            report.ending_points.append(
                PointConstraint(endpoint_variable(edge.source, other), rel, endpoint_variable(edge.target, other))
            )
        ending = pa_sat(report.ending_points)
        if not ending:
            report.stage = SolveStage.line13
            logging.info(f"UNSAT: the {other.value} points of equal-{side.value} edges are inconsistent")
            return report

        report.end_witness = as_fractions(ending.witness)
        report.satisfiable = True
        logging.info(f"SAT with {algebra.value}")
        return report

    # ---------------- SOLVING ----------------
    def solve(self, instance: MIsatInstance) -> SolveReport:
        """
        Decide an instance and build a verified model when satisfiable

        Raises:
            InstanceValidationError: when the instance is not in the tractable fragment
            InternalInconsistencyError: when a constructed model fails verification
        """
        report = self.decide(instance)
        if not report.satisfiable:
            return report

        report.local = assemble_local_model(
            instance.intervals, report.start_witness, report.end_witness, instance.mode
        )
        report.model = construct_model(instance, report.algebra, report.local, report.equal_starts)
        if self.options.verify_model:
            check = check_model(instance, report.model)
            if not check:
                raise InternalInconsistencyError(f"model fails verification: {check.violation}")
        report.trace.append(f"model built with the {report.algebra.value} construction")
        return report


def validate(instance: MIsatInstance, options: Optional[SolverOptions] = None) -> AlgebraId:
    return IntervalSolver(options).validate(instance)


def explicit_points(instance: MIsatInstance) -> MIsatInstance:
    return IntervalSolver().explicit_points(instance)


def decide(instance: MIsatInstance, options: Optional[SolverOptions] = None) -> SolveReport:
    return IntervalSolver(options).decide(instance)


def solve(instance: MIsatInstance, options: Optional[SolverOptions] = None) -> SolveReport:
    return IntervalSolver(options).solve(instance)
