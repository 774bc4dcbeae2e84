"""
Witness model construction

After the decision procedure accepts, a local model is assembled from
the starting point witness and the ending point witness. The algebra
specific construction then moves every ending point so that all edges
hold, keeping the starting points (and thus the metric constraints)
untouched. End-mode instances are handled through time reversal.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

from intervalsat.allen.catalog import R_S, AlgebraId
from intervalsat.allen.parameters_allen import EQUAL_STARTS, BasicRelation, Side, endpoint_variable, relation_between
from intervalsat.dlr.parameters_dlr import LinearPolynomial
from intervalsat.parameters_instance import Edge, MIsatInstance, Model
from intervalsat.utils import InternalInconsistencyError

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------- MODEL CHECK ----------------
@dataclass
class ModelCheck:
    valid: bool
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


def check_model(instance: MIsatInstance, model: Model) -> ModelCheck:
    """
    Verify a model against every part of an instance

    Returns:
        ModelCheck with the first violation, if any
    """
    for name in instance.intervals:
        if name not in model.assignment:
            return ModelCheck(False, f"interval {name} has no value")
        start, end = model.assignment[name]
        if not start < end:
            return ModelCheck(False, f"interval {name} = [{start}, {end}] is not proper")
    for edge in instance.edges:
        basic = relation_between(model.assignment[edge.source], model.assignment[edge.target])
        if basic is None or basic not in edge.relation:
            realized = basic.name if basic else "none"
            return ModelCheck(False, f"edge {edge} realizes {realized}")
    points = model.points()
    for dlr in instance.metric:
        missing = dlr.variables - set(points)
        if missing:
            return ModelCheck(False, f"metric constraint {dlr} mentions unassigned {sorted(missing)}")
        if not dlr.holds(points):
            return ModelCheck(False, f"metric constraint {dlr} is violated")
    return ModelCheck(True)


# ---------------- TIME REVERSAL ----------------
def _mirror_variable(name: str) -> str:
    if name.endswith("-"):
        return name[:-1] + "+"
    if name.endswith("+"):
        return name[:-1] + "-"
    return name


def _mirror_polynomial(poly: LinearPolynomial) -> LinearPolynomial:
    # every point t becomes -t
    return LinearPolynomial(
        coefficients={_mirror_variable(name): -c for name, c in poly.coefficients.items()},
        constant=poly.constant,
    )


def mirror_instance(instance: MIsatInstance) -> MIsatInstance:
    """The time-reversed instance: [a, b] becomes [-b, -a]"""
    metric = []
    for dlr in instance.metric:
        disjuncts = [
            d.model_copy(update={"lhs": _mirror_polynomial(d.lhs), "rhs": _mirror_polynomial(d.rhs)})
            for d in dlr.disjuncts
        ]
        metric.append(dlr.model_copy(update={"disjuncts": disjuncts}))
    return MIsatInstance(
        intervals=list(instance.intervals),
        edges=[Edge(e.source, e.relation.mirror(), e.target) for e in instance.edges],
        metric=metric,
        mode=instance.mode.other(),
        algebra=instance.algebra.mirror() if instance.algebra else None,
    )


def mirror_model(model: Model) -> Model:
    return Model({name: (-end, -start) for name, (start, end) in model.assignment.items()})


def mirror_points(points: Mapping[str, Fraction]) -> Dict[str, Fraction]:
    return {_mirror_variable(name): -value for name, value in points.items()}


# ---------------- LOCAL MODEL ----------------
def assemble_local_model(
    intervals: List[str],
    start_witness: Mapping[str, Fraction],
    end_witness: Mapping[str, Fraction],
    mode: Side = Side.start,
) -> Dict[str, Fraction]:
    """
    Combine the mode-side witness N with the other-side witness MP

    In start mode the ending points are shifted above every starting point:
    M'(v+) = MP(v+) - x + y + 1 with x the least MP value and y the largest
    start. End mode is the mirror image.

    Args:
        intervals: Interval names
        start_witness: Witness N for the mode-side endpoints
        end_witness: Witness MP for the other endpoints
        mode: Instance mode

    Returns:
        Endpoint assignment for every interval
    """
    own, other = mode, mode.other()
    points: Dict[str, Fraction] = {}
    for name in intervals:
        points[endpoint_variable(name, own)] = Fraction(start_witness.get(endpoint_variable(name, own), ZERO))
    if not intervals:
        return points

    present = [Fraction(end_witness[endpoint_variable(n, other)]) for n in intervals
               if endpoint_variable(n, other) in end_witness]
    own_values = [points[endpoint_variable(n, own)] for n in intervals]
    if own is Side.start:
        x = min(present) if present else ZERO
        y = max(own_values)
        for name in intervals:
            value = Fraction(end_witness.get(endpoint_variable(name, other), x))
            points[endpoint_variable(name, other)] = value - x + y + 1
    else:
        x = max(present) if present else ZERO
        y = min(own_values)
        for name in intervals:
            value = Fraction(end_witness.get(endpoint_variable(name, other), x))
            points[endpoint_variable(name, other)] = value - x + y - 1
    return points


# ---------------- CONSTRUCTION ----------------
@dataclass
class ConstructionContext:
    """Quantities of the starting point order that drive the ending point formulas"""
    epsilon: Fraction
    starts: List[Fraction]
    start_rank: Dict[str, int]
    groups: Dict[Fraction, List[str]]
    end_rank: Dict[str, int]
    group_size: Dict[str, int]
    largest_start: Fraction

    @property
    def s(self) -> int:
        return len(self.starts)

    @classmethod
    def from_local(cls, intervals: List[str], local: Mapping[str, Fraction]) -> "ConstructionContext":
        starts = sorted({local[endpoint_variable(n, Side.start)] for n in intervals})
        gaps = [b - a for a, b in zip(starts, starts[1:])]
        epsilon = min(gaps) if gaps else ONE
        start_rank = {n: starts.index(local[endpoint_variable(n, Side.start)]) for n in intervals}

        groups: Dict[Fraction, List[str]] = {}
        for name in intervals:
            groups.setdefault(local[endpoint_variable(name, Side.start)], []).append(name)
        end_rank: Dict[str, int] = {}
        for members in groups.values():
            ends = sorted({local[endpoint_variable(n, Side.end)] for n in members})
            for name in members:
                end_rank[name] = ends.index(local[endpoint_variable(name, Side.end)])
        return cls(
            epsilon=epsilon,
            starts=starts,
            start_rank=start_rank,
            groups=groups,
            end_rank=end_rank,
            group_size={n: len(groups[local[endpoint_variable(n, Side.start)]]) for n in intervals},
            largest_start=starts[-1] if starts else ZERO,
        )


def reduce_and_orient(
    edges: List[Edge],
    equal_starts: List[bool],
    local: Mapping[str, Fraction],
) -> List[Edge]:
    """
    Definite labels for the construction

    Labels of edges with equal starting points are cut down to (e s si);
    the others lose (e s si) and are turned so that the source starts later.
    """
    later = R_S
    earlier = R_S.converse()
    result = []
    for edge, equal in zip(edges, equal_starts):
        if equal:
            result.append(Edge(edge.source, edge.relation & EQUAL_STARTS, edge.target))
            continue
        relation = edge.relation - EQUAL_STARTS
        source_start = local[endpoint_variable(edge.source, Side.start)]
        target_start = local[endpoint_variable(edge.target, Side.start)]
        if source_start > target_start:
            result.append(Edge(edge.source, relation & later, edge.target))
        elif source_start < target_start:
            result.append(Edge(edge.target, (relation & earlier).converse(), edge.source))
        else:
            raise InternalInconsistencyError(f"edge {edge} is forced distinct but its starting points coincide")
    return result


def _ending_point(algebra: AlgebraId, name: str, local: Mapping[str, Fraction], context: ConstructionContext) -> Fraction:
    start = local[endpoint_variable(name, Side.start)]
    n = context.group_size[name]
    fraction = Fraction(context.end_rank[name], n)
    i = context.start_rank[name]
    s = context.s
    top = context.largest_start
    if algebra is AlgebraId.s_star:
        return top + 1
    basic = algebra.basic
    if basic is BasicRelation.pi:
        return start + context.epsilon / 4 * (1 + fraction)
    if basic is BasicRelation.d:
        return top + 1 + 2 * (s - i - 1) + (fraction - 1) / 2
    if basic is BasicRelation.oi:
        return top + Fraction(i + 1, s) + (fraction - Fraction(1, 2)) / s
    raise ValueError(f"{algebra.value} is not a starting point algebra")


def construct_start_model(
    instance: MIsatInstance,
    algebra: AlgebraId,
    local: Mapping[str, Fraction],
) -> Model:
    context = ConstructionContext.from_local(instance.intervals, local)
    logging.debug(
        f"Construction for {algebra.value}: s={context.s}, epsilon={context.epsilon}, "
        f"largest start={context.largest_start}"
    )
    return Model({
        name: (local[endpoint_variable(name, Side.start)], _ending_point(algebra, name, local, context))
        for name in instance.intervals
    })


def construct_model(
    instance: MIsatInstance,
    algebra: AlgebraId,
    local: Mapping[str, Fraction],
    equal_starts: List[bool],
) -> Model:
    """
    Turn a local model into a model of the whole instance

    Args:
        instance: Validated instance
        algebra: Algebra containing every label (same family as the mode)
        local: Local model from assemble_local_model
        equal_starts: Per edge, whether its mode-side endpoints are forced equal

    Returns:
        Model that passes check_model

    Raises:
        InternalInconsistencyError: if the constructed model fails verification
    """
    if instance.mode is Side.end:
        mirrored = mirror_instance(instance)
        model = mirror_model(construct_model(mirrored, algebra.mirror(), mirror_points(local), equal_starts))
    else:
        definite = MIsatInstance(
            intervals=instance.intervals,
            edges=reduce_and_orient(instance.edges, equal_starts, local),
            metric=instance.metric,
            mode=instance.mode,
        )
        model = construct_start_model(definite, algebra, local)
        check = check_model(definite, model)
        if not check:
            raise InternalInconsistencyError(f"constructed model fails the definite labels: {check.violation}")

    check = check_model(instance, model)
    if not check:
        logging.error(f"Constructed model fails verification: {check.violation}")
        raise InternalInconsistencyError(f"constructed model fails verification: {check.violation}")
    return model
