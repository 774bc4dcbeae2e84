"""
Brute-force oracle over weak orderings of endpoints

Qualitative satisfiability depends only on how the endpoints are ordered,
so enumerating every weak ordering (ordered set partition) of the points
is a complete decision method for small instances. It is used as ground
truth for the composition table and for the solver.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from intervalsat.allen.composition import CompositionTable
from intervalsat.allen.parameters_allen import (
    BASIC_RELATIONS,
    BasicRelation,
    IntervalRelation,
    PointRelation,
    Side,
    endpoint_variable,
    eprel,
    relation_between,
    sprel,
)
from intervalsat.dlr.point_algebra import PointConstraint, point_constraint_from_dlr
from intervalsat.parameters_instance import MIsatInstance, Model


class OracleError(ValueError):
    """Instance cannot be decided by the oracle"""


class OracleMethod(Enum):
    enumerate = "enumerate"
    backtrack = "backtrack"


MAX_INTERVALS = {
    OracleMethod.enumerate: 4,
    OracleMethod.backtrack: 5,
}


def _insertions(ranks: List[int], levels: int) -> Iterator[Tuple[List[int], int]]:
    """Every way to add one more point to a weak ordering"""
    for level in range(levels):
        yield ranks + [level], levels
    for level in range(levels + 1):
        shifted = [rank + 1 if rank >= level else rank for rank in ranks]
        yield shifted + [level], levels + 1


def weak_orderings(n: int) -> Iterator[Tuple[int, ...]]:
    """
    All weak orderings of n points as rank tuples

    Ranks are surjective onto 0..k-1; n=4 gives 75 orderings, n=6 gives 4683.
    """
    def extend(ranks: List[int], levels: int) -> Iterator[Tuple[int, ...]]:
        if len(ranks) == n:
            yield tuple(ranks)
            return
        for next_ranks, next_levels in _insertions(ranks, levels):
            yield from extend(next_ranks, next_levels)

    yield from extend([], 0)


def basic_relation_of(ordering: Mapping[str, int], u: str, v: str) -> Optional[BasicRelation]:
    """
    Basic relation between two intervals under a weak ordering

    Args:
        ordering: Rank per endpoint variable ("u-", "u+", ...)
        u: First interval
        v: Second interval

    Returns:
        The basic relation, or None when an interval is not proper
    """
    return relation_between(
        (ordering[endpoint_variable(u, Side.start)], ordering[endpoint_variable(u, Side.end)]),
        (ordering[endpoint_variable(v, Side.start)], ordering[endpoint_variable(v, Side.end)]),
    )


def derive_composition_table() -> CompositionTable:
    """Composition table read off all weak orderings of x⁻ x⁺ y⁻ y⁺ z⁻ z⁺"""
    entries = [[0] * len(BASIC_RELATIONS) for _ in BASIC_RELATIONS]
    for w in weak_orderings(6):
        xy = relation_between((w[0], w[1]), (w[2], w[3]))
        yz = relation_between((w[2], w[3]), (w[4], w[5]))
        xz = relation_between((w[0], w[1]), (w[4], w[5]))
        if xy is None or yz is None or xz is None:
            continue
        entries[xy.value][yz.value] |= xz.bit
    return CompositionTable(tuple(tuple(row) for row in entries))


def endpoint_projection_mismatches() -> List[str]:
    """
    Compare sprel/eprel of every basic relation with the endpoint orders
    realised by weak orderings of x⁻ x⁺ y⁻ y⁺

    Returns:
        Descriptions of the mismatching projections (empty when all 26 agree)
    """
    starts = {basic: PointRelation.bottom for basic in BASIC_RELATIONS}
    ends = {basic: PointRelation.bottom for basic in BASIC_RELATIONS}
    for w in weak_orderings(4):
        basic = relation_between((w[0], w[1]), (w[2], w[3]))
        if basic is None:
            continue
        starts[basic] = starts[basic].join(PointRelation.compare(w[0], w[2]))
        ends[basic] = ends[basic].join(PointRelation.compare(w[1], w[3]))

    mismatches = []
    for basic in BASIC_RELATIONS:
        r = IntervalRelation.of(basic)
        if sprel(r) is not starts[basic]:
            mismatches.append(f"sprel({basic.name}) = {sprel(r).text}, orderings give {starts[basic].text}")
        if eprel(r) is not ends[basic]:
            mismatches.append(f"eprel({basic.name}) = {eprel(r).text}, orderings give {ends[basic].text}")
    return mismatches


@dataclass
class OracleResult:
    satisfiable: bool
    model: Optional[Model] = None

    def __bool__(self) -> bool:
        return self.satisfiable


Check = Callable[[Sequence[int]], bool]


def _checks_by_point(instance: MIsatInstance) -> Tuple[List[str], List[List[Check]]]:
    """Order the endpoints and attach each check to the last point it reads"""
    points = [endpoint_variable(name, side) for name in instance.intervals for side in (Side.start, Side.end)]
    index = {point: i for i, point in enumerate(points)}
    checks: List[List[Check]] = [[] for _ in points]

    for k in range(len(instance.intervals)):
        checks[2 * k + 1].append(lambda w, s=2 * k, e=2 * k + 1: w[s] < w[e])

    position = {name: k for k, name in enumerate(instance.intervals)}
    for edge in instance.edges:
        if edge.source not in position or edge.target not in position:
            raise OracleError(f"edge {edge} mentions an undeclared interval")
        u, v = position[edge.source], position[edge.target]
        mask = edge.relation.mask

        def edge_check(w, u=u, v=v, mask=mask) -> bool:
            basic = relation_between((w[2 * u], w[2 * u + 1]), (w[2 * v], w[2 * v + 1]))
            return basic is not None and bool(mask & basic.bit)

        checks[max(2 * u + 1, 2 * v + 1)].append(edge_check)

    for dlr in instance.metric:
        constraint: Optional[PointConstraint] = point_constraint_from_dlr(dlr)
        if constraint is None:
            raise OracleError(f"metric constraint {dlr} is not a point algebra constraint")
        if constraint.lhs not in index or constraint.rhs not in index:
            raise OracleError(f"metric constraint {dlr} mentions an unknown endpoint")
        a, b, rel = index[constraint.lhs], index[constraint.rhs], constraint.rel
        checks[max(a, b)].append(lambda w, a=a, b=b, rel=rel: rel.holds(w[a], w[b]))
    return points, checks


def _enumerate(n_points: int, checks: List[List[Check]]) -> Optional[Tuple[int, ...]]:
    flat = [check for point_checks in checks for check in point_checks]
    for w in weak_orderings(n_points):
        if all(check(w) for check in flat):
            return w
    return None


def _backtrack(n_points: int, checks: List[List[Check]]) -> Optional[Tuple[int, ...]]:
    # insertion keeps the relative order of placed points, so checks stay valid
    def place(ranks: List[int], levels: int) -> Optional[Tuple[int, ...]]:
        if len(ranks) == n_points:
            return tuple(ranks)
        i = len(ranks)
        for next_ranks, next_levels in _insertions(ranks, levels):
            if all(check(next_ranks) for check in checks[i]):
                found = place(next_ranks, next_levels)
                if found is not None:
                    return found
        return None

    return place([], 0)


def brute_force_isat(instance: MIsatInstance, method: OracleMethod = OracleMethod.enumerate) -> OracleResult:
    """
    Decide an instance by exhausting endpoint orderings

    Args:
        instance: Instance whose metric constraints are point algebra constraints
        method: Plain enumeration (up to 4 intervals) or backtracking (up to 5)

    Returns:
        OracleResult; a model uses the ranks as coordinates

    Raises:
        OracleError: if the instance is too large or has general linear constraints
    """
    limit = MAX_INTERVALS[method]
    if len(instance.intervals) > limit:
        raise OracleError(f"{len(instance.intervals)} intervals exceed the {method.value} limit of {limit}")
    points, checks = _checks_by_point(instance)
    search = _enumerate if method is OracleMethod.enumerate else _backtrack
    ranks = search(len(points), checks)
    if ranks is None:
        logging.debug(f"Oracle: no ordering of {len(points)} endpoints satisfies the instance")
        return OracleResult(False)
    assignment: Dict[str, Fraction] = {point: Fraction(rank) for point, rank in zip(points, ranks)}
    return OracleResult(True, Model.from_points(instance.intervals, assignment))
