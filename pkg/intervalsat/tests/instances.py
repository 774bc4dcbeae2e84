"""
Seeded random instances shared by the solver and oracle tests
"""

import random
from typing import List, Optional

from intervalsat.allen.catalog import AlgebraId, generate
from intervalsat.allen.parameters_allen import BOTTOM, IntervalRelation, PointRelation, Side, endpoint_variable
from intervalsat.dlr.point_algebra import PointConstraint
from intervalsat.parameters_instance import Edge, MIsatInstance

POINT_OPERATORS = [
    PointRelation.lt,
    PointRelation.le,
    PointRelation.eq,
    PointRelation.ne,
    PointRelation.ge,
    PointRelation.gt,
]

NAMES = ["A", "B", "C", "D", "E"]


def random_label(rng: random.Random, algebra: AlgebraId, allow_bottom: bool = True) -> IntervalRelation:
    members = generate(algebra).sorted_members()
    while True:
        label = rng.choice(members)
        if allow_bottom or label != BOTTOM:
            return label


def random_instance(
    rng: random.Random,
    algebra: AlgebraId,
    max_intervals: int = 3,
    max_metric: int = 3,
    allow_bottom: bool = True,
    declare: bool = True,
) -> MIsatInstance:
    """
    Random instance over one algebra with point constraints on the mode side

    Args:
        rng: Seeded generator
        algebra: Algebra the labels are drawn from; its family fixes the mode
        max_intervals: Upper bound on the number of intervals
        max_metric: Upper bound on the number of metric constraints
        allow_bottom: Whether the empty relation may be drawn
        declare: Record the algebra in the instance

    Returns:
        MIsatInstance
    """
    n = rng.randint(1, max_intervals)
    names = NAMES[:n]
    side = algebra.family
    edges: List[Edge] = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.75:
                edges.append(Edge(names[i], random_label(rng, algebra, allow_bottom), names[j]))

    metric = []
    for _ in range(rng.randint(0, max_metric)):
        u, v = rng.choice(names), rng.choice(names)
        constraint = PointConstraint(endpoint_variable(u, side), rng.choice(POINT_OPERATORS), endpoint_variable(v, side))
        metric.append(constraint.to_dlr())

    return MIsatInstance(
        intervals=names,
        edges=edges,
        metric=metric,
        mode=side,
        algebra=algebra if declare else None,
    )


def two_intervals(relation: IntervalRelation, metric: Optional[list] = None, mode: Side = Side.start) -> MIsatInstance:
    return MIsatInstance(
        intervals=["u", "v"],
        edges=[Edge("u", relation, "v")],
        metric=metric or [],
        mode=mode,
    )
