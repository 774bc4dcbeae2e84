"""
Instance and Model Parameter Structures

An instance has interval variables, labelled edges between them, a set
of metric Horn DLRs over endpoint variables and a mode telling whether
the metric part talks about starting or ending points.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Set, Tuple

from intervalsat.allen.catalog import AlgebraId
from intervalsat.allen.parameters_allen import IntervalRelation, Side, endpoint_variable
from intervalsat.dlr.parameters_dlr import DisjunctiveLinearRelation
from intervalsat.utils import format_rational


@dataclass(frozen=True)
class Edge:
    """Constraint ⟨source, relation, target⟩: source relation target"""
    source: str
    relation: IntervalRelation
    target: str

    def __str__(self) -> str:
        return f"{self.source} {self.relation} {self.target}"


@dataclass
class MIsatInstance:
    intervals: List[str]
    edges: List[Edge] = field(default_factory=list)
    metric: List[DisjunctiveLinearRelation] = field(default_factory=list)
    mode: Side = Side.start
    algebra: Optional[AlgebraId] = None

    @property
    def labels(self) -> List[IntervalRelation]:
        return [edge.relation for edge in self.edges]

    def endpoint_variables(self, side: Optional[Side] = None) -> Set[str]:
        sides = [side] if side is not None else [Side.start, Side.end]
        return {endpoint_variable(name, s) for name in self.intervals for s in sides}


@dataclass
class Model:
    """Exact interpretation: interval name -> (start, end)"""
    assignment: Dict[str, Tuple[Fraction, Fraction]] = field(default_factory=dict)

    def start(self, interval: str) -> Fraction:
        return self.assignment[interval][0]

    def end(self, interval: str) -> Fraction:
        return self.assignment[interval][1]

    def points(self) -> Dict[str, Fraction]:
        """Endpoint variable assignment ("A-", "A+")"""
        result = {}
        for name, (start, end) in self.assignment.items():
            result[endpoint_variable(name, Side.start)] = start
            result[endpoint_variable(name, Side.end)] = end
        return result

    @classmethod
    def from_points(cls, intervals: List[str], points: Dict[str, Fraction]) -> "Model":
        return cls({
            name: (
                Fraction(points[endpoint_variable(name, Side.start)]),
                Fraction(points[endpoint_variable(name, Side.end)]),
            )
            for name in intervals
        })

    def __iter__(self) -> Iterator[Tuple[str, Tuple[Fraction, Fraction]]]:
        return iter(self.assignment.items())

    def __str__(self) -> str:
        return "\n".join(
            f"{name} = [{format_rational(start)}, {format_rational(end)}]"
            for name, (start, end) in self.assignment.items()
        )
