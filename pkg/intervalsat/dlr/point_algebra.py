"""
Point algebra satisfiability

Constraints x R y with R one of < <= = != >= > (plus top and bottom)
are decided in linear time: equality classes are the strongly connected
components of the <=-graph, and a topological order of the classes gives
an integer witness.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional

from intervalsat.allen.parameters_allen import PointRelation
from intervalsat.dlr.parameters_dlr import DisjunctiveLinearRelation, LinearPolynomial, LinearRelation


@dataclass(frozen=True)
class PointConstraint:
    lhs: str
    rel: PointRelation
    rhs: str

    def converse(self) -> "PointConstraint":
        return PointConstraint(self.rhs, self.rel.converse(), self.lhs)

    def holds(self, assignment: Mapping) -> bool:
        return self.rel.holds(assignment[self.lhs], assignment[self.rhs])

    def to_dlr(self) -> DisjunctiveLinearRelation:
        """Equivalent Horn DLR; bottom becomes 0 < 0 and top becomes 0 = 0"""
        if self.rel is PointRelation.bottom:
            rel = LinearRelation(lhs=0, op=PointRelation.lt, rhs=0)
        elif self.rel is PointRelation.top:
            rel = LinearRelation(lhs=0, op=PointRelation.eq, rhs=0)
        else:
            rel = LinearRelation(
                lhs=LinearPolynomial.variable(self.lhs),
                op=self.rel,
                rhs=LinearPolynomial.variable(self.rhs),
            )
        return DisjunctiveLinearRelation(disjuncts=[rel])

    def __str__(self) -> str:
        return f"{self.lhs} {self.rel.symbol} {self.rhs}"


def point_constraint_from_dlr(dlr: DisjunctiveLinearRelation) -> Optional[PointConstraint]:
    """
    Recognize a DLR that is a point algebra constraint

    Accepted shapes are a single disjunct "x op y" with bare variables, or
    "±(x − y) op 0" written with unit coefficients and no constant.

    Returns:
        The PointConstraint, or None when the DLR needs the LP back end
    """
    if len(dlr.disjuncts) != 1:
        return None
    rel = dlr.disjuncts[0]

    def bare_variable(poly: LinearPolynomial) -> Optional[str]:
        if poly.constant == 0 and len(poly.coefficients) == 1:
            (name, c), = poly.coefficients.items()
            if c == 1:
                return name
        return None

    lhs, rhs = bare_variable(rel.lhs), bare_variable(rel.rhs)
    if lhs is not None and rhs is not None:
        return PointConstraint(lhs, rel.op, rhs)

    difference = rel.difference()
    if difference.constant != 0 or len(difference.coefficients) != 2:
        return None
    positive = [name for name, c in difference.coefficients.items() if c == 1]
    negative = [name for name, c in difference.coefficients.items() if c == -1]
    if len(positive) != 1 or len(negative) != 1:
        return None
    return PointConstraint(positive[0], rel.op, negative[0])


@dataclass
class PaResult:
    satisfiable: bool
    witness: Dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.satisfiable


def _strongly_connected_components(nodes: List[str], successors: Dict[str, List[str]]):
    """
    Iterative Tarjan; components come out in reverse topological order

    Returns:
        (component index per node, number of components)
    """
    index: Dict[str, int] = {}
    low: Dict[str, int] = {}
    on_stack = set()
    stack: List[str] = []
    component: Dict[str, int] = {}
    counter = 0
    count = 0

    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(successors[root]))]
        while work:
            node, edges = work[-1]
            descended = False
            for succ in edges:
                if succ not in index:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(successors[succ])))
                    descended = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component[member] = count
                    if member == node:
                        break
                count += 1
    return component, count


def pa_sat(constraints: Iterable[PointConstraint]) -> PaResult:
    """
    Decide a set of point algebra constraints

    Args:
        constraints: Point constraints over arbitrary variable names

    Returns:
        PaResult; a satisfiable result maps every mentioned variable to an
        integer, with distinct equality classes receiving distinct values
    """
    nodes: List[str] = []
    successors: Dict[str, List[str]] = {}
    checks: List[PointConstraint] = []

    def register(name: str):
        if name not in successors:
            successors[name] = []
            nodes.append(name)

    for constraint in constraints:
        register(constraint.lhs)
        register(constraint.rhs)
        rel = constraint.rel
        if rel is PointRelation.bottom:
            logging.debug(f"Point constraint {constraint} is unsatisfiable")
            return PaResult(False)
        if rel is PointRelation.top:
            continue
        if rel in (PointRelation.gt, PointRelation.ge):
            constraint = constraint.converse()
            rel = constraint.rel
        u, v = constraint.lhs, constraint.rhs
        if rel in (PointRelation.lt, PointRelation.le, PointRelation.eq):
            successors[u].append(v)
        if rel is PointRelation.eq:
            successors[v].append(u)
        if rel in (PointRelation.lt, PointRelation.ne):
            checks.append(constraint)

    component, count = _strongly_connected_components(nodes, successors)
    for constraint in checks:
        if component[constraint.lhs] == component[constraint.rhs]:
            logging.debug(f"Point constraint {constraint} falls inside one equality class")
            return PaResult(False)

    witness = {name: count - 1 - component[name] for name in nodes}
    return PaResult(True, witness)


def as_fractions(witness: Mapping[str, int]) -> Dict[str, Fraction]:
    return {name: Fraction(value) for name, value in witness.items()}
