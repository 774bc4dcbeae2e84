"""
Horn DLR satisfiability

Clauses with a single convex disjunct form a polyhedron C. Disequality
disjuncts entailed false by C are deleted; a clause left with only its
convex disjunct joins C and the procedure restarts. When nothing changes
any more, every remaining clause keeps a disequality that C does not
entail false, and the solution set of C minus finitely many hyperplanes
is non-empty. The witness walks along segments of C to avoid them.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List

from intervalsat.allen.parameters_allen import PointRelation
from intervalsat.dlr.parameters_dlr import DisjunctiveLinearRelation, DlrLike, LinearPolynomial, LinearRelation, as_dlr
from intervalsat.dlr.simplex import lp_feasible
from intervalsat.utils import InternalInconsistencyError

ZERO = Fraction(0)


class NonHornError(ValueError):
    """A clause has more than one disjunct that is not a disequality"""


@dataclass
class HornDlrResult:
    satisfiable: bool
    witness: Dict[str, Fraction] = field(default_factory=dict)
    restarts: int = 0

    def __bool__(self) -> bool:
        return self.satisfiable


def is_horn(dlr: DlrLike) -> bool:
    return as_dlr(dlr).is_horn()


def entails_equality(constraints: Iterable[LinearRelation], alpha: LinearPolynomial, beta: LinearPolynomial) -> bool:
    """
    Check whether a feasible conjunction forces α = β

    Args:
        constraints: Feasible relations without disequalities
        alpha: Left polynomial
        beta: Right polynomial

    Returns:
        True iff neither α < β nor α > β is consistent with the constraints
    """
    constraints = list(constraints)
    for op in (PointRelation.lt, PointRelation.gt):
        if lp_feasible(constraints + [LinearRelation(lhs=alpha, op=op, rhs=beta)]):
            return False
    return True


def _full_assignment(witness: Dict[str, Fraction], variables: List[str]) -> Dict[str, Fraction]:
    return {name: witness.get(name, ZERO) for name in variables}


def _second_point(convex: List[LinearRelation], disequality: LinearRelation):
    """A point of C on either side of the hyperplane α = β"""
    for op in (PointRelation.lt, PointRelation.gt):
        result = lp_feasible(convex + [LinearRelation(lhs=disequality.lhs, op=op, rhs=disequality.rhs)])
        if result:
            return result.witness
    raise InternalInconsistencyError(f"retained disequality {disequality} is entailed false")


def _avoiding_witness(
    convex: List[LinearRelation],
    pending: List[List[LinearRelation]],
    start: Dict[str, Fraction],
    variables: List[str],
) -> Dict[str, Fraction]:
    point = dict(start)
    tracked: List[LinearPolynomial] = []
    for disjuncts in pending:
        disequalities = [d for d in disjuncts if d.is_disequality]
        satisfied = next((d for d in disequalities if d.difference().evaluate(point) != 0), None)
        if satisfied is not None:
            tracked.append(satisfied.difference())
            continue

        target = disequalities[0]
        other = _full_assignment(_second_point(convex, target), variables)
        # each tracked hyperplane meets the segment in at most one point
        steps = len(tracked) + 2
        for j in range(1, steps):
            theta = Fraction(j, steps)
            candidate = {name: theta * point[name] + (1 - theta) * other[name] for name in variables}
            if all(poly.evaluate(candidate) != 0 for poly in tracked):
                point = candidate
                break
        else:
            raise InternalInconsistencyError("no convex combination avoids the tracked hyperplanes")
        tracked.append(target.difference())
    return point


def horn_dlr_sat(clauses: Iterable[DlrLike]) -> HornDlrResult:
    """
    Decide satisfiability of a set of Horn DLRs over the rationals

    Args:
        clauses: Horn DLRs (bare linear relations are accepted as unit clauses)

    Returns:
        HornDlrResult with an exact witness when satisfiable

    Raises:
        NonHornError: if a clause is not Horn
    """
    clauses: List[DisjunctiveLinearRelation] = [as_dlr(c) for c in clauses]
    variables: List[str] = []
    seen = set()
    convex: List[LinearRelation] = []
    pending: List[List[LinearRelation]] = []
    for clause in clauses:
        if not clause.is_horn():
            raise NonHornError(f"not a Horn DLR: {clause}")
        for disjunct in clause.disjuncts:
            for name in (*disjunct.lhs.coefficients, *disjunct.rhs.coefficients):
                if name not in seen:
                    seen.add(name)
                    variables.append(name)
        if len(clause.disjuncts) == 1 and not clause.disjuncts[0].is_disequality:
            convex.append(clause.disjuncts[0])
        else:
            pending.append(list(clause.disjuncts))

    restarts = 0
    while True:
        feasibility = lp_feasible(convex)
        if not feasibility:
            logging.debug(f"Convex part of {len(clauses)} clauses is infeasible after {restarts} restarts")
            return HornDlrResult(False, restarts=restarts)
        origin = _full_assignment(feasibility.witness, variables)

        moved = False
        reduced: List[List[LinearRelation]] = []
        for disjuncts in pending:
            kept = []
            for disjunct in disjuncts:
                if disjunct.is_disequality and disjunct.difference().evaluate(origin) == 0:
                    if entails_equality(convex, disjunct.lhs, disjunct.rhs):
                        continue
                kept.append(disjunct)
            if not kept:
                logging.debug(f"Every disjunct of a clause is entailed false after {restarts} restarts")
                return HornDlrResult(False, restarts=restarts)
            if len(kept) == 1 and not kept[0].is_disequality:
                convex.append(kept[0])
                moved = True
                continue
            reduced.append(kept)
        pending = reduced
        if not moved:
            break
        restarts += 1

    witness = _avoiding_witness(convex, pending, origin, variables)
    for clause in clauses:
        if not clause.holds(witness):
            raise InternalInconsistencyError(f"Horn DLR witness violates {clause}")
    return HornDlrResult(True, witness, restarts)
