"""
Exact rational two-phase simplex and LP feasibility for linear relations

All arithmetic is done with fractions.Fraction; Bland's rule prevents
cycling. Strict inequalities are handled with a single slack variable t
that is maximized subject to t <= 1.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from intervalsat.allen.parameters_allen import PointRelation
from intervalsat.utils import InternalInconsistencyError
from intervalsat.dlr.parameters_dlr import LinearRelation

ZERO = Fraction(0)
ONE = Fraction(1)


class LpStatus(Enum):
    optimal = "optimal"
    infeasible = "infeasible"
    unbounded = "unbounded"


class RowKind(Enum):
    le = "<="
    eq = "="


@dataclass
class LpSolution:
    status: LpStatus
    objective: Optional[Fraction] = None
    values: List[Fraction] = field(default_factory=list)


class SimplexTableau:
    """
    Maximize c·y subject to rows a·y (<= | =) b and y >= 0

    Slack columns are appended for "<=" rows and artificial columns for
    rows without a usable slack; phase one drives the artificials to zero.
    """

    def __init__(self, objective: Sequence, rows: Sequence[Tuple[Sequence, RowKind, object]]):
        self.n = len(objective)
        self.objective = [Fraction(c) for c in objective]
        self.A: List[List[Fraction]] = []
        self.b: List[Fraction] = []
        self.basis: List[int] = []
        self.artificial: set = set()

        slack_count = sum(1 for _, kind, _ in rows if kind is RowKind.le)
        width = self.n + slack_count
        pending_artificial: List[int] = []
        slack = self.n
        for i, (coefficients, kind, rhs) in enumerate(rows):
            if len(coefficients) != self.n:
                raise ValueError(f"row {i} has {len(coefficients)} coefficients, expected {self.n}")
            row = [Fraction(a) for a in coefficients] + [ZERO] * slack_count
            rhs = Fraction(rhs)
            basic = None
            if kind is RowKind.le:
                row[slack] = ONE
                basic = slack
                slack += 1
            if rhs < 0:
                row = [-a for a in row]
                rhs = -rhs
                basic = None
            self.A.append(row)
            self.b.append(rhs)
            self.basis.append(basic if basic is not None else -1)
            if basic is None:
                pending_artificial.append(i)

        # artificial columns go last
        self.width = width + len(pending_artificial)
        for row in self.A:
            row.extend([ZERO] * len(pending_artificial))
        for offset, i in enumerate(pending_artificial):
            column = width + offset
            self.A[i][column] = ONE
            self.basis[i] = column
            self.artificial.add(column)
        self.m = len(self.A)

    # ---------------- PIVOTING ----------------
    def pivot(self, i: int, j: int, costs: List[Fraction], value: List[Fraction]):
        piv = self.A[i][j]
        row = [a / piv for a in self.A[i]]
        self.A[i] = row
        self.b[i] /= piv
        for k in range(self.m):
            if k != i:
                f = self.A[k][j]
                if f:
                    self.A[k] = [a - f * r for a, r in zip(self.A[k], row)]
                    self.b[k] -= f * self.b[i]
        f = costs[j]
        if f:
            for l in range(self.width):
                costs[l] -= f * row[l]
            value[0] += f * self.b[i]
        self.basis[i] = j

    def _priced_costs(self, c: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
        """Reduced costs and objective value of the current basis"""
        costs = list(c)
        value = [ZERO]
        for i, j in enumerate(self.basis):
            f = costs[j]
            if f:
                for l in range(self.width):
                    costs[l] -= f * self.A[i][l]
                value[0] += f * self.b[i]
        return costs, value

    def _bland(self, costs: List[Fraction], value: List[Fraction], allowed) -> LpStatus:
        iterations = 0
        while True:
            entering = next((j for j in range(self.width) if allowed(j) and costs[j] > 0), None)
            if entering is None:
                logging.debug(f"Simplex optimal after {iterations} pivots")
                return LpStatus.optimal
            candidates = [
                (self.b[i] / self.A[i][entering], self.basis[i], i)
                for i in range(self.m)
                if self.A[i][entering] > 0
            ]
            if not candidates:
                return LpStatus.unbounded
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering, costs, value)
            iterations += 1

    def _drive_out_artificials(self):
        i = 0
        while i < self.m:
            if self.basis[i] in self.artificial:
                column = next(
                    (j for j in range(self.width) if j not in self.artificial and self.A[i][j] != 0),
                    None,
                )
                if column is None:
                    # redundant row
                    del self.A[i]
                    del self.b[i]
                    del self.basis[i]
                    self.m -= 1
                    continue
                self.pivot(i, column, [ZERO] * self.width, [ZERO])
            i += 1

    # ---------------- SOLVING ----------------
    def solve(self) -> LpSolution:
        if self.artificial:
            phase_one = [-ONE if j in self.artificial else ZERO for j in range(self.width)]
            costs, value = self._priced_costs(phase_one)
            self._bland(costs, value, lambda j: True)
            if value[0] < 0:
                return LpSolution(LpStatus.infeasible)
            self._drive_out_artificials()

        c = self.objective + [ZERO] * (self.width - self.n)
        costs, value = self._priced_costs(c)
        status = self._bland(costs, value, lambda j: j not in self.artificial)
        if status is LpStatus.unbounded:
            return LpSolution(LpStatus.unbounded)

        values = [ZERO] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                values[j] = self.b[i]
        return LpSolution(LpStatus.optimal, value[0], values)


# ---------------- LP FEASIBILITY ----------------
@dataclass
class LpFeasibility:
    feasible: bool
    witness: Dict[str, Fraction] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.feasible


def lp_feasible(relations: Iterable[LinearRelation]) -> LpFeasibility:
    """
    Decide whether a conjunction of linear relations has a rational solution

    Args:
        relations: Relations with operators <, <=, =, >=, > (no !=)

    Returns:
        LpFeasibility with a witness that satisfies every relation exactly
    """
    relations = list(relations)
    variables: List[str] = []
    seen = set()
    for rel in relations:
        if rel.op is PointRelation.ne:
            raise ValueError(f"disequality {rel} cannot be passed to the LP core")
        for name in (*rel.lhs.coefficients, *rel.rhs.coefficients):
            if name not in seen:
                seen.add(name)
                variables.append(name)

    index = {name: k for k, name in enumerate(variables)}
    strict = any(rel.op in (PointRelation.lt, PointRelation.gt) for rel in relations)
    n = 2 * len(variables) + (1 if strict else 0)
    t_column = 2 * len(variables)

    rows = []
    for rel in relations:
        difference = rel.difference()
        op = rel.op
        if op in (PointRelation.gt, PointRelation.ge):
            difference = -difference
            op = op.converse()
        coefficients = [ZERO] * n
        for name, c in difference.coefficients.items():
            coefficients[2 * index[name]] = c
            coefficients[2 * index[name] + 1] = -c
        if op is PointRelation.lt:
            coefficients[t_column] = ONE
        kind = RowKind.eq if op is PointRelation.eq else RowKind.le
        rows.append((coefficients, kind, -difference.constant))

    objective = [ZERO] * n
    if strict:
        bound = [ZERO] * n
        bound[t_column] = ONE
        rows.append((bound, RowKind.le, ONE))
        objective[t_column] = ONE

    solution = SimplexTableau(objective, rows).solve()
    if solution.status is not LpStatus.optimal:
        logging.debug(f"LP with {len(relations)} relations is {solution.status.value}")
        return LpFeasibility(False)
    if strict and solution.objective <= 0:
        logging.debug(f"LP with {len(relations)} relations has no strictly feasible point")
        return LpFeasibility(False)

    witness = {
        name: solution.values[2 * k] - solution.values[2 * k + 1]
        for k, name in enumerate(variables)
    }
    for rel in relations:
        if not rel.holds(witness):
            raise InternalInconsistencyError(f"LP witness {witness} violates {rel}")
    return LpFeasibility(True, witness)
