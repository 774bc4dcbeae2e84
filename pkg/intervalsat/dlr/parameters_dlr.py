"""
Disjunctive Linear Relation Parameter Structures

Linear polynomials with exact rational coefficients, linear relations
between two polynomials and disjunctions of such relations.
"""

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Set, Union

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from intervalsat.allen.parameters_allen import PointRelation
from intervalsat.utils import format_rational, to_fraction

LINEAR_OPERATORS = (
    PointRelation.lt,
    PointRelation.le,
    PointRelation.eq,
    PointRelation.ne,
    PointRelation.ge,
    PointRelation.gt,
)


class LinearPolynomial(BaseModel):
    """Σ coefficient·variable + constant, zero coefficients never stored"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: Dict[str, Fraction] = {}
    constant: Fraction = Fraction(0)

    @field_validator("coefficients", mode="before")
    @classmethod
    def drop_zero_coefficients(cls, field: Mapping) -> Dict[str, Fraction]:
        result = {}
        for name, value in dict(field or {}).items():
            value = to_fraction(value)
            if value != 0:
                result[str(name)] = value
        return result

    @field_validator("constant", mode="before")
    @classmethod
    def parse_constant(cls, field) -> Fraction:
        return to_fraction(field if field is not None else 0)

    @classmethod
    def variable(cls, name: str, coefficient=1) -> "LinearPolynomial":
        return cls(coefficients={name: coefficient})

    @classmethod
    def number(cls, value) -> "LinearPolynomial":
        return cls(constant=value)

    @property
    def variables(self) -> Set[str]:
        return set(self.coefficients)

    def evaluate(self, assignment: Mapping[str, Fraction], default: Optional[Fraction] = None) -> Fraction:
        """
        Value of the polynomial under an assignment

        Args:
            assignment: Variable values
            default: Value for unassigned variables; None makes them an error

        Returns:
            Exact value
        """
        total = self.constant
        for name, coefficient in self.coefficients.items():
            if name in assignment:
                value = assignment[name]
            elif default is not None:
                value = default
            else:
                raise KeyError(f"variable {name} is not assigned")
            total += coefficient * value
        return total

    def scaled(self, factor) -> "LinearPolynomial":
        factor = to_fraction(factor)
        return LinearPolynomial(
            coefficients={name: c * factor for name, c in self.coefficients.items()},
            constant=self.constant * factor,
        )

    def renamed(self, mapping: Mapping[str, str]) -> "LinearPolynomial":
        coefficients: Dict[str, Fraction] = {}
        for name, c in self.coefficients.items():
            target = mapping.get(name, name)
            coefficients[target] = coefficients.get(target, Fraction(0)) + c
        return LinearPolynomial(coefficients=coefficients, constant=self.constant)

    def __add__(self, other: "LinearPolynomial") -> "LinearPolynomial":
        coefficients = dict(self.coefficients)
        for name, c in other.coefficients.items():
            coefficients[name] = coefficients.get(name, Fraction(0)) + c
        return LinearPolynomial(coefficients=coefficients, constant=self.constant + other.constant)

    def __neg__(self) -> "LinearPolynomial":
        return self.scaled(-1)

    def __sub__(self, other: "LinearPolynomial") -> "LinearPolynomial":
        return self + (-other)

    def __str__(self) -> str:
        parts: List[str] = []
        for name, c in self.coefficients.items():
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            term = name if magnitude == 1 else f"{format_rational(magnitude)}*{name}"
            if not parts:
                parts.append(term if sign == "+" else f"-{term}")
            else:
                parts.append(f"{sign} {term}")
        if self.constant != 0 or not parts:
            if not parts:
                parts.append(format_rational(self.constant))
            else:
                sign = "-" if self.constant < 0 else "+"
                parts.append(f"{sign} {format_rational(abs(self.constant))}")
        return " ".join(parts)


def _coerce_polynomial(field) -> LinearPolynomial:
    """Accept polynomials, numbers, numeric strings and bare variable names"""
    if isinstance(field, LinearPolynomial):
        return field
    if isinstance(field, dict):
        return LinearPolynomial(**field)
    if isinstance(field, str):
        try:
            return LinearPolynomial.number(to_fraction(field))
        except ValueError:
            return LinearPolynomial.variable(field.strip())
    return LinearPolynomial.number(field)


class LinearRelation(BaseModel):
    """An expression α op β between two linear polynomials"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lhs: LinearPolynomial
    op: PointRelation
    rhs: LinearPolynomial

    @field_validator("lhs", "rhs", mode="before")
    @classmethod
    def parse_polynomial(cls, field) -> LinearPolynomial:
        return _coerce_polynomial(field)

    @field_validator("op", mode="before")
    @classmethod
    def parse_operator(cls, field) -> PointRelation:
        op = PointRelation.from_text(field) if isinstance(field, str) else PointRelation(field)
        if op not in LINEAR_OPERATORS:
            raise ValueError(f"{op.symbol} is not a linear relation operator")
        return op

    @property
    def is_disequality(self) -> bool:
        return self.op is PointRelation.ne

    @property
    def variables(self) -> Set[str]:
        return self.lhs.variables | self.rhs.variables

    def difference(self) -> LinearPolynomial:
        """α − β, so the relation reads (α − β) op 0"""
        return self.lhs - self.rhs

    def holds(self, assignment: Mapping[str, Fraction], default: Optional[Fraction] = None) -> bool:
        value = self.difference().evaluate(assignment, default)
        return self.op.holds(value, 0)

    def renamed(self, mapping: Mapping[str, str]) -> "LinearRelation":
        return LinearRelation(lhs=self.lhs.renamed(mapping), op=self.op, rhs=self.rhs.renamed(mapping))

    def __str__(self) -> str:
        return f"{self.lhs} {self.op.text} {self.rhs}"


class DisjunctiveLinearRelation(BaseModel):
    """A disjunction of linear relations (DLR)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    disjuncts: List[LinearRelation]

    @field_validator("disjuncts", mode="before")
    @classmethod
    def wrap_single_relation(cls, field) -> List:
        if isinstance(field, (LinearRelation, dict)):
            field = [field]
        field = list(field)
        if not field:
            raise ValueError("a disjunctive linear relation needs at least one disjunct")
        return field

    @classmethod
    def of(cls, *relations: LinearRelation) -> "DisjunctiveLinearRelation":
        return cls(disjuncts=list(relations))

    @property
    def variables(self) -> Set[str]:
        result: Set[str] = set()
        for disjunct in self.disjuncts:
            result |= disjunct.variables
        return result

    @property
    def convex_disjuncts(self) -> List[LinearRelation]:
        return [d for d in self.disjuncts if not d.is_disequality]

    def is_horn(self) -> bool:
        """At most one disjunct is not a disequality"""
        return len(self.convex_disjuncts) <= 1

    def holds(self, assignment: Mapping[str, Fraction], default: Optional[Fraction] = None) -> bool:
        return any(d.holds(assignment, default) for d in self.disjuncts)

    def renamed(self, mapping: Mapping[str, str]) -> "DisjunctiveLinearRelation":
        return type(self)(disjuncts=[d.renamed(mapping) for d in self.disjuncts])

    def __str__(self) -> str:
        return " | ".join(str(d) for d in self.disjuncts)


class HornDLR(DisjunctiveLinearRelation):
    """A DLR with at most one disjunct that is not of the form α ≠ β"""

    @model_validator(mode="after")
    def check_horn(self) -> "HornDLR":
        if not self.is_horn():
            raise ValueError(f"not a Horn DLR: {self}")
        return self


DlrLike = Union[DisjunctiveLinearRelation, LinearRelation]


def as_dlr(value: DlrLike) -> DisjunctiveLinearRelation:
    """Wrap a bare linear relation as a one-disjunct DLR"""
    if isinstance(value, LinearRelation):
        return DisjunctiveLinearRelation(disjuncts=[value])
    return value


def relation(lhs, op, rhs) -> LinearRelation:
    """Shorthand constructor: relation("x", "<", "y")"""
    return LinearRelation(lhs=lhs, op=op, rhs=rhs)
