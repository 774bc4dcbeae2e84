"""
Tests for linear relations, the exact LP core and Horn DLR satisfiability
"""

import random
from fractions import Fraction
from typing import Dict, List

import pytest
from pydantic import ValidationError

from intervalsat.allen.parameters_allen import PointRelation
from intervalsat.dlr.horn_dlr import NonHornError, entails_equality, horn_dlr_sat, is_horn
from intervalsat.dlr.parameters_dlr import (
    DisjunctiveLinearRelation,
    HornDLR,
    LinearPolynomial,
    LinearRelation,
    relation,
)
from intervalsat.dlr.simplex import lp_feasible
from intervalsat.parsers.dlr_parser import parse_dlr

VARIABLES = ["x", "y", "z", "w", "v", "t"]


def poly(coefficients: Dict[str, int], constant=0) -> LinearPolynomial:
    return LinearPolynomial(coefficients=coefficients, constant=constant)


# ---------------- MODELS ----------------
def test_polynomial_coercion():
    p = LinearPolynomial(coefficients={"x": "3/12", "y": 0}, constant="42.3")
    assert p.coefficients == {"x": Fraction(1, 4)}
    assert p.constant == Fraction(423, 10)
    with pytest.raises(ValidationError):
        LinearPolynomial(coefficients={"x": 0.5})


def test_relation_shorthand():
    r = relation("x", "<=", "3/4")
    assert r.op is PointRelation.le
    assert r.rhs.constant == Fraction(3, 4)
    assert r.holds({"x": Fraction(1, 2)})
    assert not r.holds({"x": 1})


def test_horn_dlr_rejects_two_convex_disjuncts():
    with pytest.raises(ValidationError):
        HornDLR(disjuncts=[relation("x", "<", "y"), relation("y", "<", "x")])


def test_is_horn_examples():
    assert is_horn(parse_dlr("x + 2*y <= 3*z + 42.3 | x != 3/12"))
    assert not is_horn(parse_dlr("x + 2*y <= 3*z + 42.3 | x > 3/12"))
    assert is_horn(relation("x", "<", "y"))


# ---------------- LP CORE ----------------
def test_lp_infeasible_strict_cycle():
    assert not lp_feasible([relation("x", "<", "y"), relation("y", "<", "x")])


def test_lp_equality():
    result = lp_feasible([relation("x", "=", "y")])
    assert result
    assert result.witness["x"] == result.witness["y"]


def test_lp_strict_box():
    relations = [relation("x", "<", "y"), relation("y", "<=", 5), relation("x", ">=", 4)]
    result = lp_feasible(relations)
    assert result
    x, y = result.witness["x"], result.witness["y"]
    assert 4 <= x < y <= 5


def test_lp_negative_values():
    result = lp_feasible([relation("x", "<=", -7), relation("x", ">", -8)])
    assert result
    assert -8 < result.witness["x"] <= -7


def test_lp_rejects_disequalities():
    with pytest.raises(ValueError):
        lp_feasible([relation("x", "!=", "y")])


def test_entails_equality_examples():
    both = [relation("x", "<=", "y"), relation("y", "<=", "x")]
    assert entails_equality(both, poly({"x": 1}), poly({"y": 1}))
    assert not entails_equality([relation("x", "<=", "y")], poly({"x": 1}), poly({"y": 1}))
    system = [
        LinearRelation(lhs=poly({"x": 1, "y": 1}), op=PointRelation.eq, rhs=2),
        LinearRelation(lhs=poly({"x": 1, "y": -1}), op=PointRelation.eq, rhs=0),
    ]
    assert entails_equality(system, poly({"x": 1}), poly({}, 1))


# ---------------- HORN DLR ----------------
def test_horn_dlr_examples():
    assert not horn_dlr_sat([relation("x", "<", "y"), relation("y", "<", "x")])

    clause = parse_dlr("x + 2*y <= 3*z + 42.3 | x != 3/12")
    result = horn_dlr_sat([clause])
    assert result
    assert clause.holds(result.witness)

    forced = [relation("x", "<=", "y"), relation("y", "<=", "x"), relation("x", "!=", "y")]
    assert not horn_dlr_sat(forced)

    result = horn_dlr_sat([relation("x", "<=", "y"), relation("x", "!=", "y")])
    assert result
    assert result.witness["x"] < result.witness["y"]


def test_horn_dlr_restarts_after_reduction():
    clauses = [
        relation("x", "=", "y"),
        parse_dlr("x != y | z <= 0"),
        parse_dlr("z >= 0"),
        parse_dlr("z != 0 | w < 1"),
    ]
    result = horn_dlr_sat(clauses)
    assert result
    assert result.restarts >= 1
    assert result.witness["z"] == 0
    assert result.witness["w"] < 1


def test_horn_dlr_empty_clause_after_reduction():
    clauses = [relation("x", "=", 1), parse_dlr("x != 1 | y != y")]
    assert not horn_dlr_sat(clauses)


def test_horn_dlr_rejects_non_horn():
    with pytest.raises(NonHornError):
        horn_dlr_sat([parse_dlr("x < y | y < x")])


def test_horn_dlr_many_disequalities_on_a_segment():
    clauses = [relation("x", ">=", 0), relation("x", "<=", 1)]
    clauses += [relation("x", "!=", Fraction(k, 8)) for k in range(9)]
    result = horn_dlr_sat(clauses)
    assert result
    assert all(c.holds(result.witness) for c in clauses)


# ---------------- PROPERTIES ----------------
def random_convex_system(rng: random.Random, n_variables: int, n_relations: int) -> List[LinearRelation]:
    """Relations all satisfied by a hidden integer point"""
    variables = VARIABLES[:n_variables]
    hidden = {name: rng.randint(-5, 5) for name in variables}
    system = []
    for _ in range(n_relations):
        chosen = rng.sample(variables, rng.randint(1, min(3, n_variables)))
        coefficients = {name: rng.choice([-3, -2, -1, 1, 2, 3]) for name in chosen}
        value = sum(c * hidden[name] for name, c in coefficients.items())
        op = rng.choice([PointRelation.lt, PointRelation.le, PointRelation.eq, PointRelation.ge, PointRelation.gt])
        offset = {
            PointRelation.lt: rng.randint(1, 3),
            PointRelation.le: rng.randint(0, 2),
            PointRelation.eq: 0,
            PointRelation.ge: -rng.randint(0, 2),
            PointRelation.gt: -rng.randint(1, 3),
        }[op]
        system.append(LinearRelation(lhs=poly(coefficients), op=op, rhs=value + offset))
    return system


@pytest.mark.slow
def test_individually_consistent_disequalities_are_jointly_consistent(sweep):
    rng = random.Random(59)
    max_variables, max_relations = sweep(4, 6), sweep(6, 8)
    for _ in range(sweep(60, 1000)):
        n_variables = rng.randint(2, max_variables)
        convex = random_convex_system(rng, n_variables, rng.randint(1, max_relations))
        assert lp_feasible(convex)
        variables = VARIABLES[:n_variables]
        gamma = [
            relation(u, "!=", v)
            for i, u in enumerate(variables)
            for v in variables[i + 1:]
            if not entails_equality(convex, poly({u: 1}), poly({v: 1}))
        ]
        result = horn_dlr_sat(convex + gamma)
        assert result
        assert all(r.holds(result.witness) for r in convex + gamma)


def random_horn_system(rng: random.Random) -> List[DisjunctiveLinearRelation]:
    convex = random_convex_system(rng, 3, rng.randint(1, 4))
    clauses: List[DisjunctiveLinearRelation] = [DisjunctiveLinearRelation(disjuncts=[r]) for r in convex]
    for _ in range(rng.randint(0, 3)):
        u, v = rng.sample(VARIABLES[:3], 2)
        disjuncts = [relation(u, "!=", v)]
        if rng.random() < 0.5:
            a, b = rng.sample(VARIABLES[:3], 2)
            disjuncts.append(relation(a, rng.choice(["<", "<=", "="]), b))
        clauses.append(DisjunctiveLinearRelation(disjuncts=disjuncts))
    return clauses


@pytest.mark.slow
def test_solution_sets_are_almost_convex(sweep):
    rng = random.Random(17)
    systems, ratios = sweep(20, 100), sweep(50, 1000)
    checked = 0
    while checked < systems:
        clauses = random_horn_system(rng)
        first = horn_dlr_sat(clauses)
        if not first:
            continue
        name = rng.choice(sorted(first.witness))
        second = None
        for op in ("<", ">"):
            second = horn_dlr_sat(clauses + [relation(name, op, first.witness[name])])
            if second:
                break
        if not second:
            continue
        x = {v: first.witness.get(v, Fraction(0)) for v in VARIABLES}
        y = {v: second.witness.get(v, Fraction(0)) for v in VARIABLES}
        for _ in range(ratios):
            # exceptional ratios have small denominators
            theta = Fraction(rng.randint(1, 1_000_000_006), 1_000_000_007)
            point = {v: theta * x[v] + (1 - theta) * y[v] for v in VARIABLES}
            assert all(c.holds(point) for c in clauses)
        checked += 1
