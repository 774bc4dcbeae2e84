"""
Tests for validation, the decision procedure and model construction
"""

import random
from fractions import Fraction
from typing import Tuple

import pytest

from intervalsat.allen.catalog import AlgebraId
from intervalsat.allen.parameters_allen import (
    BOTTOM,
    EQUAL_ENDS,
    EQUAL_STARTS,
    TOP,
    IntervalRelation,
    PointRelation,
    Side,
    endpoint_variable,
)
from intervalsat.construction import (
    assemble_local_model,
    check_model,
    construct_model,
    mirror_instance,
    mirror_model,
)
from intervalsat.dlr.parameters_dlr import DisjunctiveLinearRelation, LinearPolynomial, LinearRelation, relation
from intervalsat.dlr.point_algebra import PointConstraint
from intervalsat.oracle import OracleMethod, brute_force_isat
from intervalsat.parameters_instance import Edge, MIsatInstance, Model
from intervalsat.parsers.dlr_parser import parse_dlr
from intervalsat.solver import (
    InstanceValidationError,
    IntervalSolver,
    SolverOptions,
    SolveStage,
    ValidationReason,
    decide,
    explicit_points,
    solve,
    validate,
)
from intervalsat.tests.instances import random_instance, two_intervals

START_ALGEBRAS = [AlgebraId.s_pi, AlgebraId.s_d, AlgebraId.s_oi, AlgebraId.s_star]
END_ALGEBRAS = [AlgebraId.e_p, AlgebraId.e_d, AlgebraId.e_o, AlgebraId.e_star]


def rel(*names: str) -> IntervalRelation:
    return IntervalRelation.from_names(*names)


def dlr(text: str):
    return parse_dlr(text, endpoint_variables=True)


# ---------------- VALIDATION ----------------
def test_validate_picks_first_algebra():
    instance = two_intervals(rel("p", "pi"), [dlr("u- - v- = 5")])
    assert validate(instance) is AlgebraId.s_pi
    assert validate(MIsatInstance(intervals=[])) is AlgebraId.s_pi
    assert validate(MIsatInstance(intervals=[], mode=Side.end)) is AlgebraId.e_p


@pytest.mark.parametrize(
    "instance, reason",
    [
        (two_intervals(TOP, [dlr("u+ = v-")]), ValidationReason.mixed_endpoint),
        (two_intervals(rel("m")), ValidationReason.outside_catalog),
        (two_intervals(TOP, [dlr("u- < v- | v- < u-")]), ValidationReason.non_horn),
        (two_intervals(TOP, [dlr("u- != v- | u- <= v- | v- <= u-")]), ValidationReason.non_horn),
        (two_intervals(TOP, [dlr("w- < v-")]), ValidationReason.unknown_variable),
        (MIsatInstance(intervals=["u"], edges=[Edge("u", TOP, "x")]), ValidationReason.unknown_interval),
        (
            MIsatInstance(intervals=["u", "v"], edges=[Edge("u", rel("p", "pi"), "v")], algebra=AlgebraId.s_d),
            ValidationReason.algebra_mismatch,
        ),
        (MIsatInstance(intervals=["u"], algebra=AlgebraId.e_p), ValidationReason.algebra_mismatch),
    ],
)
def test_validation_errors(instance, reason):
    with pytest.raises(InstanceValidationError) as err:
        validate(instance)
    assert err.value.reason is reason


def test_declared_algebra_from_options():
    instance = two_intervals(rel("d"))
    assert validate(instance, SolverOptions(algebra=AlgebraId.s_d)) is AlgebraId.s_d


# ---------------- EXPLICIT POINTS ----------------
def test_explicit_points():
    metric = explicit_points(two_intervals(rel("pi"))).metric
    assert [str(d) for d in metric] == ["v- < u-"]
    assert [str(d) for d in explicit_points(two_intervals(EQUAL_STARTS)).metric] == ["u- = v-"]
    assert explicit_points(two_intervals(TOP)).metric == []

    metric = explicit_points(two_intervals(rel("f"), mode=Side.end)).metric
    assert [str(d) for d in metric] == ["u+ = v+"]


# ---------------- DECISION ----------------
def test_contradictory_points_rejected_at_line2():
    report = decide(two_intervals(rel("p", "pi"), [dlr("u- = v-")]))
    assert not report.satisfiable
    assert report.stage is SolveStage.line2
    assert report.verdict == "UNSAT"


def test_ending_points_rejected_at_line13():
    instance = MIsatInstance(intervals=["u", "v"], edges=[Edge("u", rel("s"), "v"), Edge("v", rel("s"), "u")])
    report = decide(instance)
    assert not report.satisfiable
    assert report.stage is SolveStage.line13


def test_equal_starts_without_end_constraint():
    report = solve(two_intervals(EQUAL_STARTS))
    assert report.satisfiable
    assert report.model.start("u") == report.model.start("v")


def test_forced_set_covers_undecided_edges():
    instance = MIsatInstance(
        intervals=["u", "v", "w"],
        edges=[Edge("u", rel("e", "pi"), "v"), Edge("v", rel("p"), "w")],
        metric=[dlr("u- <= v-"), dlr("v- <= u-")],
    )
    report = decide(instance)
    assert report.satisfiable
    assert [str(c) for c in report.forced] == ["u- = v-"]
    assert report.equal_starts == [True, False]


def test_bottom_label_is_unsatisfiable():
    assert not solve(two_intervals(BOTTOM)).satisfiable


# ---------------- SOLVING ----------------
def test_metric_distance():
    instance = two_intervals(rel("pi"), [dlr("u- - v- = 5")])
    report = solve(instance)
    assert report.satisfiable
    model = report.model
    assert model.end("v") < model.start("u")
    assert model.start("u") - model.start("v") == 5
    assert check_model(instance, model)


def test_chain_of_disjoint_intervals():
    instance = MIsatInstance(
        intervals=["u", "v", "w"],
        edges=[Edge("u", rel("p", "pi"), "v"), Edge("v", rel("p", "pi"), "w"), Edge("u", rel("p", "pi"), "w")],
    )
    report = solve(instance)
    assert report.satisfiable
    assert brute_force_isat(instance)


def test_rational_metric_constraints():
    instance = MIsatInstance(
        intervals=["a", "b", "c"],
        edges=[Edge("a", rel("d", "oi", "pi"), "b"), Edge("b", rel("d", "oi", "f"), "c")],
        metric=[dlr("2*a- - 3/2*b- >= 1"), dlr("a- + c- <= 10 | b- != c-"), dlr("c- > 1/3")],
    )
    report = solve(instance)
    assert report.satisfiable
    assert check_model(instance, report.model)


def test_lp_only_path_agrees():
    instance = two_intervals(rel("pi", "d", "s"), [dlr("u- != v-")])
    fast = solve(instance)
    slow = IntervalSolver(SolverOptions(point_algebra_fast_path=False)).solve(instance)
    assert fast.satisfiable and slow.satisfiable
    assert check_model(instance, slow.model)


def test_end_mode():
    instance = two_intervals(rel("p", "f"), [dlr("v+ - u+ >= 2")], mode=Side.end)
    report = solve(instance)
    assert report.satisfiable
    assert report.algebra.family is Side.end
    assert check_model(instance, report.model)
    assert report.model.end("v") - report.model.end("u") >= 2


# ---------------- LOCAL MODEL AND CONSTRUCTION ----------------
def test_assemble_local_model():
    local = assemble_local_model(["u", "v"], {"u-": 0, "v-": 0}, {"u+": 0, "v+": 1})
    assert local == {"u-": 0, "v-": 0, "u+": 1, "v+": 2}
    assert assemble_local_model(["u"], {"u-": 5}, {"u+": 0})["u+"] == 6
    assert assemble_local_model([], {}, {}) == {}


def test_construct_after():
    instance = two_intervals(rel("pi"))
    local = {"u-": Fraction(1), "v-": Fraction(0), "u+": Fraction(2), "v+": Fraction(2)}
    model = construct_model(instance, AlgebraId.s_pi, local, [False])
    assert model.assignment == {"u": (1, Fraction(5, 4)), "v": (0, Fraction(1, 4))}


def test_construct_star():
    instance = two_intervals(rel("f"))
    local = {"u-": Fraction(1), "v-": Fraction(0), "u+": Fraction(2), "v+": Fraction(2)}
    model = construct_model(instance, AlgebraId.s_star, local, [False])
    assert model.assignment == {"u": (1, 2), "v": (0, 2)}


def test_check_model_examples():
    meets = two_intervals(rel("m"))
    assert check_model(meets, Model({"u": (0, 1), "v": (1, 2)}))
    check = check_model(two_intervals(rel("p")), Model({"u": (0, 1), "v": (0, 1)}))
    assert not check
    assert "realizes e" in check.violation
    assert check_model(MIsatInstance(intervals=[]), Model())
    assert not check_model(two_intervals(TOP), Model({"u": (1, 1), "v": (0, 1)}))


def test_mirror_round_trip():
    instance = two_intervals(rel("p", "s"), [dlr("u- - v- <= 3")])
    mirrored = mirror_instance(instance)
    assert mirrored.mode is Side.end
    assert mirrored.edges[0].relation == rel("pi", "f")
    assert str(mirrored.metric[0]) == "-u+ + v+ <= 3"
    model = Model({"u": (Fraction(0), Fraction(1)), "v": (Fraction(2), Fraction(5))})
    assert mirror_model(mirror_model(model)) == model
    assert check_model(instance, model)
    assert check_model(mirrored, mirror_model(model))


# ---------------- SWEEPS AGAINST THE ORACLE ----------------
@pytest.mark.slow
@pytest.mark.parametrize("algebra", START_ALGEBRAS + END_ALGEBRAS)
def test_agrees_with_oracle(algebra, sweep):
    rng = random.Random(list(AlgebraId).index(algebra) + 7)
    max_intervals = sweep(3, 4)
    for _ in range(sweep(120, 5000)):
        instance = random_instance(rng, algebra, max_intervals=max_intervals)
        expected = brute_force_isat(instance, OracleMethod.backtrack)
        report = solve(instance)
        assert report.satisfiable == expected.satisfiable, f"disagreement on {instance}"
        if report.satisfiable:
            assert check_model(instance, report.model)


@pytest.mark.parametrize("algebra", START_ALGEBRAS)
def test_four_intervals_against_oracle(algebra):
    rng = random.Random(97)
    for _ in range(25):
        instance = random_instance(rng, algebra, max_intervals=4, max_metric=2)
        expected = brute_force_isat(instance, OracleMethod.backtrack)
        assert decide(instance).satisfiable == expected.satisfiable


@pytest.mark.parametrize("algebra", START_ALGEBRAS)
def test_end_mode_mirrors_start_mode(algebra):
    rng = random.Random(31)
    for _ in range(60):
        instance = random_instance(rng, algebra)
        mirrored = mirror_instance(instance)
        assert mirrored.algebra is algebra.mirror()
        start_report = solve(instance)
        end_report = solve(mirrored)
        assert start_report.satisfiable == end_report.satisfiable
        if end_report.satisfiable:
            assert check_model(mirrored, end_report.model)


@pytest.mark.parametrize("algebra", [AlgebraId.s_oi, AlgebraId.e_d])
def test_both_back_ends_agree(algebra):
    rng = random.Random(5)
    slow_solver = IntervalSolver(SolverOptions(point_algebra_fast_path=False))
    for _ in range(30):
        instance = random_instance(rng, algebra)
        fast = solve(instance)
        slow = slow_solver.solve(instance)
        assert fast.satisfiable == slow.satisfiable
        assert fast.stage == slow.stage


@pytest.mark.slow
def test_explicit_points_preserve_satisfiability(sweep):
    rng = random.Random(8)
    for algebra in START_ALGEBRAS + END_ALGEBRAS:
        for _ in range(sweep(25, 125)):
            instance = random_instance(rng, algebra, allow_bottom=False)
            explicit = explicit_points(instance)
            assert brute_force_isat(instance).satisfiable == brute_force_isat(explicit).satisfiable


@pytest.mark.slow
def test_witness_soundness_without_declared_algebra(sweep):
    rng = random.Random(123)
    for algebra in START_ALGEBRAS + END_ALGEBRAS:
        for _ in range(sweep(30, 1250)):
            instance = random_instance(rng, algebra, declare=False)
            report = solve(instance)
            if report.satisfiable:
                assert check_model(instance, report.model)
                for name in instance.intervals:
                    assert report.model.start(name) < report.model.end(name)


def test_local_model_keeps_mode_side_points():
    rng = random.Random(41)
    for _ in range(40):
        instance = random_instance(rng, AlgebraId.s_d)
        report = solve(instance)
        if not report.satisfiable:
            continue
        for name in instance.intervals:
            assert report.model.start(name) == report.local[f"{name}-"]


# ---------------- DECIDED ORDER AND LOCAL MODELS ----------------
def mode_side_pair(edge: Edge, side: Side) -> Tuple[str, str]:
    return endpoint_variable(edge.source, side), endpoint_variable(edge.target, side)


def sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def equal_mode_points(side: Side) -> IntervalRelation:
    return EQUAL_STARTS if side is Side.start else EQUAL_ENDS


def straddles(label: IntervalRelation, equal: IntervalRelation) -> bool:
    return not label.issubset(equal) and (label & equal) != BOTTOM


def split_instance(instance: MIsatInstance) -> Tuple[MIsatInstance, MIsatInstance]:
    """The local part (metric plus equal mode-side edges) and the remaining edges disjoint from them"""
    equal = equal_mode_points(instance.mode)
    local = MIsatInstance(
        intervals=instance.intervals,
        edges=[e for e in instance.edges if e.relation.issubset(equal)],
        metric=instance.metric,
        mode=instance.mode,
    )
    disjoint = MIsatInstance(
        intervals=instance.intervals,
        edges=[e for e in instance.edges if (e.relation & equal) == BOTTOM],
        mode=instance.mode,
    )
    return local, disjoint


@pytest.mark.slow
@pytest.mark.parametrize("algebra", START_ALGEBRAS + END_ALGEBRAS)
def test_every_edge_has_a_decided_mode_side_order(algebra, sweep):
    rng = random.Random(list(AlgebraId).index(algebra) + 301)
    for _ in range(sweep(60, 1000)):
        instance = random_instance(rng, algebra)
        report = decide(instance)
        if report.stage is SolveStage.line2:
            continue
        assert len(report.equal_starts) == len(instance.edges)
        witness = report.start_witness
        for edge, equal in zip(instance.edges, report.equal_starts):
            u, v = mode_side_pair(edge, instance.mode)
            assert (witness[u] == witness[v]) == equal, f"{edge} in {instance}"


@pytest.mark.slow
@pytest.mark.parametrize("algebra", START_ALGEBRAS + END_ALGEBRAS)
def test_construction_keeps_local_order(algebra, sweep):
    rng = random.Random(list(AlgebraId).index(algebra) + 401)
    own, other = algebra.family, algebra.family.other()
    for _ in range(sweep(60, 1000)):
        instance = random_instance(rng, algebra)
        report = solve(instance)
        if not report.satisfiable:
            continue
        points, local = report.model.points(), report.local
        for name in instance.intervals:
            assert points[endpoint_variable(name, own)] == local[endpoint_variable(name, own)]
        if algebra.is_star:
            # ending points inside a group are all moved to the same place
            continue
        for a in instance.intervals:
            for b in instance.intervals:
                if local[endpoint_variable(a, own)] != local[endpoint_variable(b, own)]:
                    continue
                a_other, b_other = endpoint_variable(a, other), endpoint_variable(b, other)
                assert sign(points[a_other] - points[b_other]) == sign(local[a_other] - local[b_other])


@pytest.mark.slow
@pytest.mark.parametrize("mode", [Side.start, Side.end])
def test_model_check_splits_into_local_and_disjoint_edges(mode, sweep):
    rng = random.Random(59 if mode is Side.start else 61)
    equal = equal_mode_points(mode)
    algebra = AlgebraId.s_star if mode is Side.start else AlgebraId.e_star
    for _ in range(sweep(60, 1000)):
        instance = random_instance(rng, algebra, declare=False)
        edges = []
        for edge in instance.edges:
            label = edge.relation & equal if rng.random() < 0.5 else edge.relation - equal
            edges.append(Edge(edge.source, label, edge.target))
            u, v = mode_side_pair(edge, mode)
            point = PointRelation.eq if label.issubset(equal) else PointRelation.ne
            instance.metric.append(PointConstraint(u, point, v).to_dlr())
        instance.edges = edges
        local, disjoint = split_instance(instance)

        models = []
        found = brute_force_isat(instance)
        if found:
            models.append(found.model)
        for _ in range(5):
            models.append(Model({
                name: (Fraction(start), Fraction(start + rng.randint(1, 3)))
                for name, start in ((n, rng.randint(0, 3)) for n in instance.intervals)
            }))
        for model in models:
            expected = bool(check_model(local, model)) and bool(check_model(disjoint, model))
            assert bool(check_model(instance, model)) == expected


@pytest.mark.slow
@pytest.mark.parametrize("algebra", START_ALGEBRAS + END_ALGEBRAS)
def test_local_model_satisfies_local_part(algebra, sweep):
    rng = random.Random(list(AlgebraId).index(algebra) + 503)
    equal = equal_mode_points(algebra.family)
    for _ in range(sweep(60, 1000)):
        instance = random_instance(rng, algebra)
        if any(straddles(edge.relation, equal) for edge in instance.edges):
            continue
        report = solve(instance)
        if not report.satisfiable:
            continue
        local, disjoint = split_instance(instance)
        assert check_model(local, Model.from_points(instance.intervals, report.local))
        assert check_model(local, report.model)
        assert check_model(disjoint, report.model)


def test_general_linear_metric_sweep():
    rng = random.Random(77)
    for _ in range(40):
        instance = random_instance(rng, AlgebraId.s_pi, max_metric=0)
        names = instance.intervals
        for _ in range(rng.randint(1, 2)):
            a, b = rng.choice(names), rng.choice(names)
            linear = LinearRelation(
                lhs=LinearPolynomial(coefficients={f"{a}-": rng.randint(1, 3), f"{b}-": -rng.randint(1, 3)}),
                op=rng.choice([PointRelation.le, PointRelation.ge, PointRelation.lt]),
                rhs=rng.randint(-4, 4),
            )
            instance.metric.append(DisjunctiveLinearRelation.of(linear))
        report = solve(instance)
        if report.satisfiable:
            assert check_model(instance, report.model)


def test_point_constraint_helper_round_trip():
    constraint = PointConstraint("u-", PointRelation.ge, "v-")
    assert str(constraint.to_dlr()) == "u- >= v-"
    assert relation("u-", ">=", "v-") == constraint.to_dlr().disjuncts[0]
