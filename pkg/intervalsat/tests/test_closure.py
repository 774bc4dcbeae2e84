"""
Tests for closures, catalog closure checks and the maximality harness
"""

import pytest

from intervalsat.allen.catalog import AlgebraId, WitnessName, generate
from intervalsat.allen.closure import (
    MaximalityMode,
    MaximalityVerdict,
    check_extension,
    close,
    extension_candidates,
    verify_catalog,
    verify_closed,
    verify_maximality,
)
from intervalsat.allen.parameters_allen import BASIC_RELATIONS, IntervalRelation
from intervalsat.exporters.report_exporter import extension_line


def rel(*names: str) -> IntervalRelation:
    return IntervalRelation.from_names(*names)


def test_closure_of_meets_contains_every_basic():
    closed = close([rel("m")]).closed_set
    for basic in BASIC_RELATIONS:
        assert IntervalRelation.of(basic) in closed


def test_trivial_closures():
    assert close([]).closed_set == frozenset()
    assert close([rel("e")]).closed_set == {rel("e")}


def test_closure_is_closed_and_idempotent():
    report = close([rel("p", "m"), rel("d")])
    assert report.input <= report.closed_set
    assert verify_closed(report.closed_set)
    assert close(report.closed_set).closed_set == report.closed_set


def test_closure_is_monotone():
    small = close([rel("s")]).closed_set
    large = close([rel("s"), rel("o")]).closed_set
    assert small <= large


def test_verify_closed_counterexample():
    check = verify_closed([rel("p")])
    assert not check
    assert "{pi}" in check.counterexample


@pytest.mark.parametrize("algebra", list(AlgebraId))
def test_algebras_are_closed(algebra):
    members = generate(algebra).members
    assert verify_closed(members)
    assert close(members).closed_set == members


def test_verify_catalog_subset():
    checks = verify_catalog([AlgebraId.s_pi, AlgebraId.s_star])
    assert all(check.ok for check in checks)
    assert [check.size for check in checks] == [2312, 1445]


def test_extension_by_meets_is_witnessed():
    result = check_extension(AlgebraId.s_pi, rel("m"))
    assert result.witness in set(WitnessName)
    assert extension_line(result).startswith("{m} -> witness=")


def test_candidates_are_outside_and_seeded():
    first = extension_candidates(AlgebraId.e_d, MaximalityMode.sample, sample_size=10, seed=3)
    again = extension_candidates(AlgebraId.e_d, MaximalityMode.sample, sample_size=10, seed=3)
    assert first == again
    assert len(first) == 10
    members = generate(AlgebraId.e_d)
    assert all(r not in members for r in first)
    assert len(extension_candidates(AlgebraId.e_d)) == 8192 - 2312


@pytest.mark.slow
@pytest.mark.parametrize("algebra", list(AlgebraId))
def test_sampled_maximality(algebra, sweep):
    size = sweep(5, 200)
    report = verify_maximality(algebra, MaximalityMode.sample, sample_size=size, seed=11)
    assert len(report.results) == size
    assert report.verdict is MaximalityVerdict.confirmed


def test_empty_sample_is_vacuous():
    report = verify_maximality(AlgebraId.s_oi, MaximalityMode.sample, sample_size=0, seed=1)
    assert report.results == []
    assert report.verdict is MaximalityVerdict.vacuous


def test_worker_pool_matches_serial_run():
    serial = verify_maximality(AlgebraId.s_star, MaximalityMode.sample, sample_size=4, seed=5)
    pooled = verify_maximality(AlgebraId.s_star, MaximalityMode.sample, sample_size=4, seed=5, jobs=2)
    assert [r.relation for r in serial.results] == [r.relation for r in pooled.results]
    assert [r.witness for r in serial.results] == [r.witness for r in pooled.results]
