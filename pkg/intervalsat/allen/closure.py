"""
Closure of relation sets and the maximality harness

A closure is the least superset closed under converse, intersection and
composition. The harness extends an algebra by one outside relation at a
time and checks that the closure reaches one of the NP-hard witness sets.
"""

import logging
import random
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from intervalsat.allen.catalog import ALGEBRA_ORDER, EXPECTED_SIZES, AlgebraId, NpWitness, WitnessName, generate, np_witnesses
from intervalsat.allen.composition import CompositionTable, composition_column, composition_row, default_table
from intervalsat.allen.parameters_allen import CONVERSE_MASKS, RELATION_COUNT, IntervalRelation

_CONVERSE = np.array(CONVERSE_MASKS, dtype=np.int32)


@dataclass
class ClosureReport:
    input: FrozenSet[IntervalRelation]
    closed_set: FrozenSet[IntervalRelation]
    iterations: int
    growth: List[int] = field(default_factory=list)
    witness: Optional[WitnessName] = None
    complete: bool = True

    @property
    def size(self) -> int:
        return len(self.closed_set)


@dataclass
class _ClosureRun:
    seen: np.ndarray
    iterations: int
    growth: List[int]
    witness: Optional[WitnessName]
    complete: bool

    @property
    def size(self) -> int:
        return int(self.seen.sum())

    def masks(self) -> List[int]:
        return np.flatnonzero(self.seen).tolist()


def _contained(seen: np.ndarray, witnesses: Sequence[NpWitness]) -> Optional[WitnessName]:
    for witness in witnesses:
        if all(seen[mask] for mask in witness.masks):
            return witness.name
    return None


def _run_closure(
    closed: Iterable[int],
    fresh: Iterable[int],
    witnesses: Sequence[NpWitness] = (),
    table: Optional[CompositionTable] = None,
) -> _ClosureRun:
    """
    Worklist closure

    Args:
        closed: Masks already closed under the three operations
        fresh: Masks to add
        witnesses: Stop as soon as one of these sets is contained
        table: Composition table

    Returns:
        _ClosureRun with the membership flags of the (partial) closure
    """
    table = table or default_table()
    seen = np.zeros(RELATION_COUNT, dtype=bool)
    processed = np.zeros(RELATION_COUNT, dtype=np.int32)
    count = 0
    for mask in closed:
        if not seen[mask]:
            seen[mask] = True
            processed[count] = mask
            count += 1
    size = count
    queue = deque()

    def push(candidates: np.ndarray) -> int:
        candidates = np.unique(candidates)
        new = candidates[~seen[candidates]]
        seen[new] = True
        queue.extend(new.tolist())
        return len(new)

    size += push(np.array(list(fresh), dtype=np.int32))
    growth = [size]
    iterations = 0
    while queue:
        found = _contained(seen, witnesses)
        if found is not None:
            return _ClosureRun(seen, iterations, growth, found, complete=False)
        if size == RELATION_COUNT:
            # everything is present, so nothing can be missing
            queue.clear()
            break
        x = queue.popleft()
        current = processed[:count]
        row = composition_row(x, table)
        column = composition_column(x, table)
        size += push(np.concatenate([
            row[current],
            column[current],
            current & x,
            np.array([row[x], _CONVERSE[x]], dtype=np.int32),
        ]))
        processed[count] = x
        count += 1
        iterations += 1
        growth.append(size)
    return _ClosureRun(seen, iterations, growth, _contained(seen, witnesses), complete=True)


def close(relations: Iterable[IntervalRelation], table: Optional[CompositionTable] = None) -> ClosureReport:
    """
    Least set containing the relations and closed under converse, intersection and composition

    Args:
        relations: Generating relations
        table: Composition table

    Returns:
        ClosureReport with the closed set and its growth trace
    """
    relations = frozenset(relations)
    run = _run_closure((), (r.mask for r in relations), (), table)
    logging.debug(f"Closure of {len(relations)} relations has {run.size} members after {run.iterations} steps")
    return ClosureReport(
        input=relations,
        closed_set=frozenset(IntervalRelation(mask) for mask in run.masks()),
        iterations=run.iterations,
        growth=run.growth,
    )


@dataclass
class ClosedCheck:
    closed: bool
    counterexample: Optional[str] = None

    def __bool__(self) -> bool:
        return self.closed


def verify_closed(relations: Iterable[IntervalRelation], table: Optional[CompositionTable] = None) -> ClosedCheck:
    """
    Check closure under converse, intersection and composition exhaustively

    Returns:
        ClosedCheck with the first violation found, if any
    """
    table = table or default_table()
    masks = np.array(sorted({r.mask for r in relations}), dtype=np.int32)
    inside = np.zeros(RELATION_COUNT, dtype=bool)
    inside[masks] = True

    outside = np.flatnonzero(~inside[_CONVERSE[masks]])
    if len(outside):
        r = IntervalRelation(int(masks[outside[0]]))
        return ClosedCheck(False, f"converse of {r} is {r.converse()}")

    for r1 in masks.tolist():
        intersections = r1 & masks
        outside = np.flatnonzero(~inside[intersections])
        if len(outside):
            r2 = int(masks[outside[0]])
            return ClosedCheck(
                False, f"{IntervalRelation(r1)} ∩ {IntervalRelation(r2)} = {IntervalRelation(r1 & r2)}"
            )
        compositions = composition_row(r1, table)[masks]
        outside = np.flatnonzero(~inside[compositions])
        if len(outside):
            r2 = int(masks[outside[0]])
            return ClosedCheck(
                False,
                f"{IntervalRelation(r1)} ∘ {IntervalRelation(r2)} = {IntervalRelation(int(compositions[outside[0]]))}",
            )
    return ClosedCheck(True)


# ---------------- CATALOG VERIFICATION ----------------
@dataclass
class CatalogCheck:
    algebra: AlgebraId
    size: int
    expected: int
    closed: ClosedCheck

    @property
    def ok(self) -> bool:
        return self.size == self.expected and self.closed.closed


def verify_catalog(algebras: Sequence[AlgebraId] = ALGEBRA_ORDER) -> List[CatalogCheck]:
    checks = []
    for algebra in algebras:
        members = generate(algebra)
        check = CatalogCheck(algebra, len(members), EXPECTED_SIZES[algebra], verify_closed(members.members))
        logging.info(f"{algebra.value}: {check.size} relations, closed={check.closed.closed}")
        checks.append(check)
    return checks


# ---------------- MAXIMALITY ----------------
class MaximalityMode(Enum):
    full = "full"
    sample = "sample"


class MaximalityVerdict(Enum):
    confirmed = "maximal-confirmed"
    vacuous = "vacuously-confirmed"
    refuted = "not-confirmed"


@dataclass
class ExtensionResult:
    relation: IntervalRelation
    witness: Optional[WitnessName]
    closure_size: int
    early_exit: bool


@dataclass
class MaximalityReport:
    algebra: AlgebraId
    mode: MaximalityMode
    results: List[ExtensionResult] = field(default_factory=list)

    @property
    def failures(self) -> List[ExtensionResult]:
        return [result for result in self.results if result.witness is None]

    @property
    def verdict(self) -> MaximalityVerdict:
        if not self.results:
            return MaximalityVerdict.vacuous
        return MaximalityVerdict.refuted if self.failures else MaximalityVerdict.confirmed


def check_extension(algebra: AlgebraId, relation: IntervalRelation, early_exit: bool = True) -> ExtensionResult:
    """Close the algebra extended by one relation and look for an NP-hard witness"""
    witnesses = np_witnesses()
    run = _run_closure(generate(algebra).masks, [relation.mask], witnesses if early_exit else ())
    witness = run.witness if early_exit else _contained(run.seen, witnesses)
    return ExtensionResult(relation, witness, run.size, early_exit=not run.complete)


def _check_extension_job(job: Tuple[str, int, bool]) -> ExtensionResult:
    algebra, mask, early_exit = job
    return check_extension(AlgebraId(algebra), IntervalRelation(mask), early_exit)


def extension_candidates(
    algebra: AlgebraId,
    mode: MaximalityMode = MaximalityMode.full,
    sample_size: int = 0,
    seed: int = 0,
) -> List[IntervalRelation]:
    members = generate(algebra).masks
    outside = [mask for mask in range(RELATION_COUNT) if mask not in members]
    if mode is MaximalityMode.sample:
        rng = random.Random(seed)
        outside = sorted(rng.sample(outside, min(sample_size, len(outside))))
    return [IntervalRelation(mask) for mask in outside]


def verify_maximality(
    algebra: AlgebraId,
    mode: MaximalityMode = MaximalityMode.full,
    sample_size: int = 0,
    seed: int = 0,
    jobs: int = 1,
    early_exit: bool = True,
) -> MaximalityReport:
    """
    Check that every single-relation extension of an algebra is NP-hard witnessed

    Args:
        algebra: Algebra to extend
        mode: Every outside relation (full) or a seeded random sample
        sample_size: Number of extensions in sample mode
        seed: Seed of the sample
        jobs: Worker processes; results are merged in relation order
        early_exit: Stop each closure once a witness set is contained

    Returns:
        MaximalityReport; extensions without a witness are listed, never dropped
    """
    candidates = extension_candidates(algebra, mode, sample_size, seed)
    logging.info(f"Checking {len(candidates)} extensions of {algebra.value} ({mode.value} mode, {jobs} jobs)")
    report = MaximalityReport(algebra, mode)
    if jobs > 1 and candidates:
        jobs_list = [(algebra.value, r.mask, early_exit) for r in candidates]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.results = list(pool.map(_check_extension_job, jobs_list, chunksize=16))
    else:
        report.results = [check_extension(algebra, r, early_exit) for r in candidates]

    for failure in report.failures:
        logging.error(f"Extension of {algebra.value} by {failure.relation} reached no NP-hard witness")
    logging.info(f"{algebra.value}: {report.verdict.value}")
    return report
