"""
Composition of interval relations

The 13×13 basic composition table is embedded below. It can be
rederived from the endpoint semantics: b3 belongs to b1∘b2 iff the point
constraints of x b1 y, y b2 z and x b3 z are jointly satisfiable over the
six endpoints. The oracle derives it a third way by enumerating weak
orderings; the three are compared by the test-suite and by `selftest`.

For bulk work (closure, catalog checks) the table is lifted to numpy
arrays indexed by relation mask.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from intervalsat.allen.parameters_allen import (
    BASIC_COUNT,
    BASIC_RELATIONS,
    ENDPOINT_SIGNS,
    RELATION_COUNT,
    BasicRelation,
    IntervalRelation,
    PointRelation,
    Side,
    endpoint_variable,
)
from intervalsat.dlr.point_algebra import PointConstraint, pa_sat
from intervalsat.utils import InternalInconsistencyError

ALL_MASKS = np.arange(RELATION_COUNT, dtype=np.int32)

# Basic composition table b1 ∘ b2, columns in BasicRelation order, "all" for ⊤
_BASIC_COMPOSITION = {
    "p": ("p", "all", "p", "p o m d s", "p", "p o m d s", "p o m d s", "p", "p", "p", "p o m d s", "p", "p"),
    "pi": ("all", "pi", "pi oi mi d f", "pi", "pi oi mi d f", "pi", "pi oi mi d f", "pi", "pi oi mi d f", "pi", "pi", "pi", "pi"),
    "m": ("p", "pi oi mi di si", "p", "f fi e", "p", "o d s", "o d s", "p", "m", "m", "o d s", "p", "m"),
    "mi": ("p o m di fi", "pi", "s si e", "pi", "oi d f", "pi", "oi d f", "pi", "oi d f", "pi", "mi", "mi", "mi"),
    "o": ("p", "pi oi mi di si", "p", "oi di si", "p o m", "o oi d di s si f fi e", "o d s", "p o m di fi", "o", "o di fi", "o d s", "p o m", "o"),
    "oi": ("p o m di fi", "pi", "o di fi", "pi", "o oi d di s si f fi e", "pi oi mi", "oi d f", "pi oi mi di si", "oi d f", "pi oi mi", "oi", "oi di si", "oi"),
    "d": ("p", "pi", "p", "pi", "p o m d s", "pi oi mi d f", "d", "all", "d", "pi oi mi d f", "d", "p o m d s", "d"),
    "di": ("p o m di fi", "pi oi mi di si", "o di fi", "oi di si", "o di fi", "oi di si", "o oi d di s si f fi e", "di", "o di fi", "di", "oi di si", "di", "di"),
    "s": ("p", "pi", "p", "mi", "p o m", "oi d f", "d", "p o m di fi", "s", "s si e", "d", "p o m", "s"),
    "si": ("p o m di fi", "pi", "o di fi", "mi", "o di fi", "oi", "oi d f", "di", "s si e", "si", "oi", "di", "si"),
    "f": ("p", "pi", "m", "pi", "o d s", "pi oi mi", "d", "pi oi mi di si", "d", "pi oi mi", "f", "f fi e", "f"),
    "fi": ("p", "pi oi mi di si", "m", "oi di si", "o", "oi di si", "o d s", "di", "o", "di", "f fi e", "fi", "fi"),
    "e": ("p", "pi", "m", "mi", "o", "oi", "d", "di", "s", "si", "f", "fi", "e"),
}


def basic_constraints(basic: BasicRelation, x: str, y: str) -> List[PointConstraint]:
    """Point constraints expressing x basic y, including proper intervals"""
    x_start, x_end = endpoint_variable(x, Side.start), endpoint_variable(x, Side.end)
    y_start, y_end = endpoint_variable(y, Side.start), endpoint_variable(y, Side.end)
    signs = ENDPOINT_SIGNS[basic]
    return [
        PointConstraint(x_start, PointRelation.lt, x_end),
        PointConstraint(y_start, PointRelation.lt, y_end),
        PointConstraint(x_start, signs[0], y_start),
        PointConstraint(x_start, signs[1], y_end),
        PointConstraint(x_end, signs[2], y_start),
        PointConstraint(x_end, signs[3], y_end),
    ]


@dataclass(frozen=True)
class CompositionTable:
    """Basic composition entries as masks, indexed [b1][b2]"""
    entries: Tuple[Tuple[int, ...], ...]

    def entry(self, b1: BasicRelation, b2: BasicRelation) -> IntervalRelation:
        return IntervalRelation(self.entries[b1.value][b2.value])

    def problems(self) -> List[str]:
        """Violations of the structural table invariants; empty when valid"""
        found = []
        identity = BasicRelation.e
        for b1 in BASIC_RELATIONS:
            if self.entry(identity, b1) != IntervalRelation.of(b1):
                found.append(f"e ∘ {b1.name} = {self.entry(identity, b1)}")
            if self.entry(b1, identity) != IntervalRelation.of(b1):
                found.append(f"{b1.name} ∘ e = {self.entry(b1, identity)}")
            for b2 in BASIC_RELATIONS:
                value = self.entry(b1, b2)
                if not value.mask:
                    found.append(f"{b1.name} ∘ {b2.name} is empty")
                if value.converse() != self.entry(b2.converse(), b1.converse()):
                    found.append(f"{b1.name} ∘ {b2.name} is not converse-symmetric")
        return found

    def differences(self, other: "CompositionTable") -> List[str]:
        return [
            f"{b1.name} ∘ {b2.name}: {self.entry(b1, b2)} != {other.entry(b1, b2)}"
            for b1 in BASIC_RELATIONS
            for b2 in BASIC_RELATIONS
            if self.entries[b1.value][b2.value] != other.entries[b1.value][b2.value]
        ]


def derive_table_from_points() -> CompositionTable:
    entries = []
    for b1 in BASIC_RELATIONS:
        row = []
        for b2 in BASIC_RELATIONS:
            mask = 0
            base = basic_constraints(b1, "x", "y") + basic_constraints(b2, "y", "z")
            for b3 in BASIC_RELATIONS:
                if pa_sat(base + basic_constraints(b3, "x", "z")):
                    mask |= b3.bit
            row.append(mask)
        entries.append(tuple(row))
    return CompositionTable(tuple(entries))


def embedded_table() -> CompositionTable:
    entries = []
    for b1 in BASIC_RELATIONS:
        row = []
        for cell in _BASIC_COMPOSITION[b1.name]:
            names = [b.name for b in BASIC_RELATIONS] if cell == "all" else cell.split()
            row.append(IntervalRelation.from_names(*names).mask)
        entries.append(tuple(row))
    return CompositionTable(tuple(entries))


@lru_cache(maxsize=1)
def default_table() -> CompositionTable:
    table = embedded_table()
    problems = table.problems()
    if problems:
        raise InternalInconsistencyError(f"embedded composition table is invalid: {problems[0]}")
    logging.debug("Composition table loaded")
    return table


def lift(unit_values) -> np.ndarray:
    """Array over all masks m of the OR of unit_values[b] for the bits b of m"""
    lifted = np.zeros(RELATION_COUNT, dtype=np.int32)
    for b in range(BASIC_COUNT):
        lifted |= np.where(ALL_MASKS & (1 << b), np.int32(unit_values[b]), np.int32(0))
    return lifted


@lru_cache(maxsize=4)
def left_rows(table: CompositionTable) -> np.ndarray:
    """Array of shape (13, 8192) holding b1 ∘ m"""
    return np.stack([lift(table.entries[b]) for b in range(BASIC_COUNT)])


def _bits(mask: int) -> List[int]:
    return [b for b in range(BASIC_COUNT) if mask >> b & 1]


def compose_masks(m1: int, m2: int, table: Optional[CompositionTable] = None) -> int:
    rows = left_rows(table or default_table())
    result = 0
    for b in _bits(m1):
        result |= int(rows[b, m2])
    return result


def compose(r1: IntervalRelation, r2: IntervalRelation, table: Optional[CompositionTable] = None) -> IntervalRelation:
    """
    Composition r1 ∘ r2: the union of the basic entries over all member pairs

    Args:
        r1: Left relation
        r2: Right relation
        table: Composition table; the embedded default when omitted

    Returns:
        Composed relation (⊥ if either argument is ⊥)
    """
    return IntervalRelation(compose_masks(r1.mask, r2.mask, table))


def composition_row(mask: int, table: Optional[CompositionTable] = None) -> np.ndarray:
    """mask ∘ m for every relation mask m"""
    rows = left_rows(table or default_table())
    bits = _bits(mask)
    if not bits:
        return np.zeros(RELATION_COUNT, dtype=np.int32)
    return np.bitwise_or.reduce(rows[bits], axis=0)


def composition_column(mask: int, table: Optional[CompositionTable] = None) -> np.ndarray:
    """m ∘ mask for every relation mask m"""
    rows = left_rows(table or default_table())
    return lift([int(rows[b1, mask]) for b1 in range(BASIC_COUNT)])
