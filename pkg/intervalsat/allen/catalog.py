"""
Catalog of the tractable starting and ending point algebras

S(b) for b in (pi d oi), E(b) for b in (p d o) and the two star algebras
S* and E* are generated by filtering all 8192 relations against their
defining case lines. The NP-hard witness sets N1, N2 and Δ0 used by the
maximality harness live here as well.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional

from intervalsat.allen.parameters_allen import (
    EQUAL_ENDS,
    EQUAL_STARTS,
    RELATION_COUNT,
    TOP,
    BasicRelation,
    IntervalRelation,
    Side,
)


class AlgebraId(Enum):
    """The eight algebras, declared in the order used to pick a default"""
    s_pi = "S(pi)"
    s_d = "S(d)"
    s_oi = "S(oi)"
    s_star = "S*"
    e_p = "E(p)"
    e_d = "E(d)"
    e_o = "E(o)"
    e_star = "E*"

    @property
    def family(self) -> Side:
        return Side.start if self.value.startswith("S") else Side.end

    @property
    def is_star(self) -> bool:
        return self.value.endswith("*")

    @property
    def basic(self) -> Optional[BasicRelation]:
        """The parameter b of S(b) / E(b); None for the star algebras"""
        if self.is_star:
            return None
        return BasicRelation[self.value[2:-1]]

    def mirror(self) -> "AlgebraId":
        """Algebra of the time-reversed instance"""
        return _ALGEBRA_MIRROR[self]

    @classmethod
    def from_name(cls, name: str) -> "AlgebraId":
        key = name.strip().replace(" ", "")
        key = _ALIASES.get(key, key)
        for algebra in cls:
            if algebra.value == key:
                return algebra
        raise ValueError(f"unknown algebra {name!r}; expected one of {', '.join(a.value for a in cls)}")


_ALGEBRA_MIRROR = {
    AlgebraId.s_pi: AlgebraId.e_p,
    AlgebraId.s_d: AlgebraId.e_d,
    AlgebraId.s_oi: AlgebraId.e_o,
    AlgebraId.s_star: AlgebraId.e_star,
    AlgebraId.e_p: AlgebraId.s_pi,
    AlgebraId.e_d: AlgebraId.s_d,
    AlgebraId.e_o: AlgebraId.s_oi,
    AlgebraId.e_star: AlgebraId.s_star,
}

_ALIASES = {
    "S(≻)": "S(pi)",
    "S(o⌣)": "S(oi)",
    "E(≺)": "E(p)",
    "Sstar": "S*",
    "Estar": "E*",
}

ALGEBRA_ORDER = tuple(AlgebraId)

# strictly later start / strictly earlier end
R_S = IntervalRelation.from_names("pi", "d", "oi", "mi", "f")
R_E = IntervalRelation.from_names("p", "d", "o", "m", "s")

EXPECTED_SIZES = {algebra: (1445 if algebra.is_star else 2312) for algebra in AlgebraId}

# size of the ORD-Horn algebra, for comparison only
ORD_HORN_SIZE = 868


@dataclass(frozen=True)
class _Lines:
    later: int
    earlier: int
    same: int


def _family_lines(family: Side) -> _Lines:
    if family is Side.start:
        return _Lines(R_S.mask, R_S.converse().mask, EQUAL_STARTS.mask)
    return _Lines(R_E.mask, R_E.converse().mask, EQUAL_ENDS.mask)


def _subset(mask: int, of: int) -> bool:
    return mask & ~of == 0


def _member_point_algebra(algebra: AlgebraId, mask: int) -> bool:
    lines = _family_lines(algebra.family)
    b = algebra.basic.bit
    bc = algebra.basic.converse().bit
    return (
        _subset(b | bc, mask)
        or (mask & b and _subset(mask, lines.later | lines.same))
        or (mask & bc and _subset(mask, lines.earlier | lines.same))
        or _subset(mask, lines.same)
    )


def _member_star(algebra: AlgebraId, mask: int) -> bool:
    lines = _family_lines(algebra.family)
    key = BasicRelation.f if algebra.family is Side.start else BasicRelation.s
    k = key.bit
    kc = key.converse().bit
    e = BasicRelation.e.bit
    return (
        _subset(e | k | kc, mask)
        or (_subset(k | kc, mask) and _subset(mask, lines.later | lines.earlier))
        or (_subset(e | k, mask) and _subset(mask, lines.later | lines.same))
        or (_subset(e | kc, mask) and _subset(mask, lines.earlier | lines.same))
        or (mask & k and _subset(mask, lines.later))
        or (mask & kc and _subset(mask, lines.earlier))
        or (mask & e and _subset(mask, lines.same))
        or mask == 0
    )


def member(algebra: AlgebraId, r: IntervalRelation) -> bool:
    """True iff r satisfies one of the algebra's defining case lines"""
    if algebra.is_star:
        return bool(_member_star(algebra, r.mask))
    return bool(_member_point_algebra(algebra, r.mask))


@dataclass(frozen=True)
class AlgebraSet:
    id: AlgebraId
    masks: FrozenSet[int]

    @property
    def members(self) -> FrozenSet[IntervalRelation]:
        return frozenset(IntervalRelation(mask) for mask in self.masks)

    def __contains__(self, r: IntervalRelation) -> bool:
        return r.mask in self.masks

    def __len__(self) -> int:
        return len(self.masks)

    def sorted_members(self) -> List[IntervalRelation]:
        return [IntervalRelation(mask) for mask in sorted(self.masks)]


@lru_cache(maxsize=None)
def generate(algebra: AlgebraId) -> AlgebraSet:
    """
    Enumerate an algebra by filtering all 8192 relations

    Args:
        algebra: Which algebra to build

    Returns:
        AlgebraSet with the members as relation masks
    """
    masks = frozenset(mask for mask in range(RELATION_COUNT) if member(algebra, IntervalRelation(mask)))
    logging.debug(f"Generated {algebra.value} with {len(masks)} relations")
    return AlgebraSet(algebra, masks)


def detect_algebras(labels: Iterable[IntervalRelation], family: Optional[Side] = None) -> List[AlgebraId]:
    """
    All algebras containing every label, in the fixed default order

    Args:
        labels: Edge labels of an instance
        family: Restrict to starting (Side.start) or ending point algebras

    Returns:
        Matching algebra ids, possibly empty
    """
    labels = list(labels)
    return [
        algebra
        for algebra in ALGEBRA_ORDER
        if (family is None or algebra.family is family)
        and all(member(algebra, label) for label in labels)
    ]


def basic_members(algebra: AlgebraId) -> List[BasicRelation]:
    return [basic for basic in BasicRelation if member(algebra, IntervalRelation.of(basic))]


# ---------------- NP-HARD WITNESSES ----------------
class WitnessName(Enum):
    n1 = "N1"
    n2 = "N2"
    delta0 = "Delta0"


@dataclass(frozen=True)
class NpWitness:
    name: WitnessName
    members: FrozenSet[IntervalRelation]

    @property
    def masks(self) -> FrozenSet[int]:
        return frozenset(r.mask for r in self.members)


_SHARED = (
    IntervalRelation.from_names("p", "di", "o", "m", "fi"),
    IntervalRelation.from_names("p", "d", "o", "m", "s"),
)

_WITNESSES = {
    WitnessName.n1: _SHARED + (IntervalRelation.from_names("d", "di", "oi", "si", "f"),),
    WitnessName.n2: _SHARED + (IntervalRelation.from_names("di", "o", "oi", "si", "fi"),),
    WitnessName.delta0: (
        IntervalRelation.from_names("e", "d", "di", "o", "oi", "m", "mi", "s", "si", "f", "fi"),
        IntervalRelation.from_names("p", "pi"),
    ),
}


def np_witness(name: WitnessName) -> NpWitness:
    return NpWitness(name, frozenset(_WITNESSES[name]))


def np_witnesses() -> List[NpWitness]:
    return [np_witness(name) for name in WitnessName]


# ---------------- EXPRESSIVENESS ----------------
def sequentiality_relations() -> List[IntervalRelation]:
    """Relations able to say that two intervals occur in sequence"""
    return [
        IntervalRelation.from_names("p"),
        IntervalRelation.from_names("pi"),
        IntervalRelation.from_names("p", "pi"),
        IntervalRelation.from_names("e", "p"),
        IntervalRelation.from_names("e", "pi"),
        IntervalRelation.from_names("e", "p", "pi"),
        TOP,
    ]


def expresses_sequentiality(algebra: AlgebraId) -> bool:
    return all(member(algebra, r) for r in sequentiality_relations())


def non_horn_relations() -> List[IntervalRelation]:
    """Relations whose endpoint translation is not a set of Horn DLRs"""
    return [
        IntervalRelation.from_names("p", "pi"),
        IntervalRelation.from_names("d", "di"),
        IntervalRelation.from_names("o", "oi"),
        IntervalRelation.from_names("pi", "fi"),
        IntervalRelation.from_names("p", "s"),
    ]

