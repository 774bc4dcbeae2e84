"""
Allen Interval Algebra Parameter Structures

Basic relations with their endpoint semantics, interval relations as
13-bit characteristic sets, and the point relation symbols obtained by
projecting interval relations onto starting or ending points.
"""

from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple


class Side(Enum):
    """Interval endpoint side; also the mode of a metric instance"""
    start = "start"
    end = "end"

    @property
    def suffix(self) -> str:
        return "-" if self is Side.start else "+"

    def other(self) -> "Side":
        return Side.end if self is Side.start else Side.start


def endpoint_variable(interval: str, side: Side) -> str:
    """Name of the variable for an interval endpoint ("A-" / "A+")"""
    return f"{interval}{side.suffix}"


def parse_endpoint_variable(variable: str) -> Optional[Tuple[str, Side]]:
    """
    Split an endpoint variable into interval name and side

    Returns:
        (interval, side) or None if the variable is not an endpoint variable
    """
    if len(variable) < 2:
        return None
    if variable.endswith("-"):
        return variable[:-1], Side.start
    if variable.endswith("+"):
        return variable[:-1], Side.end
    return None


# ---------------- POINT RELATIONS ----------------
class PointRelation(IntEnum):
    """Relation symbol between two reals, encoded as its set of outcomes

    Bit 1 stands for "<", bit 2 for "=" and bit 4 for ">", so the
    disjunction of two symbols is the bitwise union of their values.
    """
    bottom = 0
    lt = 1
    eq = 2
    le = 3
    gt = 4
    ne = 5
    ge = 6
    top = 7

    @property
    def symbol(self) -> str:
        return _POINT_SYMBOLS[self]

    @property
    def text(self) -> str:
        """ASCII operator used by the DLR text syntax"""
        return _POINT_TEXT[self]

    def join(self, other: "PointRelation") -> "PointRelation":
        return PointRelation(self | other)

    def converse(self) -> "PointRelation":
        """Relation obtained by swapping the two operands"""
        value = int(self)
        return PointRelation((value & 2) | ((value & 1) << 2) | ((value & 4) >> 2))

    def holds(self, left, right) -> bool:
        return bool(self & PointRelation.compare(left, right))

    @staticmethod
    def compare(left, right) -> "PointRelation":
        if left < right:
            return PointRelation.lt
        if left > right:
            return PointRelation.gt
        return PointRelation.eq

    @classmethod
    def from_text(cls, text: str) -> "PointRelation":
        try:
            return _POINT_FROM_TEXT[text.strip()]
        except KeyError:
            raise ValueError(f"unknown point relation {text!r}") from None


_POINT_SYMBOLS = {
    PointRelation.bottom: "⊥",
    PointRelation.lt: "<",
    PointRelation.eq: "=",
    PointRelation.le: "≤",
    PointRelation.gt: ">",
    PointRelation.ne: "≠",
    PointRelation.ge: "≥",
    PointRelation.top: "⊤",
}

_POINT_TEXT = {
    PointRelation.bottom: "bot",
    PointRelation.lt: "<",
    PointRelation.eq: "=",
    PointRelation.le: "<=",
    PointRelation.gt: ">",
    PointRelation.ne: "!=",
    PointRelation.ge: ">=",
    PointRelation.top: "top",
}

_POINT_FROM_TEXT = {text: rel for rel, text in _POINT_TEXT.items()}
_POINT_FROM_TEXT.update({symbol: rel for rel, symbol in _POINT_SYMBOLS.items()})
_POINT_FROM_TEXT["=="] = PointRelation.eq


# ---------------- BASIC RELATIONS ----------------
class BasicRelation(Enum):
    """The thirteen basic relations; values give the canonical bit order"""
    p = 0
    pi = 1
    m = 2
    mi = 3
    o = 4
    oi = 5
    d = 6
    di = 7
    s = 8
    si = 9
    f = 10
    fi = 11
    e = 12

    @property
    def bit(self) -> int:
        return 1 << self.value

    @property
    def symbol(self) -> str:
        return _BASIC_SYMBOLS[self]

    @property
    def endpoints(self) -> Tuple[PointRelation, PointRelation, PointRelation, PointRelation]:
        """Signs of (x⁻ vs y⁻, x⁻ vs y⁺, x⁺ vs y⁻, x⁺ vs y⁺) for x b y"""
        return ENDPOINT_SIGNS[self]

    def converse(self) -> "BasicRelation":
        if self is BasicRelation.e:
            return self
        return BasicRelation(self.value ^ 1)

    def mirror(self) -> "BasicRelation":
        """Basic relation between the time-reversed intervals"""
        return _MIRROR[self]


_LT = PointRelation.lt
_EQ = PointRelation.eq
_GT = PointRelation.gt

# endpoint order per basic relation; x⁻ < x⁺ and y⁻ < y⁺ hold for every row
ENDPOINT_SIGNS = {
    BasicRelation.p: (_LT, _LT, _LT, _LT),
    BasicRelation.pi: (_GT, _GT, _GT, _GT),
    BasicRelation.m: (_LT, _LT, _EQ, _LT),
    BasicRelation.mi: (_GT, _EQ, _GT, _GT),
    BasicRelation.o: (_LT, _LT, _GT, _LT),
    BasicRelation.oi: (_GT, _LT, _GT, _GT),
    BasicRelation.d: (_GT, _LT, _GT, _LT),
    BasicRelation.di: (_LT, _LT, _GT, _GT),
    BasicRelation.s: (_EQ, _LT, _GT, _LT),
    BasicRelation.si: (_EQ, _LT, _GT, _GT),
    BasicRelation.f: (_GT, _LT, _GT, _EQ),
    BasicRelation.fi: (_LT, _LT, _GT, _EQ),
    BasicRelation.e: (_EQ, _LT, _GT, _EQ),
}

_SIGNATURES = {signature: basic for basic, signature in ENDPOINT_SIGNS.items()}

_BASIC_SYMBOLS = {
    BasicRelation.p: "≺",
    BasicRelation.pi: "≻",
    BasicRelation.m: "m",
    BasicRelation.mi: "m⌣",
    BasicRelation.o: "o",
    BasicRelation.oi: "o⌣",
    BasicRelation.d: "d",
    BasicRelation.di: "d⌣",
    BasicRelation.s: "s",
    BasicRelation.si: "s⌣",
    BasicRelation.f: "f",
    BasicRelation.fi: "f⌣",
    BasicRelation.e: "≡",
}

_MIRROR = {
    BasicRelation.p: BasicRelation.pi,
    BasicRelation.pi: BasicRelation.p,
    BasicRelation.m: BasicRelation.mi,
    BasicRelation.mi: BasicRelation.m,
    BasicRelation.o: BasicRelation.oi,
    BasicRelation.oi: BasicRelation.o,
    BasicRelation.d: BasicRelation.d,
    BasicRelation.di: BasicRelation.di,
    BasicRelation.s: BasicRelation.f,
    BasicRelation.si: BasicRelation.fi,
    BasicRelation.f: BasicRelation.s,
    BasicRelation.fi: BasicRelation.si,
    BasicRelation.e: BasicRelation.e,
}

BASIC_RELATIONS: Tuple[BasicRelation, ...] = tuple(BasicRelation)
BASIC_COUNT = 13
RELATION_COUNT = 1 << BASIC_COUNT
FULL_MASK = RELATION_COUNT - 1


def relation_between(x: Tuple, y: Tuple) -> Optional[BasicRelation]:
    """
    Basic relation realized by two intervals given as (start, end) pairs

    Works for any totally ordered endpoint values (integers, ranks,
    Fractions).

    Returns:
        The unique basic relation matching the endpoint order, or None if either interval
        is degenerate (start not strictly before end)
    """
    x_start, x_end = x
    y_start, y_end = y
    if not (x_start < x_end and y_start < y_end):
        return None
    compare = PointRelation.compare
    signature = (
        compare(x_start, y_start),
        compare(x_start, y_end),
        compare(x_end, y_start),
        compare(x_end, y_end),
    )
    return _SIGNATURES.get(signature)


def _mapped_masks(mapping) -> Tuple[int, ...]:
    masks = []
    for mask in range(RELATION_COUNT):
        image = 0
        for basic in BASIC_RELATIONS:
            if mask & basic.bit:
                image |= mapping(basic).bit
        masks.append(image)
    return tuple(masks)


CONVERSE_MASKS: Tuple[int, ...] = _mapped_masks(BasicRelation.converse)
MIRROR_MASKS: Tuple[int, ...] = _mapped_masks(BasicRelation.mirror)


# ---------------- INTERVAL RELATIONS ----------------
@dataclass(frozen=True, order=True)
class IntervalRelation:
    """A disjunction of basic relations, stored as a 13-bit mask"""
    mask: int = 0

    def __post_init__(self):
        if not 0 <= self.mask <= FULL_MASK:
            raise ValueError(f"relation mask out of range: {self.mask}")

    @classmethod
    def of(cls, *basics: BasicRelation) -> "IntervalRelation":
        mask = 0
        for basic in basics:
            mask |= basic.bit
        return cls(mask)

    @classmethod
    def from_names(cls, *names: str) -> "IntervalRelation":
        return cls.of(*(BasicRelation[name] for name in names))

    @property
    def basics(self) -> List[BasicRelation]:
        return [basic for basic in BASIC_RELATIONS if self.mask & basic.bit]

    @property
    def is_top(self) -> bool:
        return self.mask == FULL_MASK

    def __iter__(self) -> Iterator[BasicRelation]:
        return iter(self.basics)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, basic: BasicRelation) -> bool:
        return bool(self.mask & basic.bit)

    def __and__(self, other: "IntervalRelation") -> "IntervalRelation":
        return IntervalRelation(self.mask & other.mask)

    def __or__(self, other: "IntervalRelation") -> "IntervalRelation":
        return IntervalRelation(self.mask | other.mask)

    def __sub__(self, other: "IntervalRelation") -> "IntervalRelation":
        return IntervalRelation(self.mask & ~other.mask)

    def issubset(self, other: "IntervalRelation") -> bool:
        return self.mask & ~other.mask == 0

    def converse(self) -> "IntervalRelation":
        return IntervalRelation(CONVERSE_MASKS[self.mask])

    def mirror(self) -> "IntervalRelation":
        return IntervalRelation(MIRROR_MASKS[self.mask])

    def unicode(self) -> str:
        """Notation with the usual symbols, e.g. (≺ m f⌣); ⊥ and ⊤ spelled out"""
        if self.mask == 0:
            return "⊥"
        if self.is_top:
            return "⊤"
        return "(" + " ".join(basic.symbol for basic in self.basics) + ")"

    def __str__(self) -> str:
        return "{" + " ".join(basic.name for basic in self.basics) + "}"

    def __repr__(self) -> str:
        return f"IntervalRelation({self})"


BOTTOM = IntervalRelation(0)
TOP = IntervalRelation(FULL_MASK)
EQUAL_STARTS = IntervalRelation.of(BasicRelation.e, BasicRelation.s, BasicRelation.si)
EQUAL_ENDS = IntervalRelation.of(BasicRelation.e, BasicRelation.f, BasicRelation.fi)


def all_relations() -> Iterator[IntervalRelation]:
    """All 8192 interval relations in mask order"""
    return (IntervalRelation(mask) for mask in range(RELATION_COUNT))


# ---------------- OPERATIONS ----------------
def converse(r: IntervalRelation) -> IntervalRelation:
    """Converse relation, inverting each basic relation"""
    return r.converse()


def intersect(r1: IntervalRelation, r2: IntervalRelation) -> IntervalRelation:
    """Intersection of two relations"""
    return r1 & r2


@lru_cache(maxsize=None)
def _endpoint_relation_mask(mask: int, side: Side, restricted: bool) -> PointRelation:
    if restricted:
        mask &= (EQUAL_ENDS if side is Side.start else EQUAL_STARTS).mask
    position = 0 if side is Side.start else 3
    result = PointRelation.bottom
    for basic in BASIC_RELATIONS:
        if mask & basic.bit:
            result = result.join(ENDPOINT_SIGNS[basic][position])
    return result


def endpoint_relation(r: IntervalRelation, side: Side, restricted: bool = False) -> PointRelation:
    """
    Point relation implied by r on the starting or ending points

    Args:
        r: Interval relation
        side: Side.start for sprel, Side.end for eprel
        restricted: Restrict r to (≡ f f⌣) first for starting points
            (sprel⁺), or to (≡ s s⌣) for ending points (eprel⁻)

    Returns:
        Disjunction of the basic point relations of the members
    """
    return _endpoint_relation_mask(r.mask, side, restricted)


def sprel(r: IntervalRelation) -> PointRelation:
    return endpoint_relation(r, Side.start)


def eprel(r: IntervalRelation) -> PointRelation:
    return endpoint_relation(r, Side.end)
