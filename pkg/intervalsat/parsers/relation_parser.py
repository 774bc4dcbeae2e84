"""
Relation parser for the brace syntax {p pi m ...}
"""

import re

from intervalsat.allen.parameters_allen import TOP, BasicRelation, IntervalRelation

_TOP_WORDS = ("top", "⊤")


class RelationSyntaxError(ValueError):
    """Malformed relation text; column is 1-based"""

    def __init__(self, message: str, column: int = 1):
        super().__init__(f"column {column}: {message}")
        self.column = column


def parse_relation(text: str) -> IntervalRelation:
    """
    Parse "{p pi}", "{}" or "top"

    Args:
        text: Relation text; basics are whitespace or comma separated, any order

    Returns:
        IntervalRelation

    Raises:
        RelationSyntaxError: on unknown basics or missing braces
    """
    stripped = text.strip()
    offset = len(text) - len(text.lstrip()) + 1
    if stripped in _TOP_WORDS:
        return TOP
    if not (stripped.startswith("{") and stripped.endswith("}")):
        raise RelationSyntaxError(f"expected {{...}} or top, got {stripped!r}", offset)

    mask = 0
    for match in re.finditer(r"[^\s,{}]+", stripped[1:-1]):
        name = match.group(0)
        try:
            mask |= BasicRelation[name].bit
        except KeyError:
            raise RelationSyntaxError(f"unknown basic relation {name!r}", offset + 1 + match.start()) from None
    return IntervalRelation(mask)


def format_relation(r: IntervalRelation) -> str:
    """Canonical brace text, basics in the fixed order"""
    return str(r)
