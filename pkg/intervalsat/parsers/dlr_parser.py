"""
DLR parser for disjunctions such as "A- - B- <= 5 | A- != 3/4*C-"
"""

import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from intervalsat.allen.parameters_allen import PointRelation
from intervalsat.dlr.parameters_dlr import DisjunctiveLinearRelation, LinearPolynomial, LinearRelation


class DlrSyntaxError(ValueError):
    """Malformed DLR text; line and column are 1-based"""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_OPERATORS = {
    "<=": PointRelation.le,
    ">=": PointRelation.ge,
    "!=": PointRelation.ne,
    "==": PointRelation.eq,
    "<": PointRelation.lt,
    ">": PointRelation.gt,
    "=": PointRelation.eq,
    "≤": PointRelation.le,
    "≥": PointRelation.ge,
    "≠": PointRelation.ne,
}

_NUMBER = r"\d+(?:\.\d+)?(?:/\d+)?"
_NAME = r"[A-Za-z_][A-Za-z0-9_]*"

_FREE_TOKENS = re.compile(
    rf"\s*(?:(?P<number>{_NUMBER})|(?P<var>{_NAME})|(?P<op><=|>=|!=|==|[<>=≤≥≠])|(?P<sym>[-+*|]))"
)
_ENDPOINT_TOKENS = re.compile(
    rf"\s*(?:(?P<number>{_NUMBER})|(?P<var>{_NAME}[+-]?)|(?P<op><=|>=|!=|==|[<>=≤≥≠])|(?P<sym>[-+*|]))"
)

Token = Tuple[str, str, int]


class DlrParser:
    """Parse one disjunctive linear relation"""

    def __init__(self, text: str, line: int = 1, column_offset: int = 0, endpoint_variables: bool = False):
        """
        Initialize parser

        Args:
            text: DLR text
            line: Line number used in error messages
            column_offset: Columns preceding the text on its line
            endpoint_variables: Read "A-" / "A+" as variable names
        """
        self.text = text
        self.line = line
        self.column_offset = column_offset
        self.pattern = _ENDPOINT_TOKENS if endpoint_variables else _FREE_TOKENS
        self.tokens: List[Token] = []
        self.position = 0

    def _error(self, message: str, offset: Optional[int] = None) -> DlrSyntaxError:
        if offset is None:
            offset = self.tokens[self.position][2] if self.position < len(self.tokens) else len(self.text)
        return DlrSyntaxError(message, self.line, self.column_offset + offset + 1)

    def _tokenize(self):
        index = 0
        text = self.text.rstrip()
        while index < len(text):
            match = self.pattern.match(text, index)
            if match is None or match.end() == index:
                skipped = len(text[index:]) - len(text[index:].lstrip())
                raise self._error(f"unexpected character {text[index + skipped]!r}", index + skipped)
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            index = match.end()

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _take(self) -> Token:
        token = self._peek()
        if token is None:
            raise self._error("unexpected end of relation")
        self.position += 1
        return token

    def _term(self, sign: int, coefficients: Dict[str, Fraction], constant: List[Fraction]):
        kind, value, offset = self._take()
        if kind == "number":
            try:
                number = Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise self._error(f"zero denominator in {value!r}", offset) from None
            following = self._peek()
            if following is not None and following[1] == "*":
                self.position += 1
                kind, name, _ = self._take()
                if kind != "var":
                    raise self._error("expected a variable after '*'", self.tokens[self.position - 1][2])
                coefficients[name] = coefficients.get(name, Fraction(0)) + sign * number
            else:
                constant[0] += sign * number
        elif kind == "var":
            coefficients[value] = coefficients.get(value, Fraction(0)) + sign
        else:
            raise self._error(f"expected a number or variable, got {value!r}", self.tokens[self.position - 1][2])

    def _polynomial(self) -> LinearPolynomial:
        coefficients: Dict[str, Fraction] = {}
        constant = [Fraction(0)]
        sign = 1
        token = self._peek()
        if token is not None and token[1] in "+-":
            sign = -1 if token[1] == "-" else 1
            self.position += 1
        self._term(sign, coefficients, constant)
        while True:
            token = self._peek()
            if token is None or token[1] not in ("+", "-"):
                break
            self.position += 1
            self._term(-1 if token[1] == "-" else 1, coefficients, constant)
        return LinearPolynomial(coefficients=coefficients, constant=constant[0])

    def _relation(self) -> LinearRelation:
        lhs = self._polynomial()
        kind, value, _ = self._take()
        if kind != "op":
            raise self._error(f"expected a relation operator, got {value!r}", self.tokens[self.position - 1][2])
        rhs = self._polynomial()
        return LinearRelation(lhs=lhs, op=_OPERATORS[value], rhs=rhs)

    def parse(self) -> DisjunctiveLinearRelation:
        """
        Parse the text

        Returns:
            DisjunctiveLinearRelation (Horn-ness is checked by the caller)

        Raises:
            DlrSyntaxError: with line and column of the offending token
        """
        self._tokenize()
        if not self.tokens:
            raise self._error("empty relation", 0)
        disjuncts = [self._relation()]
        while self._peek() is not None:
            kind, value, _ = self._take()
            if value != "|":
                raise self._error(f"expected '|' between disjuncts, got {value!r}", self.tokens[self.position - 1][2])
            disjuncts.append(self._relation())
        return DisjunctiveLinearRelation(disjuncts=disjuncts)


def parse_dlr(text: str, endpoint_variables: bool = False) -> DisjunctiveLinearRelation:
    return DlrParser(text, endpoint_variables=endpoint_variables).parse()
