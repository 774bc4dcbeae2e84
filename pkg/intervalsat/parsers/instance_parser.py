"""
Instance parser for the line-oriented instance format

    mode start|end
    algebra auto|S(pi)|S(d)|S(oi)|E(p)|E(d)|E(o)|S*|E*
    interval <name> [<name> ...]
    rel <name> {<basics>} <name>
    dlr <horn dlr over A- / A+ variables>

"#" starts a comment.
"""

import logging
import re
from pathlib import Path
from typing import List, Optional

from intervalsat.allen.catalog import AlgebraId
from intervalsat.allen.parameters_allen import Side
from intervalsat.parameters_instance import Edge, MIsatInstance
from intervalsat.parsers.dlr_parser import DlrParser, DlrSyntaxError
from intervalsat.parsers.relation_parser import RelationSyntaxError, parse_relation

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_REL_LINE = re.compile(r"(?P<source>\S+)\s+(?P<relation>\{[^}]*\}|top|⊤)\s+(?P<target>\S+)\s*$")
_KEYWORD_LINE = re.compile(r"\s*(?P<keyword>\S+)\s*(?P<rest>.*)$")


class InstanceSyntaxError(ValueError):
    """Malformed instance file; line and column are 1-based"""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InstanceParser:
    """Parse instance text"""

    def __init__(self, text: str):
        """
        Initialize parser

        Args:
            text: Instance file contents
        """
        self.text = text
        self.intervals: List[str] = []
        self.edges: List[Edge] = []
        self.metric = []
        self.mode: Optional[Side] = None
        self.algebra: Optional[AlgebraId] = None
        self.algebra_seen = False

    def parse(self) -> MIsatInstance:
        """
        Parse every line

        Returns:
            MIsatInstance (mode defaults to start, algebra to auto)

        Raises:
            InstanceSyntaxError: on malformed lines, duplicate or undeclared names
        """
        for number, raw in enumerate(self.text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            match = _KEYWORD_LINE.match(line)
            keyword = match.group("keyword")
            handler = getattr(self, f"_line_{keyword}", None)
            if handler is None:
                raise InstanceSyntaxError(f"unknown keyword {keyword!r}", number, match.start("keyword") + 1)
            handler(match.group("rest"), number, match.start("rest") + 1)

        instance = MIsatInstance(
            intervals=self.intervals,
            edges=self.edges,
            metric=self.metric,
            mode=self.mode or Side.start,
            algebra=self.algebra,
        )
        logging.debug(
            f"Parsed {len(self.intervals)} intervals, {len(self.edges)} edges, {len(self.metric)} metric constraints"
        )
        return instance

    def _line_mode(self, rest: str, line: int, column: int):
        if self.mode is not None:
            raise InstanceSyntaxError("mode declared twice", line, column)
        try:
            self.mode = Side(rest)
        except ValueError:
            raise InstanceSyntaxError(f"mode must be start or end, got {rest!r}", line, column) from None

    def _line_algebra(self, rest: str, line: int, column: int):
        if self.algebra_seen:
            raise InstanceSyntaxError("algebra declared twice", line, column)
        self.algebra_seen = True
        if rest == "auto":
            return
        try:
            self.algebra = AlgebraId.from_name(rest)
        except ValueError as e:
            raise InstanceSyntaxError(str(e), line, column) from None

    def _line_interval(self, rest: str, line: int, column: int):
        if not rest:
            raise InstanceSyntaxError("interval name expected", line, column)
        for match in re.finditer(r"\S+", rest):
            name = match.group(0)
            if not _NAME.match(name):
                raise InstanceSyntaxError(f"invalid interval name {name!r}", line, column + match.start())
            if name in self.intervals:
                raise InstanceSyntaxError(f"interval {name} declared twice", line, column + match.start())
            self.intervals.append(name)

    def _line_rel(self, rest: str, line: int, column: int):
        match = _REL_LINE.match(rest)
        if match is None:
            raise InstanceSyntaxError("expected: rel <name> {<basics>} <name>", line, column)
        for group in ("source", "target"):
            if match.group(group) not in self.intervals:
                raise InstanceSyntaxError(
                    f"undeclared interval {match.group(group)}", line, column + match.start(group)
                )
        try:
            relation = parse_relation(match.group("relation"))
        except RelationSyntaxError as e:
            raise InstanceSyntaxError(
                str(e).split(": ", 1)[-1], line, column + match.start("relation") + e.column - 1
            ) from None
        self.edges.append(Edge(match.group("source"), relation, match.group("target")))

    def _line_dlr(self, rest: str, line: int, column: int):
        try:
            dlr = DlrParser(rest, line=line, column_offset=column - 1, endpoint_variables=True).parse()
        except DlrSyntaxError as e:
            raise InstanceSyntaxError(str(e).split(": ", 1)[-1], e.line, e.column) from None
        self.metric.append(dlr)


def parse_instance(text: str) -> MIsatInstance:
    return InstanceParser(text).parse()


def load_instance(path: str) -> MIsatInstance:
    """Read and parse an instance file (UTF-8)"""
    return parse_instance(Path(path).read_text(encoding="utf-8"))
