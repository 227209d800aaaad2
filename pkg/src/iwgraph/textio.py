"""Plain-text graph and voltage file formats.

Graph file: first non-comment line is the vertex count n, every further
non-comment line is an edge ``i j`` with 1 <= i < j <= n.  Voltage file:
lines ``i j a`` naming a base edge (i < j) and its integer voltage.  In
both, ``#`` starts a comment and blank lines are ignored.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .graph import Graph
from .voltage import VoltageAssignment


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _ints(tokens: list[str], lineno: int, source: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno, source) from None


def parse_graph(text: str, source: str = "<graph>") -> Graph:
    it = _lines(text)
    try:
        lineno, tokens = next(it)
    except StopIteration:
        raise ParseError("empty graph file (no vertex count)", None, source) from None
    vals = _ints(tokens, lineno, source)
    if len(vals) != 1 or vals[0] < 0:
        raise ParseError("first line must be a single nonnegative vertex count", lineno, source)
    n = vals[0]
    edges = set()
    for lineno, tokens in it:
        vals = _ints(tokens, lineno, source)
        if len(vals) != 2:
            raise ParseError(f"edge line needs 2 integers, got {len(vals)}", lineno, source)
        i, j = vals
        if not 1 <= i < j <= n:
            raise ParseError(f"edge '{i} {j}' must satisfy 1 <= i < j <= {n}", lineno, source)
        if (i, j) in edges:
            raise ParseError(f"duplicate edge '{i} {j}'", lineno, source)
        edges.add((i, j))
    return Graph(n, frozenset(edges))


def format_graph(g: Graph, header: Optional[str] = None) -> str:
    out = []
    if header:
        out.extend(f"# {line}" for line in header.splitlines())
    out.append(str(g.n))
    out.extend(f"{i} {j}" for i, j in g.sorted_edges())
    return "\n".join(out) + "\n"


def parse_voltages(text: str, base: Graph, p: int, source: str = "<voltages>") -> VoltageAssignment:
    volts = {}
    for lineno, tokens in _lines(text):
        vals = _ints(tokens, lineno, source)
        if len(vals) != 3:
            raise ParseError(f"voltage line needs 3 integers, got {len(vals)}", lineno, source)
        i, j, a = vals
        if not i < j:
            raise ParseError(f"voltage edge '{i} {j}' must have i < j", lineno, source)
        if (i, j) not in base.edges:
            raise ParseError(f"'{i} {j}' is not an edge of the base graph", lineno, source)
        if (i, j) in volts:
            raise ParseError(f"voltage for edge '{i} {j}' given twice", lineno, source)
        volts[(i, j)] = a
    return VoltageAssignment(base, volts, p)


def format_voltages(va: VoltageAssignment) -> str:
    return "".join(f"{i} {j} {a}\n" for (i, j), a in va.volts.items())
