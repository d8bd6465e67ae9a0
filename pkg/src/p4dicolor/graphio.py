"""Text formats for graphs and colourings.

Graph files start with a header ``n m`` followed by ``m`` lines ``u v``;
lines starting with ``#`` and blank lines are ignored. Colouring files have a
``# dicoloring ...`` header and one ``v c`` line per vertex.
"""
from __future__ import annotations

import hashlib

from .digraph import GraphError, OrientedGraph, build_graph


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw


def _ints(lineno: int, raw: str, count: int) -> list[int]:
    fields = raw.split()
    if len(fields) != count:
        raise ParseError(lineno, 1, f"expected {count} integers, found {len(fields)} fields")
    out = []
    col = 0
    for f in fields:
        col = raw.index(f, col) + 1
        try:
            out.append(int(f))
        except ValueError:
            raise ParseError(lineno, col, f"not an integer: {f!r}") from None
        col += len(f) - 1
    return out


def parse_graph(text: str) -> OrientedGraph:
    lines = _content_lines(text)
    try:
        lineno, raw = next(lines)
    except StopIteration:
        raise ParseError(1, 1, "missing header 'n m'") from None
    n, m = _ints(lineno, raw, 2)
    if n < 0 or m < 0:
        raise ParseError(lineno, 1, "n and m must be non-negative")
    arcs = []
    seen: dict[tuple[int, int], int] = {}
    last = lineno
    for lineno, raw in lines:
        last = lineno
        u, v = _ints(lineno, raw, 2)
        try:
            build_graph(n, [(u, v)])
        except GraphError as exc:
            raise ParseError(lineno, 1, str(exc)) from None
        if (v, u) in seen:
            raise ParseError(lineno, 1, f"digon with the arc on line {seen[(v, u)]}")
        if (u, v) in seen:
            raise ParseError(lineno, 1, f"duplicate arc ({u},{v})")
        seen[(u, v)] = lineno
        arcs.append((u, v))
    if len(arcs) != m:
        raise ParseError(last, 1, f"header announces {m} arcs, found {len(arcs)}")
    return build_graph(n, arcs)


def serialize_graph(g: OrientedGraph) -> str:
    arcs = g.sorted_arcs()
    return "".join([f"{g.n} {len(arcs)}\n"] + [f"{u} {v}\n" for u, v in arcs])


def graph_digest(g: OrientedGraph) -> str:
    return hashlib.sha256(serialize_graph(g).encode()).hexdigest()


def serialize_coloring(color_of, pattern: str | None = None, budget: int | None = None) -> str:
    cols = list(color_of)
    used = len(set(cols))
    header = f"# dicoloring pattern={pattern or '-'} budget={budget if budget is not None else '-'} colors={used}\n"
    return header + "".join(f"{v} {c}\n" for v, c in enumerate(cols))


def parse_coloring(text: str, n: int) -> list[int]:
    colors: list[int | None] = [None] * n
    for lineno, raw in _content_lines(text):
        v, c = _ints(lineno, raw, 2)
        if not 0 <= v < n:
            raise ParseError(lineno, 1, f"vertex {v} outside 0..{n - 1}")
        if c < 0:
            raise ParseError(lineno, 1, f"negative colour {c}")
        if colors[v] is not None:
            raise ParseError(lineno, 1, f"vertex {v} coloured twice")
        colors[v] = c
    missing = [v for v, c in enumerate(colors) if c is None]
    if missing:
        raise ParseError(1, 1, f"vertices without a colour: {missing[:10]}")
    return colors  # type: ignore[return-value]
