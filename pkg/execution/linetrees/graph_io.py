"""linetrees.graph_io
------------------

Plain-text graph files.

    # comment
    n m
    u v        (m lines, 0-based vertex ids; line order = edge id order)

Blank lines and lines starting with "#" are ignored anywhere in the file.
"""

import re
from pathlib import Path

from .core import Edge, EdgeId, MultiGraph
from .errors import GraphArgumentError, GraphParseError


def _ints(text: str, line_no: int, expected: int) -> tuple[int, ...]:
    fields = text.split()
    if len(fields) != expected:
        raise GraphParseError(f"expected {expected} integers, got {text.strip()!r}", line_no)
    try:
        return tuple(int(x) for x in fields)
    except ValueError:
        raise GraphParseError(f"not an integer in {text.strip()!r}", line_no) from None


def parse_graph(text: str) -> MultiGraph:
    """Parse a GraphFile into a MultiGraph whose edge ids follow line order.

    Raises:
        GraphParseError: Malformed header or edge line, self-loop, vertex out
            of range, or an edge count that does not match the header.
    """
    rows = [
        (no, line)
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise GraphParseError("missing 'n m' header")
    header_no, header = rows[0]
    n, m = _ints(header, header_no, 2)
    if n < 0 or m < 0:
        raise GraphParseError("n and m must be non-negative", header_no)
    body = rows[1:]
    if len(body) != m:
        last = body[-1][0] if body else header_no
        raise GraphParseError(f"header announces {m} edges, found {len(body)}", last)

    edges = []
    for eid, (no, line) in enumerate(body):
        u, v = _ints(line, no, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex out of range 0..{n - 1}", no)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", no)
        edges.append(Edge(eid, u, v))
    return MultiGraph(n, tuple(edges))


def emit_graph(g: MultiGraph) -> str:
    """Render g as a GraphFile; edges are written in id order."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{e.u} {e.v}" for e in g.edges)
    return "\n".join(lines) + "\n"


def _read_text(path: Path | str) -> str:
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphArgumentError(f"cannot read {path}: {exc.strerror}") from None


def read_graph_file(path: Path | str) -> MultiGraph:
    """Read and parse a GraphFile from disk."""
    return parse_graph(_read_text(path))


_MATCHING_HINT = re.compile(r"^\s*#\s*M\s*=[^\[]*\[([\d,\s]*)\]")


def matching_hint(text: str) -> list[EdgeId] | None:
    """Edge ids from a "# M = edge lines [...]" comment, as written by `transform clique-insert`."""
    for line in text.splitlines():
        found = _MATCHING_HINT.match(line)
        if found:
            return [int(x) for x in found.group(1).replace(",", " ").split()]
    return None


def read_matching_hint(path: Path | str) -> list[EdgeId] | None:
    return matching_hint(_read_text(path))
