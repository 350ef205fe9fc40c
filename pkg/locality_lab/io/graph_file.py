"""
Plain-text graph files.

    # locality-lab graph, 0-based identifiers
    n 5 delta 2
    0 1
    1 2

The header line is `n <count> delta <bound>`; every further line is one edge
`u v` with u < v, in lexicographic order. Lines starting with `#` are
comments. Readers reject every deviation.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Tuple

from locality_lab.errors import GraphFormatError
from locality_lab.graphs.core import LabeledGraph

COMMENT = "# locality-lab graph, 0-based identifiers"


def format_graph(g: LabeledGraph) -> str:
    lines = [COMMENT, f"n {g.n} delta {g.delta}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _parse_header(line: str, lineno: int) -> Tuple[int, int]:
    parts = line.split()
    if len(parts) != 4 or parts[0] != "n" or parts[2] != "delta":
        raise GraphFormatError(f"line {lineno}: expected 'n <count> delta <bound>', got {line!r}")
    try:
        n, delta = int(parts[1]), int(parts[3])
    except ValueError:
        raise GraphFormatError(f"line {lineno}: non-integer header value in {line!r}")
    if n < 0 or delta < 0:
        raise GraphFormatError(f"line {lineno}: negative count or bound")
    return n, delta


def parse_graph(text: str) -> LabeledGraph:
    """
    Parse graph-file text.

    Raises:
        GraphFormatError: On a missing header, malformed or out-of-range edge,
            unsorted or duplicate edges, or a degree above the bound
    """
    header = None
    edges: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = _parse_header(line, lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer edge {line!r}")
        n = header[0]
        if not (0 <= u < v < n):
            raise GraphFormatError(f"line {lineno}: edge ({u}, {v}) needs 0 <= u < v < {n}")
        if edges and (u, v) <= edges[-1]:
            raise GraphFormatError(f"line {lineno}: edges not strictly sorted at ({u}, {v})")
        edges.append((u, v))
    if header is None:
        raise GraphFormatError("missing 'n <count> delta <bound>' header")
    n, delta = header
    try:
        return LabeledGraph.from_edges(n, edges, delta=delta)
    except ValueError as e:
        raise GraphFormatError(str(e)) from e


def read_graph(path: str | Path) -> LabeledGraph:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Graph file not found: {path}")
    return parse_graph(path.read_text(encoding="utf-8"))


def write_graph(g: LabeledGraph, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_graph(g), encoding="utf-8")
    return path
