"""Line-oriented text formats.

Every parser reports violations with the offending line number, and every
serializer round-trips through its parser. Formats:

* oriented graph / tournament: first line ``n``, then either ``matrix``
  followed by n rows of 0/1 characters (entry (i,j) = 1 means i -> j), or
  ``edges`` followed by ``u v`` lines meaning u -> v;
* labeled graph: ``vertices: <sorted labels>``, then ``i j`` edge lines
  with i < j;
* undirected graph: first line ``n``, then ``i j`` edge lines;
* k-partite tournament: header ``parts: m k``, then cross-edge lines
  ``i.a j.b`` meaning vertex a of part i -> vertex b of part j;
* binary matrix: ``n`` then n rows of 0/1 characters.
"""

from __future__ import annotations

from .digraphs import OrientedGraph, Tournament
from .forcing import KPartiteTournament
from .orderedhom import LabeledGraph
from .regularity import BinaryMatrix

__all__ = [
    "ParseError",
    "parse_oriented_graph",
    "parse_tournament",
    "serialize_oriented_graph",
    "parse_labeled_graph",
    "serialize_labeled_graph",
    "parse_undirected_graph",
    "serialize_undirected_graph",
    "parse_kpartite",
    "serialize_kpartite",
    "parse_matrix",
    "serialize_matrix",
]


class ParseError(ValueError):
    """Input violates a format or a type invariant; carries the line."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            out.append((i, stripped))
    return out


def _int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line_no, f"{what} must be an integer, got {token!r}")


def parse_oriented_graph(text: str) -> OrientedGraph:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty input")
    first_no, first = lines[0]
    n = _int(first, first_no, "vertex count")
    if n < 0:
        raise ParseError(first_no, "vertex count must be nonnegative")
    if len(lines) < 2:
        if n == 0:
            return OrientedGraph(0, [])
        raise ParseError(first_no, "missing 'matrix' or 'edges' section")
    mode_no, mode = lines[1]
    edges: list[tuple[int, int]] = []
    if mode == "matrix":
        rows = lines[2:]
        if len(rows) != n:
            raise ParseError(mode_no, f"expected {n} matrix rows, got {len(rows)}")
        for i, (line_no, row) in enumerate(rows, start=1):
            if len(row) != n or any(ch not in "01" for ch in row):
                raise ParseError(line_no, f"row must be {n} characters of 0/1")
            for j, ch in enumerate(row, start=1):
                if ch == "1":
                    if i == j:
                        raise ParseError(line_no, "nonzero diagonal entry")
                    edges.append((i, j))
    elif mode == "edges":
        for line_no, line in lines[2:]:
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(line_no, "edge line must be 'u v'")
            u = _int(parts[0], line_no, "edge endpoint")
            v = _int(parts[1], line_no, "edge endpoint")
            edges.append((u, v))
    else:
        raise ParseError(mode_no, f"expected 'matrix' or 'edges', got {mode!r}")
    try:
        return OrientedGraph(n, edges)
    except ValueError as exc:
        raise ParseError(lines[-1][0], str(exc))


def parse_tournament(text: str) -> Tournament:
    g = parse_oriented_graph(text)
    try:
        return Tournament.from_oriented(g)
    except ValueError as exc:
        raise ParseError(len(text.splitlines()), str(exc))


def serialize_oriented_graph(g: OrientedGraph, style: str = "edges") -> str:
    if style == "matrix":
        rows = [
            "".join("1" if g.has_edge(i, j) else "0" for j in g.vertices)
            for i in g.vertices
        ]
        return "\n".join([str(g.n), "matrix", *rows]) + "\n"
    if style == "edges":
        lines = [str(g.n), "edges"]
        lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown style {style!r}")


def parse_labeled_graph(text: str) -> LabeledGraph:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty input")
    first_no, first = lines[0]
    if not first.startswith("vertices:"):
        raise ParseError(first_no, "first line must be 'vertices: <labels>'")
    tokens = first[len("vertices:") :].split()
    vertices = [_int(tok, first_no, "vertex label") for tok in tokens]
    if sorted(vertices) != vertices:
        raise ParseError(first_no, "labels must be listed in increasing order")
    if len(set(vertices)) != len(vertices):
        raise ParseError(first_no, "labels must be distinct")
    edges = []
    vset = set(vertices)
    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, "edge line must be 'i j'")
        a = _int(parts[0], line_no, "edge endpoint")
        b = _int(parts[1], line_no, "edge endpoint")
        if a >= b:
            raise ParseError(line_no, "edges must be written with i < j")
        if a not in vset or b not in vset:
            raise ParseError(line_no, f"edge ({a},{b}) uses an unknown label")
        edges.append((a, b))
    return LabeledGraph(vertices, edges)


def serialize_labeled_graph(g: LabeledGraph) -> str:
    lines = ["vertices: " + " ".join(str(v) for v in g.vertices)]
    lines.extend(f"{a} {b}" for a, b in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_undirected_graph(text: str) -> LabeledGraph:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty input")
    first_no, first = lines[0]
    n = _int(first, first_no, "vertex count")
    if n < 0:
        raise ParseError(first_no, "vertex count must be nonnegative")
    edges = []
    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, "edge line must be 'i j'")
        a = _int(parts[0], line_no, "edge endpoint")
        b = _int(parts[1], line_no, "edge endpoint")
        if a == b:
            raise ParseError(line_no, "self-loop")
        if not (1 <= a <= n and 1 <= b <= n):
            raise ParseError(line_no, f"edge ({a},{b}) outside 1..{n}")
        edges.append((min(a, b), max(a, b)))
    return LabeledGraph(range(1, n + 1), edges)


def serialize_undirected_graph(g: LabeledGraph) -> str:
    if g.vertices != tuple(range(1, g.n + 1)):
        raise ValueError("undirected-graph format needs vertices 1..n")
    lines = [str(g.n)]
    lines.extend(f"{a} {b}" for a, b in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_kpartite(text: str) -> KPartiteTournament:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty input")
    first_no, first = lines[0]
    tokens = first.split()
    if len(tokens) != 3 or tokens[0] != "parts:":
        raise ParseError(first_no, "header must be 'parts: m k'")
    m = _int(tokens[1], first_no, "part size")
    k = _int(tokens[2], first_no, "part count")
    edges = []
    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, "cross-edge line must be 'i.a j.b'")
        try:
            (pi, ai), (pj, bj) = (tuple(map(int, p.split("."))) for p in parts)
        except ValueError:
            raise ParseError(line_no, "endpoints must look like 'part.index'")
        for part, idx in ((pi, ai), (pj, bj)):
            if not (1 <= part <= k and 1 <= idx <= m):
                raise ParseError(line_no, f"endpoint {part}.{idx} out of range")
        edges.append(((pi - 1) * m + ai, (pj - 1) * m + bj))
    try:
        return KPartiteTournament(k, m, edges)
    except ValueError as exc:
        raise ParseError(lines[-1][0], str(exc))


def serialize_kpartite(f: KPartiteTournament) -> str:
    lines = [f"parts: {f.m} {f.k}"]
    for u, v in sorted(f.cross_edges()):
        pu, au = f.part_of(u), (u - 1) % f.m + 1
        pv, av = f.part_of(v), (v - 1) % f.m + 1
        lines.append(f"{pu}.{au} {pv}.{av}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BinaryMatrix:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty input")
    first_no, first = lines[0]
    n = _int(first, first_no, "dimension")
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(first_no, f"expected {n} rows, got {len(rows)}")
    entries = []
    for line_no, row in rows:
        if len(row) != n or any(ch not in "01" for ch in row):
            raise ParseError(line_no, f"row must be {n} characters of 0/1")
        entries.append([int(ch) for ch in row])
    return BinaryMatrix(entries)


def serialize_matrix(a: BinaryMatrix) -> str:
    rows = ["".join(str(int(x)) for x in row) for row in a.entries]
    return "\n".join([str(a.n), *rows]) + "\n"
