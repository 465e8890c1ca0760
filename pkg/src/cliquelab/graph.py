"""Undirected simple graphs on vertices 1..n, with bit-row adjacency and text I/O."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParseError

# A set of vertices: strictly increasing tuple of indices in 1..n.
VertexSet = tuple[int, ...]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbour bitmask of v.

    Vertices are numbered 1..n (row 0 and bit 0 stay unused) so graph files,
    CNF variables and ILP variables all share one indexing. Rows are plain
    ints, which makes candidate filtering in the solvers a single AND.
    Instances are immutable and safe to share across workers.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph must have at least one vertex")
        if len(self.adj) != self.n + 1 or self.adj[0] != 0:
            raise ValueError("adjacency must have rows 0..n with row 0 empty")
        limit = 1 << (self.n + 1)
        for v in range(1, self.n + 1):
            row = self.adj[v]
            if row & 1 or row >= limit:
                raise ValueError(f"row {v} references vertices outside 1..{self.n}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop on vertex {v}")
            for u in _bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * (n + 1)
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge ({i},{j}) out of range 1..{n}")
            if i == j:
                raise ValueError(f"self-loop ({i},{i}) not allowed")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * (n + 1))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = ((1 << (n + 1)) - 1) & ~1
        return cls(n, (0,) + tuple(full & ~(1 << v) for v in range(1, n + 1)))

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, i: int, j: int) -> bool:
        self._check_vertex(i)
        self._check_vertex(j)
        return bool((self.adj[i] >> j) & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        self._check_vertex(v)
        return _bits(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges (i, j) with i < j, in lexicographic order."""
        for i in self.vertices():
            for j in _bits(self.adj[i] >> i << i):  # bits above i; bit i is never set
                yield (i, j)

    @property
    def num_edges(self) -> int:
        return sum(self.adj[v].bit_count() for v in self.vertices()) // 2

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise ValueError(f"vertex {v} out of range 1..{self.n}")


@dataclass(frozen=True)
class CliqueInstance:
    """A graph together with the clique size k being decided, 1 <= k <= n."""

    graph: Graph
    k: int

    def __post_init__(self) -> None:
        if not (1 <= self.k <= self.graph.n):
            raise ValueError(f"k={self.k} out of range 1..{self.graph.n}")


def as_vertex_set(vertices: Iterable[int], g: Graph) -> VertexSet:
    """Normalize to a strictly increasing tuple, checking range and distinctness."""
    vs = tuple(sorted(vertices))
    for v in vs:
        g._check_vertex(v)
    if any(vs[i] == vs[i + 1] for i in range(len(vs) - 1)):
        raise ValueError("duplicate vertex in set")
    return vs


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff every pair in the set is an edge; size 0 or 1 is always a clique."""
    vs = as_vertex_set(vertices, g)
    mask = 0
    for v in vs:
        mask |= 1 << v
    for v in vs:
        if (mask & ~(1 << v)) & ~g.adj[v]:
            return False
    return True


def non_edge_pairs(g: Graph) -> list[tuple[int, int]]:
    """All pairs (i, j), i < j, with no edge between them, in lexicographic order."""
    out = []
    for i in g.vertices():
        row = g.adj[i]
        for j in range(i + 1, g.n + 1):
            if not (row >> j) & 1:
                out.append((i, j))
    return out


# --- text formats -----------------------------------------------------------
#
# Edge format:   comment lines `c ...`, one header `p edge <n> <m>`, then
#                `e <i> <j>` lines. Duplicate and reversed edges are tolerated
#                and deduplicated.
# Matrix format: first line `<n>`, then n rows of n characters from {0,1};
#                must be symmetric with a zero diagonal.


def read_graph(text: str) -> Graph:
    """Parse either accepted format, deciding by the first significant line."""
    lines = text.splitlines()
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped[0] in ("c", "p", "e"):
            return _read_edge_format(lines)
        return _read_matrix_format(lines, lineno)
    raise ParseError("empty graph file")


def _read_edge_format(lines: list[str]) -> Graph:
    n = None
    rows: list[int] = []
    for lineno, line in enumerate(lines, start=1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(fields) != 4 or fields[1] != "edge":
                raise ParseError("header must be 'p edge <n> <m>'", lineno)
            try:
                n = int(fields[2])
                int(fields[3])
            except ValueError:
                raise ParseError("header must be 'p edge <n> <m>'", lineno) from None
            if n < 1:
                raise ParseError("vertex count must be at least 1", lineno)
            rows = [0] * (n + 1)
        elif fields[0] == "e":
            if n is None:
                raise ParseError("edge line before 'p edge' header", lineno)
            if len(fields) != 3:
                raise ParseError("edge line must be 'e <i> <j>'", lineno)
            try:
                i, j = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("edge endpoints must be integers", lineno) from None
            if not (1 <= i <= n and 1 <= j <= n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            if i == j:
                raise ParseError(f"self-loop on vertex {i}", lineno)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        else:
            raise ParseError(f"unrecognized line type {fields[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge' header")
    return Graph(n, tuple(rows))


def _read_matrix_format(lines: list[str], header_lineno: int) -> Graph:
    header = lines[header_lineno - 1].strip()
    try:
        n = int(header)
    except ValueError:
        raise ParseError(f"expected vertex count, got {header!r}", header_lineno) from None
    if n < 1:
        raise ParseError("vertex count must be at least 1", header_lineno)

    rows = [0] * (n + 1)
    row_index = 0
    for lineno in range(header_lineno + 1, len(lines) + 1):
        stripped = lines[lineno - 1].strip()
        if not stripped:
            continue
        row_index += 1
        if row_index > n:
            raise ParseError(f"expected exactly {n} matrix rows", lineno)
        if len(stripped) != n or set(stripped) - {"0", "1"}:
            raise ParseError(f"row must be {n} characters of 0/1", lineno)
        i = row_index
        for j, ch in enumerate(stripped, start=1):
            if ch == "1":
                if i == j:
                    raise ParseError("diagonal must be zero", lineno)
                rows[i] |= 1 << j
        # rows already read must mirror this one
        for j in range(1, i):
            if (rows[j] >> i) & 1 != (rows[i] >> j) & 1:
                raise ParseError(f"matrix asymmetric at ({i},{j})", lineno)
    if row_index != n:
        raise ParseError(f"expected {n} matrix rows, got {row_index}")
    return Graph(n, tuple(rows))


def write_graph(g: Graph, fmt: str = "edge") -> str:
    """Serialize; read_graph(write_graph(g)) == g for both formats."""
    if fmt == "edge":
        out = [f"p edge {g.n} {g.num_edges}"]
        out.extend(f"e {i} {j}" for i, j in g.edges())
        return "\n".join(out) + "\n"
    if fmt == "matrix":
        out = [str(g.n)]
        for i in g.vertices():
            out.append("".join("1" if (g.adj[i] >> j) & 1 else "0" for j in range(1, g.n + 1)))
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r} (expected 'edge' or 'matrix')")
