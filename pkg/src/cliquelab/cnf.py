"""CNF encoding of k-clique decisions over selection variables and unary counters.

One selection variable per vertex, plus a chain of unary counters c(i, j)
reading "among the first i vertices, exactly j are selected". The emitted
clause groups, in order:

  1. conflict clauses (-xi | -xj) for every non-edge pair, lexicographic;
  2. counter base: level 0 holds value 0;
  3. carry-over equivalences for unselected vertices: c(i,.) = c(i-1,.);
  4. increment equivalences for selected vertices: c(i,j) = c(i-1,j-1);
  5. overflow guards (-xi | -c(i-1,k)): a vertex cannot be selected once the
     count already reached k;
  6. zero guards (-xi | -c(i,0)): selecting a vertex rules out count zero;
  7. goal unit (c(n,k)).

Groups 2-6 make every counter level hold exactly one value in any model, so
pairwise exactly-one clauses (quadratic in k) are never emitted; the property
is enforced as a tested invariant instead. The emission order is fixed so
encodings are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConsistencyError, ParseError
from .graph import CliqueInstance, Graph, VertexSet, is_clique, non_edge_pairs

# A literal is a signed nonzero int: +v for variable v true, -v for false.
Literal = int
Clause = tuple[Literal, ...]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        for idx, clause in enumerate(self.clauses):
            if not clause:
                raise ValueError(f"clause {idx} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range in clause {idx}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class VarLayout:
    """DIMACS numbering for an (n, k) instance.

    Selection variables are x(i) = i; counter variables follow in one block,
    c(i, j) = n + i*(k+1) + j + 1 for i in 0..n, j in 0..k. The two ranges
    tile 1..num_vars exactly, so num_vars = n + (n+1)*(k+1).
    """

    n: int
    k: int

    def x(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"vertex {i} out of range 1..{self.n}")
        return i

    def c(self, i: int, j: int) -> int:
        if not (0 <= i <= self.n and 0 <= j <= self.k):
            raise ValueError(f"counter index ({i},{j}) out of range")
        return self.n + i * (self.k + 1) + j + 1

    @property
    def num_vars(self) -> int:
        return self.n + (self.n + 1) * (self.k + 1)


def encode_kclique(inst: CliqueInstance) -> tuple[CnfFormula, VarLayout]:
    """Build the decision formula; satisfiable iff the graph has a k-clique."""
    g, k = inst.graph, inst.k
    n = g.n
    lay = VarLayout(n, k)
    c = lay.c

    clauses: list[Clause] = []
    for i, j in non_edge_pairs(g):
        clauses.append((-i, -j))
    clauses.append((c(0, 0),))
    for j in range(1, k + 1):
        clauses.append((-c(0, j),))
    for i in range(1, n + 1):
        for j in range(k + 1):
            clauses.append((i, -c(i, j), c(i - 1, j)))
            clauses.append((i, c(i, j), -c(i - 1, j)))
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            clauses.append((-i, -c(i, j), c(i - 1, j - 1)))
            clauses.append((-i, c(i, j), -c(i - 1, j - 1)))
    for i in range(1, n + 1):
        clauses.append((-i, -c(i - 1, k)))
    for i in range(1, n + 1):
        clauses.append((-i, -c(i, 0)))
    clauses.append((c(n, k),))
    return CnfFormula(lay.num_vars, tuple(clauses)), lay


def decode_model(
    model: Sequence[bool], lay: VarLayout, graph: Graph | None = None
) -> VertexSet:
    """Selected vertices of a satisfying model (model is indexed by variable).

    Raises ConsistencyError if the set has the wrong size or, when the graph
    is supplied, is not a clique — either means the encoder is broken, not
    the instance.
    """
    chosen = tuple(i for i in range(1, lay.n + 1) if model[lay.x(i)])
    if len(chosen) != lay.k:
        raise ConsistencyError(
            f"model selects {len(chosen)} vertices, expected {lay.k}"
        )
    if graph is not None and not is_clique(graph, chosen):
        raise ConsistencyError(f"decoded set {chosen} is not a clique")
    return chosen


def write_dimacs(f: CnfFormula) -> str:
    """Standard DIMACS CNF: header line, then one zero-terminated clause per line."""
    lines = [f"p cnf {f.num_vars} {f.num_clauses}"]
    for clause in f.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF text; inverse of write_dimacs."""
    num_vars = num_clauses = None
    clauses: list[Clause] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] == "p":
            if num_vars is not None:
                raise ParseError("duplicate header", lineno)
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError("header must be 'p cnf <vars> <clauses>'", lineno)
            try:
                num_vars, num_clauses = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            continue
        if num_vars is None:
            raise ParseError("clause data before 'p cnf' header", lineno)
        for tok in fields:
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                clauses.append(tuple(current))
                current.clear()
            else:
                if abs(lit) > num_vars:
                    raise ParseError(f"literal {lit} beyond declared {num_vars} variables", lineno)
                current.append(lit)
    if num_vars is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("final clause not terminated by 0")
    if num_clauses is not None and num_clauses != len(clauses):
        raise ParseError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))
