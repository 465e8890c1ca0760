"""0-1 integer programs for maximum clique: encoder, LP text, exact branch-and-bound.

The encoder emits one binary variable per vertex, objective sum(x_i), and one
constraint x_i + x_j <= 1 per non-edge pair (edge pairs would give the vacuous
x_i + x_j <= 2 and are dropped). The solver exploits exactly that structure:
conflict constraints become bitmasks, fixing a variable to 1 excludes its
conflict partners, and the optimistic bound is the fixed value plus whatever
is still free. Run to exhaustion it is exact; it is not a general MIP solver.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import ConsistencyError, SolveTimeout
from .graph import Graph, VertexSet, is_clique, non_edge_pairs

_DEADLINE_CHECK_MASK = 0xFFF


@dataclass(frozen=True)
class Constraint:
    """Sparse <= constraint over binary variables: sum(coef * x[var]) <= rhs."""

    terms: tuple[tuple[int, int], ...]  # (variable index, coefficient)
    rhs: int

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("constraint must have at least one term")


@dataclass(frozen=True)
class IlpModel:
    num_vars: int
    objective: tuple[int, ...]  # coefficient per variable; entry 0 unused
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("model needs at least one variable")
        if len(self.objective) != self.num_vars + 1 or self.objective[0] != 0:
            raise ValueError("objective must have entries 0..num_vars with entry 0 zero")
        for con in self.constraints:
            seen = set()
            for var, coef in con.terms:
                if not 1 <= var <= self.num_vars:
                    raise ValueError(f"variable {var} out of range")
                if var in seen:
                    raise ValueError(f"variable {var} repeated in constraint")
                seen.add(var)
                if coef <= 0:
                    raise ValueError("coefficients must be positive integers")


@dataclass
class IlpStats:
    nodes: int = 0  # branch-and-bound tree nodes expanded


@dataclass
class IlpResult:
    feasible: bool
    optimum: int | None
    assignment: tuple[int, ...] | None  # 0/1 per variable; entry 0 unused
    stats: IlpStats = field(default_factory=IlpStats, compare=False)


def encode_maxclique(g: Graph) -> IlpModel:
    """Model whose feasible points are exactly the cliques of g (as 0/1 vectors)."""
    constraints = tuple(
        Constraint(((i, 1), (j, 1)), 1) for i, j in non_edge_pairs(g)
    )
    return IlpModel(g.n, (0,) + (1,) * g.n, constraints)


def ilp_solve(m: IlpModel, deadline: float | None = None) -> IlpResult:
    """Exact maximum of the objective over feasible binary points.

    Handles models whose constraints reduce to unit-coefficient exclusions
    (everything encode_maxclique emits, and sum <= 0/1 groups generally);
    anything else raises ValueError. Branching follows a fixed rule — the
    unfixed variable hitting the most still-active constraints, lowest index
    on ties, value 1 first — so results and node counts are deterministic.
    """
    nv = m.num_vars
    conflicts, forced_zero, feasible = _normalize(m, nv)
    if not feasible:
        return IlpResult(False, None, None, IlpStats())

    obj = m.objective
    universe = (((1 << (nv + 1)) - 2)) & ~forced_zero
    uniform = all(c == 1 for c in obj[1:])

    def value(mask: int) -> int:
        if uniform:
            return mask.bit_count()
        total = 0
        while mask:
            low = mask & -mask
            total += obj[low.bit_length() - 1]
            mask ^= low
        return total

    # greedy start: scan vertices by compatibility degree, keep what fits
    order = sorted(
        _bit_indices(universe),
        key=lambda v: (-(universe & ~conflicts[v] & ~(1 << v)).bit_count(), v),
    )
    best_mask = 0
    for v in order:
        if not conflicts[v] & best_mask:
            best_mask |= 1 << v
    best_val = value(best_mask)

    stats = IlpStats()

    def expand(ones_mask: int, ones_val: int, free: int) -> None:
        nonlocal best_mask, best_val
        stats.nodes += 1
        if not stats.nodes & _DEADLINE_CHECK_MASK and deadline is not None:
            if time.perf_counter() > deadline:
                raise SolveTimeout("branch-and-bound hit deadline")
        while free:
            if ones_val + value(free) <= best_val:
                return
            v = -1
            most = -1
            scan = free
            while scan:
                low = scan & -scan
                u = low.bit_length() - 1
                hits = (conflicts[u] & free).bit_count()
                if hits > most:
                    most, v = hits, u
                scan ^= low
            bit = 1 << v
            expand(ones_mask | bit, ones_val + obj[v], free & ~conflicts[v] & ~bit)
            free &= ~bit
        if ones_val > best_val:
            best_val = ones_val
            best_mask = ones_mask

    expand(0, 0, universe)

    assignment = tuple(
        1 if (best_mask >> v) & 1 else 0 for v in range(nv + 1)
    )
    _check_feasible(m, assignment, best_val)
    return IlpResult(True, best_val, assignment, stats)


def _normalize(m: IlpModel, nv: int) -> tuple[list[int], int, bool]:
    """Turn constraints into per-variable conflict masks and forced zeros."""
    conflicts = [0] * (nv + 1)
    forced_zero = 0
    for con in m.constraints:
        if any(coef != 1 for _, coef in con.terms):
            raise ValueError("only unit coefficients are supported")
        vs = [var for var, _ in con.terms]
        if con.rhs < 0:
            return conflicts, forced_zero, False
        if con.rhs == 0:
            for v in vs:
                forced_zero |= 1 << v
        elif con.rhs == 1 and len(vs) >= 2:
            for a in range(len(vs)):
                for b in range(a + 1, len(vs)):
                    conflicts[vs[a]] |= 1 << vs[b]
                    conflicts[vs[b]] |= 1 << vs[a]
        elif con.rhs < len(vs):
            raise ValueError("general cardinality constraints are not supported")
        # rhs >= len(vs): vacuous for binaries
    return conflicts, forced_zero, True


def _check_feasible(m: IlpModel, assignment: tuple[int, ...], claimed: int) -> None:
    for con in m.constraints:
        if sum(coef * assignment[var] for var, coef in con.terms) > con.rhs:
            raise ConsistencyError(f"assignment violates {con}")
    total = sum(m.objective[v] * assignment[v] for v in range(1, m.num_vars + 1))
    if total != claimed:
        raise ConsistencyError(f"objective mismatch: {total} != {claimed}")


def _bit_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def write_lp(m: IlpModel) -> str:
    """lp_solve-dialect text: `max:` objective, numbered <= rows, `bin` footer."""

    def term(var: int, coef: int) -> str:
        return f"x{var}" if coef == 1 else f"{coef} x{var}"

    lines = ["max: " + " + ".join(term(v, m.objective[v]) for v in range(1, m.num_vars + 1)) + ";"]
    for idx, con in enumerate(m.constraints, start=1):
        body = " + ".join(term(var, coef) for var, coef in con.terms)
        lines.append(f"c{idx}: {body} <= {con.rhs};")
    lines.append("bin " + ",".join(f"x{v}" for v in range(1, m.num_vars + 1)) + ";")
    return "\n".join(lines) + "\n"


def decode_ilp(res: IlpResult, g: Graph) -> VertexSet:
    """Vertex set behind a clique-model optimum; re-validated before return."""
    if not res.feasible or res.assignment is None:
        raise ValueError("cannot decode an infeasible result")
    chosen = tuple(v for v in range(1, g.n + 1) if res.assignment[v])
    if len(chosen) != res.optimum:
        raise ConsistencyError(f"assignment selects {len(chosen)} vertices, optimum says {res.optimum}")
    if not is_clique(g, chosen):
        raise ConsistencyError(f"decoded set {chosen} is not a clique")
    return chosen
