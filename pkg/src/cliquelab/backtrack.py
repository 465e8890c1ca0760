"""Depth-first clique search: grow the current clique by higher-indexed vertices.

The search keeps the current clique C in increasing vertex order and extends
it only with vertices above max(C) that are adjacent to all of C, backtracking
when no extension exists. It therefore visits each clique of the graph exactly
once, in lexicographic order of its sorted vertex tuple — that count is what
`nodes_visited` reports, and tests hold it against an independent clique
enumerator. No reordering or pruning heuristics are applied by default; the
point of this solver is to be the plain baseline the other backends are
measured against.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import SolveTimeout
from .graph import CliqueInstance, Graph, VertexSet

_DEADLINE_CHECK_MASK = 0x3FF  # check wall clock every 1024 visited nodes


@dataclass
class SearchStats:
    nodes_visited: int = 0  # partial cliques explored (the empty clique not counted)
    max_depth_reached: int = 0


@dataclass
class SolveOutcome:
    found: bool
    witness: VertexSet | None
    stats: SearchStats
    elapsed: float = field(compare=False, default=0.0)


def backtrack_decide(
    inst: CliqueInstance, prune: bool = False, deadline: float | None = None
) -> SolveOutcome:
    """Decide whether a clique of size k exists; witness is the first one found.

    With prune=True, subtrees that cannot reach size k because too few
    higher-indexed vertices remain (|C| + (n - max(C)) < k) are skipped.
    That shortcut changes nodes_visited, so it stays off by default.
    """
    g, k = inst.graph, inst.k
    n, adj = g.n, g.adj
    start = time.perf_counter()
    stats = SearchStats()

    clique: list[int] = []
    # stack[d] = candidate vertices not yet tried as clique[d]; all are
    # above max(clique[:d]) and adjacent to every vertex of clique[:d]
    stack = [((1 << (n + 1)) - 2)]
    while stack:
        cands = stack[-1]
        if not cands:
            stack.pop()
            if clique:
                clique.pop()
            continue
        v = (cands & -cands).bit_length() - 1
        rest = cands & (cands - 1)
        if prune and len(clique) + 1 + (n - v) < k:
            # later candidates are even higher, so the whole level is hopeless
            stack[-1] = 0
            continue
        stack[-1] = rest
        clique.append(v)
        stats.nodes_visited += 1
        if len(clique) > stats.max_depth_reached:
            stats.max_depth_reached = len(clique)
        if len(clique) == k:
            return SolveOutcome(True, tuple(clique), stats, time.perf_counter() - start)
        stack.append(rest & adj[v])
        if not stats.nodes_visited & _DEADLINE_CHECK_MASK and deadline is not None:
            if time.perf_counter() > deadline:
                raise SolveTimeout(f"backtrack k={k} hit deadline")
    return SolveOutcome(False, None, stats, time.perf_counter() - start)


def backtrack_max(g: Graph, deadline: float | None = None) -> SolveOutcome:
    """Exhaust the same search without the size cutoff, keeping the best clique."""
    n, adj = g.n, g.adj
    start = time.perf_counter()
    stats = SearchStats()

    best: tuple[int, ...] = ()
    clique: list[int] = []
    stack = [((1 << (n + 1)) - 2)]
    while stack:
        cands = stack[-1]
        if not cands:
            stack.pop()
            if clique:
                clique.pop()
            continue
        v = (cands & -cands).bit_length() - 1
        rest = cands & (cands - 1)
        stack[-1] = rest
        clique.append(v)
        stats.nodes_visited += 1
        if len(clique) > stats.max_depth_reached:
            stats.max_depth_reached = len(clique)
        if len(clique) > len(best):
            best = tuple(clique)
        stack.append(rest & adj[v])
        if not stats.nodes_visited & _DEADLINE_CHECK_MASK and deadline is not None:
            if time.perf_counter() > deadline:
                raise SolveTimeout("maximum-clique backtrack hit deadline")
    return SolveOutcome(True, best, stats, time.perf_counter() - start)
