"""Seeded random graphs: every edge present independently with probability a/b.

The generator is fully determined by (n, a, b, seed) and must stay bit-stable
across platforms and releases, so it uses splitmix64 rather than any system
RNG: three lines, well-known constants, trivially portable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15  # round(2^64 * (golden ratio - 1))
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one random graph draw."""

    n: int
    a: int
    b: int
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.b < 1:
            raise ValueError("probability denominator must be at least 1")
        if not (0 <= self.a <= self.b):
            raise ValueError("need 0 <= a <= b")
        if not (0 <= self.seed <= _MASK64):
            raise ValueError("seed must fit in 64 bits")

    @property
    def prob_label(self) -> str:
        return f"{self.a}/{self.b}"


def splitmix64_next(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (new_state, 64-bit output).

    All arithmetic mod 2^64. From state 0 the first output is
    0xE220A8397B1DCDAF (the published test vector).
    """
    state = (state + _GOLDEN_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return state, z ^ (z >> 31)


def gen_random_graph(spec: GenSpec) -> Graph:
    """Draw the graph for `spec`.

    Pairs are visited in row-major upper-triangle order (i from 1..n-1,
    j from i+1..n); one splitmix64 draw per pair decides the edge via
    (r mod b) < a. The order and the decision rule are part of the
    contract: they make (n, a, b, seed) identify the graph exactly.
    Modulo bias for 64-bit r against small b is below 2^-60.
    """
    n, a, b = spec.n, spec.a, spec.b
    state = spec.seed
    rows = [0] * (n + 1)
    for i in range(1, n):
        row_i = rows[i]
        for j in range(i + 1, n + 1):
            state, r = splitmix64_next(state)
            if r % b < a:
                row_i |= 1 << j
                rows[j] |= 1 << i
        rows[i] = row_i
    return Graph(n, tuple(rows))
