"""Ground-truth brute force for small instances and combinatorial size estimates."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import ClassVar

from .graph import CliqueInstance, Graph

SECONDS_PER_YEAR = 365.25 * 24 * 3600

_BRUTE_FORCE_BUDGET = 10**7
_MAX_BRUTE_N = 20
_MAX_EXACT_BINOMIAL_N = 200


class BudgetExceeded(Exception):
    """The requested computation is outside the deliberately naive budget."""


@dataclass(frozen=True, order=True)
class LogNumber:
    """A nonnegative quantity stored as its natural log.

    -inf encodes exact zero, which then absorbs multiplication for free.
    Useful where expected counts overflow fixed-width floats.
    """

    ln: float

    ZERO: ClassVar["LogNumber"]

    @classmethod
    def from_value(cls, x: float) -> "LogNumber":
        if x < 0:
            raise ValueError("LogNumber holds nonnegative quantities")
        return cls(math.log(x)) if x else cls.ZERO

    def __mul__(self, other: "LogNumber") -> "LogNumber":
        return LogNumber(self.ln + other.ln)

    def __truediv__(self, other: "LogNumber") -> "LogNumber":
        if other.is_zero:
            raise ZeroDivisionError("LogNumber division by zero")
        if self.is_zero:
            return LogNumber.ZERO
        return LogNumber(self.ln - other.ln)

    @property
    def is_zero(self) -> bool:
        return self.ln == float("-inf")

    @property
    def log10(self) -> float:
        return self.ln / math.log(10)

    def to_float(self) -> float:
        """May overflow to math.inf; the log form itself never does."""
        return math.exp(self.ln)

    def scientific(self, digits: int = 3) -> str:
        if self.is_zero:
            return "0"
        exponent = math.floor(self.log10)
        mantissa = 10.0 ** (self.log10 - exponent)
        return f"{mantissa:.{digits}f}e{exponent:+03d}"


LogNumber.ZERO = LogNumber(float("-inf"))


def binomial_exact(n: int, k: int) -> int:
    """C(n, k) as an exact integer via the Pascal recurrence; n capped at 200."""
    if n < 0 or k < 0:
        raise ValueError("binomial needs n, k >= 0")
    if n > _MAX_EXACT_BINOMIAL_N:
        raise BudgetExceeded(f"exact binomial capped at n <= {_MAX_EXACT_BINOMIAL_N}")
    if k > n:
        return 0
    k = min(k, n - k)
    row = [1] + [0] * k  # becomes row m of Pascal's triangle, entries 0..k
    for m in range(1, n + 1):
        for j in range(min(m, k), 0, -1):
            row[j] += row[j - 1]
    return row[k]


def binomial_log(n: int, k: int) -> LogNumber:
    """C(n, k) as a LogNumber via log-gamma sums; works far beyond the exact cap."""
    if n < 0 or k < 0:
        raise ValueError("binomial needs n, k >= 0")
    if k > n:
        return LogNumber.ZERO
    return LogNumber(math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1))


def brute_force_decide(inst: CliqueInstance) -> bool:
    """Check every k-subset in lexicographic order; the naive baseline.

    Refuses instances with C(n, k) beyond 10^7 subsets rather than silently
    truncating.
    """
    g, k = inst.graph, inst.k
    if math.comb(g.n, k) > _BRUTE_FORCE_BUDGET:
        raise BudgetExceeded(f"C({g.n},{k}) subsets exceed the 10^7 enumeration budget")
    adj = g.adj
    for combo in itertools.combinations(range(1, g.n + 1), k):
        mask = 0
        for v in combo:
            if mask & ~adj[v]:
                break
            mask |= 1 << v
        else:
            return True
    return False


def max_clique_brute(g: Graph) -> int:
    """Exact clique number by descending-k brute-force decisions; n <= 20 only."""
    if g.n > _MAX_BRUTE_N:
        raise BudgetExceeded(f"brute-force clique number capped at n <= {_MAX_BRUTE_N}")
    for k in range(g.n, 1, -1):
        if brute_force_decide(CliqueInstance(g, k)):
            return k
    return 1


def expected_clique_count(n: int, k: int, a: int, b: int) -> LogNumber:
    """First-moment estimate E[N_k] = C(n,k) * (a/b)^(k(k-1)/2) for G(n, a/b).

    Computed in log space: for n in the hundreds the binomial and the
    probability factor each overflow/underflow floats while their product
    is moderate.
    """
    if not (0 < a <= b):
        raise ValueError("need 0 < a <= b")
    c = binomial_log(n, k)
    if c.is_zero:
        return LogNumber.ZERO
    pairs = k * (k - 1) // 2
    return LogNumber(c.ln + pairs * (math.log(a) - math.log(b)))


def naive_cost_estimate(n: int, k: int, steps_per_second: float) -> float:
    """Seconds to enumerate all C(n, k) subsets at the given step rate."""
    if steps_per_second <= 0:
        raise ValueError("steps_per_second must be positive")
    return (binomial_log(n, k) / LogNumber.from_value(steps_per_second)).to_float()
