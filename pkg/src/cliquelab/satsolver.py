"""Embedded CNF satisfiability engine plus an exhaustive model enumerator.

The engine is conflict-driven clause learning over watched literals (first-UIP
learning with local clause minimization, activity-ordered branching with
phase saving, Luby restarts, periodic learnt-clause reduction). Everything is
deterministic: ties in branching always fall to the lowest variable index, so
the same formula yields the same status, model and statistics on every run.

`enumerate_models` deliberately shares no code with the engine — it is a plain
DPLL sweep used as the independent oracle in tests of both the engine and the
clique encoding.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from heapq import heappop, heappush

from .cnf import CnfFormula
from .errors import ConsistencyError, SolveTimeout

# A model is indexed by variable number; entry 0 is an unused placeholder.
Model = tuple[bool, ...]


@dataclass
class SatStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0


@dataclass
class SatResult:
    satisfiable: bool
    model: Model | None
    stats: SatStats = field(default_factory=SatStats, compare=False)


def sat_solve(f: CnfFormula, deadline: float | None = None) -> SatResult:
    """Decide satisfiability; any returned model is re-verified against f first."""
    return solve_clauses(f.num_vars, f.clauses, deadline=deadline)


def solve_clauses(num_vars, clauses, deadline: float | None = None) -> SatResult:
    """Lower-level entry taking raw literal lists; an empty clause means UNSAT."""
    clauses = list(clauses)
    engine = _Cdcl(num_vars, clauses, deadline)
    result = engine.solve()
    if result.satisfiable:
        model = result.model
        for clause in clauses:
            if not any(model[abs(l)] == (l > 0) for l in clause):
                raise ConsistencyError(f"model does not satisfy clause {clause}")
    return result


class _Cdcl:
    _VAR_DECAY = 0.95
    _RESTART_BASE = 128
    _RESCALE_LIMIT = 1e100

    def __init__(self, num_vars, clauses, deadline):
        nv = num_vars
        self.nv = nv
        self.deadline = deadline
        self.stats = SatStats()
        self.litval = [0] * (2 * nv + 1)  # index lit+nv: 1 true, -1 false
        self.level = [0] * (nv + 1)
        self.reason: list[list[int] | None] = [None] * (nv + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.watches: list[list[list[int]]] = [[] for _ in range(2 * nv + 1)]
        self.activity = [0.0] * (nv + 1)
        self.var_inc = 1.0
        self.phase = [False] * (nv + 1)
        self.order = [(-0.0, v) for v in range(1, nv + 1)]  # already a valid heap
        self.seen = bytearray(nv + 1)
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.learnt_act: dict[int, float] = {}
        self.cla_inc = 1.0
        self.unsat = False

        for clause in clauses:
            lits = []
            for lit in clause:
                if lit not in lits:
                    lits.append(lit)
            if any(-lit in lits for lit in lits):
                continue  # tautology, always satisfied
            if not lits:
                self.unsat = True
                return
            if len(lits) == 1:
                if not self._enqueue(lits[0], None):
                    self.unsat = True
                    return
            else:
                self.clauses.append(lits)
                self._attach(lits)

    # --- basic operations ---------------------------------------------------

    def _attach(self, cl: list[int]) -> None:
        nv = self.nv
        self.watches[cl[0] + nv].append(cl)
        self.watches[cl[1] + nv].append(cl)

    def _enqueue(self, lit: int, reason: list[int] | None) -> bool:
        nv = self.nv
        val = self.litval[lit + nv]
        if val:
            return val == 1
        self.litval[lit + nv] = 1
        self.litval[-lit + nv] = -1
        v = abs(lit)
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)
        return True

    def _bump_var(self, v: int) -> None:
        act = self.activity[v] + self.var_inc
        self.activity[v] = act
        if act > self._RESCALE_LIMIT:
            self._rescale()
        else:
            heappush(self.order, (-act, v))

    def _rescale(self) -> None:
        scale = 1.0 / self._RESCALE_LIMIT
        for v in range(1, self.nv + 1):
            self.activity[v] *= scale
        self.var_inc *= scale
        nv = self.nv
        self.order = [(-self.activity[v], v) for v in range(1, nv + 1) if not self.litval[v + nv]]
        self.order.sort()

    def _propagate(self) -> list[int] | None:
        """Unit propagation; returns the conflicting clause, if any."""
        nv = self.nv
        litval = self.litval
        watches = self.watches
        trail = self.trail
        level = self.level
        reason = self.reason
        forced = 0
        conflict = None
        dl = len(self.trail_lim)
        while self.qhead < len(trail):
            neg = -trail[self.qhead]
            self.qhead += 1
            wl = watches[neg + nv]
            if not wl:
                continue
            keep = []
            for ci, cl in enumerate(wl):
                if cl[0] == neg:
                    cl[0] = cl[1]
                    cl[1] = neg
                first = cl[0]
                fval = litval[first + nv]
                if fval == 1:
                    keep.append(cl)
                    continue
                for t in range(2, len(cl)):
                    lt = cl[t]
                    if litval[lt + nv] != -1:
                        cl[1] = lt
                        cl[t] = neg
                        watches[lt + nv].append(cl)
                        break
                else:
                    keep.append(cl)
                    if fval == -1:
                        keep.extend(wl[ci + 1 :])
                        conflict = cl
                        break
                    litval[first + nv] = 1
                    litval[-first + nv] = -1
                    v = first if first > 0 else -first
                    level[v] = dl
                    reason[v] = cl
                    trail.append(first)
                    forced += 1
            watches[neg + nv] = keep
            if conflict is not None:
                break
        self.stats.propagations += forced
        return conflict

    # --- conflict analysis ----------------------------------------------------

    def _analyze(self, conflict: list[int]) -> tuple[list[int], int]:
        """First-UIP learning; returns (learned clause, backjump level)."""
        seen = self.seen
        level = self.level
        trail = self.trail
        dl = len(self.trail_lim)
        learned = [0]  # slot 0 takes the asserting literal
        path = 0
        p = 0
        idx = len(trail) - 1
        cl = conflict
        cleanup = []
        while True:
            if id(cl) in self.learnt_act:
                self._bump_clause(cl)
            for q in cl if p == 0 else cl[1:]:
                v = q if q > 0 else -q
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    cleanup.append(v)
                    self._bump_var(v)
                    if level[v] == dl:
                        path += 1
                    else:
                        learned.append(q)
            while not seen[abs(trail[idx])]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            path -= 1
            if not path:
                break
            cl = self.reason[abs(p)]
        learned[0] = -p

        # drop literals implied by the rest of the clause (local minimization)
        if len(learned) > 2:
            kept = [learned[0]]
            for q in learned[1:]:
                r = self.reason[abs(q)]
                if r is None or any(
                    not seen[abs(x)] and level[abs(x)] > 0 for x in r[1:]
                ):
                    kept.append(q)
            learned = kept

        for v in cleanup:
            seen[v] = 0

        if len(learned) == 1:
            return learned, 0
        # watch a literal from the backjump level in slot 1
        best = 1
        for t in range(2, len(learned)):
            if level[abs(learned[t])] > level[abs(learned[best])]:
                best = t
        learned[1], learned[best] = learned[best], learned[1]
        return learned, level[abs(learned[1])]

    def _bump_clause(self, cl: list[int]) -> None:
        key = id(cl)
        act = self.learnt_act[key] + self.cla_inc
        self.learnt_act[key] = act
        if act > self._RESCALE_LIMIT:
            scale = 1.0 / self._RESCALE_LIMIT
            for k in self.learnt_act:
                self.learnt_act[k] *= scale
            self.cla_inc *= scale

    def _backtrack(self, target: int) -> None:
        lim = self.trail_lim[target]
        nv = self.nv
        litval = self.litval
        activity = self.activity
        order = self.order
        for i in range(len(self.trail) - 1, lim - 1, -1):
            lit = self.trail[i]
            v = abs(lit)
            self.phase[v] = lit > 0
            litval[lit + nv] = 0
            litval[-lit + nv] = 0
            self.reason[v] = None
            heappush(order, (-activity[v], v))
        del self.trail[lim:]
        del self.trail_lim[target:]
        self.qhead = lim

    def _reduce_learnts(self) -> None:
        """Drop the less active half of the learnt clauses; keep short and locked ones."""
        learnts = self.learnts
        act = self.learnt_act
        ranked = sorted(
            (cl for cl in learnts if len(cl) > 2 and not self._locked(cl)),
            key=lambda cl: act[id(cl)],
        )
        drop = {id(cl) for cl in ranked[: len(ranked) // 2]}
        if not drop:
            return
        self.learnts = [cl for cl in learnts if id(cl) not in drop]
        self.learnt_act = {id(cl): act[id(cl)] for cl in self.learnts}
        nv = self.nv
        self.watches = [[] for _ in range(2 * nv + 1)]
        for cl in self.clauses:
            self._attach(cl)
        for cl in self.learnts:
            self._attach(cl)

    def _locked(self, cl: list[int]) -> bool:
        return self.reason[abs(cl[0])] is cl

    def _decide(self) -> int | None:
        nv = self.nv
        litval = self.litval
        activity = self.activity
        order = self.order
        while order:
            negact, v = heappop(order)
            if not litval[v + nv] and -negact == activity[v]:
                return v
        return None

    # --- main loop --------------------------------------------------------------

    def solve(self) -> SatResult:
        if self.unsat:
            return SatResult(False, None, self.stats)
        if self._propagate() is not None:
            return SatResult(False, None, self.stats)

        max_learnts = max(2000.0, len(self.clauses) / 3)
        restart_round = 1
        budget = self._RESTART_BASE * _luby(restart_round)
        while True:
            conflict = self._propagate()
            if conflict is not None:
                self.stats.conflicts += 1
                if not self.trail_lim:
                    return SatResult(False, None, self.stats)
                learned, back = self._analyze(conflict)
                self._backtrack(back)
                if len(learned) > 1:
                    self.learnts.append(learned)
                    self.learnt_act[id(learned)] = self.cla_inc
                    self._attach(learned)
                    self._enqueue(learned[0], learned)
                else:
                    self._enqueue(learned[0], None)
                self.var_inc /= self._VAR_DECAY
                self.cla_inc /= 0.999
                budget -= 1
                if not self.stats.conflicts & 127:
                    self._check_deadline()
                continue
            if budget <= 0:
                if self.trail_lim:
                    self._backtrack(0)
                if len(self.learnts) > max_learnts:
                    self._reduce_learnts()
                    max_learnts *= 1.3
                restart_round += 1
                budget = self._RESTART_BASE * _luby(restart_round)
                continue
            v = self._decide()
            if v is None:
                litval = self.litval
                model = tuple(
                    litval[u + self.nv] == 1 for u in range(0, self.nv + 1)
                )
                return SatResult(True, model, self.stats)
            self.stats.decisions += 1
            if not self.stats.decisions & 1023:
                self._check_deadline()
            self.trail_lim.append(len(self.trail))
            self._enqueue(v if self.phase[v] else -v, None)

    def _check_deadline(self) -> None:
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise SolveTimeout("SAT engine hit deadline")


def _luby(i: int) -> int:
    """The Luby restart sequence 1,1,2,1,1,2,4,... (i is 1-based)."""
    x = i - 1
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x %= size
    return 1 << seq


def enumerate_models(f: CnfFormula, var_limit: int = 24) -> list[Model]:
    """All satisfying total assignments, found by an exhaustive DPLL sweep.

    Refuses formulas with more than var_limit variables — the output itself
    can be exponential — callers that know better pass a larger limit.
    Models come out in lexicographic order of the assignment vector with
    False < True. Independent of the CDCL engine by design.
    """
    nv = f.num_vars
    if nv > var_limit:
        raise ValueError(f"{nv} variables exceed the enumeration limit {var_limit}")
    clauses = [tuple(c) for c in f.clauses]
    sizes = [len(c) for c in clauses]
    occ_pos: list[list[int]] = [[] for _ in range(nv + 1)]
    occ_neg: list[list[int]] = [[] for _ in range(nv + 1)]
    for ci, clause in enumerate(clauses):
        for lit in clause:
            (occ_pos if lit > 0 else occ_neg)[abs(lit)].append(ci)

    models: list[Model] = []

    def propagate(assign, false_cnt, satisfied, queue) -> bool:
        while queue:
            lit = queue.pop()
            v = abs(lit)
            for ci in occ_pos[v] if lit > 0 else occ_neg[v]:
                satisfied[ci] = True
            for ci in occ_neg[v] if lit > 0 else occ_pos[v]:
                if satisfied[ci]:
                    continue
                false_cnt[ci] += 1
                left = sizes[ci] - false_cnt[ci]
                if left == 0:
                    return False
                if left == 1:
                    for u in clauses[ci]:
                        uv = abs(u)
                        if not assign[uv]:
                            assign[uv] = 1 if u > 0 else -1
                            queue.append(u)
                            break
        return True

    def search(assign, false_cnt, satisfied, num_assigned) -> None:
        if num_assigned == nv:
            models.append(tuple(assign[v] == 1 for v in range(nv + 1)))
            return
        v = next(u for u in range(1, nv + 1) if not assign[u])
        for val in (-1, 1):
            a2 = assign.copy()
            f2 = false_cnt.copy()
            s2 = satisfied.copy()
            a2[v] = val
            if propagate(a2, f2, s2, [v * val]):
                search(a2, f2, s2, sum(1 for u in range(1, nv + 1) if a2[u]))

    base_assign = [0] * (nv + 1)
    base_false = [0] * len(clauses)
    base_sat = [False] * len(clauses)
    queue = []
    conflict = False
    for ci, clause in enumerate(clauses):
        if sizes[ci] == 1:
            lit = clause[0]
            v = abs(lit)
            val = 1 if lit > 0 else -1
            if base_assign[v] == -val:
                conflict = True
                break
            if not base_assign[v]:
                base_assign[v] = val
                queue.append(lit)
        elif sizes[ci] == 0:
            conflict = True
            break
    if not conflict and propagate(base_assign, base_false, base_sat, queue):
        search(
            base_assign,
            base_false,
            base_sat,
            sum(1 for u in range(1, nv + 1) if base_assign[u]),
        )
    return models
