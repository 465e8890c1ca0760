"""Benchmark harness: run the three backends over seeded instance grids.

One suite = a list of (n, a, b, seed) graphs, each generated once and shared
by every k in its list, mirroring how the comparison tables are built: rows
back(n,k,a/b) and sat(n,k,a/b) per k, one ilp(n,a/b) row per graph. Each
(graph, k, backend) cell runs under its own wall-clock deadline; timed-out
cells become timeout rows instead of failing the suite. After the run the
harness cross-checks that every completed backend agrees: backtrack decision
= SAT decision = (ILP optimum >= k). Disagreement dumps the instance and
aborts — it means one of the solvers is wrong, and that must never pass
silently.
"""

from __future__ import annotations

import csv
import io
import json
import shlex
import subprocess
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .backtrack import backtrack_decide
from .cnf import decode_model, encode_kclique, write_dimacs
from .errors import ConsistencyError, SolveTimeout
from .gen import GenSpec, gen_random_graph
from .graph import CliqueInstance, Graph, is_clique, write_graph
from .ilp import IlpResult, IlpStats, decode_ilp, encode_maxclique, ilp_solve, write_lp
from .satsolver import SatResult, SatStats, sat_solve

BACKENDS = ("backtrack", "sat", "ilp")


class CrossCheckError(Exception):
    """Completed backends disagreed on a decision; diagnostics were dumped."""


class AdapterError(Exception):
    """An external solver produced output this harness cannot trust."""

    def __init__(self, message: str, raw_output: str = ""):
        super().__init__(message)
        self.raw_output = raw_output


@dataclass(frozen=True)
class GraphCase:
    """One generated graph and the k values to run against it."""

    n: int
    a: int
    b: int
    seed: int
    ks: tuple[int, ...]

    def __post_init__(self) -> None:
        GenSpec(self.n, self.a, self.b, self.seed)  # reuse its validation
        for k in self.ks:
            if not 1 <= k <= self.n:
                raise ValueError(f"k={k} out of range 1..{self.n}")

    @property
    def prob(self) -> str:
        return f"{self.a}/{self.b}"

    def gen_spec(self) -> GenSpec:
        return GenSpec(self.n, self.a, self.b, self.seed)


@dataclass(frozen=True)
class SuiteConfig:
    graphs: tuple[GraphCase, ...]
    backends: tuple[str, ...] = BACKENDS
    timeout_secs: float = 60.0

    def __post_init__(self) -> None:
        for backend in self.backends:
            if backend not in BACKENDS:
                raise ValueError(f"unknown backend {backend!r}")
        if self.timeout_secs <= 0:
            raise ValueError("timeout must be positive")

    @classmethod
    def from_json(cls, text: str) -> "SuiteConfig":
        data = json.loads(text)
        graphs = tuple(
            GraphCase(
                n=int(g["n"]),
                a=int(g["a"]),
                b=int(g["b"]),
                seed=int(g["seed"]),
                ks=tuple(int(k) for k in g.get("ks", ())),
            )
            for g in data["graphs"]
        )
        return cls(
            graphs=graphs,
            backends=tuple(data.get("backends", BACKENDS)),
            timeout_secs=float(data.get("timeout_secs", 60.0)),
        )

    def to_json(self) -> str:
        data = {
            "timeout_secs": self.timeout_secs,
            "backends": list(self.backends),
            "graphs": [
                {"n": c.n, "a": c.a, "b": c.b, "seed": c.seed, "ks": list(c.ks)}
                for c in self.graphs
            ],
        }
        return json.dumps(data, indent=2) + "\n"


@dataclass
class BenchRecord:
    """One table row. `result` is SAT/UNSAT for decision backends, the
    optimum for ilp, empty for timeouts and "error" for crashed cells."""

    instance: str
    backend: str
    n: int
    k: int | None
    prob: str
    seed: int
    result: str
    num_vars: int | None
    num_clauses: int | None
    time_ms: float
    timeout: bool
    stats: dict = field(default_factory=dict, compare=False)


def instance_label(backend: str, case: GraphCase, k: int | None) -> str:
    if backend == "ilp":
        return f"ilp({case.n},{case.prob})"
    prefix = "back" if backend == "backtrack" else "sat"
    return f"{prefix}({case.n},{k},{case.prob})"


def _run_cell(
    graph: Graph, case: GraphCase, backend: str, k: int | None, timeout_secs: float
) -> BenchRecord:
    label = instance_label(backend, case, k)
    start = time.perf_counter()
    deadline = start + timeout_secs
    result = ""
    num_vars = num_clauses = None
    timed_out = False
    stats: dict = {}
    try:
        if backend == "backtrack":
            out = backtrack_decide(CliqueInstance(graph, k), deadline=deadline)
            _validate_witness(graph, out.witness, k if out.found else None)
            result = "SAT" if out.found else "UNSAT"
            stats = {
                "nodes_visited": out.stats.nodes_visited,
                "max_depth_reached": out.stats.max_depth_reached,
            }
        elif backend == "sat":
            formula, lay = encode_kclique(CliqueInstance(graph, k))
            num_vars, num_clauses = formula.num_vars, formula.num_clauses
            res = sat_solve(formula, deadline=deadline)
            if res.satisfiable:
                decode_model(res.model, lay, graph)  # validates size and cliqueness
            result = "SAT" if res.satisfiable else "UNSAT"
            stats = {
                "decisions": res.stats.decisions,
                "propagations": res.stats.propagations,
                "conflicts": res.stats.conflicts,
            }
        elif backend == "ilp":
            res = ilp_solve(encode_maxclique(graph), deadline=deadline)
            decode_ilp(res, graph)  # validates the witness
            result = str(res.optimum)
            stats = {"nodes": res.stats.nodes}
        else:
            raise ValueError(f"unknown backend {backend!r}")
    except SolveTimeout:
        result = ""
        timed_out = True
    except Exception as exc:  # recorded per-row; the suite keeps going
        result = "error"
        stats = {"error": f"{type(exc).__name__}: {exc}"}
    elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return BenchRecord(
        instance=label,
        backend=backend,
        n=case.n,
        k=k,
        prob=case.prob,
        seed=case.seed,
        result=result,
        num_vars=num_vars,
        num_clauses=num_clauses,
        time_ms=elapsed_ms,
        timeout=timed_out,
        stats=stats,
    )


def _validate_witness(graph: Graph, witness, k: int | None) -> None:
    if k is None:
        return
    if witness is None or len(witness) != k or not is_clique(graph, witness):
        raise ConsistencyError(f"witness {witness} is not a {k}-clique")


def run_suite(
    cfg: SuiteConfig, jobs: int = 1, dump_dir: str | Path | None = None
) -> list[BenchRecord]:
    """Run every (graph, k, backend) cell; returns records in suite order.

    Cell order (graph, then backend, then k) is fixed up front, so the worker
    count never changes the output. Raises CrossCheckError when completed
    backends disagree, after dumping the offending instance.
    """
    graphs = [gen_random_graph(case.gen_spec()) for case in cfg.graphs]
    cells: list[tuple[int, str, int | None]] = []
    for gi, case in enumerate(cfg.graphs):
        for backend in cfg.backends:
            if backend == "ilp":
                cells.append((gi, backend, None))
            else:
                cells.extend((gi, backend, k) for k in case.ks)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(
                pool.map(
                    _run_cell,
                    (graphs[gi] for gi, _, _ in cells),
                    (cfg.graphs[gi] for gi, _, _ in cells),
                    (backend for _, backend, _ in cells),
                    (k for _, _, k in cells),
                    (cfg.timeout_secs for _ in cells),
                )
            )
    else:
        records = [
            _run_cell(graphs[gi], cfg.graphs[gi], backend, k, cfg.timeout_secs)
            for gi, backend, k in cells
        ]

    for gi, case in enumerate(cfg.graphs):
        group = [rec for (g, _, _), rec in zip(cells, records) if g == gi]
        problem = _find_disagreement(group)
        if problem:
            dump = _dump_instance(case, graphs[gi], group, dump_dir)
            raise CrossCheckError(f"{problem} (diagnostics in {dump})")
    return records


def _find_disagreement(group: list[BenchRecord]) -> str | None:
    """All completed backends must tell one consistent story per (graph, k)."""
    decisions: dict[int, dict[str, str]] = {}
    optimum: int | None = None
    for rec in group:
        if rec.timeout or rec.result in ("", "error"):
            continue
        if rec.backend == "ilp":
            optimum = int(rec.result)
        else:
            decisions.setdefault(rec.k, {})[rec.backend] = rec.result
    for k, by_backend in sorted(decisions.items()):
        answers = set(by_backend.values())
        if len(answers) > 1:
            return f"backends disagree at k={k}: {by_backend}"
        if optimum is not None:
            expected = "SAT" if optimum >= k else "UNSAT"
            if answers != {expected}:
                return (
                    f"decision at k={k} is {answers.pop()} but ilp optimum {optimum} "
                    f"implies {expected}"
                )
    return None


def _dump_instance(
    case: GraphCase, graph: Graph, group: list[BenchRecord], dump_dir
) -> Path:
    base = (
        Path(dump_dir)
        if dump_dir is not None
        else Path(tempfile.mkdtemp(prefix="cliquelab-disagreement-"))
    )
    base.mkdir(parents=True, exist_ok=True)
    (base / "graph.edge").write_text(write_graph(graph))
    (base / "records.csv").write_text(emit_csv(group))
    (base / "model.lp").write_text(write_lp(encode_maxclique(graph)))
    for k in case.ks:
        formula, _ = encode_kclique(CliqueInstance(graph, k))
        (base / f"clique-k{k}.cnf").write_text(write_dimacs(formula))
    return base


# --- reports -----------------------------------------------------------------

_CSV_COLUMNS = [
    "instance",
    "backend",
    "n",
    "k",
    "prob",
    "seed",
    "result",
    "num_vars",
    "num_clauses",
    "time_ms",
    "timeout",
]


def emit_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.instance,
                r.backend,
                r.n,
                "" if r.k is None else r.k,
                r.prob,
                r.seed,
                r.result,
                "" if r.num_vars is None else r.num_vars,
                "" if r.num_clauses is None else r.num_clauses,
                repr(r.time_ms),
                "true" if r.timeout else "false",
            ]
        )
    return buf.getvalue()


def parse_csv(text: str) -> list[BenchRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != _CSV_COLUMNS:
        raise ValueError("unrecognized CSV header")
    records = []
    for row in rows[1:]:
        (instance, backend, n, k, prob, seed, result, nv, nc, time_ms, timeout) = row
        records.append(
            BenchRecord(
                instance=instance,
                backend=backend,
                n=int(n),
                k=None if k == "" else int(k),
                prob=prob,
                seed=int(seed),
                result=result,
                num_vars=None if nv == "" else int(nv),
                num_clauses=None if nc == "" else int(nc),
                time_ms=float(time_ms),
                timeout=timeout == "true",
            )
        )
    return records


def emit_markdown(records: list[BenchRecord]) -> str:
    """One table per graph, in the style of the comparison tables."""
    groups: dict[tuple[int, str, int], list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.n, r.prob, r.seed), []).append(r)
    lines: list[str] = []
    for (n, prob, seed), group in groups.items():
        lines.append(f"## graph n={n} p={prob} seed={seed}")
        lines.append("")
        lines.append("| instance | result | # variables | # clauses | time (ms) | timeout |")
        lines.append("|---|---|---|---|---|---|")
        for r in group:
            lines.append(
                "| {} | {} | {} | {} | {} | {} |".format(
                    r.instance,
                    r.result,
                    "" if r.num_vars is None else r.num_vars,
                    "" if r.num_clauses is None else r.num_clauses,
                    repr(r.time_ms),
                    "yes" if r.timeout else "",
                )
            )
        lines.append("")
    return "\n".join(lines) + "\n"


def emit_report(records: list[BenchRecord]) -> tuple[str, str]:
    return emit_csv(records), emit_markdown(records)


# --- external solver adapters -------------------------------------------------


def external_sat_adapter(
    cnf_path,
    command: str,
    graph: Graph | None = None,
    layout=None,
    timeout_secs: float | None = None,
) -> SatResult:
    """Run `command <cnf_path>` and parse the conventional solver output.

    Accepts an `s SATISFIABLE`/`s UNSATISFIABLE` status line with `v` literal
    lines terminated by 0, falling back to exit codes 10/20. When graph and
    layout are given, a SAT answer must decode to a valid clique or the
    adapter refuses it.
    """
    text, returncode = _run_external(command, cnf_path, timeout_secs)
    num_vars = _dimacs_num_vars(cnf_path)
    status, lits = _parse_sat_output(text, returncode)
    if not status:
        return SatResult(False, None, SatStats())
    model = [False] * (num_vars + 1)
    for lit in lits:
        if abs(lit) > num_vars:
            raise AdapterError(f"literal {lit} beyond {num_vars} variables", text)
        model[abs(lit)] = lit > 0
    result = SatResult(True, tuple(model), SatStats())
    if graph is not None and layout is not None:
        try:
            decode_model(result.model, layout, graph)
        except ConsistencyError as exc:
            raise AdapterError(f"external model rejected: {exc}", text) from exc
    return result


def _parse_sat_output(text: str, returncode: int) -> tuple[bool, list[int]]:
    status: bool | None = None
    lits: list[int] = []
    saw_values = False
    for line in text.splitlines():
        fields = line.split()
        if not fields:
            continue
        if fields[0] == "s" and len(fields) > 1:
            name = fields[1].upper()
            if name == "SATISFIABLE":
                status = True
            elif name == "UNSATISFIABLE":
                status = False
        elif fields[0] == "v":
            saw_values = True
            for tok in fields[1:]:
                try:
                    lit = int(tok)
                except ValueError:
                    raise AdapterError(f"bad value token {tok!r}", text) from None
                if lit:
                    lits.append(lit)
    if status is None:
        if returncode == 10:
            status = True
        elif returncode == 20:
            status = False
        else:
            raise AdapterError("no status line and no 10/20 exit code", text)
    if status and not saw_values:
        raise AdapterError("SAT answer without a model", text)
    return status, lits


def external_ilp_adapter(
    lp_path,
    command: str,
    graph: Graph | None = None,
    timeout_secs: float | None = None,
) -> IlpResult:
    """Run `command <lp_path>` and parse lp_solve-style value-per-line output."""
    text, _ = _run_external(command, lp_path, timeout_secs)
    optimum: int | None = None
    values: dict[int, int] = {}
    for line in text.splitlines():
        stripped = line.strip()
        lowered = stripped.lower()
        if lowered.startswith("value of objective function:"):
            optimum = _as_int(stripped.split(":", 1)[1], text)
        elif stripped.startswith("x"):
            fields = stripped.split()
            if len(fields) == 2 and fields[0][1:].isdigit():
                values[int(fields[0][1:])] = _as_int(fields[1], text)
    if optimum is None:
        raise AdapterError("no objective value in solver output", text)
    num_vars = graph.n if graph is not None else max(values, default=0)
    assignment = tuple(values.get(v, 0) for v in range(num_vars + 1))
    result = IlpResult(True, optimum, assignment, IlpStats())
    if graph is not None:
        try:
            decode_ilp(result, graph)
        except ConsistencyError as exc:
            raise AdapterError(f"external solution rejected: {exc}", text) from exc
    return result


def _as_int(token: str, raw: str) -> int:
    try:
        value = float(token)
    except ValueError:
        raise AdapterError(f"bad numeric token {token!r}", raw) from None
    rounded = round(value)
    if abs(value - rounded) > 1e-6:
        raise AdapterError(f"non-integral value {token!r}", raw)
    return int(rounded)


def _run_external(command: str, path, timeout_secs: float | None) -> tuple[str, int]:
    argv = shlex.split(command) + [str(path)]
    try:
        proc = subprocess.run(
            argv, capture_output=True, text=True, timeout=timeout_secs
        )
    except subprocess.TimeoutExpired as exc:
        raise SolveTimeout(f"external solver exceeded {timeout_secs}s") from exc
    except OSError as exc:
        raise AdapterError(f"cannot run {argv[0]!r}: {exc}") from exc
    return proc.stdout + proc.stderr, proc.returncode


def _dimacs_num_vars(cnf_path) -> int:
    for line in Path(cnf_path).read_text().splitlines():
        fields = line.split()
        if fields and fields[0] == "p":
            return int(fields[2])
    raise AdapterError(f"{cnf_path} has no DIMACS header")


# --- shipped demo suite ---------------------------------------------------------

# seeds picked so the generated graphs have clique numbers 10 and 12, the same
# frontiers the classic 40- and 60-vertex comparison tables show
DEMO_SEED_40 = 4
DEMO_SEED_60 = 2


def demo_suite_config() -> SuiteConfig:
    """Desk-scale rerun of the 40- and 60-vertex comparison structure."""
    return SuiteConfig(
        graphs=(
            GraphCase(40, 2, 3, DEMO_SEED_40, (8, 10, 11, 12)),
            GraphCase(60, 2, 3, DEMO_SEED_60, (11, 12, 13, 14, 15, 16)),
        ),
        backends=BACKENDS,
        timeout_secs=60.0,
    )
