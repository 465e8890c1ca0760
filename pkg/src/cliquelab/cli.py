"""Command-line front end: gen, encode-sat, encode-ilp, solve, oracle, bench.

`solve` exits with the conventional solver codes: 10 found/SAT, 20
not-found/UNSAT, 30 timeout; usage and parse errors exit 1.
"""

from __future__ import annotations

import argparse
import sys
import tempfile
import time
from pathlib import Path

from .backtrack import backtrack_decide, backtrack_max
from .bench import (
    AdapterError,
    CrossCheckError,
    SuiteConfig,
    demo_suite_config,
    emit_csv,
    emit_markdown,
    external_ilp_adapter,
    external_sat_adapter,
    run_suite,
)
from .cnf import decode_model, encode_kclique, write_dimacs
from .errors import ParseError, SolveTimeout
from .gen import GenSpec, gen_random_graph
from .graph import CliqueInstance, Graph, read_graph, write_graph
from .ilp import decode_ilp, encode_maxclique, ilp_solve, write_lp
from .oracle import (
    SECONDS_PER_YEAR,
    BudgetExceeded,
    brute_force_decide,
    expected_clique_count,
    naive_cost_estimate,
)
from .satsolver import sat_solve

EXIT_FOUND = 10
EXIT_NOT_FOUND = 20
EXIT_TIMEOUT = 30
EXIT_ERROR = 1


def _prob(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("/")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a/b, got {text!r}") from None


def _load_graph(path: str) -> Graph:
    return read_graph(Path(path).read_text())


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_gen(args) -> int:
    spec = GenSpec(args.n, args.prob[0], args.prob[1], args.seed)
    _write_out(write_graph(gen_random_graph(spec), args.format), args.output)
    return 0


def cmd_encode_sat(args) -> int:
    g = _load_graph(args.graph)
    formula, _ = encode_kclique(CliqueInstance(g, args.k))
    _write_out(write_dimacs(formula), args.output)
    return 0


def cmd_encode_ilp(args) -> int:
    g = _load_graph(args.graph)
    _write_out(write_lp(encode_maxclique(g)), args.output)
    return 0


def _solve_deadline(args) -> float | None:
    if args.timeout is None:
        return None
    return time.perf_counter() + args.timeout


def _print_decision(found: bool, witness, extra_comments: list[str]) -> int:
    for comment in extra_comments:
        print(f"c {comment}")
    if found:
        print(f"c witness {' '.join(str(v) for v in witness)}")
        print("s SATISFIABLE")
        return EXIT_FOUND
    print("s UNSATISFIABLE")
    return EXIT_NOT_FOUND


def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    deadline = _solve_deadline(args)
    try:
        if args.backend == "backtrack":
            if args.k is None:
                out = backtrack_max(g, deadline=deadline)
                print(f"c nodes_visited {out.stats.nodes_visited}")
                print(f"c optimum {len(out.witness)}")
                return _print_decision(True, out.witness, [])
            out = backtrack_decide(
                CliqueInstance(g, args.k), prune=args.prune, deadline=deadline
            )
            return _print_decision(
                out.found, out.witness, [f"nodes_visited {out.stats.nodes_visited}"]
            )

        if args.backend == "sat":
            if args.k is None:
                raise ValueError("--k is required for the sat backend")
            formula, lay = encode_kclique(CliqueInstance(g, args.k))
            comments = [
                f"num_vars {formula.num_vars}",
                f"num_clauses {formula.num_clauses}",
            ]
            if args.external_sat:
                with tempfile.NamedTemporaryFile(
                    "w", suffix=".cnf", delete=False
                ) as tmp:
                    tmp.write(write_dimacs(formula))
                    cnf_path = tmp.name
                res = external_sat_adapter(
                    cnf_path, args.external_sat, g, lay, timeout_secs=args.timeout
                )
            else:
                res = sat_solve(formula, deadline=deadline)
            for comment in comments:
                print(f"c {comment}")
            if res.satisfiable:
                witness = decode_model(res.model, lay, g)
                print(f"c witness {' '.join(str(v) for v in witness)}")
                print("s SATISFIABLE")
                lits = [v if res.model[v] else -v for v in range(1, formula.num_vars + 1)]
                print("v " + " ".join(str(l) for l in lits) + " 0")
                return EXIT_FOUND
            print("s UNSATISFIABLE")
            return EXIT_NOT_FOUND

        # ilp backend: optimizes; with --k also reports the decision
        model = encode_maxclique(g)
        if args.external_ilp:
            with tempfile.NamedTemporaryFile("w", suffix=".lp", delete=False) as tmp:
                tmp.write(write_lp(model))
                lp_path = tmp.name
            res = external_ilp_adapter(
                lp_path, args.external_ilp, g, timeout_secs=args.timeout
            )
        else:
            res = ilp_solve(model, deadline=deadline)
        witness = decode_ilp(res, g)
        print(f"c nodes {res.stats.nodes}")
        print(f"optimum {res.optimum}")
        if args.k is None:
            return _print_decision(True, witness, [])
        return _print_decision(res.optimum >= args.k, witness, [])
    except SolveTimeout:
        print("s UNKNOWN")
        print("c timeout", file=sys.stderr)
        return EXIT_TIMEOUT


def cmd_oracle(args) -> int:
    if args.oracle_cmd == "decide":
        g = _load_graph(args.graph)
        found = brute_force_decide(CliqueInstance(g, args.k))
        print("s SATISFIABLE" if found else "s UNSATISFIABLE")
        return EXIT_FOUND if found else EXIT_NOT_FOUND
    if args.oracle_cmd == "expected":
        a, b = args.prob
        value = expected_clique_count(args.n, args.k, a, b)
        print(
            f"expected cliques of size {args.k} in G({args.n},{a}/{b}): "
            f"{value.scientific()} (log10 = {value.log10:.4f})"
        )
        return 0
    seconds = naive_cost_estimate(args.n, args.k, args.steps_per_second)
    years = seconds / SECONDS_PER_YEAR
    print(
        f"enumerating C({args.n},{args.k}) subsets at {args.steps_per_second:.3e} steps/s: "
        f"{seconds:.3e} s = {years:.3e} years"
    )
    return 0


def cmd_bench(args) -> int:
    if args.demo:
        cfg = demo_suite_config()
    elif args.config:
        cfg = SuiteConfig.from_json(Path(args.config).read_text())
    else:
        raise ValueError("bench needs --config FILE or --demo")
    if args.timeout is not None:
        cfg = SuiteConfig(cfg.graphs, cfg.backends, args.timeout)
    records = run_suite(cfg, jobs=args.jobs)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "bench.csv").write_text(emit_csv(records))
    (out_dir / "bench.md").write_text(emit_markdown(records))
    sys.stdout.write(emit_markdown(records))
    print(f"c wrote {out_dir / 'bench.csv'} and {out_dir / 'bench.md'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliquelab",
        description="k-clique lab: backtracking, SAT and 0-1 ILP backends",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded random graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prob", type=_prob, required=True, metavar="A/B")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=("edge", "matrix"), default="edge")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("encode-sat", help="write the k-clique decision CNF")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("graph")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_encode_sat)

    p = sub.add_parser("encode-ilp", help="write the maximum-clique 0-1 program")
    p.add_argument("graph")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_encode_ilp)

    p = sub.add_parser("solve", help="solve one instance with a chosen backend")
    p.add_argument("--backend", choices=("backtrack", "sat", "ilp"), required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--prune", action="store_true", help="backtrack: cut hopeless suffixes")
    p.add_argument("--timeout", type=float, default=None, metavar="SECS")
    p.add_argument("--external-sat", default=None, metavar="CMD")
    p.add_argument("--external-ilp", default=None, metavar="CMD")
    p.add_argument("graph")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force decisions and size estimates")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)
    q = osub.add_parser("decide", help="brute-force k-clique decision")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("graph")
    q = osub.add_parser("expected", help="expected number of k-cliques in G(n, a/b)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--prob", type=_prob, required=True, metavar="A/B")
    q = osub.add_parser("naive-cost", help="time to enumerate all k-subsets")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--steps-per-second", type=float, default=2.6e9)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="run a benchmark suite and emit reports")
    p.add_argument("--config", default=None, metavar="JSON")
    p.add_argument("--demo", action="store_true", help="use the shipped demo suite")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timeout", type=float, default=None, help="override per-run timeout")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else EXIT_ERROR
    try:
        return args.func(args)
    except (
        ParseError,
        ValueError,
        BudgetExceeded,
        OSError,
        AdapterError,
        CrossCheckError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())
