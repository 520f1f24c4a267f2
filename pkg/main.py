"""
Annulus Root-Difference Solver - Main Entry Point

Command-line front end for minimizing xᵀAx − √(xᵀBx) over α ≤ xᵀCx ≤ β:
instance generation, solving with trace export, benchmark sweeps, oracle
checks and the eigenvalue / penalty applications.

Exit codes: 0 success, 1 validation error (or failed oracle check), 2 I/O error.
"""

import argparse
import sys
import time

from applications import hcdt_penalty, max_eig_via_qr
from bench_runner import BENCH_COLUMNS, run_bench
from imge_solver import SolverConfig, Stepsize, solve
from instance_io import TRACE_COLUMNS, load_instance_arrays, save_problem, write_table_csv, write_trace_csv
from linalg_kernel import Extreme, cholesky_spd, gen_eigpair
from qr_config import (
    BENCH_ALPHA, BENCH_BETA, BENCH_WORKERS, DEFAULT_GAP_TOL, DEFAULT_MAX_ITER,
    ORACLE_MAX_N, ORACLE_NUM_DIRS, QR_THREADS, VERBOSE,
)
from qr_errors import OracleDimensionLimit, QrError
from qr_problem import QrProblem, random_instance, reduce_alpha_zero
from radial_oracle import brute_force
from reporter import (
    print_bench_overview, print_check_report, print_eigpair, print_penalty,
    print_solve_summary, sandwich_verdict,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def parse_int_list(text: str) -> list[int]:
    """Parse "1..5", "1,3,7" or a mix such as "1..3,10"."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(part))
    if not values:
        raise ValueError(f"empty list: {text!r}")
    return values


def parse_methods(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    for m in methods:
        Stepsize(m)  # raises ValueError on unknown names
    return methods


def _load_problem(path: str) -> QrProblem:
    raw = load_instance_arrays(path)
    if raw.alpha == 0:
        p = reduce_alpha_zero(raw.A, raw.B, raw.C, raw.beta)
        print(f"[Main] alpha = 0: lower bound moved to {p.alpha:.6g}")
        return p
    return raw.to_problem()


# ── Subcommands ───────────────────────────────────────────────────

def cmd_gen(args) -> int:
    p = random_instance(args.n, args.seed, args.alpha, args.beta)
    save_problem(args.out, p)
    print(f"[Main] Wrote n={p.n} instance (seed {args.seed}) to {args.out}")
    return EXIT_OK


def cmd_solve(args) -> int:
    p = _load_problem(args.instance)
    config = SolverConfig(
        stepsize=Stepsize(args.method),
        gap_tol=args.tol,
        max_iter=args.max_iter,
        record_trace=bool(args.trace_out),
        verbose=args.verbose,
    )
    started = time.perf_counter()
    result = solve(p, config)
    elapsed = time.perf_counter() - started

    print_solve_summary(args.instance, result, elapsed)
    if args.trace_out:
        write_trace_csv(args.trace_out, result.trace)
        print(f"[Main] Trace ({len(result.trace)} rows) written to {args.trace_out}")
    return EXIT_OK


def cmd_bench(args) -> int:
    workers = max(1, args.workers)
    if QR_THREADS > 0:
        workers = min(workers, BENCH_WORKERS)
    rows = run_bench(
        n_list=args.n,
        seeds=args.seeds,
        methods=args.methods,
        tol=args.tol,
        max_iter=args.max_iter,
        alpha=args.alpha,
        beta=args.beta,
        workers=workers,
    )
    write_table_csv(args.out, BENCH_COLUMNS, rows)
    print_bench_overview(rows)
    print(f"[Main] Benchmark table ({len(rows)} rows) written to {args.out}")
    return EXIT_OK


def cmd_check(args) -> int:
    p = _load_problem(args.instance)
    if p.n > args.max_n:
        raise OracleDimensionLimit(
            f"oracle is limited to n <= {args.max_n}, instance has n = {p.n}"
        )
    result = solve(p, SolverConfig(stepsize=Stepsize.EXACT_LINE_SEARCH, gap_tol=args.tol,
                                   max_iter=args.max_iter, record_trace=False))
    _, oracle_value = brute_force(p, args.num_dirs, args.seed)
    report = sandwich_verdict(result.lower_bound_best, oracle_value, result.value_best,
                              iterations=result.iterations)
    print_check_report(args.instance, report)
    return EXIT_OK if report.passed else EXIT_VALIDATION


def cmd_maxeig(args) -> int:
    raw = load_instance_arrays(args.instance)
    pair = max_eig_via_qr(raw.A, raw.B, raw.C)
    direct = gen_eigpair(raw.B, cholesky_spd(raw.A, "A"), Extreme.MAX).value
    print_eigpair(args.instance, pair.value, direct)
    return EXIT_OK


def cmd_penalty(args) -> int:
    raw = load_instance_arrays(args.instance)
    out = hcdt_penalty(raw.A, raw.B, raw.C, raw.alpha, raw.beta, args.rho)
    print_penalty(args.instance, args.rho, out.penalty_value, out.residual)
    return EXIT_OK


# ── Argument parsing ──────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Global minimization of xᵀAx − √(xᵀBx) over an elliptic annulus (IMGE).",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "CSV columns:\n"
            f"  trace: {','.join(TRACE_COLUMNS)}\n"
            f"  bench: {','.join(BENCH_COLUMNS)}\n"
            "Environment: QR_THREADS caps benchmark workers, QR_VERBOSE enables progress lines."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a seeded random instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--alpha", type=float, default=BENCH_ALPHA)
    gen.add_argument("--beta", type=float, default=BENCH_BETA)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    slv = sub.add_parser("solve", help="solve an instance file")
    slv.add_argument("instance")
    slv.add_argument("--method", choices=[s.value for s in Stepsize], default="exact")
    slv.add_argument("--tol", type=float, default=DEFAULT_GAP_TOL)
    slv.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    slv.add_argument("--trace-out", default=None)
    slv.add_argument("--verbose", action="store_true", default=VERBOSE)
    slv.set_defaults(func=cmd_solve)

    bench = sub.add_parser("bench", help="benchmark sweep over random instances")
    bench.add_argument("--n", type=parse_int_list, required=True, help='e.g. "100" or "100,200"')
    bench.add_argument("--seeds", type=parse_int_list, default=[1, 2, 3, 4, 5], help='e.g. "1..5"')
    bench.add_argument("--methods", type=parse_methods, default=["dim", "exact"])
    bench.add_argument("--tol", type=float, default=DEFAULT_GAP_TOL)
    bench.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    bench.add_argument("--alpha", type=float, default=BENCH_ALPHA)
    bench.add_argument("--beta", type=float, default=BENCH_BETA)
    bench.add_argument("--workers", type=int, default=BENCH_WORKERS)
    bench.add_argument("--out", required=True)
    bench.set_defaults(func=cmd_bench)

    chk = sub.add_parser("check", help="compare the solver with the brute-force oracle")
    chk.add_argument("instance")
    chk.add_argument("--num-dirs", type=int, default=ORACLE_NUM_DIRS)
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--tol", type=float, default=1e-8)
    chk.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    chk.add_argument("--max-n", type=int, default=ORACLE_MAX_N)
    chk.set_defaults(func=cmd_check)

    eig = sub.add_parser("maxeig", help="largest eigenvalue of (B, A) through an annulus solve")
    eig.add_argument("instance")
    eig.set_defaults(func=cmd_maxeig)

    pen = sub.add_parser("penalty", help="penalty form of min xᵀAx s.t. xᵀBx = 1")
    pen.add_argument("instance")
    pen.add_argument("--rho", type=float, required=True)
    pen.set_defaults(func=cmd_penalty)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as e:
        print(f"[Main] ✖ I/O error: {e}")
        return EXIT_IO
    except (QrError, ValueError) as e:
        print(f"[Main] ✖ {type(e).__name__}: {e}")
        return EXIT_VALIDATION
    except KeyboardInterrupt:
        print("\n[Main] Interrupted. Stopping...")
        return 130


if __name__ == "__main__":
    sys.exit(main())
