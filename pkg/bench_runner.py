"""
Benchmark Runner Module

Sweeps seeded random instances over dimensions, seeds and step rules.
Solves run in a thread pool (LAPACK releases the GIL); rows come back in
(n, seed, method) order whatever the completion order, followed by one
average row per (n, method).
"""

import concurrent.futures
import math
import time

from imge_solver import SolverConfig, Stepsize, solve
from qr_config import BENCH_ALPHA, BENCH_BETA, BENCH_WORKERS, DEFAULT_GAP_TOL, DEFAULT_MAX_ITER
from qr_problem import random_instance

BENCH_COLUMNS = [
    "n", "seed", "method", "time_s", "iterations", "value", "lower_bound",
    "final_gap", "certificate_gap", "last_gamma", "terminated_by", "error",
]

_AVERAGED = ["time_s", "iterations", "value", "lower_bound",
             "final_gap", "certificate_gap", "last_gamma"]


def run_one(n: int, seed: int, method: str, tol: float, max_iter: int,
            alpha: float = BENCH_ALPHA, beta: float = BENCH_BETA) -> dict:
    """Solve one instance; failures are reported in the row, never raised."""
    row = {"n": n, "seed": seed, "method": method}
    try:
        p = random_instance(n, seed, alpha, beta)
        config = SolverConfig(stepsize=Stepsize(method), gap_tol=tol,
                              max_iter=max_iter, record_trace=False, verbose=False)
        started = time.perf_counter()
        result = solve(p, config)
        elapsed = time.perf_counter() - started
    except Exception as e:
        print(f"[Bench] ✖ n={n} seed={seed} method={method}: {e}")
        row["error"] = str(e)
        return row

    row.update({
        "time_s": elapsed,
        "iterations": result.iterations,
        "value": result.value_best,
        "lower_bound": result.lower_bound_best,
        "final_gap": result.final_gap,
        "certificate_gap": result.certificate_gap,
        "last_gamma": result.last_gamma,
        "terminated_by": result.terminated_by.value,
        "error": "",
    })
    return row


def average_row(n: int, method: str, rows: list[dict]) -> dict:
    ok = [r for r in rows if not r.get("error")]
    avg = {"n": n, "seed": "avg", "method": method, "error": ""}
    if not ok:
        avg["error"] = "no successful runs"
        return avg
    for col in _AVERAGED:
        values = [float(r[col]) for r in ok if not math.isnan(float(r[col]))]
        avg[col] = sum(values) / len(values) if values else math.nan
    avg["terminated_by"] = f"{sum(r['terminated_by'] == 'gap' for r in ok)}/{len(ok)} gap"
    return avg


def run_bench(n_list: list[int], seeds: list[int], methods: list[str],
              tol: float = DEFAULT_GAP_TOL, max_iter: int = DEFAULT_MAX_ITER,
              alpha: float = BENCH_ALPHA, beta: float = BENCH_BETA,
              workers: int = BENCH_WORKERS, verbose: bool = True) -> list[dict]:
    """
    Run the full sweep.

    Returns:
        Per-run rows in (n, seed, method) order, each n block followed by
        its average rows.
    """
    jobs = [(n, seed, method) for n in n_list for seed in seeds for method in methods]
    if verbose:
        print(f"[Bench] {len(jobs)} run(s) on {workers} worker(s), "
              f"tol={tol:.1e}, max_iter={max_iter}")

    with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        futures = [executor.submit(run_one, n, seed, method, tol, max_iter, alpha, beta)
                   for n, seed, method in jobs]
        results = [f.result() for f in futures]

    table = []
    for n in n_list:
        block = [r for r in results if r["n"] == n]
        table.extend(block)
        for method in methods:
            table.append(average_row(n, method, [r for r in block if r["method"] == method]))

        if verbose:
            failed = sum(1 for r in block if r.get("error"))
            print(f"[Bench] n={n}: {len(block) - failed} ok, {failed} failed")
    return table
