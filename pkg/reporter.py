"""
Reporter Module

Console reports for the CLI: solve summaries, oracle checks and benchmark
overviews.
"""

import math
from dataclasses import dataclass

from colorama import Fore, Style, init

from qr_config import CHECK_TOL

init(autoreset=True)

C = Fore.CYAN
G = Fore.GREEN
Y = Fore.YELLOW
R = Fore.RED
M = Fore.MAGENTA
W = Fore.WHITE
DIM = Style.DIM
RST = Style.RESET_ALL


@dataclass(frozen=True)
class CheckReport:
    oracle_value: float
    solver_value: float
    lower_bound: float
    iterations: int
    tol: float
    passed: bool

    @property
    def certificate_gap(self) -> float:
        return self.solver_value - self.lower_bound


def sandwich_verdict(lower_bound: float, oracle_value: float, solver_value: float,
                     iterations: int = 0, rel_tol: float = CHECK_TOL) -> CheckReport:
    """PASS iff lower_bound − tol ≤ oracle ≤ solver_value + tol, tol = rel_tol·(1 + |oracle|)."""
    tol = rel_tol * (1.0 + abs(oracle_value))
    passed = lower_bound - tol <= oracle_value <= solver_value + tol
    return CheckReport(
        oracle_value=oracle_value, solver_value=solver_value, lower_bound=lower_bound,
        iterations=iterations, tol=tol, passed=passed,
    )


def format_value(value: float) -> str:
    if math.isnan(value):
        return "n/a"
    return f"{value:+.10f}"


def format_gap(value: float) -> str:
    if math.isnan(value):
        return "n/a"
    return f"{value:.2e}"


def _banner(title: str, color: str = C) -> None:
    print(f"\n{color}{'━' * 56}{RST}")
    print(f"{color}  {title}{RST}")
    print(f"{color}{'━' * 56}{RST}")


def print_solve_summary(label: str, result, elapsed: float) -> None:
    _banner(f"IMGE SOLVE  {label}")
    verdict = G if result.terminated_by.value == "gap" else Y
    print(f"  Value       : {format_value(result.value_best)}")
    print(f"  Lower bound : {format_value(result.lower_bound_best)}")
    print(f"  Cert. gap   : {format_gap(result.certificate_gap)}")
    print(f"  FW gap      : {format_gap(result.final_gap)}")
    print(f"  Iterations  : {result.iterations}  {verdict}({result.terminated_by.value}){RST}")
    print(f"  Wall time   : {elapsed:.3f} s")
    print(f"{C}{'━' * 56}{RST}")


def print_check_report(label: str, report: CheckReport) -> None:
    _banner(f"ORACLE CHECK  {label}", M)
    print(f"  Oracle value : {format_value(report.oracle_value)}")
    print(f"  Solver value : {format_value(report.solver_value)}")
    print(f"  Lower bound  : {format_value(report.lower_bound)}")
    print(f"  Cert. gap    : {format_gap(report.certificate_gap)}  {DIM}(after {report.iterations} it.){RST}")
    print(f"  Tolerance    : {format_gap(report.tol)}")
    if report.passed:
        print(f"\n  {G}✓ PASS{RST}  lower bound ≤ oracle ≤ solver value")
    else:
        print(f"\n  {R}✖ FAIL{RST}  sandwich violated beyond tolerance")
    print(f"{M}{'═' * 56}{RST}")


def print_bench_overview(rows: list[dict]) -> None:
    _banner("BENCHMARK AVERAGES")
    print(f"  {'n':>6}  {'method':<6}  {'time_s':>9}  {'iter':>7}  {'value':>16}  {'gap':>9}")
    print(f"  {'─' * 52}")
    for row in rows:
        if row.get("seed") != "avg":
            continue
        if row.get("error"):
            print(f"  {row['n']:>6}  {row['method']:<6}  {R}{row['error']}{RST}")
            continue
        print(f"  {row['n']:>6}  {row['method']:<6}  {row['time_s']:>9.3f}  "
              f"{row['iterations']:>7.1f}  {row['value']:>16.6f}  {format_gap(row['final_gap']):>9}")
    print(f"{C}{'━' * 56}{RST}")


def print_eigpair(label: str, value: float, direct: float | None = None) -> None:
    _banner(f"MAX GENERALIZED EIGENVALUE  {label}")
    print(f"  Via annulus solve : {value:.12g}")
    if direct is not None:
        rel = abs(value - direct) / (1.0 + abs(direct))
        color = G if rel <= 1e-6 else Y
        print(f"  Direct eigensolve : {direct:.12g}")
        print(f"  Relative error    : {color}{rel:.2e}{RST}")
    print(f"{C}{'━' * 56}{RST}")


def print_penalty(label: str, rho: float, penalty_value: float, residual: float) -> None:
    _banner(f"PENALTY SOLVE  {label}  (rho={rho:g})")
    print(f"  Penalty objective : {format_value(penalty_value)}")
    print(f"  |xᵀBx − 1|        : {format_gap(residual)}")
    print(f"{C}{'━' * 56}{RST}")
