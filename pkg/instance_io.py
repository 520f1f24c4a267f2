"""
Instance I/O Module

Instance files are single JSON documents:
    {"n": 3, "alpha": 1.0, "beta": 10.0, "A": [...n² numbers...], "B": [...], "C": [...]}
with matrices stored row-major. Symmetry is checked on load and then
enforced exactly. Trace and benchmark tables are written as CSV with a
header row.
"""

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from imge_solver import IterationRecord
from linalg_kernel import sym_matrix
from qr_config import SYMMETRY_TOL
from qr_errors import InstanceFormatError
from qr_problem import QrProblem, validate

TRACE_COLUMNS = ["k", "s", "t", "f", "gamma", "gap", "q_xhat", "lower_bound", "lambda_g", "delta_k"]

# Written in scientific notation; everything else uses the shortest round-trip repr.
SCIENTIFIC_COLUMNS = {"gap", "final_gap", "certificate_gap"}


@dataclass(eq=False)
class RawInstance:
    """Matrices and bounds as read from disk, before the α > 0 check."""
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    alpha: float
    beta: float

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def to_problem(self) -> QrProblem:
        return validate(self.A, self.B, self.C, self.alpha, self.beta)


def instance_document(A, B, C, alpha: float, beta: float) -> dict:
    A, B, C = (np.asarray(M, dtype=np.float64) for M in (A, B, C))
    return {
        "n": int(A.shape[0]),
        "alpha": float(alpha),
        "beta": float(beta),
        "A": [float(v) for v in A.ravel()],
        "B": [float(v) for v in B.ravel()],
        "C": [float(v) for v in C.ravel()],
    }


def save_instance(path: str, A, B, C, alpha: float, beta: float) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(instance_document(A, B, C, alpha, beta), f)
        f.write("\n")


def save_problem(path: str, p: QrProblem) -> None:
    save_instance(path, p.A, p.B, p.C, p.alpha, p.beta)


def _matrix_field(doc: dict, key: str, n: int) -> np.ndarray:
    values = doc.get(key)
    if not isinstance(values, list) or len(values) != n * n:
        raise InstanceFormatError(f"field {key!r} must be a list of {n * n} numbers")
    try:
        M = np.array(values, dtype=np.float64).reshape(n, n)
    except (TypeError, ValueError):
        raise InstanceFormatError(f"field {key!r} contains non-numeric entries") from None
    if not np.all(np.isfinite(M)):
        raise InstanceFormatError(f"field {key!r} contains non-finite entries")

    tol = SYMMETRY_TOL * (1.0 + float(np.max(np.abs(M))))
    asymmetry = float(np.max(np.abs(M - M.T)))
    if asymmetry > tol:
        raise InstanceFormatError(f"matrix {key} is not symmetric (max |M - Mᵀ| = {asymmetry:.3e})")
    return sym_matrix(M)


def load_instance_arrays(path: str) -> RawInstance:
    """
    Read an instance file without validating the bounds.

    Raises:
        InstanceFormatError: malformed document or asymmetric matrix.
        OSError: the file cannot be read.
    """
    with open(path, "r", encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise InstanceFormatError(f"{path}: not a JSON document ({e})") from None

    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{path}: expected a JSON object")
    try:
        raw_n = doc["n"]
        alpha = float(doc["alpha"])
        beta = float(doc["beta"])
    except (KeyError, TypeError, ValueError) as e:
        raise InstanceFormatError(f"{path}: missing or invalid field ({e})") from None
    if isinstance(raw_n, bool) or not isinstance(raw_n, (int, float)) or not float(raw_n).is_integer():
        raise InstanceFormatError(f"{path}: n must be an integer, got {raw_n!r}")
    n = int(raw_n)
    if n < 1:
        raise InstanceFormatError(f"{path}: n must be positive, got {n}")

    return RawInstance(
        A=_matrix_field(doc, "A", n),
        B=_matrix_field(doc, "B", n),
        C=_matrix_field(doc, "C", n),
        alpha=alpha,
        beta=beta,
    )


def load_instance(path: str) -> QrProblem:
    return load_instance_arrays(path).to_problem()


# ── CSV ───────────────────────────────────────────────────────────

def format_cell(column: str, value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if column in SCIENTIFIC_COLUMNS:
            return f"{value:.6e}"
        return repr(value)
    return "" if value is None else str(value)


def write_table_csv(path: str, columns: list[str], rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(col, row.get(col)) for col in columns])


def write_trace_csv(path: str, trace: list[IterationRecord]) -> None:
    rows = [{col: getattr(rec, col) for col in TRACE_COLUMNS} for rec in trace]
    write_table_csv(path, TRACE_COLUMNS, rows)
