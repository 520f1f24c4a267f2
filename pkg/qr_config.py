import os
from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        print(f"[Config] ⚠ Ignoring {name}={raw!r} (not an integer), using {default}")
        return default


def _env_flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes", "on")


# ─── Runtime (env) ───────────────────────────────────────────────
# 0 means "one worker per CPU".
QR_THREADS = _env_int("QR_THREADS", 0)
BENCH_WORKERS = QR_THREADS if QR_THREADS > 0 else (os.cpu_count() or 1)

# Direction sampling degrades in high dimension, so `check` refuses larger n.
ORACLE_MAX_N = _env_int("QR_ORACLE_MAX_N", 16)

VERBOSE = _env_flag("QR_VERBOSE")

# ─── Solver defaults ─────────────────────────────────────────────
DEFAULT_GAP_TOL = 1e-6
DEFAULT_MAX_ITER = 2000
PROGRESS_EVERY = 100             # iterations between verbose progress lines

# ─── Numerical tolerances ────────────────────────────────────────
CHOL_PIVOT_TOL = 1e-12           # relative to 1 + max|C|
SIGN_TOL = 1e-12                 # first component above this fixes the sign
EIG_ZERO_TOL = 1e-9              # λ_g counted as zero, relative to 1 + ‖M‖_F
FEAS_TOL = 1e-8                  # annulus tolerance, relative to 1 + β
SYMMETRY_TOL = 1e-10             # instance files, relative to 1 + max|entry|
T_CLAMP = 1e-12                  # t_k is kept ≥ t_min·(1 − T_CLAMP)

# Lower bound installed when the α = 0 reduction gives ᾱ² ≥ β.
REDUCED_ALPHA_MARGIN = 1e-6

# ─── Oracle / check ──────────────────────────────────────────────
ORACLE_NUM_DIRS = 20000
ORACLE_CHUNK = 20000
CHECK_TOL = 1e-4                 # verdict tolerance, relative to 1 + |oracle|

# ─── Applications ────────────────────────────────────────────────
MAXEIG_SAFETY = 2.0              # enclosure factor around the probe eigenvalue
MAXEIG_GAP_TOL = 1e-8

# ─── Benchmarks ──────────────────────────────────────────────────
BENCH_ALPHA = 1.0
BENCH_BETA = 10.0
