# Configuration for the equation-by-equation solver
import os
from dotenv import load_dotenv
load_dotenv()

def str_to_bool(value: str, default=True):
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "y", "on")

def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    return int(raw)

def _float_env(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    return float(raw)

# Run settings
SEED = _int_env("EQBYEQ_SEED", 0)
THREADS = _int_env("EQBYEQ_THREADS", 1)  # 1 = deterministic single worker
MODE = os.getenv("EQBYEQ_MODE", "all")  # all | nonsingular
ORDER = os.getenv("EQBYEQ_ORDER", "given")  # given | degree
LOG_LEVEL = os.getenv("EQBYEQ_LOG_LEVEL", "INFO")

# Witness tolerances
TOL_ZERO = _float_env("EQBYEQ_TOL_ZERO", 1e-8)
TOL_DUP = _float_env("EQBYEQ_TOL_DUP", 1e-6)
TOL_SLICE = _float_env("EQBYEQ_TOL_SLICE", 1e-8)
TOL_RANK = _float_env("EQBYEQ_TOL_RANK", 1e-8)
TOL_RES = _float_env("EQBYEQ_TOL_RES", 1e-8)

# Path tracker
STEP_INIT = _float_env("EQBYEQ_STEP_INIT", 0.05)
STEP_MIN = _float_env("EQBYEQ_STEP_MIN", 1e-10)
STEP_MAX = _float_env("EQBYEQ_STEP_MAX", 0.2)
NEWTON_TOL = _float_env("EQBYEQ_NEWTON_TOL", 1e-9)
MAX_NEWTON_ITERS = _int_env("EQBYEQ_MAX_NEWTON_ITERS", 4)
MAX_STEPS = _int_env("EQBYEQ_MAX_STEPS", 5000)
DIVERGE_NORM = _float_env("EQBYEQ_DIVERGE_NORM", 1e8)
T_END_OFFSET = _float_env("EQBYEQ_T_END_OFFSET", 1e-6)

# Univariate root finder
ABERTH_MAX_ITERS = _int_env("EQBYEQ_ABERTH_MAX_ITERS", 200)
ABERTH_TOL = _float_env("EQBYEQ_ABERTH_TOL", 1e-13)
LEADING_COEFF_TOL = _float_env("EQBYEQ_LEADING_COEFF_TOL", 1e-12)

# Jacobi SVD
JACOBI_TOL = _float_env("EQBYEQ_JACOBI_TOL", 1e-14)
JACOBI_MAX_SWEEPS = _int_env("EQBYEQ_JACOBI_MAX_SWEEPS", 30)

# Reports
REPORT_TIMINGS = str_to_bool(os.getenv("EQBYEQ_REPORT_TIMINGS", "false"), default=False)  # off keeps reports byte-stable


def validate_config():
    """Validate essential configuration."""
    errors = []
    if SEED < 0 or SEED >= 2**64:
        errors.append("EQBYEQ_SEED must be an unsigned 64-bit integer")
    if THREADS < 1:
        errors.append("EQBYEQ_THREADS must be at least 1")
    if MODE not in ("all", "nonsingular"):
        errors.append(f"EQBYEQ_MODE must be 'all' or 'nonsingular', got {MODE!r}")
    if ORDER not in ("given", "degree"):
        errors.append(f"EQBYEQ_ORDER must be 'given' or 'degree', got {ORDER!r}")
    for name, value in (("TOL_ZERO", TOL_ZERO), ("TOL_DUP", TOL_DUP), ("TOL_SLICE", TOL_SLICE),
                        ("TOL_RES", TOL_RES), ("NEWTON_TOL", NEWTON_TOL)):
        if not value > 0:
            errors.append(f"EQBYEQ_{name} must be positive")
    if not 0 < TOL_RANK < 1:
        errors.append("EQBYEQ_TOL_RANK must lie in (0, 1)")
    if not 0 < STEP_MIN <= STEP_INIT <= STEP_MAX < 1:
        errors.append("step sizes must satisfy 0 < STEP_MIN <= STEP_INIT <= STEP_MAX < 1")

    if errors:
        raise ValueError("Configuration error: " + "; ".join(errors))
