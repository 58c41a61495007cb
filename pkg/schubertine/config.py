import os

from schubertine.errors import PreconditionError

THREADS_ENV_VAR = "SCHUBERTINE_THREADS"

# Quotient rewriting gives up after this many steps on a single input
MAX_REWRITE_STEPS = 10**6


def max_threads() -> int:
    """Worker cap for verification suites, read from SCHUBERTINE_THREADS."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(
            THREADS_ENV_VAR, f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}"
        )
    if value < 1:
        raise PreconditionError(
            THREADS_ENV_VAR, f"{THREADS_ENV_VAR} must be a positive integer, got {value}"
        )
    return value
