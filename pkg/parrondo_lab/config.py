"""Default tolerances and environment overrides.

Exact (one-dimensional) computations never consult these values; they only
govern floating-point zero tests in the planar and simulation code.

Example:
    ```python
    from parrondo_lab.config import resolve_zero_tol
    tol = resolve_zero_tol()        # PARRONDO_LAB_TOL or 1e-9
    tol = resolve_zero_tol(1e-12)   # explicit value wins
    ```
"""
import logging
import math
import os
from typing import Optional

from .error import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_ZERO_TOL = 1e-9
ROUND_TRIP_TOL = 1e-12
ENV_ZERO_TOL = "PARRONDO_LAB_TOL"


def _validate_tol(value: float, source: str) -> float:
    if not math.isfinite(value) or value <= 0:
        raise ConfigurationError(
            f"Invalid zero tolerance {value!r} from {source}: "
            "must be a positive finite number"
        )
    return value


def resolve_zero_tol(explicit: Optional[float] = None) -> float:
    """Return the zero tolerance to use for floating-point tests.

    Args:
        explicit: Value passed by the caller (for example from ``--tol``).
            Takes precedence over the environment.

    Returns:
        The explicit value, else the value of ``PARRONDO_LAB_TOL``, else
        ``DEFAULT_ZERO_TOL``.

    Raises:
        ConfigurationError: If the chosen value is not a positive finite
            number or the environment variable does not parse.
    """
    if explicit is not None:
        return _validate_tol(float(explicit), "argument")

    raw = os.environ.get(ENV_ZERO_TOL)
    if raw is None or raw.strip() == "":
        return DEFAULT_ZERO_TOL

    try:
        value = float(raw)
    except ValueError as e:
        raise ConfigurationError(
            f"{ENV_ZERO_TOL}={raw!r} is not a number"
        ) from e

    logger.debug("Using zero tolerance %s from %s", value, ENV_ZERO_TOL)
    return _validate_tol(value, ENV_ZERO_TOL)
