"""Numerical orbits of periodic systems near their common fixed point.

Orbits are iterated in double precision, cycling through the maps of the
system one step at a time, and observed after every full period (that is,
under the composition map). Attraction towards a non-hyperbolic fixed
point is only polynomially fast, so besides hitting the convergence or
escape radius an orbit is also judged by the trend of its radius: the log
ratio between the mean radius over the last and the first observation
windows.

Example:
    ```python
    from parrondo_lab.gallery import gallery_get
    from parrondo_lab.simulate import SimConfig, empirical_verdict

    system = gallery_get("e-F1F2F3").system
    print(empirical_verdict(system, SimConfig()))
    # EmpiricalVerdict.ATTRACTING_ALL
    ```
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import brentq
from scipy.special import lambertw

from .error import ConfigurationError, InputError, RootNotBracketed
from .jet import Jet1D
from .periodic import (
    LinearSystem,
    PeriodicSystem1D,
    PeriodicSystem2D,
    ProductSystem,
)
from .planar import PlanarPolyMap
from .tables import format_records

logger = logging.getLogger(__name__)

Step = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SimConfig:
    """Knobs of the orbit simulator.

    Attributes:
        max_iters: Maximum number of map applications per orbit.
        escape_radius: Distance at which an orbit counts as escaped.
        converge_radius: Distance at which an orbit counts as converged.
        initial_radius: Distance of the sampled initial points.
        n_samples: Number of initial points for ``empirical_verdict``.
        trend_window: Fraction of the observations averaged at each end
            of the orbit for the radius trend.
        trend_tol: Minimum absolute trend that counts as attraction or
            repulsion.
        seed: Seed for the random directions of product systems.
    """

    max_iters: int = 1_000_000
    escape_radius: float = 0.5
    converge_radius: float = 1e-10
    initial_radius: float = 1e-2
    n_samples: int = 16
    trend_window: float = 0.1
    trend_tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ConfigurationError(
                f"max_iters must be positive, got {self.max_iters}"
            )
        if self.n_samples < 1:
            raise ConfigurationError(
                f"n_samples must be positive, got {self.n_samples}"
            )
        if not (
            0 < self.converge_radius < self.initial_radius
            < self.escape_radius
        ):
            raise ConfigurationError(
                "Radii must satisfy 0 < converge_radius < initial_radius "
                f"< escape_radius, got {self.converge_radius}, "
                f"{self.initial_radius}, {self.escape_radius}"
            )
        if not 0 < self.trend_window <= 0.5:
            raise ConfigurationError(
                f"trend_window must lie in (0, 0.5], got {self.trend_window}"
            )
        if not self.trend_tol > 0:
            raise ConfigurationError(
                f"trend_tol must be positive, got {self.trend_tol}"
            )


class OrbitStatus(str, Enum):
    CONVERGED = "Converged"
    ESCAPED = "Escaped"
    MAXED_OUT = "MaxedOut"


class EmpiricalVerdict(str, Enum):
    """Aggregate behaviour of sampled orbits."""

    ATTRACTING_ALL = "AttractingAll"
    REPELLING_ALL = "RepellingAll"
    MIXED = "Mixed"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class OrbitResult:
    """Outcome of one orbit.

    Attributes:
        status: Converged, Escaped or MaxedOut.
        iteration: Number of map applications performed.
        final_radius: Distance to the origin at the last observation.
        trend: Log ratio of late to early mean radius (MaxedOut only).
        non_finite: True when the orbit overflowed or produced NaN.
        trace: ``(step, map_index, *coordinates)`` rows when recorded;
            map_index is 1-based and 0 for the initial point.
        dimension: Number of coordinates per point.
    """

    status: OrbitStatus
    iteration: int
    final_radius: float
    trend: Optional[float] = None
    non_finite: bool = False
    trace: Optional[Tuple[Tuple[float, ...], ...]] = None
    dimension: int = 1

    def attracted(self, trend_tol: float) -> bool:
        if self.status is OrbitStatus.CONVERGED:
            return True
        return (
            self.status is OrbitStatus.MAXED_OUT
            and self.trend is not None and self.trend < -trend_tol
        )

    def repelled(self, trend_tol: float) -> bool:
        if self.status is OrbitStatus.ESCAPED:
            return True
        return (
            self.status is OrbitStatus.MAXED_OUT
            and self.trend is not None and self.trend > trend_tol
        )


def _jet_step(f: Jet1D) -> Step:
    coeffs = f.float_coefficients()
    return lambda x: npoly.polyval(x, coeffs)


def _planar_step(f: PlanarPolyMap) -> Step:
    return f.evaluate


def _matrix_step(a: np.ndarray) -> Step:
    transposed = np.asarray(a, dtype=float).T
    return lambda x: x @ transposed


def _lift(step: Step, dim: int) -> Step:
    def lifted(x: np.ndarray) -> np.ndarray:
        rows = x.shape[0]
        return step(x.reshape(-1, dim)).reshape(rows, -1)
    return lifted


def _compile(system) -> Tuple[int, List[Step]]:
    """Return the dimension and the per-step maps of ``system``."""
    if isinstance(system, Jet1D):
        return 1, [_jet_step(system)]
    if isinstance(system, PlanarPolyMap):
        return 2, [_planar_step(system)]
    if isinstance(system, PeriodicSystem1D):
        return 1, [_jet_step(f) for f in system.maps]
    if isinstance(system, PeriodicSystem2D):
        return 2, [_planar_step(f) for f in system.maps]
    if isinstance(system, LinearSystem):
        return 2, [_matrix_step(a) for a in system.matrices]
    if isinstance(system, ProductSystem):
        base_dim, steps = _compile(system.base)
        return system.dimension, [_lift(s, base_dim) for s in steps]
    raise TypeError(f"Cannot simulate a {type(system).__name__}")


def system_dimension(system) -> int:
    return _compile(system)[0]


@dataclass
class _Batch:
    status: np.ndarray
    iteration: np.ndarray
    final_radius: np.ndarray
    trend: np.ndarray
    non_finite: np.ndarray


def _run(
    steps: Sequence[Step],
    points: np.ndarray,
    cfg: SimConfig,
    trace: Optional[list] = None,
    trace_every: int = 1,
) -> _Batch:
    period = len(steps)
    n = points.shape[0]
    n_obs = max(1, cfg.max_iters // period)
    window = max(1, int(cfg.trend_window * n_obs))

    x = points.astype(float).copy()
    radius = np.linalg.norm(x, axis=1)
    status = np.full(n, OrbitStatus.MAXED_OUT.value, dtype=object)
    iteration = np.zeros(n, dtype=int)
    final_radius = radius.copy()
    non_finite = np.zeros(n, dtype=bool)
    active = np.ones(n, dtype=bool)

    start = radius <= cfg.converge_radius
    status[start] = OrbitStatus.CONVERGED.value
    active[start] = False
    x[~active] = 0.0

    head_sum = np.zeros(n)
    tail_sum = np.zeros(n)
    step_count = 0
    with np.errstate(over="ignore", invalid="ignore"):
        for obs in range(1, n_obs + 1):
            if not active.any():
                break
            for index, step in enumerate(steps, start=1):
                x = step(x)
                step_count += 1
                if trace is not None and step_count % trace_every == 0:
                    trace.append((step_count, index, *x[0].tolist()))
            radius = np.linalg.norm(x, axis=1)

            bad = active & ~np.isfinite(radius)
            escaped = active & (bad | (radius >= cfg.escape_radius))
            converged = active & ~escaped & (radius <= cfg.converge_radius)
            for mask, label in ((escaped, OrbitStatus.ESCAPED),
                                (converged, OrbitStatus.CONVERGED)):
                status[mask] = label.value
                iteration[mask] = step_count
                final_radius[mask] = radius[mask]
            non_finite |= bad
            active &= ~(escaped | converged)
            x[~active] = 0.0

            if obs <= window:
                head_sum += np.where(active, radius, 0.0)
            if obs > n_obs - window:
                tail_sum += np.where(active, radius, 0.0)
            final_radius[active] = radius[active]
            iteration[active] = step_count

    trend = np.full(n, np.nan)
    if active.any():
        with np.errstate(divide="ignore", invalid="ignore"):
            trend[active] = np.log(tail_sum[active] / head_sum[active])
    return _Batch(status, iteration, final_radius, trend, non_finite)


def _as_points(x0: Any, dim: int) -> np.ndarray:
    point = np.atleast_1d(np.asarray(x0, dtype=float)).reshape(-1)
    if point.shape[0] != dim:
        raise InputError(
            f"Initial point has {point.shape[0]} coordinates, "
            f"the system needs {dim}"
        )
    if not np.all(np.isfinite(point)):
        raise InputError(f"Initial point {point.tolist()} is not finite")
    return point.reshape(1, dim)


def iterate_orbit(
    system,
    x0: Any,
    cfg: Optional[SimConfig] = None,
    record_trace: bool = False,
    trace_every: int = 1,
) -> OrbitResult:
    """Iterate one orbit until it converges, escapes or runs out of steps.

    Args:
        system: A ``Jet1D``, ``PlanarPolyMap``, periodic system, product
            system or linear system.
        x0: Initial point (scalar for one-dimensional systems).
        cfg: Simulation settings; defaults to ``SimConfig()``.
        record_trace: Keep the visited points.
        trace_every: Keep one point every this many steps.

    Raises:
        InputError: If ``x0`` is not finite or has the wrong dimension.
    """
    cfg = cfg or SimConfig()
    if trace_every < 1:
        raise ConfigurationError(
            f"trace_every must be >= 1, got {trace_every}"
        )
    dim, steps = _compile(system)
    points = _as_points(x0, dim)

    trace = None
    if record_trace:
        trace = [(0, 0, *points[0].tolist())]
    batch = _run(steps, points, cfg, trace, trace_every)
    result = _orbit_result(batch, 0, dim)
    if trace is not None:
        result = OrbitResult(
            result.status, result.iteration, result.final_radius,
            result.trend, result.non_finite, tuple(trace), dim,
        )
    logger.debug(
        "Orbit from %s: %s after %d steps",
        points[0].tolist(), result.status.value, result.iteration,
    )
    return result


def _orbit_result(batch: _Batch, i: int, dim: int) -> OrbitResult:
    trend = batch.trend[i]
    return OrbitResult(
        status=OrbitStatus(batch.status[i]),
        iteration=int(batch.iteration[i]),
        final_radius=float(batch.final_radius[i]),
        trend=None if math.isnan(trend) else float(trend),
        non_finite=bool(batch.non_finite[i]),
        dimension=dim,
    )


def initial_points(system, cfg: SimConfig) -> np.ndarray:
    """Sample ``n_samples`` points at distance about ``initial_radius``.

    One-dimensional systems alternate signs with slightly varied
    magnitudes, planar systems use equally spaced angles and higher
    dimensions use seeded random directions.
    """
    dim = system_dimension(system)
    n, r = cfg.n_samples, cfg.initial_radius
    if dim == 1:
        signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
        magnitudes = r * (1 + 0.1 * np.arange(n) / n)
        return (signs * magnitudes).reshape(n, 1)
    if dim == 2:
        angles = 2 * np.pi * np.arange(n) / n
        return r * np.column_stack((np.cos(angles), np.sin(angles)))
    rng = np.random.default_rng(cfg.seed)
    directions = rng.standard_normal((n, dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    return r * directions


def sample_orbits(
    system, cfg: Optional[SimConfig] = None
) -> List[OrbitResult]:
    """Run ``iterate_orbit`` from every sampled initial point at once."""
    cfg = cfg or SimConfig()
    dim, steps = _compile(system)
    batch = _run(steps, initial_points(system, cfg), cfg)
    return [_orbit_result(batch, i, dim) for i in range(cfg.n_samples)]


def aggregate_verdict(
    results: Sequence[OrbitResult], trend_tol: float
) -> EmpiricalVerdict:
    attracted = [r.attracted(trend_tol) for r in results]
    repelled = [r.repelled(trend_tol) for r in results]
    if not all(a or b for a, b in zip(attracted, repelled)):
        return EmpiricalVerdict.INCONCLUSIVE
    if all(attracted):
        return EmpiricalVerdict.ATTRACTING_ALL
    if all(repelled):
        return EmpiricalVerdict.REPELLING_ALL
    return EmpiricalVerdict.MIXED


def empirical_verdict(
    system, cfg: Optional[SimConfig] = None
) -> EmpiricalVerdict:
    """Corroborate an analytic verdict with sampled orbits.

    Returns:
        AttractingAll if every sample is attracted, RepellingAll if every
        sample is repelled, Mixed when both happen and Inconclusive when
        some sample shows no clear trend.
    """
    cfg = cfg or SimConfig()
    verdict = aggregate_verdict(sample_orbits(system, cfg), cfg.trend_tol)
    if verdict is EmpiricalVerdict.INCONCLUSIVE:
        logger.warning(
            "Simulation inconclusive after %d steps; raise max_iters or "
            "lower initial_radius", cfg.max_iters,
        )
    return verdict


def trace_frame(result: OrbitResult, return_type: str = "pandas") -> Any:
    """Return the recorded trace as records or a data frame.

    Columns are ``step``, ``map_index`` and ``x`` (one dimension), ``x, y``
    (two dimensions) or ``x1, ..., xn``.
    """
    if result.trace is None:
        raise ValueError("Orbit was iterated without record_trace=True")
    if result.dimension == 1:
        names = ["x"]
    elif result.dimension == 2:
        names = ["x", "y"]
    else:
        names = [f"x{i}" for i in range(1, result.dimension + 1)]
    columns = ["step", "map_index"] + names
    records = [dict(zip(columns, row)) for row in result.trace]
    return format_records(records, return_type)


def g_a(a: float, x: float) -> float:
    """g_a(x) = a (exp(-x/a) - 1)."""
    return a * math.expm1(-x / a)


def h_n(n: int, x: float) -> float:
    """Affine map ((-1)^n / 3)((2n + 3) x + n)."""
    return (-1) ** n * ((2 * n + 3) * x + n) / 3


def h_n_inverse(n: int, y: float) -> float:
    return (3 * (-1) ** n * y - n) / (2 * n + 3)


def solve_a0(lo: float = -1.0, hi: float = -0.5, xtol: float = 1e-12) -> float:
    """Solve g_a(1) = -2 for a on the bracket (lo, hi).

    Raises:
        RootNotBracketed: If g_a(1) + 2 has the same sign at both ends or
            the solver fails.
    """
    def residual(a):
        return g_a(a, 1.0) + 2

    f_lo, f_hi = residual(lo), residual(hi)
    logger.debug("Bracket for a0: f(%s)=%s, f(%s)=%s", lo, f_lo, hi, f_hi)
    if f_lo * f_hi > 0:
        raise RootNotBracketed(
            f"g_a(1) + 2 has the same sign at a={lo} and a={hi}"
        )
    try:
        return brentq(residual, lo, hi, xtol=xtol)
    except (ValueError, RuntimeError) as e:
        raise RootNotBracketed(f"Root solve for a0 failed: {e}") from e


def lambert_a0() -> float:
    """Closed form of a0 through the secondary real Lambert W branch."""
    w = lambertw(-math.exp(-0.5) / 2, k=-1).real
    return 2 / (2 * w + 1)


def f_n(n: int, a0: float, x: float) -> float:
    """The n-th map h_n o f_0 o h_n^-1 of the non-periodic system."""
    return h_n(n, g_a(a0, h_n_inverse(n, x)))


@dataclass(frozen=True)
class UnboundedReport:
    """Check of the unbounded orbit y_n = (-1)^n (n + 1).

    Attributes:
        a0: Parameter with f_0(1) = -2.
        f0_at_1: f_0(1) as computed.
        y: y_0, ..., y_{n_max + 1}.
        residuals: |f_n(y_n) - y_{n+1}| for n = 0, ..., n_max.
    """

    a0: float
    f0_at_1: float
    y: Tuple[int, ...]
    residuals: Tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    def to_records(self) -> List[dict]:
        return [
            {"n": n, "y_n": self.y[n], "y_next": self.y[n + 1],
             "residual": res}
            for n, res in enumerate(self.residuals)
        ]

    def table(self, return_type: str = "json") -> Any:
        return format_records(self.to_records(), return_type)


def unbounded_demo(n_max: int = 200) -> UnboundedReport:
    """Verify f_n(y_n) = y_{n+1} along y_n = (-1)^n (n + 1).

    f_0 = g_{a0} with a0 solving g_a(1) = -2, and f_n = h_n o f_0 o h_n^-1.
    Each f_n is conjugate to f_0, whose fixed point at the origin attracts
    every orbit; f_n fixes h_n(0). The orbit of 1 is nevertheless
    unbounded.
    """
    if n_max < 1:
        raise InputError(f"n_max must be at least 1, got {n_max}")
    a0 = solve_a0()
    y = tuple((-1) ** n * (n + 1) for n in range(n_max + 2))
    residuals = tuple(
        abs(f_n(n, a0, y[n]) - y[n + 1]) for n in range(n_max + 1)
    )
    report = UnboundedReport(a0, g_a(a0, 1.0), y, residuals)
    logger.debug(
        "Unbounded orbit: a0=%s, max residual %s", a0, report.max_residual
    )
    return report
