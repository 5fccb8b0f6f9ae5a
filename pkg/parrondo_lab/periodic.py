"""Periodic systems, composition maps and Parrondo detection.

A periodic system x_{n+1} = f_{n+1}(x_n) cycles through the maps
f_1, ..., f_k in application order (f_1 first). Its local behaviour at a
common fixed point is that of the composition map f_k o ... o f_1. A
Parrondo-type effect occurs when every map repels and the composition
attracts, or the other way round.

Example:
    ```python
    from parrondo_lab.jet import jet_from_coeffs
    from parrondo_lab.periodic import PeriodicSystem1D, detect_parrondo_1d

    system = PeriodicSystem1D((
        jet_from_coeffs([-1, 2, -4, 0, 31]),
        jet_from_coeffs([-1, 5, -25, 0, 1241]),
        jet_from_coeffs([-1, 3, -9, 0, 160]),
    ))
    report = detect_parrondo_1d(system)
    print(report.paradox)  # Paradox.REPELLERS_TO_LAS
    ```
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import resolve_zero_tol
from .error import InvalidPaddingTarget, MismatchedOrders
from .jet import Coefficient, Jet1D, jet_compose, jet_from_coeffs, to_fraction
from .planar import (
    BirkhoffResult,
    ComplexJet2,
    PlanarPolyMap,
    birkhoff_b1,
    complex_to_real,
    compose_complex,
    real_to_complex,
)
from .stability1d import (
    StabilityConstants1D,
    Verdict1D,
    classify_1d,
    stability_constants,
)
from .tables import format_records
from .verdict import Paradox, Stability, paradox_of

logger = logging.getLogger(__name__)

PADDING_DEGREE = 7
BETA = complex(0.5, math.sqrt(3) / 2)


@dataclass(frozen=True)
class PeriodicSystem1D:
    """Periodic set of one-dimensional jets in application order.

    Attributes:
        maps: f_1, ..., f_k; f_1 is applied first.
        pad: Zero-pad every jet to the largest order instead of rejecting
            a system whose jets have different orders.
    """

    maps: Tuple[Jet1D, ...]
    pad: bool = field(default=False, compare=False)

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("A periodic system needs at least one map")
        orders = {f.order for f in maps}
        if len(orders) > 1:
            if not self.pad:
                raise MismatchedOrders(
                    f"Jets have different orders {sorted(orders)}; "
                    "build the system with pad=True to zero-pad them"
                )
            top = max(orders)
            logger.warning("Zero-padding system jets to order %d", top)
            maps = tuple(f.padded(top) for f in maps)
        object.__setattr__(self, "maps", maps)

    @property
    def period(self) -> int:
        return len(self.maps)

    @property
    def order(self) -> int:
        return self.maps[0].order

    @property
    def dimension(self) -> int:
        return 1

    def __len__(self) -> int:
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)


@dataclass(frozen=True)
class PeriodicSystem2D:
    """Periodic set of planar polynomial maps in application order."""

    maps: Tuple[PlanarPolyMap, ...]

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("A periodic system needs at least one map")
        object.__setattr__(self, "maps", maps)

    @property
    def period(self) -> int:
        return len(self.maps)

    @property
    def dimension(self) -> int:
        return 2

    def __len__(self) -> int:
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)


MapVerdict = Union[Verdict1D, BirkhoffResult]


@dataclass(frozen=True)
class ParrondoReport:
    """Per-map verdicts, the composition verdict and the paradox flag.

    Attributes:
        per_map_verdicts: One verdict per map, in application order.
        composition: Jet of the composition map (``Jet1D`` or
            ``ComplexJet2``).
        composition_verdict: Verdict of the composition map.
        paradox: The Parrondo flag.
        constants: Stability constants of the composition (one-dimensional
            systems with multiplier -1 only).
        complex_jets: Complex form of every map (planar systems only).
    """

    per_map_verdicts: Tuple[MapVerdict, ...]
    composition: Union[Jet1D, ComplexJet2]
    composition_verdict: MapVerdict
    paradox: Paradox
    constants: Optional[StabilityConstants1D] = None
    complex_jets: Tuple[ComplexJet2, ...] = ()

    def per_map_stability(self) -> Tuple[Stability, ...]:
        return tuple(v.stability for v in self.per_map_verdicts)

    def to_records(self) -> List[dict]:
        """One row per map plus a final row for the composition."""
        rows = []
        labels = [f"f{i}" for i in range(1, len(self.per_map_verdicts) + 1)]
        entries = list(zip(labels, self.per_map_verdicts))
        entries.append(("composition", self.composition_verdict))
        for label, verdict in entries:
            row = {"map": label, "verdict": verdict.stability.value}
            if isinstance(verdict, Verdict1D):
                index, value = verdict.constant or (None, None)
                row.update(
                    order_decided=verdict.order_decided,
                    rule=verdict.rule,
                    constant_index=index,
                    constant=None if value is None else str(value),
                )
            else:
                row.update(
                    b1_real=verdict.b1.real,
                    b1_imag=verdict.b1.imag,
                    v1=verdict.v1,
                    resonant=verdict.resonant,
                )
            rows.append(row)
        return rows

    def table(self, return_type: str = "json") -> Any:
        return format_records(self.to_records(), return_type)


def composition_map_1d(system: PeriodicSystem1D) -> Jet1D:
    """Return the jet of f_k o ... o f_1 (f_1 innermost)."""
    composition = system.maps[0]
    for f in system.maps[1:]:
        composition = jet_compose(f, composition)
    logger.debug("Composition of %d jets: %s", system.period, composition)
    return composition


def composition_map_2d(system: PeriodicSystem2D,
                       zero_tol: Optional[float] = None) -> ComplexJet2:
    """Return the complex jet of the planar composition map."""
    jets = [real_to_complex(f, zero_tol) for f in system.maps]
    return _fold_complex(jets)


def _fold_complex(jets: Sequence[ComplexJet2]) -> ComplexJet2:
    composition = jets[0]
    for g in jets[1:]:
        composition = compose_complex(g, composition)
    return composition


def detect_parrondo_1d(system: PeriodicSystem1D) -> ParrondoReport:
    """Classify every map and the composition of a one-dimensional system."""
    per_map = tuple(classify_1d(f) for f in system.maps)
    composition = composition_map_1d(system)
    verdict = classify_1d(composition)
    constants = (
        stability_constants(composition)
        if composition.multiplier == -1 else None
    )
    paradox = paradox_of((v.stability for v in per_map), verdict.stability)
    logger.debug("Parrondo flag for 1-D system: %s", paradox.value)
    return ParrondoReport(per_map, composition, verdict, paradox, constants)


def detect_parrondo_2d(
    system: PeriodicSystem2D, zero_tol: Optional[float] = None
) -> ParrondoReport:
    """Classify every planar map and their composition through B_1.

    Maps or compositions whose eigenvalue is a root of unity of order at
    most 3 get an undetermined verdict, which makes the flag
    Indeterminate.

    Raises:
        NotEllipticRotationForm: If some map does not have a rotation by
            an angle other than 0 and π as linear part.
    """
    tol = resolve_zero_tol(zero_tol)
    jets = tuple(real_to_complex(f, tol) for f in system.maps)
    per_map = tuple(birkhoff_b1(g, tol, allow_resonant=True) for g in jets)
    composition = _fold_complex(jets)
    verdict = birkhoff_b1(composition, tol, allow_resonant=True)
    paradox = paradox_of((v.stability for v in per_map), verdict.stability)
    logger.debug("Parrondo flag for 2-D system: %s", paradox.value)
    return ParrondoReport(
        per_map, composition, verdict, paradox, complex_jets=jets
    )


def detect_parrondo(system, zero_tol: Optional[float] = None):
    """Dispatch to the detector matching the system kind."""
    if isinstance(system, PeriodicSystem1D):
        return detect_parrondo_1d(system)
    if isinstance(system, PeriodicSystem2D):
        return detect_parrondo_2d(system, zero_tol)
    if isinstance(system, ProductSystem):
        return system.report(zero_tol)
    if isinstance(system, LinearSystem):
        return detect_parrondo_linear(system, zero_tol)
    raise TypeError(f"Unsupported system type {type(system).__name__}")


def construct_1d_triple(
    a22: Coefficient,
    A1sq: Coefficient,
    A2sq: Coefficient,
    A3sq: Coefficient,
    a23: Coefficient,
    a4: Coefficient,
) -> PeriodicSystem1D:
    """Build three order-5 jets with V_3 = 0 and V_5 = -2 A_i^2.

    The jets are f_i = -x + a_{2,i} x^2 - a_{2,i}^2 x^3 + a4 x^4 + a_{5,i} x^5
    with a_{5,i} = 2 a_{2,i}^4 - 3 a_{2,i} a4 + A_i^2 and
    a_{2,1} = a22 - a23, a_{2,2} = a22, a_{2,3} = a23. The composition then
    has no quadratic or cubic term, and for a23 = 2, a4 = 0 its constant is
    V_5 = 8 a22 (a22 - 2)(a22 - 4) - 2 (A_1^2 + A_2^2 + A_3^2),
    which is 8 (a22 - 1)(a22^2 - 5 a22 + 3) for A^2 = (2, 9, 1).
    """
    a22, a23, a4 = to_fraction(a22), to_fraction(a23), to_fraction(a4)
    squares = [to_fraction(v) for v in (A1sq, A2sq, A3sq)]
    quadratic = (a22 - a23, a22, a23)

    maps = []
    for a2, a_sq in zip(quadratic, squares):
        a5 = 2 * a2 ** 4 - 3 * a2 * a4 + a_sq
        maps.append(jet_from_coeffs([-1, a2, -a2 ** 2, a4, a5]))
    return PeriodicSystem1D(tuple(maps))


def construct_2d_pair(t: float, s: float, u: float) -> PeriodicSystem2D:
    """Build the planar pair g_1, g_2 of the two-dimensional construction.

    g_1(z) = i z + (t + s i) z^2 + z z̄ and g_2(z) = β z + u z^2 z̄ with
    β = (1 + √3 i)/2. Their Birkhoff constants are
    V_1(g_1) = (3t + s - 1)/2, V_1(g_2) = u/2 and
    V_1(g_2 o g_1) = (1 - √3/2) s + 3t/2 + u/2 - 1/2.
    """
    g1 = ComplexJet2(1j, {(2, 0): complex(t, s), (1, 1): 1 + 0j})
    g2 = ComplexJet2(BETA, {(2, 1): complex(u, 0)})
    return PeriodicSystem2D((complex_to_real(g1), complex_to_real(g2)))


def _padding_jet(sign: int, order: int) -> Jet1D:
    coeffs = [Fraction(0)] * order
    coeffs[0] = Fraction(1)
    coeffs[PADDING_DEGREE - 1] = Fraction(sign)
    return Jet1D(tuple(coeffs))


def extend_with_padding_1d(
    system: PeriodicSystem1D, k: int, padding: Optional[int] = None
) -> PeriodicSystem1D:
    """Lengthen a system to period ``k`` with x - x^7 or x + x^7 maps.

    The padding maps agree with the identity up to degree 6, so the
    coefficients of degree <= 5 of the composition are unchanged.

    Args:
        system: The system to extend.
        k: Target period.
        padding: -1 for x - x^7 (LAS), +1 for x + x^7 (repeller). When
            omitted, the sign follows the per-map verdicts of ``system``.

    Raises:
        InvalidPaddingTarget: If ``k`` is smaller than the period, the
            padding sign is invalid, or it cannot be inferred because the
            per-map verdicts are mixed.
    """
    if k < system.period:
        raise InvalidPaddingTarget(
            f"Cannot extend a system of period {system.period} to {k}"
        )
    if k == system.period:
        return system

    if padding is None:
        verdicts = [classify_1d(f).stability for f in system.maps]
        if all(v.is_attracting for v in verdicts):
            padding = -1
        elif all(v.is_repelling for v in verdicts):
            padding = 1
        else:
            raise InvalidPaddingTarget(
                "Per-map verdicts are mixed; pass padding=+1 or -1"
            )
    if padding not in (1, -1):
        raise InvalidPaddingTarget(
            f"Padding sign must be +1 or -1, got {padding}"
        )

    order = max(system.order, PADDING_DEGREE)
    maps = tuple(f.padded(order) for f in system.maps)
    maps += (_padding_jet(padding, order),) * (k - system.period)
    logger.debug(
        "Extended system to period %d with x%+dx^7", k, padding
    )
    return PeriodicSystem1D(maps)


@dataclass(frozen=True)
class ProductSystem:
    """Uncoupled product of ``copies`` copies of a base system.

    F_j(x_1, ..., x_n) = (f_j(x_1), ..., f_j(x_n)); every component evolves
    independently, so the verdict is that of the base system.
    """

    base: Union[PeriodicSystem1D, PeriodicSystem2D]
    copies: int

    def __post_init__(self):
        if self.copies < 1:
            raise ValueError(f"copies must be >= 1, got {self.copies}")

    @property
    def dimension(self) -> int:
        return self.copies * self.base.dimension

    @property
    def period(self) -> int:
        return self.base.period

    def report(self, zero_tol: Optional[float] = None) -> ParrondoReport:
        if isinstance(self.base, PeriodicSystem1D):
            return detect_parrondo_1d(self.base)
        return detect_parrondo_2d(self.base, zero_tol)


def lift_product(
    system: Union[PeriodicSystem1D, PeriodicSystem2D], copies: int
) -> Union[PeriodicSystem1D, PeriodicSystem2D, ProductSystem]:
    """Lift a system to dimension copies * dim; one copy returns it as is."""
    if copies == 1:
        return system
    return ProductSystem(system, copies)


@dataclass(frozen=True)
class LinearVerdict:
    """Eigenvalues of a 2x2 matrix (or product) and the verdict they give."""

    eigenvalues: Tuple[complex, complex]
    stability: Stability


@dataclass(frozen=True)
class LinearSystem:
    """Periodic set of 2x2 matrices in application order."""

    matrices: Tuple[np.ndarray, ...]

    def __post_init__(self):
        matrices = tuple(np.asarray(a, dtype=float) for a in self.matrices)
        if not matrices:
            raise ValueError("A linear system needs at least one matrix")
        for a in matrices:
            if a.shape != (2, 2):
                raise ValueError(f"Expected a 2x2 matrix, got shape {a.shape}")
        object.__setattr__(self, "matrices", matrices)

    @property
    def period(self) -> int:
        return len(self.matrices)

    @property
    def dimension(self) -> int:
        return 2


@dataclass(frozen=True)
class LinearReport:
    """Verdicts of a linear periodic system.

    Attributes:
        per_map_verdicts: One verdict per matrix.
        product: A_k @ ... @ A_1.
        composition_verdict: Verdict of the product.
        paradox: The Parrondo flag.
    """

    per_map_verdicts: Tuple[LinearVerdict, ...]
    product: np.ndarray
    composition_verdict: LinearVerdict
    paradox: Paradox

    def per_map_stability(self) -> Tuple[Stability, ...]:
        return tuple(v.stability for v in self.per_map_verdicts)

    def to_records(self) -> List[dict]:
        labels = [f"A{i}" for i in range(1, len(self.per_map_verdicts) + 1)]
        entries = list(zip(labels, self.per_map_verdicts))
        entries.append(("composition", self.composition_verdict))
        return [
            {
                "map": label,
                "verdict": verdict.stability.value,
                "eigenvalue_1": str(verdict.eigenvalues[0]),
                "eigenvalue_2": str(verdict.eigenvalues[1]),
            }
            for label, verdict in entries
        ]

    def table(self, return_type: str = "json") -> Any:
        return format_records(self.to_records(), return_type)


def linear_spectrum_2x2(
    matrices: Sequence[Any],
) -> Tuple[np.ndarray, Tuple[complex, complex]]:
    """Multiply 2x2 matrices in application order and return the spectrum.

    The product is A_k @ ... @ A_1. Eigenvalues come from the quadratic
    formula (tr ± sqrt(tr^2 - 4 det)) / 2, the '+' root first.
    """
    if len(matrices) == 0:
        raise ValueError("linear_spectrum_2x2 needs at least one matrix")
    product = np.eye(2)
    for a in matrices:
        product = np.asarray(a, dtype=float) @ product
    trace = product[0, 0] + product[1, 1]
    det = product[0, 0] * product[1, 1] - product[0, 1] * product[1, 0]
    root = np.lib.scimath.sqrt(trace * trace - 4 * det)
    eigenvalues = (
        complex((trace + root) / 2), complex((trace - root) / 2)
    )
    return product, eigenvalues


def classify_linear(
    eigenvalues: Sequence[complex], zero_tol: Optional[float] = None
) -> Stability:
    """Verdict of a linear map from its eigenvalue moduli.

    All moduli below one give HyperbolicAttracting, all above one
    HyperbolicRepelling, one on each side Saddle. A modulus within the
    tolerance of one leaves the linear part undecided.
    """
    tol = resolve_zero_tol(zero_tol)
    moduli = [abs(complex(mu)) for mu in eigenvalues]
    if any(abs(m - 1) <= tol for m in moduli):
        return Stability.UNDETERMINED_AT_ORDER
    if all(m < 1 for m in moduli):
        return Stability.HYPERBOLIC_ATTRACTING
    if all(m > 1 for m in moduli):
        return Stability.HYPERBOLIC_REPELLING
    return Stability.SADDLE


def _linear_verdict(matrices, tol: float) -> LinearVerdict:
    _, eigenvalues = linear_spectrum_2x2(matrices)
    return LinearVerdict(eigenvalues, classify_linear(eigenvalues, tol))


def detect_parrondo_linear(
    system: LinearSystem, zero_tol: Optional[float] = None
) -> "LinearReport":
    """Per-matrix verdicts, the product verdict and the paradox flag."""
    tol = resolve_zero_tol(zero_tol)
    per_map = tuple(_linear_verdict([a], tol) for a in system.matrices)
    composition = _linear_verdict(system.matrices, tol)
    paradox = paradox_of(
        (v.stability for v in per_map), composition.stability
    )
    product, _ = linear_spectrum_2x2(system.matrices)
    return LinearReport(per_map, product, composition, paradox)


def alpha_threshold() -> float:
    """|α| above which the second linear family's product is a saddle."""
    return (math.sqrt(5) - 1) / 2


def linear_family_lin2(alpha: float) -> LinearSystem:
    """The pair α(1, 1; 0, 1), α(1, 0; 1, 1)."""
    return LinearSystem((
        alpha * np.array([[1.0, 1.0], [0.0, 1.0]]),
        alpha * np.array([[1.0, 0.0], [1.0, 1.0]]),
    ))


def expected_b1_2d_pair(t: float, s: float, u: float):
    """Closed-form B_1 of g_1, g_2 and g_2 o g_1 for ``construct_2d_pair``.

    Returns:
        ``(B_1(g_1), B_1(g_2), V_1(g_2 o g_1))``: two complex numbers and,
        for the composition, only the real part as a float.
    """
    b1_g1 = complex((3 * t + s - 1) / 2, (-t + 3 * s - 1) / 2)
    b1_g2 = u * BETA.conjugate()
    v1_g21 = (1 - math.sqrt(3) / 2) * s + 1.5 * t + u / 2 - 0.5
    return b1_g1, b1_g2, v1_g21

