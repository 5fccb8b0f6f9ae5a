"""Stability constants and local verdicts for one-dimensional jets.

For an orientation-reversing jet f(x) = -x + a_2 x^2 + ..., the square is
f o f (x) = x + W_3 x^3 + W_4 x^4 + ...; the first nonzero W_l is the
stability constant V_l. It always has odd order and its sign decides the
verdict: negative means LAS, positive means repeller.

For an orientation-preserving jet f(x) = x + a_m x^m + ... the first
nonzero a_m decides directly: even m gives a semi-asymptotically stable
point (from the left when a_m > 0), odd m gives a repeller (a_m > 0) or a
LAS point (a_m < 0).

Example:
    ```python
    from parrondo_lab.jet import jet_from_coeffs
    from parrondo_lab.stability1d import classify_1d, stability_constants

    g321 = jet_from_coeffs([-1, 0, 0, 90, 48])
    stability_constants(g321).v_first   # (5, Fraction(-96, 1))
    classify_1d(g321).stability         # Stability.LAS
    ```
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .error import InvalidNormalForm, OddOrderViolation, WrongMultiplier
from .jet import Coefficient, Jet1D, jet_square, to_fraction
from .verdict import Stability

logger = logging.getLogger(__name__)

RULE_LINEARIZATION = "linearization"
RULE_LEADING_TERM = "orientation-preserving leading term"
RULE_STABILITY_CONSTANT = "orientation-reversing stability constant"

IndexedValue = Tuple[int, Fraction]


@dataclass(frozen=True)
class StabilityConstants1D:
    """Coefficients W_j of f o f - x and the first nonzero one.

    Attributes:
        w_values: ``(j, W_j)`` pairs for 3 <= j <= order.
        v_first: ``(l, V_l)`` for the first nonzero W, or None.
        involution_up_to_order: True when every computable W vanishes.
        order: Order of the jet the constants were extracted from.
    """

    w_values: Tuple[IndexedValue, ...]
    v_first: Optional[IndexedValue]
    involution_up_to_order: bool
    order: int


@dataclass(frozen=True)
class Verdict1D:
    """Verdict for the origin of a one-dimensional jet.

    Attributes:
        stability: The verdict itself.
        order_decided: Degree of the coefficient or constant that decided
            it (1 for hyperbolic cases, the jet order when undetermined).
        rule: Which criterion was applied.
        constant: ``(index, value)`` of the deciding quantity, if any.
    """

    stability: Stability
    order_decided: int
    rule: str
    constant: Optional[IndexedValue] = None


def _require_reversing(f: Jet1D) -> None:
    if f.multiplier != -1:
        raise WrongMultiplier(
            f"Stability constants need f'(0) = -1, got {f.multiplier}"
        )


def stability_constants(f: Jet1D) -> StabilityConstants1D:
    """Extract W_j (3 <= j <= order) from the square of ``f``.

    Raises:
        WrongMultiplier: If f'(0) != -1.
        OddOrderViolation: If the first nonzero W_j has even j, which
            would contradict the odd-order property of these constants.
    """
    _require_reversing(f)
    square = jet_square(f)
    w_values = tuple(
        (j, square.coefficient(j)) for j in range(3, f.order + 1)
    )
    v_first = next(((j, w) for j, w in w_values if w != 0), None)

    if v_first is not None and v_first[0] % 2 == 0:
        raise OddOrderViolation(
            f"First nonzero stability constant has even order {v_first[0]}",
            details={"jet": [str(c) for c in f.coeffs]},
        )

    logger.debug("Stability constants of %s: first nonzero %s", f, v_first)
    return StabilityConstants1D(
        w_values=w_values,
        v_first=v_first,
        involution_up_to_order=v_first is None,
        order=f.order,
    )


def _closed_forms(a):
    a2, a4, a6, a8, a10 = a(2), a(4), a(6), a(8), a(10)
    yield 3, lambda: 2 * (-a2 ** 2 - a(3))
    yield 5, lambda: 2 * (2 * a2 ** 4 - 3 * a2 * a4 - a(5))
    yield 7, lambda: 2 * (
        -13 * a2 ** 6 + 18 * a2 ** 3 * a4 - 4 * a6 * a2 - 2 * a4 ** 2 - a(7)
    )
    yield 9, lambda: 2 * (
        145 * a2 ** 8 - 221 * a2 ** 5 * a4 + 35 * a2 ** 3 * a6
        + 50 * a2 ** 2 * a4 ** 2 - 5 * a2 * a8 - 5 * a6 * a4 - a(9)
    )
    yield 11, lambda: 2 * (
        -2328 * a2 ** 10 + 3879 * a2 ** 7 * a4 - 561 * a2 ** 5 * a6
        - 1263 * a2 ** 4 * a4 ** 2 + 61 * a2 ** 3 * a8
        + 171 * a2 ** 2 * a4 * a6 + 55 * a2 * a4 ** 3 - 6 * a2 * a10
        - 6 * a4 * a8 - 3 * a6 ** 2 - a(11)
    )


def closed_form_constants(f: Jet1D) -> Tuple[IndexedValue, ...]:
    """Evaluate the printed formulas for V_3, V_5, ..., V_11.

    Each formula was derived assuming every earlier constant vanishes, so
    V_{2m+1} from this function equals the true stability constant only in
    that situation. Formulas whose index exceeds the jet order are omitted.

    Returns:
        ``(index, value)`` pairs in increasing index.

    Raises:
        WrongMultiplier: If f'(0) != -1.
    """
    _require_reversing(f)
    return tuple(
        (index, formula())
        for index, formula in _closed_forms(f.coefficient)
        if index <= f.order
    )


def _classify_preserving(f: Jet1D) -> Verdict1D:
    for m in range(2, f.order + 1):
        a_m = f.coefficient(m)
        if a_m == 0:
            continue
        if m % 2 == 0:
            side = (
                Stability.SEMI_AS_LEFT if a_m > 0 else Stability.SEMI_AS_RIGHT
            )
        else:
            side = Stability.REPELLER if a_m > 0 else Stability.LAS
        return Verdict1D(side, m, RULE_LEADING_TERM, (m, a_m))
    return Verdict1D(
        Stability.UNDETERMINED_AT_ORDER, f.order, RULE_LEADING_TERM
    )


def classify_1d(f: Jet1D) -> Verdict1D:
    """Classify the origin of ``f``.

    Returns:
        Hyperbolic verdicts when |a_1| != 1; otherwise the verdict decided
        by the leading nonlinear term (a_1 = 1) or by the first nonzero
        stability constant (a_1 = -1). When nothing within the jet order
        decides, the verdict is UndeterminedAtOrder (a_1 = 1) or
        InvolutionUpToOrder (a_1 = -1).
    """
    a1 = f.multiplier
    if abs(a1) != 1:
        stability = (
            Stability.HYPERBOLIC_ATTRACTING if abs(a1) < 1
            else Stability.HYPERBOLIC_REPELLING
        )
        return Verdict1D(stability, 1, RULE_LINEARIZATION, (1, a1))
    if a1 == 1:
        return _classify_preserving(f)

    constants = stability_constants(f)
    if constants.v_first is None:
        return Verdict1D(
            Stability.INVOLUTION_UP_TO_ORDER, f.order, RULE_STABILITY_CONSTANT
        )
    index, value = constants.v_first
    stability = Stability.LAS if value < 0 else Stability.REPELLER
    return Verdict1D(
        stability, index, RULE_STABILITY_CONSTANT, constants.v_first
    )


def normal_form_jet(
    sign_linear: int,
    sign_nonlinear: int,
    m: int,
    c: Coefficient = 0,
    order: Optional[int] = None,
) -> Jet1D:
    """Build the normal-form jet +-x +- x^(m+1) + c x^(2m+1).

    Args:
        sign_linear: +1 (orientation preserving) or -1 (reversing).
        sign_nonlinear: +1 or -1, the sign of the x^(m+1) term.
        m: Positive integer; must be even when ``sign_linear`` is -1.
        c: Coefficient of x^(2m+1).
        order: Jet order; defaults to 2m+1 and may not be smaller than m+1.

    Raises:
        InvalidNormalForm: On bad signs, m < 1, an odd m with
            ``sign_linear = -1``, or an order below m+1.
    """
    if sign_linear not in (1, -1) or sign_nonlinear not in (1, -1):
        raise InvalidNormalForm("Signs must be +1 or -1")
    if m < 1:
        raise InvalidNormalForm(f"m must be a positive integer, got {m}")
    if sign_linear == -1 and m % 2:
        raise InvalidNormalForm(
            f"Orientation-reversing normal forms need an even m, got {m}"
        )
    order = 2 * m + 1 if order is None else order
    if order < m + 1:
        raise InvalidNormalForm(
            f"Order {order} cannot hold the x^{m + 1} term"
        )

    coeffs = [Fraction(0)] * max(order, 2 * m + 1)
    coeffs[0] = Fraction(sign_linear)
    coeffs[m] = Fraction(sign_nonlinear)
    coeffs[2 * m] += to_fraction(c)
    return Jet1D(tuple(coeffs[:order]))
