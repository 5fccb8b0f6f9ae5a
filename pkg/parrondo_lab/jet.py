"""Exact arithmetic on truncated one-dimensional Taylor jets.

A jet of order N stores the coefficients a_1, ..., a_N of a map
f(x) = a_1 x + a_2 x^2 + ... + a_N x^N + O(N+1) with a fixed point at the
origin. Coefficients are ``fractions.Fraction`` values, so composition,
inversion and evaluation are exact.

Example:
    ```python
    from parrondo_lab.jet import jet_from_coeffs, jet_compose

    f1 = jet_from_coeffs([-1, 3, -9, 0, 164])
    f2 = jet_from_coeffs([-1, 5, -25, 0, 1259])
    f3 = jet_from_coeffs([-1, 2, -4, 0, 33])
    f321 = jet_compose(f3, jet_compose(f2, f1))
    print(f321)  # -x + 90x^4 - 48x^5 + O(6)
    ```
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .error import EmptyCoefficients, NonInvertibleJet

logger = logging.getLogger(__name__)

Coefficient = Union[int, str, Fraction, Rational]


def to_fraction(value: Coefficient) -> Fraction:
    """Convert an int, rational string (``"7/3"``) or Fraction exactly."""
    if isinstance(value, float):
        raise TypeError(
            f"Float coefficient {value!r} would not be exact; "
            "pass an int, a Fraction or a string such as '7/3'"
        )
    return Fraction(value)


@dataclass(frozen=True)
class Jet1D:
    """Truncated Taylor jet of a one-dimensional map fixing the origin.

    Attributes:
        coeffs: Tuple of ``Fraction``; entry ``k - 1`` holds a_k, the
            coefficient of x^k.
    """

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise EmptyCoefficients("A jet needs at least the coefficient a_1")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def multiplier(self) -> Fraction:
        """The derivative f'(0) = a_1."""
        return self.coeffs[0]

    def coefficient(self, k: int) -> Fraction:
        """Return a_k, or zero when k exceeds the order."""
        if k < 1:
            raise IndexError(f"Jet coefficients start at k=1, got {k}")
        if k > self.order:
            return Fraction(0)
        return self.coeffs[k - 1]

    def padded(self, order: int) -> "Jet1D":
        """Return this jet zero-padded (never truncated) to ``order``."""
        if order <= self.order:
            return self
        logger.debug("Padding jet of order %d to order %d", self.order, order)
        return Jet1D(self.coeffs + (Fraction(0),) * (order - self.order))

    def truncated(self, order: int) -> "Jet1D":
        """Return the jet cut down to ``order`` coefficients."""
        if order >= self.order:
            return self
        return Jet1D(self.coeffs[:order])

    def float_coefficients(self) -> np.ndarray:
        """Coefficients as floats, index 0 being the (zero) constant term.

        The layout matches ``numpy.polynomial.polynomial.polyval``.
        """
        return np.array([0.0] + [float(c) for c in self.coeffs])

    def __call__(self, x: Coefficient) -> Fraction:
        return jet_eval(self, to_fraction(x))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            power = "x" if k == 1 else f"x^{k}"
            magnitude = abs(c)
            body = power if magnitude == 1 else f"{magnitude}{power}"
            if not terms:
                terms.append(f"-{body}" if c < 0 else body)
            else:
                terms.append(f"- {body}" if c < 0 else f"+ {body}")
        head = " ".join(terms) if terms else "0"
        return f"{head} + O({self.order + 1})"


def jet_from_coeffs(coeffs: Iterable[Coefficient]) -> Jet1D:
    """Build a jet from a_1, a_2, ..., a_N.

    Args:
        coeffs: Coefficients in increasing degree, starting at x^1. Each
            entry may be an int, a Fraction or a rational string.

    Returns:
        The jet of order ``len(coeffs)``.

    Raises:
        EmptyCoefficients: If no coefficient is given.
    """
    values = tuple(to_fraction(c) for c in coeffs)
    if not values:
        raise EmptyCoefficients("A jet needs at least the coefficient a_1")
    return Jet1D(values)


def identity_jet(order: int = 1) -> Jet1D:
    """The identity map x, padded to ``order``."""
    return Jet1D((Fraction(1),) + (Fraction(0),) * (order - 1))


def jet_eval(f: Jet1D, x: Fraction) -> Fraction:
    """Evaluate sum a_k x^k exactly (Horner scheme)."""
    acc = Fraction(0)
    for c in reversed(f.coeffs):
        acc = (acc + c) * x
    return acc


def _series_mul(
    a: Sequence[Fraction], b: Sequence[Fraction], order: int
) -> List[Fraction]:
    """Product of two coefficient lists (index = degree), cut at ``order``."""
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > order:
            continue
        for j in range(min(len(b), order - i + 1)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def jet_compose(outer: Jet1D, inner: Jet1D) -> Jet1D:
    """Return the jet of ``outer(inner(x))``.

    The result has order ``min(outer.order, inner.order)``: coefficients
    beyond that are not determined by the inputs.
    """
    order = min(outer.order, inner.order)
    base = [Fraction(0)] + list(inner.coeffs[:order])
    power = base
    result = [Fraction(0)] * (order + 1)
    for k in range(1, order + 1):
        a_k = outer.coeffs[k - 1]
        if a_k:
            for d in range(k, order + 1):
                result[d] += a_k * power[d]
        if k < order:
            power = _series_mul(power, base, order)
    return Jet1D(tuple(result[1:]))


def jet_square(f: Jet1D) -> Jet1D:
    """Return the jet of f o f."""
    return jet_compose(f, f)


def jet_inverse(f: Jet1D) -> Jet1D:
    """Return the jet of the local inverse of ``f`` at the origin.

    Coefficients are solved one degree at a time: with g_1 = 1/a_1 fixed,
    the x^n coefficient of f(g(x)) is a_1 g_n plus a term depending only on
    g_1, ..., g_{n-1}, which must vanish for n >= 2.

    Raises:
        NonInvertibleJet: If a_1 is zero.
    """
    a1 = f.multiplier
    if a1 == 0:
        raise NonInvertibleJet("Cannot invert a jet with f'(0) = 0")

    g = [Fraction(1) / a1]
    for n in range(2, f.order + 1):
        trial = Jet1D(tuple(g) + (Fraction(0),))
        residual = jet_compose(f.truncated(n), trial).coeffs[n - 1]
        g.append(-residual / a1)
    return Jet1D(tuple(g))
