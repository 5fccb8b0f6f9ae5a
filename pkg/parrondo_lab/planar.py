"""Elliptic fixed points of planar maps and their first Birkhoff constant.

A planar map with a fixed point at the origin and a rotation as linear
part is handled in two equivalent forms:

- ``PlanarPolyMap``: real components P(x, y), Q(x, y), as monomial
  coefficient tables;
- ``ComplexJet2``: g(z, z̄) = λ z + Σ a_{m,j} z^m z̄^j with 2 <= m+j <= 3,
  where z = x + iy.

The first Birkhoff constant B_1 is computed from the complex form; when
λ is not a root of unity of order 1, 2 or 3 the sign of V_1 = Re(B_1)
decides between LAS (negative) and repeller (positive).

Example:
    ```python
    from parrondo_lab.planar import PlanarPolyMap, classify_planar

    f1 = PlanarPolyMap.from_terms(
        [(0, 1, -1.0), (2, 0, 2.0), (1, 1, 6.0)],
        [(1, 0, 1.0), (2, 0, -3.0), (1, 1, 2.0), (0, 2, 3.0)],
    )
    result = classify_planar(f1)
    print(result.b1, result.stability)  # (-0.5-5.5j) Stability.LAS
    ```
"""
import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Tuple

import numpy as np

from .config import resolve_zero_tol
from .error import (
    NotEllipticRotationForm,
    NotOnUnitCircle,
    ResonantEigenvalue,
)
from .verdict import Stability

logger = logging.getLogger(__name__)

MAX_DEGREE = 3
_PRUNE = 1e-15

Monomial = Tuple[int, int]
_Poly = Dict[Monomial, complex]


def _poly_mul(a: _Poly, b: _Poly, max_degree: int = MAX_DEGREE) -> _Poly:
    out: _Poly = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            if key[0] + key[1] <= max_degree:
                out[key] = out.get(key, 0) + c1 * c2
    return out


def _poly_add(target: _Poly, a: _Poly, scale: complex) -> None:
    for key, c in a.items():
        target[key] = target.get(key, 0) + scale * c


class _Powers:
    """Cached truncated powers of one bivariate polynomial."""

    def __init__(self, base: _Poly):
        self._cache = {0: {(0, 0): 1 + 0j}, 1: base}

    def __getitem__(self, n: int) -> _Poly:
        if n not in self._cache:
            self._cache[n] = _poly_mul(self[n - 1], self._cache[1])
        return self._cache[n]


def _check_monomials(table: Mapping[Monomial, object], low: int, what: str):
    for (i, j) in table:
        if i < 0 or j < 0 or not low <= i + j <= MAX_DEGREE:
            raise ValueError(
                f"{what} monomial ({i}, {j}) outside degrees "
                f"{low}..{MAX_DEGREE}"
            )


@dataclass(frozen=True)
class PlanarPolyMap:
    """Real planar polynomial map (P(x, y), Q(x, y)) of degree at most 3.

    Attributes:
        p: Coefficients of P keyed by (x-exponent, y-exponent).
        q: Coefficients of Q keyed the same way.
    """

    p: Mapping[Monomial, float] = field(default_factory=dict)
    q: Mapping[Monomial, float] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("p", "q"):
            table = {
                (int(i), int(j)): float(c)
                for (i, j), c in dict(getattr(self, name)).items()
            }
            _check_monomials(table, 1, f"PlanarPolyMap.{name}")
            if not all(math.isfinite(c) for c in table.values()):
                raise ValueError(f"PlanarPolyMap.{name} has non-finite terms")
            object.__setattr__(self, name, table)

    @classmethod
    def from_terms(
        cls,
        p_terms: Iterable[Tuple[int, int, float]],
        q_terms: Iterable[Tuple[int, int, float]],
    ) -> "PlanarPolyMap":
        """Build a map from ``(i, j, coefficient)`` triples.

        Repeated monomials are summed.
        """
        tables = []
        for terms in (p_terms, q_terms):
            table: Dict[Monomial, float] = {}
            for i, j, c in terms:
                table[(i, j)] = table.get((i, j), 0.0) + float(c)
            tables.append(table)
        return cls(tables[0], tables[1])

    def rotation(self) -> Tuple[float, float]:
        """Return (cos θ, sin θ) read from the linear part."""
        return self.p.get((1, 0), 0.0), self.q.get((1, 0), 0.0)

    def evaluate(self, xy: np.ndarray) -> np.ndarray:
        """Apply the map to points stored along the last axis of ``xy``."""
        x = xy[..., 0]
        y = xy[..., 1]
        xp = [np.ones_like(x), x, x * x, x * x * x]
        yp = [np.ones_like(y), y, y * y, y * y * y]
        out = np.zeros_like(xy)
        for col, table in enumerate((self.p, self.q)):
            acc = np.zeros_like(x)
            for (i, j), c in table.items():
                if c:
                    acc = acc + c * xp[i] * yp[j]
            out[..., col] = acc
        return out


@dataclass(frozen=True)
class ComplexJet2:
    """Degree-3 complex jet g(z, z̄) = λ z + Σ a_{m,j} z^m z̄^j.

    Attributes:
        lam: The eigenvalue λ, of modulus one.
        coeffs: a_{m,j} keyed by (m, j), 2 <= m+j <= 3.
    """

    lam: complex
    coeffs: Mapping[Monomial, complex] = field(default_factory=dict)

    def __post_init__(self):
        lam = complex(self.lam)
        if not cmath.isfinite(lam) or abs(abs(lam) - 1) > resolve_zero_tol():
            raise NotOnUnitCircle(f"|lambda| = {abs(lam)} is not 1")
        table = {
            (int(m), int(j)): complex(c)
            for (m, j), c in dict(self.coeffs).items()
        }
        _check_monomials(table, 2, "ComplexJet2")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "coeffs", table)

    def coefficient(self, m: int, j: int) -> complex:
        return self.coeffs.get((m, j), 0j)

    def as_poly(self) -> _Poly:
        poly: _Poly = {(1, 0): self.lam}
        poly.update(self.coeffs)
        return poly

    def conjugate_poly(self) -> _Poly:
        """conj(g) as a polynomial in (z, z̄): exponents swap."""
        poly: _Poly = {(0, 1): self.lam.conjugate()}
        poly.update(
            {(j, m): c.conjugate() for (m, j), c in self.coeffs.items()}
        )
        return poly

    def rescaled(self, c: complex) -> "ComplexJet2":
        """The conjugated jet z -> c^-1 g(c z, c̄ z̄)."""
        cb = c.conjugate()
        return ComplexJet2(
            self.lam,
            {
                (m, j): a * c ** (m - 1) * cb ** j
                for (m, j), a in self.coeffs.items()
            },
        )

    def is_elliptic(self, zero_tol: Optional[float] = None) -> bool:
        tol = resolve_zero_tol(zero_tol)
        return abs(self.lam - 1) > tol and abs(self.lam + 1) > tol

    def __call__(self, z: complex) -> complex:
        zb = z.conjugate()
        return sum(
            (c * z ** m * zb ** j for (m, j), c in self.as_poly().items()),
            0j,
        )


@dataclass(frozen=True)
class BirkhoffResult:
    """First Birkhoff constant and the verdict it implies.

    Attributes:
        b1: The first Birkhoff constant (NaN when resonant).
        v1: Its real part, the first Birkhoff stability constant.
        resonant: True when λ is a root of unity of order <= 3.
        stability: LAS, Repeller or UndeterminedByB1.
    """

    b1: complex
    v1: float
    resonant: bool
    stability: Stability


def real_to_complex(
    f: PlanarPolyMap, zero_tol: Optional[float] = None
) -> ComplexJet2:
    """Rewrite a real planar map as g(z, z̄) = P + iQ.

    Substitutes x = (z + z̄)/2 and y = (z - z̄)/(2i) and collects the
    coefficients of z^m z̄^j.

    Raises:
        NotEllipticRotationForm: If the linear part is not a rotation
            matrix, or is the rotation by 0 or π (eigenvalue ±1).
    """
    tol = resolve_zero_tol(zero_tol)
    c, s = f.rotation()
    p01, q01 = f.p.get((0, 1), 0.0), f.q.get((0, 1), 0.0)
    if (
        abs(p01 + s) > tol
        or abs(q01 - c) > tol
        or abs(c * c + s * s - 1) > tol
    ):
        raise NotEllipticRotationForm(
            "Linear part must be ((cos t, -sin t), (sin t, cos t)); got "
            f"(({c}, {p01}), ({s}, {q01}))"
        )
    if abs(s) <= tol:
        raise NotEllipticRotationForm(
            "Eigenvalue is +1 or -1: parabolic fixed points are excluded"
        )

    x_powers = _Powers({(1, 0): 0.5 + 0j, (0, 1): 0.5 + 0j})
    y_powers = _Powers({(1, 0): -0.5j, (0, 1): 0.5j})
    acc: _Poly = {}
    for scale, table in ((1, f.p), (1j, f.q)):
        for (i, j), coef in table.items():
            _poly_add(acc, _poly_mul(x_powers[i], y_powers[j]), scale * coef)

    coeffs = {
        key: value
        for key, value in acc.items()
        if sum(key) >= 2 and abs(value) > _PRUNE
    }
    return ComplexJet2(complex(c, s), coeffs)


def complex_to_real(g: ComplexJet2) -> PlanarPolyMap:
    """Return (Re g(x+iy, x-iy), Im g(x+iy, x-iy)) as a real map."""
    z_powers = _Powers({(1, 0): 1 + 0j, (0, 1): 1j})
    zb_powers = _Powers({(1, 0): 1 + 0j, (0, 1): -1j})
    acc: _Poly = {}
    for (m, j), coef in g.as_poly().items():
        _poly_add(acc, _poly_mul(z_powers[m], zb_powers[j]), coef)

    p = {k: v.real for k, v in acc.items() if abs(v.real) > _PRUNE}
    q = {k: v.imag for k, v in acc.items() if abs(v.imag) > _PRUNE}
    return PlanarPolyMap(p, q)


def compose_complex(outer: ComplexJet2, inner: ComplexJet2) -> ComplexJet2:
    """Degree-3 truncation of ``outer(inner(z), conj(inner(z)))``."""
    w_powers = _Powers(inner.as_poly())
    wb_powers = _Powers(inner.conjugate_poly())
    acc: _Poly = {}
    for (m, j), coef in outer.as_poly().items():
        _poly_add(acc, _poly_mul(w_powers[m], wb_powers[j]), coef)

    coeffs = {key: value for key, value in acc.items() if sum(key) >= 2}
    return ComplexJet2(outer.lam * inner.lam, coeffs)


def resonance_check(
    lam: complex, max_order: int, zero_tol: Optional[float] = None
) -> bool:
    """Return True if λ^l is within tolerance of 1 for some l <= max_order.

    Raises:
        NotOnUnitCircle: If |λ| differs from 1 by more than the tolerance.
    """
    tol = resolve_zero_tol(zero_tol)
    lam = complex(lam)
    if abs(abs(lam) - 1) > tol:
        raise NotOnUnitCircle(f"|lambda| = {abs(lam)} is not 1")
    power = 1 + 0j
    for ell in range(1, max_order + 1):
        power *= lam
        if abs(power - 1) <= tol:
            logger.debug("lambda=%s is a root of unity of order %d", lam, ell)
            return True
    return False


def _b1_formula(g: ComplexJet2) -> complex:
    lam = g.lam
    a20, a11 = g.coefficient(2, 0), g.coefficient(1, 1)
    a02, a21 = g.coefficient(0, 2), g.coefficient(2, 1)
    abs_a11 = abs(a11) ** 2
    numerator = (
        (abs_a11 + a21) * lam ** 4
        - a11 * (2 * a20 - a11.conjugate()) * lam ** 3
        + (2 * abs(a02) ** 2 - a11 * a20 + abs_a11) * lam ** 2
        - (a11 * a20 + a21) * lam
        + a11 * a20
    )
    denominator = lam ** 2 * (lam - 1) * (lam ** 2 + lam + 1)
    return numerator / denominator


def birkhoff_b1(
    g: ComplexJet2,
    zero_tol: Optional[float] = None,
    allow_resonant: bool = False,
) -> BirkhoffResult:
    """Compute the first Birkhoff constant and the verdict it supports.

    Args:
        g: Complex jet of the map.
        zero_tol: Tolerance for the resonance and sign tests; defaults to
            ``resolve_zero_tol()``.
        allow_resonant: Return an undetermined result instead of raising
            when λ is a root of unity of order <= 3.

    Returns:
        A ``BirkhoffResult``: LAS if V_1 < -tol, Repeller if V_1 > tol,
        UndeterminedByB1 otherwise.

    Raises:
        ResonantEigenvalue: If λ is 3-resonant and ``allow_resonant`` is
            False.
    """
    tol = resolve_zero_tol(zero_tol)
    if resonance_check(g.lam, 3, tol):
        if not allow_resonant:
            raise ResonantEigenvalue(
                f"lambda={g.lam} is a root of unity of order <= 3; "
                "the first Birkhoff constant is not defined"
            )
        nan = float("nan")
        return BirkhoffResult(
            complex(nan, nan), nan, True, Stability.UNDETERMINED_BY_B1
        )

    b1 = _b1_formula(g)
    v1 = b1.real
    if v1 < -tol:
        stability = Stability.LAS
    elif v1 > tol:
        stability = Stability.REPELLER
    else:
        stability = Stability.UNDETERMINED_BY_B1
    logger.debug("B1=%s, V1=%s -> %s", b1, v1, stability.value)
    return BirkhoffResult(b1, v1, False, stability)


def classify_planar(
    f: PlanarPolyMap, zero_tol: Optional[float] = None
) -> BirkhoffResult:
    """Classify the origin of a real planar map through B_1."""
    tol = resolve_zero_tol(zero_tol)
    return birkhoff_b1(real_to_complex(f, tol), tol)
