"""Named example systems bundled with their expected constants and verdicts.

Every entry can be recomputed and compared against its expected values:
exactly for rational quantities, within ``ROUND_TRIP_TOL`` for floating
ones. Irrational expected values are stored as ``Surd`` objects
(r + c·√k with rational r and c) and only turned into floats at
comparison time.

Example:
    ```python
    from parrondo_lab.gallery import GalleryRunner

    runner = GalleryRunner(return_type="pandas")
    df = runner.run_all()
    print(df.groupby("entry")["passed"].all())
    ```
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from .config import ROUND_TRIP_TOL, resolve_zero_tol
from .error import UnknownGalleryEntry
from .jet import Jet1D, jet_compose, jet_from_coeffs, jet_inverse
from .periodic import (
    LinearSystem,
    PeriodicSystem1D,
    PeriodicSystem2D,
    alpha_threshold,
    composition_map_1d,
    construct_1d_triple,
    construct_2d_pair,
    detect_parrondo_1d,
    detect_parrondo_2d,
    detect_parrondo_linear,
    linear_family_lin2,
)
from .planar import PlanarPolyMap
from .simulate import unbounded_demo
from .tables import format_records, validate_return_type

logger = logging.getLogger(__name__)

KIND_1D = "periodic-1d"
KIND_2D = "periodic-2d"
KIND_LINEAR = "linear"
KIND_UNBOUNDED = "unbounded"

HALF_SQRT3 = math.sqrt(3) / 2


@dataclass(frozen=True)
class Surd:
    """The real number rational + coefficient * sqrt(radicand)."""

    rational: Fraction
    coefficient: Fraction = Fraction(0)
    radicand: int = 1

    def __float__(self) -> float:
        return float(self.rational) + float(self.coefficient) * math.sqrt(
            self.radicand
        )

    def __str__(self) -> str:
        if self.coefficient == 0:
            return str(self.rational)
        return f"{self.rational} + ({self.coefficient})*sqrt({self.radicand})"


def _surd(rational, coefficient=0, radicand=1) -> Surd:
    return Surd(Fraction(rational), Fraction(coefficient), radicand)


@dataclass(frozen=True)
class GalleryEntry:
    """A reproducible example system.

    Attributes:
        name: Stable identifier used on the command line.
        title: One-line description.
        kind: One of ``periodic-1d``, ``periodic-2d``, ``linear`` or
            ``unbounded``.
        system: The system (None for the unbounded orbit check).
        expected: Expected quantities keyed by check name.
        notes: Free-form provenance notes.
    """

    name: str
    title: str
    kind: str
    system: Any
    expected: Mapping[str, Any] = field(default_factory=dict)
    notes: str = ""


def _system_1d(*coeff_lists) -> PeriodicSystem1D:
    return PeriodicSystem1D(tuple(jet_from_coeffs(c) for c in coeff_lists))


def _g1_real(t: float, s: float) -> PlanarPolyMap:
    return PlanarPolyMap(
        {(0, 1): -1.0, (2, 0): t + 1, (0, 2): 1 - t, (1, 1): -2 * s},
        {(1, 0): 1.0, (2, 0): s, (0, 2): -s, (1, 1): 2 * t},
    )


def _g2_real(u: float) -> PlanarPolyMap:
    return PlanarPolyMap(
        {(1, 0): 0.5, (0, 1): -HALF_SQRT3, (3, 0): u, (1, 2): u},
        {(1, 0): HALF_SQRT3, (0, 1): 0.5, (2, 1): u, (0, 3): u},
    )


_F_MAPS = ([-1, 3, -9, 0, 164], [-1, 5, -25, 0, 1259], [-1, 2, -4, 0, 33])
_G_MAPS = ([-1, 2, -4, 0, 31], [-1, 5, -25, 0, 1241], [-1, 3, -9, 0, 160])


@lru_cache(maxsize=None)
def _registry() -> Dict[str, GalleryEntry]:
    entries = [
        GalleryEntry(
            name="e-f1f2f3",
            title="Three LAS maps whose composition is a repeller",
            kind=KIND_1D,
            system=_system_1d(*_F_MAPS),
            expected={
                "per_map_constants": ((5, -4), (5, -18), (5, -2)),
                "per_map_verdicts": ("LAS", "LAS", "LAS"),
                "composition_jet": (-1, 0, 0, 90, -48),
                "composition_constant": (5, 96),
                "composition_verdict": "Repeller",
                "paradox": "LASToRepeller",
                "construction": dict(
                    a22=5, A1sq=2, A2sq=9, A3sq=1, a23=2, a4=0
                ),
            },
            notes="V5 of each map equals -2 A_i^2 for A_i^2 = 2, 9, 1.",
        ),
        GalleryEntry(
            name="e-F1F2F3",
            title="Three repellers whose composition is LAS",
            kind=KIND_1D,
            system=_system_1d(*_G_MAPS),
            expected={
                "per_map_constants": ((5, 2), (5, 18), (5, 4)),
                "per_map_verdicts": ("Repeller", "Repeller", "Repeller"),
                "composition_jet": (-1, 0, 0, 90, 48),
                "composition_constant": (5, -96),
                "composition_verdict": "LAS",
                "paradox": "RepellersToLAS",
                "inverse_of": "e-f1f2f3",
            },
            notes="The maps are the local inverses of f3, f2, f1.",
        ),
        GalleryEntry(
            name="g-123-reversed",
            title="The repellers of e-F1F2F3 applied in reverse order",
            kind=KIND_1D,
            system=_system_1d(*reversed(_G_MAPS)),
            expected={
                "per_map_constants": ((5, 4), (5, 18), (5, 2)),
                "per_map_verdicts": ("Repeller", "Repeller", "Repeller"),
                "composition_jet": (-1, 0, 0, 90, -72),
                "composition_constant": (5, 144),
                "composition_verdict": "Repeller",
                "paradox": "None",
            },
            notes="The order of application changes the verdict.",
        ),
        GalleryEntry(
            name="glue-semi-as",
            title="Two LAS branches composing to a semi-stable point",
            kind=KIND_1D,
            system=_system_1d([-1, 1, 0, 0], [-1, 2, 0, 0]),
            expected={
                "per_map_constants": ((3, -2), (3, -8)),
                "per_map_verdicts": ("LAS", "LAS"),
                "composition_jet": (1, 1, -4, 2),
                "composition_verdict": "SemiASLeft",
                "paradox": "None",
            },
            notes=(
                "Local branches -x + x^2 and -x + 2x^2 of a piecewise "
                "system; only their jets at the origin are modelled. The "
                "composition x + x^2 - 4x^3 + 2x^4 attracts from the left "
                "and repels to the right."
            ),
        ),
        GalleryEntry(
            name="unbounded",
            title="Attracting maps with an unbounded non-periodic orbit",
            kind=KIND_UNBOUNDED,
            system=None,
            expected={
                "a0": -0.7959,
                "a0_tol": 1e-4,
                "f0_at_1": -2.0,
                "f0_tol": 1e-10,
                "n_max": 200,
                "residual_tol": 1e-8,
            },
            notes="f_n = h_n o g_a0 o h_n^-1, y_n = (-1)^n (n + 1).",
        ),
        GalleryEntry(
            name="lin1",
            title="Two contracting matrices with a saddle product",
            kind=KIND_LINEAR,
            system=LinearSystem((
                np.array([[0.0, 2.0], [0.0, 0.5]]),
                np.array([[0.5, 0.0], [2.0, 0.0]]),
            )),
            expected={
                "eigenvalues": (_surd(4), _surd(0)),
                "per_map_verdicts": (
                    "HyperbolicAttracting", "HyperbolicAttracting"
                ),
                "composition_verdict": "Saddle",
                "paradox": "None",
            },
        ),
        GalleryEntry(
            name="lin2",
            title="Parametrised pair alpha(1,1;0,1), alpha(1,0;1,1)",
            kind=KIND_LINEAR,
            system=linear_family_lin2(0.5),
            expected={
                "eigenvalues": (
                    _surd(Fraction(3, 8), Fraction(1, 8), 5),
                    _surd(Fraction(3, 8), Fraction(-1, 8), 5),
                ),
                "per_map_verdicts": (
                    "HyperbolicAttracting", "HyperbolicAttracting"
                ),
                "composition_verdict": "HyperbolicAttracting",
                "paradox": "None",
                "alpha_threshold": _surd(Fraction(-1, 2), Fraction(1, 2), 5),
            },
            notes=(
                "Eigenvalues of the product are (3 ± √5) alpha^2 / 2; it "
                "is a saddle once |alpha| > (√5 - 1)/2."
            ),
        ),
        GalleryEntry(
            name="ex-dim2-1",
            title="Two planar LAS maps whose composition is a repeller",
            kind=KIND_2D,
            system=PeriodicSystem2D((_g1_real(1.0, -3.0), _g2_real(-1.0))),
            expected={
                "per_map_b1": (
                    (_surd(Fraction(-1, 2)), _surd(Fraction(-11, 2))),
                    (_surd(Fraction(-1, 2)), _surd(0, Fraction(1, 2), 3)),
                ),
                "composition_b1": (
                    _surd(Fraction(-5, 2), Fraction(3, 2), 3),
                    _surd(Fraction(-13, 2), Fraction(3, 2), 3),
                ),
                "per_map_verdicts": ("LAS", "LAS"),
                "composition_verdict": "Repeller",
                "paradox": "LASToRepeller",
                "construction": dict(t=1.0, s=-3.0, u=-1.0),
            },
        ),
        GalleryEntry(
            name="ex-dim2-2",
            title="Two planar repellers whose composition is LAS",
            kind=KIND_2D,
            system=PeriodicSystem2D(
                (_g1_real(-2 / 3, 4.0), _g2_real(1.0))
            ),
            expected={
                "per_map_v1": (_surd(Fraction(1, 2)), _surd(Fraction(1, 2))),
                "composition_v1": _surd(3, -2, 3),
                "per_map_verdicts": ("Repeller", "Repeller"),
                "composition_verdict": "LAS",
                "paradox": "RepellersToLAS",
                "construction": dict(t=-2 / 3, s=4.0, u=1.0),
            },
        ),
    ]
    return {entry.name: entry for entry in entries}


def gallery_names() -> Tuple[str, ...]:
    return tuple(_registry())


def gallery_get(name: str) -> GalleryEntry:
    """Return the gallery entry called ``name``.

    Raises:
        UnknownGalleryEntry: If no entry has that name.
    """
    try:
        return _registry()[name]
    except KeyError:
        raise UnknownGalleryEntry(
            f"Unknown gallery entry {name!r}; "
            f"known entries: {', '.join(gallery_names())}"
        ) from None


def _close(expected: Any, computed: float, tol: float) -> bool:
    return abs(float(expected) - computed) <= tol


def _jets_equal(a: Jet1D, b: Jet1D) -> bool:
    return a.coeffs == b.coeffs


def _maps_close(a: PlanarPolyMap, b: PlanarPolyMap, tol: float) -> bool:
    for ta, tb in ((a.p, b.p), (a.q, b.q)):
        for key in set(ta) | set(tb):
            if abs(ta.get(key, 0.0) - tb.get(key, 0.0)) > tol:
                return False
    return True


class GalleryRunner:
    """Recompute gallery entries and compare them with their expectations.

    Attributes:
        return_type (str): Output format of the reports ("json", "pandas"
            or "polars").
        zero_tol (float): Zero tolerance for the planar classifiers.
    """

    def __init__(
        self,
        return_type: str = "json",
        zero_tol: Optional[float] = None,
        tol: float = ROUND_TRIP_TOL,
    ):
        """Initialize the runner.

        Args:
            return_type: Output format for reports.
            zero_tol: Zero tolerance for planar verdicts; defaults to
                ``resolve_zero_tol()``.
            tol: Absolute tolerance for floating expected values.

        Raises:
            ValueError: If return_type is not supported.
        """
        self.return_type = validate_return_type(return_type)
        self.zero_tol = resolve_zero_tol(zero_tol)
        self.tol = tol

    def run(self, entry: Any) -> Any:
        """Check one entry, given as a name or a ``GalleryEntry``."""
        if isinstance(entry, str):
            entry = gallery_get(entry)
        return self._format_output(self._check(entry))

    def run_all(self, names: Optional[Iterable[str]] = None) -> Any:
        """Check the named entries (every entry when ``names`` is None)."""
        names = gallery_names() if names is None else list(names)
        records: List[dict] = []
        for name in names:
            records.extend(self._check(gallery_get(name)))
        failed = sorted({r["entry"] for r in records if not r["passed"]})
        if failed:
            logger.warning("Gallery entries failing: %s", ", ".join(failed))
        return self._format_output(records)

    def _check(self, entry: GalleryEntry) -> List[dict]:
        records: List[dict] = []

        def record(check: str, expected: Any, computed: Any, passed: bool):
            records.append({
                "entry": entry.name,
                "check": check,
                "expected": str(expected),
                "computed": str(computed),
                "passed": bool(passed),
            })

        checker = {
            KIND_1D: self._check_1d,
            KIND_2D: self._check_2d,
            KIND_LINEAR: self._check_linear,
            KIND_UNBOUNDED: self._check_unbounded,
        }[entry.kind]
        checker(entry, record)
        logger.debug("Checked %s: %d checks", entry.name, len(records))
        return records

    def _check_verdicts(self, expected, report, record):
        per_map = tuple(v.value for v in report.per_map_stability())
        if "per_map_verdicts" in expected:
            want = tuple(expected["per_map_verdicts"])
            record("per_map_verdicts", want, per_map, want == per_map)
        composition = report.composition_verdict.stability.value
        want = expected["composition_verdict"]
        record("composition_verdict", want, composition, want == composition)
        paradox = report.paradox.value
        want = expected["paradox"]
        record("paradox", want, paradox, want == paradox)

    def _check_1d(self, entry: GalleryEntry, record) -> None:
        expected = entry.expected
        system: PeriodicSystem1D = entry.system
        report = detect_parrondo_1d(system)

        if "per_map_constants" in expected:
            want = tuple(
                (i, Fraction(v)) for i, v in expected["per_map_constants"]
            )
            got = tuple(v.constant for v in report.per_map_verdicts)
            record("per_map_constants", want, got, want == got)

        want_jet = tuple(Fraction(c) for c in expected["composition_jet"])
        got_jet = report.composition.coeffs
        record("composition_jet", want_jet, got_jet, want_jet == got_jet)

        if "composition_constant" in expected:
            index, value = expected["composition_constant"]
            want = (index, Fraction(value))
            got = report.composition_verdict.constant
            record("composition_constant", want, got, want == got)

        self._check_verdicts(expected, report, record)

        if "construction" in expected:
            built = construct_1d_triple(**expected["construction"])
            same = all(
                _jets_equal(a, b) for a, b in zip(built.maps, system.maps)
            ) and built.period == system.period
            record("construction", "identical jets", same, same)

        if "inverse_of" in expected:
            source = gallery_get(expected["inverse_of"]).system
            inverses = tuple(jet_inverse(f) for f in reversed(source.maps))
            same = len(inverses) == system.period and all(
                _jets_equal(a, b) for a, b in zip(inverses, system.maps)
            )
            record("inverse_family", "identical jets", same, same)
            composition = composition_map_1d(PeriodicSystem1D(inverses))
            round_trip = jet_compose(
                composition, composition_map_1d(source)
            ).coeffs
            identity = (Fraction(1),) + (Fraction(0),) * (len(round_trip) - 1)
            record("inverse_round_trip", identity, round_trip,
                   round_trip == identity)

    def _check_2d(self, entry: GalleryEntry, record) -> None:
        expected = entry.expected
        system: PeriodicSystem2D = entry.system
        report = detect_parrondo_2d(system, self.zero_tol)
        tol = self.tol

        if "per_map_b1" in expected:
            for i, (re, im) in enumerate(expected["per_map_b1"], start=1):
                b1 = report.per_map_verdicts[i - 1].b1
                ok = _close(re, b1.real, tol) and _close(im, b1.imag, tol)
                record(f"b1_map_{i}", f"{re} + i({im})", b1, ok)
        if "composition_b1" in expected:
            re, im = expected["composition_b1"]
            b1 = report.composition_verdict.b1
            ok = _close(re, b1.real, tol) and _close(im, b1.imag, tol)
            record("composition_b1", f"{re} + i({im})", b1, ok)
        if "per_map_v1" in expected:
            for i, v1 in enumerate(expected["per_map_v1"], start=1):
                got = report.per_map_verdicts[i - 1].v1
                record(f"v1_map_{i}", v1, got, _close(v1, got, tol))
        if "composition_v1" in expected:
            v1 = expected["composition_v1"]
            got = report.composition_verdict.v1
            record("composition_v1", v1, got, _close(v1, got, tol))

        self._check_verdicts(expected, report, record)

        if "construction" in expected:
            built = construct_2d_pair(**expected["construction"])
            same = built.period == system.period and all(
                _maps_close(a, b, tol)
                for a, b in zip(built.maps, system.maps)
            )
            record("construction", "maps within tolerance", same, same)

    def _check_linear(self, entry: GalleryEntry, record) -> None:
        expected = entry.expected
        report = detect_parrondo_linear(entry.system, self.zero_tol)
        got = report.composition_verdict.eigenvalues
        for i, (want, mu) in enumerate(
            zip(expected["eigenvalues"], got), start=1
        ):
            ok = _close(want, mu.real, self.tol) and abs(mu.imag) <= self.tol
            record(f"eigenvalue_{i}", want, mu, ok)
        self._check_verdicts(expected, report, record)
        if "alpha_threshold" in expected:
            want = expected["alpha_threshold"]
            got_alpha = alpha_threshold()
            record("alpha_threshold", want, got_alpha,
                   _close(want, got_alpha, self.tol))

    def _check_unbounded(self, entry: GalleryEntry, record) -> None:
        expected = entry.expected
        report = unbounded_demo(expected["n_max"])
        record("a0", expected["a0"], report.a0,
               abs(report.a0 - expected["a0"]) <= expected["a0_tol"])
        record("f0_at_1", expected["f0_at_1"], report.f0_at_1,
               abs(report.f0_at_1 - expected["f0_at_1"])
               <= expected["f0_tol"])
        record("max_residual", f"< {expected['residual_tol']}",
               report.max_residual,
               report.max_residual < expected["residual_tol"])

    def _format_output(self, records: List[dict]) -> Any:
        return format_records(records, self.return_type)


def run_entry(entry: Any, zero_tol: Optional[float] = None) -> List[dict]:
    """Check one entry and return its check records."""
    return GalleryRunner(zero_tol=zero_tol).run(entry)


def gallery_run_all(
    names: Optional[Iterable[str]] = None,
    return_type: str = "json",
    zero_tol: Optional[float] = None,
) -> Any:
    """Check every named entry (all of them when ``names`` is None).

    Returns:
        One record per check with the columns ``entry``, ``check``,
        ``expected``, ``computed`` and ``passed``, in ``return_type``.
    """
    runner = GalleryRunner(return_type=return_type, zero_tol=zero_tol)
    return runner.run_all(names)


def entry_status(records: List[dict]) -> Dict[str, bool]:
    """Collapse check records to pass/fail per entry."""
    status: Dict[str, bool] = {}
    for r in records:
        status[r["entry"]] = status.get(r["entry"], True) and r["passed"]
    return status
