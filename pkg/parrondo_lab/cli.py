"""Command-line front end.

Commands:

- ``analyze FILE``: constants, verdict and deciding rule of one map or of
  the composition of a system;
- ``parrondo FILE``: per-map verdicts, composition verdict and paradox flag;
- ``simulate FILE``: numerical orbits and the empirical verdict;
- ``gallery [NAME | --all]``: recompute gallery entries against their
  expected values;
- ``construct one-d|two-d``: write the map files of the parametric
  constructions.

FILE is a map-file path or the name of a gallery entry. Exit codes are 0
on success, 2 for unusable input, 3 for violated mathematical
preconditions and 4 when a computed result contradicts a proven property.
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from . import __version__
from .config import resolve_zero_tol
from .error import (
    GalleryCheckFailed,
    InputError,
    MapFileError,
    ParrondoLabError,
)
from .gallery import (
    KIND_UNBOUNDED,
    GalleryRunner,
    entry_status,
    gallery_get,
    gallery_names,
)
from .jet import Jet1D
from .mapfile import dumps, load_map_file, write_map_file
from .periodic import (
    LinearSystem,
    PeriodicSystem1D,
    PeriodicSystem2D,
    classify_linear,
    composition_map_1d,
    composition_map_2d,
    construct_1d_triple,
    construct_2d_pair,
    detect_parrondo,
    linear_spectrum_2x2,
)
from .planar import PlanarPolyMap, birkhoff_b1, real_to_complex
from .simulate import (
    SimConfig,
    aggregate_verdict,
    iterate_orbit,
    sample_orbits,
    trace_frame,
    unbounded_demo,
)
from .stability1d import classify_1d, stability_constants

logger = logging.getLogger(__name__)

RULE_BIRKHOFF = "first Birkhoff constant"
RULE_LINEAR = "linearization"


def _load(source: str):
    """Return the map or system named by a file path or gallery entry."""
    path = Path(source)
    if path.exists():
        return load_map_file(path)
    if source in gallery_names():
        entry = gallery_get(source)
        if entry.system is None:
            raise InputError(f"Gallery entry {source!r} has no map system")
        return entry.system
    raise MapFileError(f"no such file or gallery entry: {source}")


def _select(obj, index: Optional[int]):
    if index is None:
        return obj
    maps = getattr(obj, "maps", None)
    if maps is None:
        maps = getattr(obj, "matrices", None)
        if maps is None:
            raise InputError("--map only applies to systems")
        if not 1 <= index <= len(maps):
            raise InputError(f"--map must lie in 1..{len(maps)}")
        return LinearSystem((maps[index - 1],))
    if not 1 <= index <= len(maps):
        raise InputError(f"--map must lie in 1..{len(maps)}")
    return maps[index - 1]


def _complex_pair(z: complex) -> List[float]:
    return [z.real, z.imag]


def _analyze_jet(f: Jet1D) -> Dict[str, Any]:
    verdict = classify_1d(f)
    constants: Dict[str, Any] = {
        "jet": [str(c) for c in f.coeffs],
        "multiplier": str(f.multiplier),
    }
    if f.multiplier == -1:
        sc = stability_constants(f)
        constants["W"] = {str(j): str(w) for j, w in sc.w_values}
    if verdict.constant is not None:
        index, value = verdict.constant
        constants["deciding"] = [index, str(value)]
    return {
        "constants": constants,
        "verdict": verdict.stability.value,
        "theorem": verdict.rule,
        "order_decided": verdict.order_decided,
    }


def _analyze_birkhoff(g, tol: float) -> Dict[str, Any]:
    result = birkhoff_b1(g, tol)
    return {
        "constants": {
            "lambda": _complex_pair(g.lam),
            "B1": _complex_pair(result.b1),
            "V1": result.v1,
        },
        "verdict": result.stability.value,
        "theorem": RULE_BIRKHOFF,
        "order_decided": 3,
    }


def _analyze_linear(system: LinearSystem, tol: float) -> Dict[str, Any]:
    product, eigenvalues = linear_spectrum_2x2(system.matrices)
    return {
        "constants": {
            "product": product.tolist(),
            "eigenvalues": [_complex_pair(mu) for mu in eigenvalues],
        },
        "verdict": classify_linear(eigenvalues, tol).value,
        "theorem": RULE_LINEAR,
        "order_decided": 1,
    }


def analyze(obj, tol: float) -> Dict[str, Any]:
    """Report for one map, or for the composition of a system."""
    if isinstance(obj, PeriodicSystem1D):
        return _analyze_jet(composition_map_1d(obj))
    if isinstance(obj, Jet1D):
        return _analyze_jet(obj)
    if isinstance(obj, PeriodicSystem2D):
        return _analyze_birkhoff(composition_map_2d(obj, tol), tol)
    if isinstance(obj, PlanarPolyMap):
        return _analyze_birkhoff(real_to_complex(obj, tol), tol)
    if isinstance(obj, LinearSystem):
        return _analyze_linear(obj, tol)
    raise InputError(f"Cannot analyze a {type(obj).__name__}")


def _emit(args, payload: Dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _format_analysis(report: Dict[str, Any]) -> str:
    lines = [f"input: {report['input']}"]
    for key, value in report["constants"].items():
        if key == "W":
            lines.extend(f"W_{j} = {w}" for j, w in value.items())
        else:
            lines.append(f"{key}: {value}")
    lines.append(f"verdict: {report['verdict']}")
    lines.append(f"theorem: {report['theorem']}")
    lines.append(f"order decided: {report['order_decided']}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    obj = _select(_load(args.file), args.map)
    label = args.file if args.map is None else f"{args.file} (map {args.map})"
    report = {"input": label}
    report.update(analyze(obj, args.tol))
    _emit(args, report, _format_analysis(report))
    return 0


def _as_system(obj):
    if isinstance(obj, Jet1D):
        return PeriodicSystem1D((obj,))
    if isinstance(obj, PlanarPolyMap):
        return PeriodicSystem2D((obj,))
    return obj


def cmd_parrondo(args) -> int:
    system = _as_system(_load(args.file))
    report = detect_parrondo(system, args.tol)
    rows = report.to_records()
    payload: Dict[str, Any] = {
        "input": args.file,
        "rows": rows,
        "paradox": report.paradox.value,
    }
    composition = getattr(report, "composition", None)
    if isinstance(composition, Jet1D):
        payload["composition_jet"] = [str(c) for c in composition.coeffs]
        text_head = f"composition: {composition}"
    elif composition is not None:
        payload["composition_lambda"] = _complex_pair(composition.lam)
        text_head = f"composition lambda: {composition.lam}"
    else:
        text_head = f"product:\n{report.product}"
    table = pd.DataFrame(rows).to_string(index=False)
    text = f"{table}\n{text_head}\nparadox: {report.paradox.value}"
    _emit(args, payload, text)
    return 0


def _sim_config(args) -> SimConfig:
    overrides: Dict[str, Any] = {}
    if args.iters is not None:
        overrides["max_iters"] = args.iters
    if args.escape is not None:
        overrides["escape_radius"] = args.escape
    if args.radius is not None:
        overrides["initial_radius"] = args.radius
    if args.samples is not None:
        overrides["n_samples"] = args.samples
    return SimConfig(**overrides)


def _parse_point(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as e:
        raise InputError(f"--x0 must be comma-separated numbers: {e}") from e


def _simulate_unbounded(args) -> int:
    report = unbounded_demo(args.iters or 50)
    frame = report.table("pandas")
    payload = {
        "input": args.file,
        "a0": report.a0,
        "f0_at_1": report.f0_at_1,
        "max_residual": report.max_residual,
        "rows": report.to_records(),
    }
    text = (
        f"a0 = {report.a0:.12f}\nf0(1) = {report.f0_at_1:.12f}\n"
        f"{frame.to_string(index=False)}\n"
        f"max residual: {report.max_residual:.3e}"
    )
    _emit(args, payload, text)
    return 0


def cmd_simulate(args) -> int:
    if args.file in gallery_names() and (
        gallery_get(args.file).kind == KIND_UNBOUNDED
    ):
        return _simulate_unbounded(args)

    system = _load(args.file)
    cfg = _sim_config(args)
    payload: Dict[str, Any] = {"input": args.file}
    lines = [f"input: {args.file}"]

    if args.x0 is not None:
        x0 = _parse_point(args.x0)
        result = iterate_orbit(
            system, x0, cfg, record_trace=args.trace is not None
        )
        payload.update(
            status=result.status.value,
            iteration=result.iteration,
            final_radius=result.final_radius,
            trend=result.trend,
            non_finite=result.non_finite,
        )
        lines.append(
            f"orbit: {result.status.value} after {result.iteration} steps "
            f"(radius {result.final_radius:.3e})"
        )
        if args.trace is not None:
            try:
                trace_frame(result, "pandas").to_csv(args.trace, index=False)
            except OSError as e:
                raise InputError(
                    f"Cannot write trace to {args.trace}: {e}"
                ) from e
            lines.append(f"trace written to {args.trace}")

    if args.x0 is None or args.samples is not None:
        results = sample_orbits(system, cfg)
        verdict = aggregate_verdict(results, cfg.trend_tol)
        payload["empirical_verdict"] = verdict.value
        payload["samples"] = [
            {"status": r.status.value, "iteration": r.iteration,
             "trend": r.trend}
            for r in results
        ]
        lines.append(f"empirical verdict: {verdict.value}")

    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_gallery(args) -> int:
    if not args.all and args.name is None:
        raise InputError("Give a gallery entry name or --all")
    names = None if args.all else [args.name]
    runner = GalleryRunner(zero_tol=args.tol)
    records = runner.run_all(names)
    status = entry_status(records)
    if args.json:
        print(json.dumps({"checks": records, "entries": status}, indent=2))
    else:
        print(pd.DataFrame(records).to_string(index=False))
        for name, ok in status.items():
            print(f"{name}: {'pass' if ok else 'FAIL'}")
    failed = [name for name, ok in status.items() if not ok]
    if failed:
        raise GalleryCheckFailed(
            f"Recomputed values disagree for: {', '.join(failed)}"
        )
    return 0


def cmd_construct(args) -> int:
    if args.kind == "one-d":
        system = construct_1d_triple(
            args.a22, args.A1sq, args.A2sq, args.A3sq, args.a23, args.a4
        )
    else:
        system = construct_2d_pair(args.t, args.s, args.u)
    if args.out is None:
        print(dumps(system))
    else:
        write_map_file(system, args.out)
        logger.info("Wrote %s", args.out)
    return 0


def _add_file(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "file", help="Map file (JSON) or gallery entry name"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parrondo-lab",
        description=(
            "Classify non-hyperbolic fixed points and detect "
            "Parrondo-type effects in periodic systems."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--tol", type=float, default=None,
        help="Zero tolerance for floating-point tests "
             "(default: $PARRONDO_LAB_TOL or 1e-9)",
    )
    parser.add_argument(
        "--json", action="store_true", help="Emit JSON instead of text"
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Debug logging"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Classify a map or a composition")
    _add_file(p)
    p.add_argument(
        "--map", type=int, default=None,
        help="1-based index of a single map of the system",
    )
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("parrondo", help="Detect Parrondo-type effects")
    _add_file(p)
    p.set_defaults(func=cmd_parrondo)

    p = sub.add_parser("simulate", help="Iterate orbits numerically")
    _add_file(p)
    p.add_argument("--x0", default=None, help="Initial point, e.g. 0.01,0")
    p.add_argument("--iters", type=int, default=None,
                   help="Maximum number of map applications")
    p.add_argument("--escape", type=float, default=None,
                   help="Escape radius")
    p.add_argument("--radius", type=float, default=None,
                   help="Radius of the sampled initial points")
    p.add_argument("--samples", type=int, default=None,
                   help="Number of sampled initial points")
    p.add_argument("--trace", default=None,
                   help="Write the orbit of --x0 to this CSV file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gallery", help="Reproduce gallery entries")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--all", action="store_true", help="Run every entry")
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("construct", help="Write constructed systems")
    kinds = p.add_subparsers(dest="kind", required=True)
    one = kinds.add_parser("one-d", help="Three-map one-dimensional family")
    for name in ("a22", "A1sq", "A2sq", "A3sq", "a23", "a4"):
        one.add_argument(f"--{name}", type=Fraction, required=True)
    two = kinds.add_parser("two-d", help="Two-map planar family")
    for name in ("t", "s", "u"):
        two.add_argument(f"--{name}", type=float, required=True)
    for q in (one, two):
        q.add_argument("--out", default=None, help="Output map file")
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        args.tol = resolve_zero_tol(args.tol)
        return args.func(args)
    except ParrondoLabError as e:
        print(f"error: {e.error_code}: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
