"""JSON map files.

Three document types are understood:

- ``{"type": "map1d", "coeffs": ["-1", "3", "-9", "0", "164"]}``: a jet,
  entry k - 1 being the coefficient of x^k as an integer or a rational
  string such as ``"7/3"``;
- ``{"type": "map2d", "P": [[i, j, c], ...], "Q": [[i, j, c], ...]}``: a
  planar map, c being a number or one of the tokens ``"1/2"``,
  ``"-1/2"``, ``"sqrt3/2"``, ``"-sqrt3/2"``;
- ``{"type": "system", "maps": [<map>, ...]}``: a periodic system in
  application order.

A ``{"type": "linear", "matrices": [[[a, b], [c, d]], ...]}`` document
describes a periodic set of 2x2 matrices.

Malformed documents raise ``MapFileError`` with the position of the
offending element, for example ``maps[1].coeffs[3]``.
"""
import json
import logging
import math
from fractions import Fraction
from numbers import Real
from pathlib import Path
from typing import Any, Dict, List, Union

from .error import MapFileError
from .jet import Jet1D
from .periodic import LinearSystem, PeriodicSystem1D, PeriodicSystem2D
from .planar import PlanarPolyMap

logger = logging.getLogger(__name__)

HALF_SQRT3 = math.sqrt(3) / 2
TOKENS = {
    "1/2": 0.5,
    "-1/2": -0.5,
    "sqrt3/2": HALF_SQRT3,
    "-sqrt3/2": -HALF_SQRT3,
}

MapObject = Union[
    Jet1D, PlanarPolyMap, PeriodicSystem1D, PeriodicSystem2D, LinearSystem
]


def _at(path: str, key: Any) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise MapFileError(
            "coefficient must be an integer or a rational string, "
            f"got {value!r}",
            position=path,
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise MapFileError(
            f"cannot read {value!r} as a rational number", position=path
        ) from e


def _real(value: Any, path: str) -> float:
    if isinstance(value, str):
        if value not in TOKENS:
            raise MapFileError(
                f"unknown token {value!r}; use a number or one of "
                f"{', '.join(TOKENS)}",
                position=path,
            )
        return TOKENS[value]
    if isinstance(value, bool) or not isinstance(value, Real):
        raise MapFileError(f"expected a number, got {value!r}", position=path)
    if not math.isfinite(value):
        raise MapFileError(f"coefficient {value!r} is not finite", path)
    return float(value)


def _field(doc: Dict[str, Any], key: str, path: str) -> Any:
    if key not in doc:
        raise MapFileError(f"missing field {key!r}", position=path or None)
    return doc[key]


def _list(value: Any, path: str) -> List[Any]:
    if not isinstance(value, list):
        raise MapFileError(
            f"expected a list, got {type(value).__name__}", position=path
        )
    return value


def _parse_map1d(doc: Dict[str, Any], path: str) -> Jet1D:
    where = _at(path, "coeffs")
    coeffs = _list(_field(doc, "coeffs", path), where)
    if not coeffs:
        raise MapFileError("a jet needs at least the coefficient a_1", where)
    return Jet1D(tuple(
        _rational(c, _at(where, k)) for k, c in enumerate(coeffs)
    ))


def _parse_terms(value: Any, path: str) -> Dict:
    table: Dict = {}
    for n, term in enumerate(_list(value, path)):
        where = _at(path, n)
        if not isinstance(term, list) or len(term) != 3:
            raise MapFileError("expected a term [i, j, c]", position=where)
        i, j, c = term
        if not all(
            isinstance(e, int) and not isinstance(e, bool) for e in (i, j)
        ):
            raise MapFileError(
                "monomial exponents must be integers", position=where
            )
        if i < 0 or j < 0 or not 1 <= i + j <= 3:
            raise MapFileError(
                f"monomial x^{i} y^{j} outside degrees 1..3", position=where
            )
        table[(i, j)] = table.get((i, j), 0.0) + _real(c, _at(where, 2))
    return table


def _parse_map2d(doc: Dict[str, Any], path: str) -> PlanarPolyMap:
    p = _parse_terms(_field(doc, "P", path), _at(path, "P"))
    q = _parse_terms(_field(doc, "Q", path), _at(path, "Q"))
    return PlanarPolyMap(p, q)


def _parse_linear(doc: Dict[str, Any], path: str) -> LinearSystem:
    where = _at(path, "matrices")
    matrices = _list(_field(doc, "matrices", path), where)
    if not matrices:
        raise MapFileError("a linear system needs a matrix", position=where)
    parsed = []
    for n, matrix in enumerate(matrices):
        at = _at(where, n)
        rows = _list(matrix, at)
        if len(rows) != 2 or any(
            not isinstance(r, list) or len(r) != 2 for r in rows
        ):
            raise MapFileError("expected a 2x2 matrix", position=at)
        parsed.append([
            [_real(v, _at(_at(at, i), j)) for j, v in enumerate(row)]
            for i, row in enumerate(rows)
        ])
    return LinearSystem(tuple(parsed))


def _parse_system(doc: Dict[str, Any], path: str):
    where = _at(path, "maps")
    entries = _list(_field(doc, "maps", path), where)
    if not entries:
        raise MapFileError("a system needs at least one map", where)
    maps = [_parse_single(e, _at(where, n)) for n, e in enumerate(entries)]
    if all(isinstance(m, Jet1D) for m in maps):
        orders = {m.order for m in maps}
        if len(orders) > 1:
            raise MapFileError(
                f"jets have different orders {sorted(orders)}", where
            )
        return PeriodicSystem1D(tuple(maps))
    if all(isinstance(m, PlanarPolyMap) for m in maps):
        return PeriodicSystem2D(tuple(maps))
    raise MapFileError("a system cannot mix map1d and map2d maps", where)


def _parse_single(doc: Any, path: str):
    if not isinstance(doc, dict):
        raise MapFileError("expected a JSON object", position=path or None)
    kind = _field(doc, "type", path)
    if kind == "map1d":
        return _parse_map1d(doc, path)
    if kind == "map2d":
        return _parse_map2d(doc, path)
    raise MapFileError(
        f"expected type 'map1d' or 'map2d', got {kind!r}",
        position=_at(path, "type"),
    )


def parse_document(doc: Any) -> MapObject:
    """Build the map or system described by a decoded JSON document."""
    if isinstance(doc, dict) and doc.get("type") == "system":
        return _parse_system(doc, "")
    if isinstance(doc, dict) and doc.get("type") == "linear":
        return _parse_linear(doc, "")
    return _parse_single(doc, "")


def loads(text: str) -> MapObject:
    """Parse a map file from a string.

    Raises:
        MapFileError: On invalid JSON (with line and column) or an invalid
            document (with the JSON path of the offending element).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MapFileError(
            e.msg, position=f"line {e.lineno} column {e.colno}"
        ) from e
    return parse_document(doc)


def load_map_file(path: Union[str, Path]) -> MapObject:
    """Read and parse a map file."""
    path = Path(path)
    logger.debug("Reading map file %s", path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise MapFileError(f"cannot read {path}: {e.strerror}") from e
    return loads(text)


def _encode_real(value: float) -> Union[float, str]:
    for token, token_value in TOKENS.items():
        if value == token_value:
            return token
    return value


def _encode_terms(table) -> List[List[Any]]:
    return [
        [i, j, _encode_real(c)] for (i, j), c in sorted(table.items())
    ]


def to_document(obj: MapObject) -> Dict[str, Any]:
    """Encode a map or system as a JSON-ready document."""
    if isinstance(obj, Jet1D):
        return {"type": "map1d", "coeffs": [str(c) for c in obj.coeffs]}
    if isinstance(obj, PlanarPolyMap):
        return {
            "type": "map2d",
            "P": _encode_terms(obj.p),
            "Q": _encode_terms(obj.q),
        }
    if isinstance(obj, (PeriodicSystem1D, PeriodicSystem2D)):
        return {"type": "system", "maps": [to_document(m) for m in obj.maps]}
    if isinstance(obj, LinearSystem):
        return {
            "type": "linear",
            "matrices": [
                [[_encode_real(float(v)) for v in row] for row in a]
                for a in obj.matrices
            ],
        }
    raise TypeError(f"Cannot encode a {type(obj).__name__}")


def dumps(obj: MapObject) -> str:
    return json.dumps(to_document(obj), indent=2)


def write_map_file(obj: MapObject, path: Union[str, Path]) -> None:
    path = Path(path)
    path.write_text(dumps(obj) + "\n", encoding="utf-8")
    logger.debug("Wrote map file %s", path)
