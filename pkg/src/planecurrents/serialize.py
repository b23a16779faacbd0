"""Exact JSON (de)serialization.

Rationals travel as strings "p/q" (or plain integers) and are emitted in
lowest terms with positive denominators, so every report round-trips
bit-exactly and no floating point ever enters the data path. Conic
coefficients use the fixed monomial order (x^2, xy, xz, y^2, yz, z^2).

Instance documents look like

    {
      "lines":  [["1", "0", "0"], ["0", "1", "0"], ...],
      "conics": [["1", "0", "0", "-1", "0", "0"], ...],
      "weights": ["1/4", "1/4", ...],      # aligned with lines-then-conics
      "alpha": "1/2"                        # optional
    }

Validation failures raise ParseError with the offending field path.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from typing import Any, Optional

from .currents import DivisorCurrent, LevelSet
from .cover import Covered, UncoverableCurve, Verdict
from .errors import ParseError, PlaneCurrentsError
from .projective import Conic, Curve, Line, Point


def format_rational(value: Fraction | int) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_rational(value: Any, path: str = "rational") -> Fraction:
    if isinstance(value, bool):
        raise ParseError("expected a rational, got a boolean", path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"invalid rational {value!r} ({exc})", path) from None
    raise ParseError(f"expected a rational string or integer, got {type(value).__name__}", path)


def _parse_tuple(value: Any, size: int, path: str) -> tuple[Fraction, ...]:
    if not isinstance(value, (list, tuple)) or len(value) != size:
        raise ParseError(f"expected a list of {size} rationals", path)
    coeffs = tuple(parse_rational(v, f"{path}[{i}]") for i, v in enumerate(value))
    if all(c == 0 for c in coeffs):
        raise ParseError("all coefficients are zero", path)
    return coeffs


def point_to_json(p: Point) -> list[str]:
    return [format_rational(c) for c in p.coords]


def parse_point(value: Any, path: str = "point") -> Point:
    return Point(*_parse_tuple(value, 3, path))


def line_to_json(line: Line) -> list[str]:
    return [format_rational(c) for c in line.coeffs]


def parse_line(value: Any, path: str = "line") -> Line:
    return Line(*_parse_tuple(value, 3, path))


def conic_to_json(conic: Conic) -> list[str]:
    return [format_rational(c) for c in conic.coeffs]


def parse_conic(value: Any, path: str = "conic") -> Conic:
    return Conic(*_parse_tuple(value, 6, path))


def curve_to_json(curve: Curve) -> dict:
    if isinstance(curve, Line):
        return {"kind": "line", "coefficients": line_to_json(curve)}
    return {"kind": "conic", "coefficients": conic_to_json(curve)}


def current_to_payload(current: DivisorCurrent, alpha: Optional[Fraction] = None) -> dict:
    """Instance-file payload for a current (lines first, then conics)."""
    lines = [(w, c) for w, c in current.components if isinstance(c, Line)]
    conics = [(w, c) for w, c in current.components if isinstance(c, Conic)]
    payload = {
        "lines": [line_to_json(c) for _, c in lines],
        "conics": [conic_to_json(c) for _, c in conics],
        "weights": [format_rational(w) for w, _ in lines + conics],
    }
    if alpha is not None:
        payload["alpha"] = format_rational(alpha)
    return payload


def parse_instance(payload: Any) -> tuple[DivisorCurrent, Optional[Fraction]]:
    """Parse and validate an instance document.

    Checks nonzero coefficient tuples, nonnegative weights, weight count,
    irreducibility of conic components, and (when alpha is present) that
    the mass is exactly 1.
    """
    if not isinstance(payload, dict):
        raise ParseError("instance document must be a JSON object", "$")
    lines_raw = payload.get("lines", [])
    conics_raw = payload.get("conics", [])
    if not isinstance(lines_raw, list):
        raise ParseError("expected a list", "lines")
    if not isinstance(conics_raw, list):
        raise ParseError("expected a list", "conics")
    curves: list[Curve] = [
        parse_line(v, f"lines[{i}]") for i, v in enumerate(lines_raw)
    ]
    curves += [parse_conic(v, f"conics[{i}]") for i, v in enumerate(conics_raw)]
    weights_raw = payload.get("weights")
    if not isinstance(weights_raw, list) or len(weights_raw) != len(curves):
        raise ParseError(
            f"expected {len(curves)} weights aligned with lines then conics",
            "weights",
        )
    pairs = []
    for i, (raw, curve) in enumerate(zip(weights_raw, curves)):
        w = parse_rational(raw, f"weights[{i}]")
        if w < 0:
            raise ParseError(f"weight {format_rational(w)} is negative", f"weights[{i}]")
        pairs.append((w, curve))
    try:
        current = DivisorCurrent(pairs)
    except PlaneCurrentsError as exc:
        raise ParseError(str(exc), "conics") from None
    alpha = None
    if "alpha" in payload:
        alpha = parse_rational(payload["alpha"], "alpha")
        if current.mass != 1:
            raise ParseError(
                f"mass is {format_rational(current.mass)}, must be exactly 1 when alpha is given",
                "weights",
            )
    return current, alpha


def parse_points_file(payload: Any) -> tuple[Point, ...]:
    if not isinstance(payload, dict) or not isinstance(payload.get("points"), list):
        raise ParseError('expected an object with a "points" list', "$")
    return tuple(
        parse_point(v, f"points[{i}]") for i, v in enumerate(payload["points"])
    )


def level_set_to_json(level: LevelSet) -> dict:
    return {
        "threshold": format_rational(level.threshold),
        "strict": level.strict,
        "component_curves": [curve_to_json(c) for c in level.component_curves],
        "isolated_points": [point_to_json(p) for p in level.isolated_points],
    }


def verdict_to_json(verdict: Verdict) -> dict:
    if isinstance(verdict, Covered):
        return {
            "kind": "covered",
            "witness": curve_to_json(verdict.witness),
            "omitted": None if verdict.omitted is None else point_to_json(verdict.omitted),
        }
    obstruction = verdict.obstruction
    if isinstance(obstruction, UncoverableCurve):
        payload = {"kind": "curve", "curve": curve_to_json(obstruction.curve)}
    else:
        payload = {
            "kind": "points",
            "points": [point_to_json(p) for p in obstruction.points],
        }
    return {"kind": "not-coverable", "obstruction": payload}


def dumps(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def atomic_write(path: str, text: str) -> None:
    """Write the full document and rename it into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
