"""JSON document formats for states, maskers, operators, shares and circles.

Structured data travels as JSON; plot point streams travel as CSV (see
the cli module).  Floats are emitted with Python's shortest round-trip
representation, so every document reloads bit-identically, and writers
are deterministic: fixed key order, no timestamps, LF newlines.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .analysis import GeneralLinearOp
from .bloch import AngleState, SphericalCircle
from .errors import InvalidInputError
from .masking import MaskerParams
from .protocol import Share

OPERATOR_KEYS = ("a0", "a1", "b0", "b1", "c0", "c1", "d0", "d1")


def _field(doc: dict, key: str, where: str) -> Any:
    if not isinstance(doc, dict):
        raise InvalidInputError(f"{where}: expected a JSON object, got {type(doc).__name__}")
    if key not in doc:
        raise InvalidInputError(f"{where}: missing field {key!r}")
    return doc[key]


def _real(doc: dict, key: str, where: str) -> float:
    value = _field(doc, key, where)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidInputError(f"{where}: field {key!r} must be a number, got {value!r}")
    return float(value)


def _complex(doc: dict, key: str, where: str) -> complex:
    value = _field(doc, key, where)
    if not isinstance(value, dict):
        raise InvalidInputError(f"{where}: field {key!r} must be an object {{re, im}}")
    return complex(_real(value, "re", f"{where}.{key}"), _real(value, "im", f"{where}.{key}"))


def state_to_doc(s: AngleState) -> dict:
    return {"x": s.x, "y": s.y}


def state_from_doc(doc: dict, where: str = "state") -> AngleState:
    return AngleState(_real(doc, "x", where), _real(doc, "y", where))


def masker_to_doc(m: MaskerParams) -> dict:
    return {"alpha": m.alpha, "theta": m.theta}


def masker_from_doc(doc: dict, where: str = "masker") -> MaskerParams:
    return MaskerParams(_real(doc, "alpha", where), _real(doc, "theta", where))


def operator_to_doc(op: GeneralLinearOp) -> dict:
    coeffs = op.coefficients
    return {k: {"re": c.real, "im": c.imag} for k, c in zip(OPERATOR_KEYS, coeffs)}


def operator_from_doc(doc: dict, where: str = "operator") -> GeneralLinearOp:
    return GeneralLinearOp(*(_complex(doc, k, where) for k in OPERATOR_KEYS))


def matrix_to_doc(m: np.ndarray) -> list:
    return [[[float(m[i, j].real), float(m[i, j].imag)] for j in range(2)] for i in range(2)]


def matrix_from_doc(doc, where: str = "matrix") -> np.ndarray:
    try:
        rows = [
            [complex(float(doc[i][j][0]), float(doc[i][j][1])) for j in range(2)]
            for i in range(2)
        ]
    except (TypeError, ValueError, IndexError, KeyError) as exc:
        raise InvalidInputError(f"{where}: expected a 2x2 array of [re, im] pairs") from exc
    return np.array(rows, dtype=complex)


def share_to_doc(share: Share) -> dict:
    return {
        "alpha": share.masker.alpha,
        "theta": share.masker.theta,
        "rho_b": matrix_to_doc(share.rho_b),
    }


def share_from_doc(doc: dict, where: str = "share") -> Share:
    masker = MaskerParams(_real(doc, "alpha", where), _real(doc, "theta", where))
    rho_b = matrix_from_doc(_field(doc, "rho_b", where), f"{where}.rho_b")
    return Share(masker=masker, rho_b=rho_b)


def circle_to_doc(circle: SphericalCircle) -> dict:
    return {"n": [float(v) for v in circle.normal], "c": circle.offset}


def circle_from_doc(doc: dict, where: str = "circle") -> SphericalCircle:
    n = _field(doc, "n", where)
    if not isinstance(n, list) or len(n) != 3:
        raise InvalidInputError(f"{where}: field 'n' must be a 3-element array")
    return SphericalCircle(np.array([float(v) for v in n]), _real(doc, "c", where))


def dump(doc: Any) -> str:
    """Deterministic JSON text: two-space indent, LF newline at the end."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_text(text: str, where: str = "document") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{where}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
