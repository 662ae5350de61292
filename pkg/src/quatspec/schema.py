"""JSON schemas for CLI input documents and reports (version ``quatspec/1``)."""
from __future__ import annotations

SCHEMA_ID = "quatspec/1"

_NUMBER = {"type": "number"}
QUATERNION = {"type": "array", "items": _NUMBER, "minItems": 4, "maxItems": 4}
_NULLABLE_QUATERNION = {"anyOf": [QUATERNION, {"type": "null"}]}
_MATRIX_ROWS = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": QUATERNION}}
_SCHEMA_TAG = {"const": SCHEMA_ID}
_HEADER = {"schema": _SCHEMA_TAG, "command": {"type": "string"}}

MATRIX_DOCUMENT = {
    "type": "object",
    "properties": {
        "schema": _SCHEMA_TAG,
        "n": {"type": "integer", "minimum": 1},
        "entries": _MATRIX_ROWS,
    },
    "required": ["n", "entries"],
    "additionalProperties": False,
}

SYLVESTER_DOCUMENT = {
    "type": "object",
    "properties": {
        "schema": _SCHEMA_TAG,
        "terms": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": QUATERNION, "minItems": 2, "maxItems": 2},
        },
        "rhs": QUATERNION,
    },
    "required": ["terms", "rhs"],
    "additionalProperties": False,
}


def _report(command: str, props: dict) -> dict:
    properties = dict(_HEADER, **props)
    properties["command"] = {"const": command}
    return {
        "type": "object",
        "properties": properties,
        "required": list(properties),
        "additionalProperties": False,
    }


_ROOT = {
    "type": "object",
    "properties": {
        "value": QUATERNION,
        "residual": _NUMBER,
        "diff_rank": {"type": ["integer", "null"]},
        "newton_iters": {"type": "integer"},
        "sigma": _NUMBER,
    },
    "required": ["value", "residual", "diff_rank", "newton_iters"],
    "additionalProperties": False,
}

_SPHERICAL = {
    "anyOf": [
        {"type": "null"},
        {
            "type": "object",
            "properties": {
                "center": QUATERNION,
                "b": QUATERNION,
                "delta": _NUMBER,
                "radius": _NUMBER,
                "parametrization": {"type": "string"},
            },
            "required": ["center", "b", "delta", "radius", "parametrization"],
            "additionalProperties": False,
        },
    ]
}

_POLE_CANDIDATE = {
    "type": "object",
    "properties": {
        "permutation": {"type": "array", "items": {"type": "integer"}},
        "pole": _NULLABLE_QUATERNION,
        "eigenvalue": {"type": ["boolean", "null"]},
    },
    "required": ["permutation", "pole", "eigenvalue"],
    "additionalProperties": False,
}

_TERMS = {"type": "array", "items": {"type": "array", "items": QUATERNION, "minItems": 2, "maxItems": 2}}
_MAT4 = {"type": "array", "items": {"type": "array", "items": _NUMBER}}

REPORTS = {
    "spectrum": _report(
        "spectrum",
        {
            "n": {"type": "integer"},
            "kind": {"enum": ["finite", "spherical", "suspected-infinite"]},
            "degree": {"type": "integer"},
            "classification_path": {"type": "string"},
            "roots": {"type": "array", "items": _ROOT},
            "spherical": _SPHERICAL,
        },
    ),
    "sdet": _report("sdet", {"n": {"type": "integer"}, "sdet": _NUMBER}),
    "inverse": _report(
        "inverse", {"n": {"type": "integer"}, "entries": _MATRIX_ROWS, "residual": _NUMBER}
    ),
    "charmap": _report(
        "charmap",
        {
            "n": {"type": "integer"},
            "kind": {"type": "string"},
            "base_kind": {"type": "string"},
            "degree": {"type": "integer"},
            "norm_const": _NUMBER,
            "pole": _NULLABLE_QUATERNION,
            "permutation": {"type": "array", "items": {"type": "integer"}},
            "invert": {"type": "boolean"},
            "shift": QUATERNION,
            "coefficients": {"type": "object", "additionalProperties": QUATERNION},
        },
    ),
    "pole": _report(
        "pole",
        {
            "pole": _NULLABLE_QUATERNION,
            "eigenvalue": {"type": ["boolean", "null"]},
            "candidates": {"anyOf": [{"type": "null"}, {"type": "array", "items": _POLE_CANDIDATE}]},
        },
    ),
    "rank": _report(
        "rank",
        {
            "at": QUATERNION,
            "map_kind": {"type": ["string", "null"]},
            "permutation": {"anyOf": [{"type": "null"}, {"type": "array", "items": {"type": "integer"}}]},
            "terms": _TERMS,
            "matrix": _MAT4,
            "rank": {"type": ["integer", "null"]},
        },
    ),
    "solve-sylvester": _report("solve-sylvester", {"x": QUATERNION, "rank": {"type": "integer"}}),
    "verify": _report(
        "verify",
        {
            "at": QUATERNION,
            "sdet": _NUMBER,
            "sigma": _NUMBER,
            "threshold": _NUMBER,
            "eigenvalue": {"type": "boolean"},
        },
    ),
}
