"""JSON wire formats: exact rational strings, no floats anywhere.

Rationals travel as "p/q" (or "p" when the denominator is 1).  Complexes,
constructible functions, and test functions have fixed schemas; reports are
serialized generically with deterministic key order so identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from .complexes import EmbeddedComplex, Simplex, simplex, sort_key
from .constructible import ConstructibleFunction, from_values
from .errors import InputError
from .functions import AffineFunction, QuadAffineFunction
from .linalg import SymMatrix, Vec, format_rational, rat


def parse_rational(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"floats are not accepted: {value!r}")
    return rat(value)


def parse_vector(entries, dim: int | None = None) -> Vec:
    if not isinstance(entries, (list, tuple)):
        raise InputError(f"vector must be a list, got {type(entries).__name__}")
    v = Vec(tuple(parse_rational(e) for e in entries))
    if dim is not None and v.dim != dim:
        raise InputError(f"vector has {v.dim} entries, expected {dim}")
    return v


def emit_vector(v: Vec) -> list[str]:
    return [format_rational(e) for e in v]


def parse_complex(obj) -> EmbeddedComplex:
    if not isinstance(obj, dict):
        raise InputError("complex payload must be an object")
    try:
        ambient = obj["ambient_dim"]
        vertices = obj["vertices"]
        simplices = obj["simplices"]
    except KeyError as exc:
        raise InputError(f"complex payload missing key {exc.args[0]!r}") from exc
    if not isinstance(ambient, int) or ambient < 1:
        raise InputError(f"ambient_dim must be a positive integer, got {ambient!r}")
    verts = [parse_vector(row, ambient) for row in vertices]
    simps = []
    for row in simplices:
        if not isinstance(row, list) or not all(isinstance(i, int) for i in row):
            raise InputError(f"simplex must be a list of vertex ids, got {row!r}")
        simps.append(row)
    return EmbeddedComplex(ambient, verts, simps, close=bool(obj.get("close", False)))


def emit_complex(cx: EmbeddedComplex) -> dict:
    return {
        "ambient_dim": cx.ambient_dim,
        "vertices": [emit_vector(v) for v in cx.vertices],
        "simplices": [sorted(s) for s in cx.simplices_sorted()],
    }


def simplex_key(s: Simplex) -> str:
    return ",".join(str(i) for i in sorted(s))


def parse_simplex_key(key: str) -> Simplex:
    try:
        ids = [int(part) for part in key.split(",")]
    except ValueError as exc:
        raise InputError(f"malformed simplex key {key!r}") from exc
    if len(set(ids)) != len(ids):
        raise InputError(f"repeated vertex id in simplex key {key!r}")
    return simplex(ids)


def parse_constructible(obj, cx: EmbeddedComplex) -> ConstructibleFunction:
    if not isinstance(obj, dict) or "values" not in obj:
        raise InputError("constructible payload must be an object with 'values'")
    values: dict[Simplex, int] = {}
    for key, val in obj["values"].items():
        if not isinstance(val, int) or isinstance(val, bool):
            raise InputError(f"value for {key!r} must be an integer, got {val!r}")
        s = parse_simplex_key(key)
        if not cx.contains(s):
            raise InputError(f"simplex {key!r} is not in the complex")
        values[s] = val
    return from_values(cx, values)


def emit_constructible(alpha: ConstructibleFunction) -> dict:
    values = {
        simplex_key(s): alpha.value(s)
        for s in alpha.complex.simplices_sorted()
        if alpha.value(s)
    }
    return {"values": values}


def parse_affine(obj, dim: int):
    if not isinstance(obj, dict) or "linear" not in obj:
        raise InputError("function payload must be an object with 'linear'")
    linear = parse_vector(obj["linear"], dim)
    constant = parse_rational(obj.get("constant", 0))
    quad = obj.get("quad")
    if quad is None:
        return AffineFunction(linear, constant)
    rows = [parse_vector(row, dim) for row in quad]
    if len(rows) != dim:
        raise InputError(f"quad must be a {dim}x{dim} matrix")
    matrix = SymMatrix.from_rows(tuple(tuple(e for e in row) for row in rows))
    return QuadAffineFunction(linear, constant, matrix)


def emit_affine(f) -> dict:
    out = {
        "linear": emit_vector(f.linear),
        "constant": format_rational(f.constant),
    }
    quad = getattr(f, "quad", None)
    if quad is not None:
        out["quad"] = [
            [format_rational(e) for e in row] for row in quad.rows
        ]
    return out


def _encode_key(key) -> str:
    if isinstance(key, str):
        return key
    if isinstance(key, bool):
        return "true" if key else "false"
    if isinstance(key, int):
        return str(key)
    if isinstance(key, frozenset):
        return simplex_key(key)
    if isinstance(key, tuple):
        return "|".join(_encode_key(part) for part in key)
    raise InputError(f"cannot use {type(key).__name__} as a report key")


def jsonable(obj):
    """Recursively convert package objects to JSON-safe structures."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        raise InputError("floats must never appear in reports")
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, Vec):
        return emit_vector(obj)
    if isinstance(obj, EmbeddedComplex):
        return emit_complex(obj)
    if isinstance(obj, ConstructibleFunction):
        return emit_constructible(obj)
    if isinstance(obj, (AffineFunction, QuadAffineFunction)):
        return emit_affine(obj)
    if isinstance(obj, SymMatrix):
        return [[format_rational(e) for e in row] for row in obj.rows]
    if isinstance(obj, frozenset):
        if all(isinstance(e, int) for e in obj):
            return sorted(obj)
        # region of simplices: canonical order by (dim, vertex ids)
        return [jsonable(e) for e in sorted(obj, key=sort_key)]
    if hasattr(obj, "_asdict"):
        return {k: jsonable(v) for k, v in obj._asdict().items()}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {_encode_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(item) for item in obj]
    raise InputError(f"cannot serialize {type(obj).__name__} into a report")


def dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, no floats."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
