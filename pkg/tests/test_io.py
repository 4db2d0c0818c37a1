"""Wire formats: exact round trips, strict float rejection, determinism."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from eulercc import InputError, Vec, simplex
from eulercc.io import (
    dumps,
    emit_affine,
    emit_complex,
    emit_constructible,
    emit_vector,
    jsonable,
    load_json,
    parse_affine,
    parse_complex,
    parse_constructible,
    parse_rational,
    parse_simplex_key,
    parse_vector,
    simplex_key,
)


def test_parse_rational_forms() -> None:
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == Fraction(-2)
    assert parse_rational(7) == Fraction(7)


def test_parse_rational_rejects_floats_and_zero_denominator() -> None:
    with pytest.raises(InputError):
        parse_rational(0.25)
    with pytest.raises(InputError):
        parse_rational("1/0")


def test_vector_round_trip() -> None:
    v = Vec.of("1/3", -2, 0)
    assert parse_vector(emit_vector(v)) == v
    with pytest.raises(InputError):
        parse_vector(["1", "2"], dim=3)


def test_simplex_key_round_trip() -> None:
    s = simplex([4, 0, 2])
    assert simplex_key(s) == "0,2,4"
    assert parse_simplex_key("0,2,4") == s
    with pytest.raises(InputError):
        parse_simplex_key("0,x")


def test_complex_round_trip(builtins) -> None:
    for fx in builtins:
        obj = emit_complex(fx.complex)
        back = parse_complex(obj)
        assert back.simplices == fx.complex.simplices, fx.name
        assert list(back.vertices) == list(fx.complex.vertices), fx.name
        # emitted form is JSON-serializable as-is
        json.dumps(jsonable(obj))


def test_parse_complex_with_close_flag() -> None:
    obj = {
        "ambient_dim": 2,
        "vertices": [["0", "0"], ["1", "0"], ["0", "1"]],
        "simplices": [[0, 1, 2]],
        "close": True,
    }
    cx = parse_complex(obj)
    assert len(cx.simplices) == 7


def test_parse_complex_rejects_float_coordinates() -> None:
    obj = {
        "ambient_dim": 1,
        "vertices": [[0.5]],
        "simplices": [[0]],
    }
    with pytest.raises(InputError):
        parse_complex(obj)


def test_parse_complex_rejects_missing_field() -> None:
    with pytest.raises(InputError):
        parse_complex({"vertices": [], "simplices": []})


def test_constructible_round_trip(by_name) -> None:
    fx = by_name["book"]
    alpha = fx.functions["random0"]
    obj = emit_constructible(alpha)
    back = parse_constructible(obj, fx.complex)
    assert all(back.value(s) == alpha.value(s) for s in fx.complex.simplices)
    # only nonzero entries are stored
    assert all(int(v) != 0 for v in obj["values"].values())


def test_parse_constructible_rejects_bad_values(by_name) -> None:
    cx = by_name["interval"].complex
    with pytest.raises(InputError):
        parse_constructible({"values": {"0,9": 1}}, cx)
    with pytest.raises(InputError):
        parse_constructible({"values": {"0": 1.5}}, cx)
    with pytest.raises(InputError):
        parse_constructible({"values": {"0": True}}, cx)


def test_affine_round_trip(by_name) -> None:
    fx = by_name["triangle"]
    for f in fx.morse_inputs.values():
        obj = emit_affine(f)
        back = parse_affine(obj, fx.complex.ambient_dim)
        probe = Vec.of("1/7", "2/3")
        assert back.value(probe) == f.value(probe)


def test_affine_round_trip_with_quadratic_part() -> None:
    from eulercc import squared_distance_from

    f = squared_distance_from(Vec.of("1/2", 3))
    obj = emit_affine(f)
    assert "quad" in obj
    back = parse_affine(obj, 2)
    probe = Vec.of(5, "-1/3")
    assert back.value(probe) == f.value(probe)
    assert back.gradient(probe) == f.gradient(probe)


def test_dumps_is_deterministic_and_newline_terminated(by_name) -> None:
    fx = by_name["sphere"]
    text1 = dumps(jsonable(emit_complex(fx.complex)))
    text2 = dumps(jsonable(emit_complex(fx.complex)))
    assert text1 == text2
    assert text1.endswith("\n")
    # keys are sorted so the output is canonical
    parsed = json.loads(text1)
    assert list(parsed) == sorted(parsed)


def test_jsonable_rejects_floats() -> None:
    with pytest.raises(InputError):
        jsonable({"x": 0.1})


def test_jsonable_handles_exact_scalars() -> None:
    obj = jsonable(
        {
            "frac": Fraction(-3, 7),
            "vec": Vec.of(1, "1/2"),
            "set": frozenset({3, 1}),
            "nested": (Fraction(2), None, True),
        }
    )
    assert obj["frac"] == "-3/7"
    assert obj["vec"] == ["1", "1/2"]
    assert obj["set"] == [1, 3]
    assert obj["nested"] == ["2", None, True]
    json.dumps(obj)


def test_load_json_missing_file(tmp_path) -> None:
    with pytest.raises(InputError):
        load_json(str(tmp_path / "absent.json"))


def test_load_json_malformed(tmp_path) -> None:
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(InputError):
        load_json(str(path))
