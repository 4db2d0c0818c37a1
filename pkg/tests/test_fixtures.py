"""Fixture corpus integrity: frozen names, provenance, referential soundness."""

from __future__ import annotations

import pytest

from eulercc import (
    InputError,
    builtin_fixtures,
    enumerate_chambers,
    fixture_by_name,
    multiplicity_at,
    random_fixture,
    simplex,
    validate,
)
from eulercc.complexes import is_subcomplex
from eulercc.io import dumps, emit_complex

EXPECTED_NAMES = [
    "interval",
    "circle",
    "triangle",
    "ygraph",
    "cone3",
    "susp3",
    "sphere",
    "book",
    "elbow",
]


def test_builtin_names_frozen(builtins) -> None:
    assert [fx.name for fx in builtins] == EXPECTED_NAMES


def test_fixture_by_name_round_trip() -> None:
    fx = fixture_by_name("susp3")
    assert fx.name == "susp3"
    with pytest.raises(InputError):
        fixture_by_name("nonesuch")


def test_every_fixture_has_core_functions(builtins) -> None:
    for fx in builtins:
        assert {"one", "dual_one", "random0"} <= set(fx.functions)
        assert fx.cut_function in fx.morse_inputs


def test_expected_values_carry_provenance(builtins) -> None:
    for fx in builtins:
        assert fx.expected, fx.name
        for key, expect in fx.expected.items():
            assert expect.provenance.startswith(("trivial:", "derived:")), (
                fx.name,
                key,
            )


def test_case_references_resolve(builtins) -> None:
    for fx in builtins:
        for case in fx.theorem_cases:
            assert case.alpha in fx.functions, (fx.name, case)
            assert case.function in fx.morse_inputs, (fx.name, case)
        for case in fx.negative_cases:
            assert case.alpha in fx.functions, (fx.name, case)
            assert case.function in fx.morse_inputs, (fx.name, case)
            assert case.error == "HypothesisViolationError"


def test_cut_levels_avoid_vertex_values(builtins) -> None:
    """Each stored cut level must be transversal to its own complex."""
    for fx in builtins:
        g = fx.morse_inputs[fx.cut_function]
        vertex_values = {g.value(v) for v in fx.complex.vertices}
        for level in fx.cut_levels:
            assert level not in vertex_values, (fx.name, level)


def test_subcomplexes_are_closed_subsets(builtins) -> None:
    for fx in builtins:
        for name, region in fx.subcomplexes.items():
            assert region <= fx.complex.simplices, (fx.name, name)
            assert is_subcomplex(fx.complex, region), (fx.name, name)


def test_spine_table_matches_live_enumeration(by_name) -> None:
    """The frozen book-spine multiplicities agree with a fresh computation."""
    fx = by_name["book"]
    spine = simplex([0, 1])
    live = {}
    for ch in enumerate_chambers(fx.complex, spine):
        signs = ch.signs()
        key = (signs[2], signs[3], signs[4])
        live[key] = multiplicity_at(fx.functions["one"], spine, ch.witness)
    frozen = {
        key[1]: expect.value
        for key, expect in fx.expected.items()
        if key[0] == "spine_multiplicity"
    }
    assert live == frozen


def test_random_fixture_deterministic() -> None:
    a = random_fixture(3)
    b = random_fixture(3)
    assert a.name == b.name == "random-3-d2"
    assert dumps(emit_complex(a.complex)) == dumps(emit_complex(b.complex))
    assert {s: a.functions["random0"].value(s) for s in a.complex.simplices} == {
        s: b.functions["random0"].value(s) for s in b.complex.simplices
    }


def test_random_fixture_seeds_differ() -> None:
    a = random_fixture(1)
    b = random_fixture(2)
    assert dumps(emit_complex(a.complex)) != dumps(emit_complex(b.complex))


def test_random_fixture_respects_budget_and_validates() -> None:
    for seed in range(3):
        fx = random_fixture(seed, size_budget=150)
        assert len(fx.complex.simplices) <= 150
        assert validate(fx.complex) == []
        assert {"one", "dual_one", "random0"} <= set(fx.functions)
