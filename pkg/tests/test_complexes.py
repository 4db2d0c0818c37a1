"""Embedded rational complexes: construction, validation, stars, carriers."""

from __future__ import annotations

from fractions import Fraction

import pytest

from eulercc import (
    EmbeddedComplex,
    InputError,
    Vec,
    barycentric_coordinates,
    carrier,
    close_under_faces,
    closed_star,
    induced_complex,
    simplex,
    validate,
)
from eulercc.complexes import (
    as_region,
    closed_star_of_simplex,
    is_subcomplex,
    open_star_of_simplex,
    point_in_closed_simplex,
)


def test_simplex_normalizes_and_rejects_empty() -> None:
    assert simplex([2, 0, 1]) == frozenset({0, 1, 2})
    assert simplex(frozenset({3})) == frozenset({3})
    with pytest.raises(InputError):
        simplex([])


def test_construction_rejects_unknown_vertex() -> None:
    with pytest.raises(InputError):
        EmbeddedComplex(2, [(0, 0), (1, 0)], [[0, 5]])


def test_construction_rejects_ragged_coordinates() -> None:
    with pytest.raises(InputError):
        EmbeddedComplex(2, [(0, 0), (1,)], [[0], [1]])


def test_close_under_faces() -> None:
    closed = close_under_faces([[0, 1, 2]])
    assert len(closed) == 7
    assert simplex([0, 2]) in closed
    cx = EmbeddedComplex(2, [(0, 0), (1, 0), (0, 1)], [[0, 1, 2]], close=True)
    assert cx.simplices == frozenset(closed)
    assert validate(cx) == []


def test_validate_clean_on_builtins(builtins) -> None:
    for fx in builtins:
        assert validate(fx.complex) == [], fx.name


def test_validate_reports_missing_face() -> None:
    cx = EmbeddedComplex(2, [(0, 0), (1, 0), (0, 1)], [[0], [1], [2], [0, 1, 2]])
    kinds = {v.kind for v in validate(cx)}
    assert kinds == {"closure"}


def test_validate_reports_degenerate_simplex() -> None:
    # three collinear points spanning a "triangle"
    cx = EmbeddedComplex(2, [(0, 0), (1, 0), (2, 0)], [[0, 1, 2]], close=True)
    bad = [v for v in validate(cx) if v.kind == "affine-independence"]
    assert [v.simplices for v in bad] == [((0, 1, 2),)]


def test_validate_reports_geometric_overlap() -> None:
    # second triangle's third vertex sits inside the first triangle
    cx = EmbeddedComplex(2, [(0, 0), (4, 0), (2, 3), (2, 1)], [[0, 1, 2], [0, 1, 3]], close=True)
    bad = [v for v in validate(cx) if v.kind == "geometric-consistency"]
    assert len(bad) == 1
    assert bad[0].simplices == ((0, 1, 2), (0, 1, 3))


def test_validate_accepts_shared_edge() -> None:
    cx = EmbeddedComplex(2, [(0, 0), (2, 0), (1, 1), (1, -1)], [[0, 1, 2], [0, 1, 3]], close=True)
    assert validate(cx) == []


def test_closed_star_of_center_vertex(by_name) -> None:
    cx = by_name["ygraph"].complex
    star = closed_star(cx, [[0]])
    assert sorted(tuple(sorted(s)) for s in star) == [
        (0,),
        (0, 1),
        (0, 2),
        (0, 3),
        (1,),
        (2,),
        (3,),
    ]


def test_open_star_is_cofaces_only(by_name) -> None:
    cx = by_name["ygraph"].complex
    assert set(open_star_of_simplex(cx, simplex([0, 1]))) == {simplex([0, 1])}
    leaf_star = set(open_star_of_simplex(cx, simplex([1])))
    assert leaf_star == {simplex([1]), simplex([0, 1])}


def test_closed_star_of_simplex_is_closed(by_name) -> None:
    cx = by_name["sphere"].complex
    star = closed_star_of_simplex(cx, simplex([0, 1]))
    assert is_subcomplex(cx, star)
    assert simplex([0, 1]) in star


def test_strict_cofaces(by_name) -> None:
    cx = by_name["triangle"].complex
    cofaces = cx.strict_cofaces(simplex([0, 1]))
    assert sorted(tuple(sorted(s)) for s in cofaces) == [(0, 1, 2)]


def test_carrier_identifies_open_stratum(by_name) -> None:
    cx = by_name["ygraph"].complex
    assert carrier(cx, Vec.of("1/2", 0)) == simplex([0, 1])
    assert carrier(cx, Vec.of(0, 0)) == simplex([0])
    assert carrier(cx, Vec.of(50, 50)) is None


def test_carrier_on_triangle_interior(by_name) -> None:
    cx = by_name["triangle"].complex
    inside = Vec.of("1/2", "1/4")
    assert carrier(cx, inside) == simplex([0, 1, 2])


def test_point_in_closed_simplex(by_name) -> None:
    cx = by_name["triangle"].complex
    t = simplex([0, 1, 2])
    assert point_in_closed_simplex(cx, t, Vec.of(0, 0))
    assert point_in_closed_simplex(cx, t, Vec.of(1, 0))
    assert not point_in_closed_simplex(cx, t, Vec.of(3, 3))


def test_barycentric_coordinates_frozen(by_name) -> None:
    cx = by_name["ygraph"].complex
    weights = barycentric_coordinates(cx, simplex([0, 1]), Vec.of("1/2", 0))
    assert weights == [Fraction(3, 4), Fraction(1, 4)]


def test_barycentric_coordinates_reconstruct_point(by_name) -> None:
    cx = by_name["sphere"].complex
    t = sorted(cx.maximal_simplices(), key=lambda s: tuple(sorted(s)))[0]
    verts = sorted(t)
    point = sum(
        (cx.vertices[v].scale(Fraction(1, len(verts))) for v in verts[1:]),
        cx.vertices[verts[0]].scale(Fraction(1, len(verts))),
    )
    weights = barycentric_coordinates(cx, t, point)
    assert sum(weights) == 1
    rebuilt = sum(
        (cx.vertices[v].scale(w) for v, w in zip(verts[1:], weights[1:])),
        cx.vertices[verts[0]].scale(weights[0]),
    )
    assert rebuilt == point


def test_stratum_basis_spans_directions(by_name) -> None:
    cx = by_name["triangle"].complex
    st = cx.stratum(simplex([0, 1, 2]))
    assert st.dim == 2
    assert len(st.direction_basis) == 2
    st0 = cx.stratum(simplex([1]))
    assert st0.dim == 0
    assert st0.direction_basis == ()
    assert st0.barycenter == cx.vertices[1]


def test_as_region_defaults_to_everything(by_name) -> None:
    cx = by_name["interval"].complex
    assert as_region(cx, None) == cx.simplices
    assert as_region(cx, [[0]]) == frozenset({simplex([0])})
    with pytest.raises(InputError):
        as_region(cx, [[9]])


def test_induced_complex_renumbers_and_validates(by_name) -> None:
    cx = by_name["book"].complex
    region = closed_star_of_simplex(cx, simplex([0, 1]))
    sub, vertex_map = induced_complex(cx, region)
    assert validate(sub) == []
    assert len(sub.simplices) == len(region)
    # geometry is preserved under the renumbering
    for old, new in vertex_map.items():
        assert cx.vertices[old] == sub.vertices[new]
