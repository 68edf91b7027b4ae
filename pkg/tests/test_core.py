from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from braiddeform import oracle
from braiddeform.core import (
    MINUS,
    PLUS,
    DeformationSpec,
    Hyperplane,
    Region,
    Vertex,
    characteristic,
    coboundary_from_tutte,
    expand_spec,
    is_feasible,
    parse_offsets,
    rank,
    sign_vector,
    tutte_from_coboundary,
    witness_point,
    zaslavsky,
)
from braiddeform.errors import IncompleteRegion, OnHyperplane, UnknownVertex
from braiddeform.poly import Poly

q, y = Poly.var("q"), Poly.var("y")
V = Vertex


def test_parse_offsets():
    assert parse_offsets("-1,0,1") == (-1, 0, 1)
    assert parse_offsets("-2..1") == (-2, -1, 0, 1)
    assert parse_offsets("1, 1, 3") == (1, 3)
    assert parse_offsets("") == ()


def test_expand_braid():
    assert expand_spec(DeformationSpec.uniform({0}, 3)) == [
        Hyperplane(V(1, 1), V(1, 2), 0),
        Hyperplane(V(1, 1), V(1, 3), 0),
        Hyperplane(V(1, 2), V(1, 3), 0),
    ]


def test_graded_with_unit_vector_is_the_tuple_arrangement():
    sets = {(1, 1): (-1, 0, 1), (1, 2): (0, 1), (2, 2): (0,), (1, 3): (1,), (2, 3): (), (3, 3): (2,)}
    graded = DeformationSpec.graded(3, sets, (1, 1, 1))
    tup = DeformationSpec.from_tuple(sets, 3)
    assert expand_spec(graded) == expand_spec(tup)


def test_graded_with_one_type_is_uniform():
    sets = {(1, 1): (-1, 0, 2), (1, 2): (0, 1), (2, 2): (0,)}
    graded = DeformationSpec.graded(2, sets, (3, 0))
    uniform = DeformationSpec.uniform((-1, 0, 2), 3)
    assert expand_spec(graded) == expand_spec(uniform)


def test_offsets_are_symmetric_in_types():
    spec = DeformationSpec.graded(2, {(2, 1): (0, 3)}, (1, 1))
    assert spec.offsets(1, 2) == spec.offsets(2, 1) == (0, 3)
    assert spec.m == 3


def test_labels_and_vertices():
    assert DeformationSpec.uniform({0}, 3).labels() == [1, 2, 3]
    assert DeformationSpec.constant_tuple({0}, 3).labels() == [1, 2, 3]
    graded = DeformationSpec.graded(2, {(1, 2): (0,)}, (1, 2))
    assert graded.labels() == [V(1, 1), V(2, 1), V(2, 2)]
    assert str(V(2, 1)) == "2.1"
    with pytest.raises(UnknownVertex):
        graded.vertex(V(1, 2))


def test_json_round_trip():
    spec = DeformationSpec.graded(2, {(1, 1): (-1, 1), (1, 2): (0,)}, (2, 1))
    assert DeformationSpec.from_json(spec.to_json()) == spec
    assert DeformationSpec.from_json('{"S": [0, 1], "n": 3}') == DeformationSpec.uniform((0, 1), 3)


def test_sign_vector_examples():
    braid = DeformationSpec.uniform({0}, 2)
    assert sign_vector(braid, (Fraction(1, 3), Fraction(2, 3))).signs == (MINUS,)
    catalan = DeformationSpec.uniform({-1, 0, 1}, 2)
    assert sign_vector(catalan, (0, Fraction(1, 2))).signs == (PLUS, MINUS, MINUS)
    with pytest.raises(OnHyperplane):
        sign_vector(braid, (Fraction(1, 2), Fraction(1, 2)))


def test_sign_vector_accepts_label_maps():
    spec = DeformationSpec.uniform({0}, 2)
    assert sign_vector(spec, {1: 2, 2: 1}).signs == (PLUS,)


def test_feasibility():
    spec = DeformationSpec.uniform({-1, 1}, 2)
    hs = tuple(expand_spec(spec))
    # x1 - x2 < -1 and x1 - x2 > 1
    assert not is_feasible(spec, Region(hs, (MINUS, PLUS)))
    assert is_feasible(spec, Region(hs, (PLUS, MINUS)))
    shi = DeformationSpec.uniform({0, 1}, 2)
    region = Region(tuple(expand_spec(shi)), (PLUS, MINUS))
    point = witness_point(shi, region)
    assert sign_vector(shi, point) == region
    with pytest.raises(IncompleteRegion):
        is_feasible(shi, Region(hs[:1], (PLUS,)))


def test_rank():
    assert rank(DeformationSpec.uniform({0}, 3)) == 2
    assert rank(DeformationSpec.uniform((), 3)) == 0
    assert rank(DeformationSpec.graded(2, {(1, 2): (0,)}, (2, 2))) == 3


def test_zaslavsky():
    assert zaslavsky(q * (q - 1) * (q - 2), 3, 2) == (6, 0)
    assert zaslavsky(q ** 4, 4, 0) == (1, 1)
    spec = DeformationSpec.uniform({-1, 0, 1}, 2)
    chi = characteristic(oracle.whitney_coboundary(spec))
    assert zaslavsky(chi, 2, rank(spec))[0] == 4


def test_tutte():
    assert tutte_from_coboundary(q ** 2 + (y - 1) * q, 1, 2) == Poly.var("x")
    T = tutte_from_coboundary(q ** 3, 0, 3)
    assert T(x=2, y=2) == 1


@given(st.sets(st.integers(-2, 2), max_size=4), st.integers(1, 3))
def test_tutte_round_trip(S, n):
    spec = DeformationSpec.uniform(S, n)
    P = oracle.whitney_coboundary(spec)
    r = rank(spec)
    T = tutte_from_coboundary(P, r, n)
    assert coboundary_from_tutte(T, r, n) == P
    # T(2, 0) counts regions
    assert T(x=2, y=0) == zaslavsky(characteristic(P), n, r)[0]


@given(st.sets(st.integers(-2, 2), max_size=4), st.lists(st.fractions(-3, 3), min_size=3, max_size=3))
def test_sign_vectors_of_points_are_feasible(S, point):
    spec = DeformationSpec.uniform(S, 3)
    try:
        region = sign_vector(spec, point)
    except OnHyperplane:
        return
    assert is_feasible(spec, region)
