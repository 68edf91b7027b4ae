from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from braiddeform import oracle
from braiddeform.core import DeformationSpec, characteristic, rank, zaslavsky
from braiddeform.count import (
    check_multi_transitive,
    coboundary_from_trees,
    is_transitive_set,
    is_transitive_tuple,
    multi_transitive_witness,
    signed_region_count,
    transitivity_witness,
    unsigned_region_count,
    z_bruteforce,
    z_identity_check,
)
from braiddeform.errors import NotTransitive
from braiddeform.poly import Poly

q, y = Poly.var("q"), Poly.var("y")
SUBSETS_OF_UNIT = [(), (0,), (1,), (-1,), (0, 1), (-1, 0), (-1, 1), (-1, 0, 1)]


def whitney_regions(spec):
    P = oracle.whitney_coboundary(spec)
    return zaslavsky(characteristic(P), spec.size, rank(spec))[0]


def test_transitive_sets():
    assert is_transitive_set({0, 1})
    assert not is_transitive_set({-2, 0, 2})
    assert is_transitive_set({1, 2, 3})
    assert transitivity_witness({-2, 0, 2}) is not None
    # the literal definition rejects {-1}; see the tree-family test below
    assert not is_transitive_set({-1})


def test_transitive_tuples():
    for m in (1, 2, 3):
        half = tuple(range(-(m // 2), m // 2 + 1))
        full = tuple(range(-m, m + 1))
        assert is_transitive_tuple(DeformationSpec.from_tuple({(1, 2): half, (1, 3): full, (2, 3): half}, 3))
    g_shi = DeformationSpec.graphical([(1, 2), (1, 3)], (-1, 0, 1), (0, 1), 3)
    assert is_transitive_tuple(g_shi)


@pytest.mark.parametrize("S", SUBSETS_OF_UNIT + [(-2, 0, 2), (1, 2), (-2, 0, 1)])
def test_constant_tuple_matches_set(S):
    assert is_transitive_tuple(DeformationSpec.constant_tuple(S, 3)) == is_transitive_set(S)


def test_multi_transitive():
    unit = {(1, 1): (-1, 0, 1), (1, 2): (-1, 0, 1), (2, 2): (-1, 0, 1)}
    assert check_multi_transitive(DeformationSpec.graded(2, unit), 4)
    for S in [(0, 1), (1, 2, 3), (-1, 0, 1)]:
        assert check_multi_transitive(DeformationSpec.uniform(S, 0), 4)
    assert not check_multi_transitive(DeformationSpec.uniform((-2, 0, 2), 0), 4)
    # frozen from the exhaustive check
    split = DeformationSpec.graded(2, {(1, 1): (0, 1), (1, 2): (), (2, 2): (0, 1)})
    assert not check_multi_transitive(split, 4)
    assert multi_transitive_witness(split, 4) == ((2, 1), (0, 1, 1))


@pytest.mark.parametrize(
    "S,n,count",
    [((0,), 3, 6), ((-1, 0, 1), 3, 30), ((1,), 3, 7), ((0, 1), 4, 125), ((-2, -1, 0, 1), 2, 5), ((-2, 0, 2), 3, 30)],
)
def test_signed_counts(S, n, count):
    assert signed_region_count(DeformationSpec.uniform(S, n)) == count


def test_unsigned_counts():
    assert unsigned_region_count(DeformationSpec.uniform((0, 1), 4)) == 125
    assert unsigned_region_count(DeformationSpec.uniform((-2, -1, 0, 1), 2)) == 5
    with pytest.raises(NotTransitive):
        unsigned_region_count(DeformationSpec.uniform((-2, 0, 2), 3))


def test_parallel_count_matches_serial():
    spec = DeformationSpec.uniform((-1, 1), 4)
    assert signed_region_count(spec, jobs=2) == signed_region_count(spec) == 183


@given(st.sets(st.integers(-2, 2), max_size=5), st.integers(0, 3))
def test_signed_count_matches_whitney(S, n):
    spec = DeformationSpec.uniform(S, n)
    assert signed_region_count(spec) == whitney_regions(spec)


def test_coboundary_frozen_values():
    shi3 = 3 * q * y ** 3 + 3 * q * y ** 2 + 6 * q ** 2 * y + q ** 3 - 15 * q * y - 6 * q ** 2 + 9 * q
    assert coboundary_from_trees(DeformationSpec.uniform((0, 1), 3), 3)[(3,)] == shi3
    graded = DeformationSpec.graded(2, {(1, 1): (-1, 0, 1), (2, 2): (0, 1), (1, 2): (0,)})
    table = coboundary_from_trees(graded, 3)
    assert table[(0, 3)] == shi3
    assert table[(2, 1)] == q * y ** 3 + 4 * q * y ** 2 + 5 * q ** 2 * y + q ** 3 - 11 * q * y - 5 * q ** 2 + 6 * q


@pytest.mark.parametrize("S", SUBSETS_OF_UNIT + [(-2, 0, 1)])
def test_coboundary_matches_whitney(S):
    table = coboundary_from_trees(DeformationSpec.uniform(S, 0), 3)
    for (n,), P in table.items():
        assert P == oracle.whitney_coboundary(DeformationSpec.uniform(S, n))


def test_z_bruteforce():
    assert z_bruteforce(DeformationSpec.uniform((0,), 1), (1,), 5) == 5
    assert z_bruteforce(DeformationSpec.uniform((0,), 2), (2,), 3) == 6 + 3 * y


@pytest.mark.parametrize("S", SUBSETS_OF_UNIT)
def test_z_identity(S):
    for n in range(1, 4):
        assert z_identity_check(DeformationSpec.uniform(S, n), (n,))


def test_z_identity_graded():
    spec = DeformationSpec.graded(2, {(1, 1): (-1, 0, 1), (2, 2): (0, 1), (1, 2): (0,)})
    assert z_identity_check(spec, (1, 1))
    assert z_identity_check(spec, (2, 1))
