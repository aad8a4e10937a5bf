"""Exact linear algebra: rref, solving, nullspaces, spans."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regrade.fields import F2, F3, QQ
from regrade.linalg import (
    coordinates_in_span,
    echelon_basis,
    inverse,
    is_invertible,
    mat_vec,
    matmul,
    nullspace,
    rank,
    rref,
    solve,
    span_contains,
)


def f2_matrix(rows, cols):
    return st.lists(
        st.lists(st.integers(0, 1), min_size=cols, max_size=cols),
        min_size=rows,
        max_size=rows,
    )


matrices_f3 = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(0, 2), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(matrices_f3)
def test_rref_is_idempotent_and_preserves_rank(a):
    r1, pivots = rref(F3, a)
    r2, pivots2 = rref(F3, r1)
    assert r1 == r2
    assert pivots == pivots2
    assert len(pivots) == rank(F3, a)


@settings(max_examples=60, deadline=None)
@given(matrices_f3, st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_solve_recovers_constructed_right_hand_sides(a, x_raw):
    cols = len(a[0])
    x0 = x_raw[:cols]
    b = mat_vec(F3, a, x0)
    x = solve(F3, a, list(b), cols)
    assert x is not None
    assert list(mat_vec(F3, a, x)) == list(b)


@settings(max_examples=60, deadline=None)
@given(matrices_f3)
def test_nullspace_vectors_annihilate_and_count_matches_rank(a):
    cols = len(a[0])
    null = nullspace(F3, a, cols)
    for v in null:
        assert all(F3.is_zero(c) for c in mat_vec(F3, a, v))
    assert len(null) == cols - rank(F3, a)


def test_solve_reports_unsolvable_systems():
    # x = 0 and x = 1 simultaneously
    assert solve(F2, [[1], [1]], [0, 1], 1) is None


@settings(max_examples=40, deadline=None)
@given(f2_matrix(3, 3))
def test_inverse_round_trip_when_invertible(a):
    if not is_invertible(F2, a):
        assert inverse(F2, a) is None
        return
    inv = inverse(F2, a)
    identity = [[F2.one if i == j else F2.zero for j in range(3)] for i in range(3)]
    assert [list(r) for r in matmul(F2, a, inv)] == identity
    assert [list(r) for r in matmul(F2, inv, a)] == identity


def test_echelon_basis_removes_dependencies():
    vecs = [[1, 0, 1], [0, 1, 1], [1, 1, 0]]
    basis = echelon_basis(F2, vecs)
    assert len(basis) == 2
    for v in vecs:
        assert coordinates_in_span(F2, basis, v) is not None


def test_span_membership_over_the_rationals():
    basis = [[QQ.coerce(1), QQ.coerce(2)], [QQ.coerce(0), QQ.coerce(1)]]
    assert span_contains(QQ, basis, [QQ.coerce(3), QQ.coerce(5)])
    coords = coordinates_in_span(QQ, basis, [QQ.coerce(3), QQ.coerce(5)])
    assert coords is not None
    assert coords[0] == QQ.coerce(3)
    single = [[QQ.coerce(1), QQ.coerce(2)]]
    assert not span_contains(QQ, single, [QQ.coerce(1), QQ.coerce(3)])
