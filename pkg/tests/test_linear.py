from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liekit.errors import BoundsExceeded, DimensionMismatch, SingularMatrix
from liekit.field import FieldSpec
from liekit.linear import (
    Matrix,
    enumerate_graded_subspaces,
    enumerate_subspaces,
    full_space,
    gaussian_binomial,
    identity,
    invariant_closure,
    inverse,
    mat_mul,
    quotient_basis,
    rref,
    span,
    zero_subspace,
)

Q = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


def qv(*values):
    return tuple(Fraction(v) for v in values)


def test_rref_prunes_zero_rows():
    m = Matrix.from_rows(Q, [qv(2, 4, 0), qv(1, 2, 0), qv(0, 0, 3)])
    assert rref(m).rows == (qv(1, 2, 0), qv(0, 0, 1))


def test_rref_keeps_raw_field_values():
    m = Matrix.from_rows(Q, [qv(3, 1, 0), qv(0, 0, 0)])
    (row,) = rref(m).rows
    assert row == (Fraction(1), Fraction(1, 3), Fraction(0))
    assert all(isinstance(a, Fraction) for a in row)

    f5 = FieldSpec.prime(5)
    reduced = rref(Matrix.from_rows(f5, [(2, 4, 1), (4, 3, 0)]))
    assert reduced.rows == ((1, 2, 0), (0, 0, 1))
    assert all(type(a) is int for row in reduced.rows for a in row)

    assert rref(Matrix.from_rows(Q, [], 3)).rows == ()
    assert span([], 2, F3) == zero_subspace(2, F3)


def test_span_is_canonical():
    a = span([qv(1, 1, 0), qv(0, 1, 0)], 3, Q)
    b = span([qv(1, 0, 0), qv(0, 2, 0), qv(3, 3, 0)], 3, Q)
    assert a == b
    assert a.dim == 2
    assert a.pivots == (0, 1)


def test_member_and_contains():
    plane = span([qv(1, 0, 0), qv(0, 1, 0)], 3, Q)
    line = span([qv(1, 1, 0)], 3, Q)
    assert plane.member(qv(5, -3, 0))
    assert not plane.member(qv(0, 0, 1))
    assert plane.contains(line)
    assert not line.contains(plane)
    assert plane.sum(span([qv(0, 0, 1)], 3, Q)) == full_space(3, Q)


def test_member_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        zero_subspace(3, Q).member(qv(1, 0))


def test_graded_subspace_check():
    parity = (0, 1)
    assert span([qv(1, 0)], 2, Q).is_graded(parity)
    assert not span([qv(1, 1)], 2, Q).is_graded(parity)


def test_inverse_and_singular():
    m = Matrix.from_rows(Q, [qv(1, 2), qv(3, 4)])
    assert mat_mul(m, inverse(m)) == identity(2, Q)
    with pytest.raises(SingularMatrix):
        inverse(Matrix.from_rows(Q, [qv(1, 2), qv(2, 4)]))


def test_quotient_coordinates():
    line = span([qv(0, 0, 1)], 3, Q)
    q = quotient_basis(3, line)
    assert q.dim == 2
    assert q.project(qv(1, 2, 7)) == qv(1, 2)
    assert q.project(q.lift(qv(4, 5))) == qv(4, 5)


def test_invariant_closure():
    shift = Matrix.from_rows(Q, [qv(0, 0, 0), qv(1, 0, 0), qv(0, 1, 0)])
    closure = invariant_closure([qv(1, 0, 0)], [shift], 3, Q)
    assert closure == full_space(3, Q)
    assert invariant_closure([qv(0, 0, 1)], [shift], 3, Q).dim == 1


def test_graded_closure_splits_generators():
    closure = invariant_closure([qv(1, 1)], [], 2, Q, parity=(0, 1))
    assert closure == full_space(2, Q)


@pytest.mark.parametrize(
    ("n", "field", "expected"),
    [(1, F2, 2), (2, F2, 5), (4, F2, 67), (2, F3, 6), (3, F3, 28)],
)
def test_subspace_counts(n, field, expected):
    subspaces = list(enumerate_subspaces(n, field))
    assert len(subspaces) == expected
    assert len(set(subspaces)) == expected
    assert sum(gaussian_binomial(n, k, field.p) for k in range(n + 1)) == expected


def test_enumeration_order_is_canonical():
    subspaces = list(enumerate_subspaces(2, F2))
    assert subspaces[0] == zero_subspace(2, F2)
    assert subspaces[-1] == full_space(2, F2)
    dims = [s.dim for s in subspaces]
    assert dims == sorted(dims)


def test_graded_enumeration():
    graded = list(enumerate_graded_subspaces((0, 1), F3))
    assert len(graded) == 4
    assert all(s.is_graded((0, 1)) for s in graded)


def test_enumeration_bounds():
    with pytest.raises(BoundsExceeded):
        list(enumerate_subspaces(5, F2))
    with pytest.raises(BoundsExceeded):
        list(enumerate_subspaces(2, Q))
    with pytest.raises(BoundsExceeded):
        list(enumerate_subspaces(2, FieldSpec.prime(7)))


@settings(derandomize=True, deadline=None, max_examples=100)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4))
def test_span_idempotent(rows):
    vectors = [qv(*row) for row in rows]
    s = span(vectors, 3, Q)
    assert span(s.basis, 3, Q) == s
    assert all(s.member(v) for v in vectors)
