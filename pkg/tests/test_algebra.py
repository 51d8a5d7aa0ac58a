from __future__ import annotations

from fractions import Fraction

import pytest

from liekit.algebra import (
    BracketTensor,
    Kind,
    LabelSet,
    MultiAlgebra,
    Parity,
    bracket_eval,
    is_even_map,
    is_odd_map,
    left_multiplication,
    parity_of,
    right_multiplication,
    sign,
)
from liekit.errors import DimensionMismatch, NotGraded, StructureError, UnknownLabel
from liekit.linear import Matrix


def test_kind_properties():
    assert Kind.SUPER_SECOND.is_super
    assert not Kind.THIRD.is_super
    assert Kind.SUPER_THIRD.order == 3
    assert Kind.SUPER_FIRST.ungraded is Kind.FIRST
    assert Kind.SECOND.graded() is Kind.SUPER_SECOND


def test_label_set_rejects_duplicates_and_empty():
    with pytest.raises(StructureError):
        LabelSet(("h", "h"))
    with pytest.raises(StructureError):
        LabelSet(())


def test_label_pairs():
    labels = LabelSet(("h", "k"))
    assert list(labels.ordered_pairs()) == [("h", "h"), ("h", "k"), ("k", "h"), ("k", "k")]
    assert list(labels.unordered_pairs()) == [("h", "h"), ("h", "k"), ("k", "k")]
    with pytest.raises(UnknownLabel):
        labels.index("z")


def test_bracket_eval_is_bilinear(h3):
    e0, e1, e2 = (h3.basis(i) for i in range(3))
    assert bracket_eval(h3, "h", e0, e1) == (0, 0, 1)
    assert bracket_eval(h3, "k", e0, e1) == (0, 0, 2)
    assert bracket_eval(h3, "k", e1, e0) == (0, 0, -2)
    x = (Fraction(1), Fraction(2), Fraction(5))
    y = (Fraction(3), Fraction(-1), Fraction(0))
    # [x, y] = (x0 y1 - x1 y0) e2
    assert bracket_eval(h3, "h", x, y) == (0, 0, Fraction(-7))
    assert bracket_eval(h3, "h", e2, x) == (0, 0, 0)


def test_bracket_eval_dimension_check(h3):
    with pytest.raises(DimensionMismatch):
        bracket_eval(h3, "h", (1, 0), (0, 1, 0))
    with pytest.raises(UnknownLabel):
        bracket_eval(h3, "z", h3.basis(0), h3.basis(1))


def test_multiplication_matrices(h3):
    left = left_multiplication(h3, "h", 0)
    right = right_multiplication(h3, "h", 1)
    assert left.column(1) == (0, 0, 1)
    assert right.column(0) == (0, 0, 1)
    assert left.column(0) == (0, 0, 0)


def test_parity_of(super11):
    assert parity_of(super11, (1, 0)) is Parity.EVEN
    assert parity_of(super11, (0, 3)) is Parity.ODD
    assert parity_of(super11, (1, 1)) is Parity.MIXED
    assert parity_of(super11, (0, 0)) is Parity.ZERO


def test_parity_of_needs_grading(h3):
    with pytest.raises(NotGraded):
        parity_of(h3, h3.basis(0))


def test_super_kinds_need_grading(q):
    tensor = BracketTensor.zero(2, q)
    with pytest.raises(StructureError):
        MultiAlgebra.build(q, Kind.SUPER_FIRST, {"h": tensor})
    with pytest.raises(StructureError):
        MultiAlgebra.build(q, Kind.FIRST, {"h": tensor}, grading=(0, 1))
    with pytest.raises(DimensionMismatch):
        MultiAlgebra.build(q, Kind.SUPER_FIRST, {"h": tensor}, grading=(0,))


def test_tensor_shape_checked():
    with pytest.raises(DimensionMismatch):
        BracketTensor.from_nested([[[0, 0], [0]], [[0, 0], [0, 0]]])


def test_zero_algebra_of_dimension_zero(q):
    a = MultiAlgebra.zero(q, 0, ["h"], Kind.SECOND)
    assert a.dim == 0
    assert a.brackets[0].is_zero()


def test_even_and_odd_maps(q):
    parity = (0, 1)
    swap = Matrix.from_rows(q, [(0, 1), (1, 0)])
    diag = Matrix.from_rows(q, [(2, 0), (0, 3)])
    assert is_even_map(diag, parity)
    assert not is_even_map(swap, parity)
    assert is_odd_map(swap, parity)


def test_sign(f5):
    assert sign(f5, 3) == 4
    assert sign(f5, 2) == 1
