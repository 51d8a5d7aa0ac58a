from __future__ import annotations

import pytest

from liekit.algebra import BracketTensor, Kind, MultiAlgebra
from liekit.constructions import sl2_base, trivial_from_base
from liekit.errors import InternalClosureFailure, KindMismatch, NotAnIdeal
from liekit.ideals import (
    Which,
    annihilator,
    check_containment,
    classify_simplicity,
    distinguished_set,
    factor_algebra,
    generated_ideal,
    ideal_violation,
    is_ideal,
    named_factor,
    resolve_which,
)
from liekit.linear import full_space, span, zero_subspace


def test_heisenberg_annihilator_is_center(h3, q):
    ann = annihilator(h3, Which.FIRST)
    assert ann.dim == 1
    assert ann.basis == ((0, 0, 1),)
    assert ann == span([(0, 0, 1)], 3, q)


def test_sl2_annihilator_is_everything(sl2_f5, f5):
    assert annihilator(sl2_f5, Which.FIRST) == full_space(3, f5)


def test_leibniz_annihilators(leibniz, q):
    b = span([(0, 1)], 2, q)
    assert annihilator(leibniz, Which.SECOND_MINUS) == b
    assert annihilator(leibniz, Which.SECOND_PLUS) == b
    assert check_containment(leibniz)


def test_containment_needs_second_kind(h3):
    with pytest.raises(KindMismatch):
        check_containment(h3)


def test_annihilator_kind_checked(h3):
    with pytest.raises(KindMismatch):
        annihilator(h3, Which.SECOND_PLUS)


def test_resolve_which():
    assert resolve_which(Kind.SECOND, "plus") is Which.SECOND_PLUS
    assert resolve_which(Kind.SUPER_SECOND, "minus") is Which.SUPER_SECOND_MINUS
    assert resolve_which(Kind.FIRST, "first") is Which.FIRST
    assert resolve_which(Kind.SUPER_FIRST, "super_first") is Which.SUPER_FIRST
    with pytest.raises(KindMismatch):
        resolve_which(Kind.FIRST, "plus")
    with pytest.raises(KindMismatch):
        resolve_which(Kind.THIRD, "first")


def test_super_annihilator_is_graded(super11, q):
    ann = annihilator(super11, Which.SUPER_FIRST)
    assert ann == span([(1, 0)], 2, q)
    assert ann.is_graded((0, 1))
    assert not is_ideal(super11, span([(1, 1)], 2, q))


def test_closure_failure_is_reported(q):
    h = BracketTensor.from_products(2, q, {(0, 0): (1, 0), (1, 0): (0, 1)})
    k = BracketTensor.from_products(2, q, {(1, 0): (0, 1)})
    a = MultiAlgebra.build(q, Kind.FIRST, {"h": h, "k": k})
    with pytest.raises(InternalClosureFailure) as excinfo:
        annihilator(a, Which.FIRST)
    assert excinfo.value.subspace == span([(1, 0)], 2, q)


def test_ideal_violation(h3, q):
    violation = ideal_violation(h3, span([(1, 0, 0)], 3, q))
    assert violation is not None
    assert violation.side == "left"
    assert violation.label == "h"
    assert violation.basis_index == 1
    assert violation.image == (0, 0, -1)
    assert ideal_violation(h3, span([(0, 0, 1)], 3, q)) is None


def test_factor_by_center(h3, q):
    result = factor_algebra(h3, span([(0, 0, 1)], 3, q))
    assert result.well_defined
    assert result.violation is None
    assert result.algebra.dim == 2
    assert all(t.is_zero() for t in result.algebra.brackets)


def test_factor_by_non_ideal(h3, q):
    with pytest.raises(NotAnIdeal):
        factor_algebra(h3, span([(1, 0, 0)], 3, q))


def test_factor_by_zero_is_ill_defined(h3, q):
    result = factor_algebra(h3, zero_subspace(3, q))
    assert not result.well_defined
    assert result.violation == ("h", "k", 0, 1)


def test_named_lie_factor(h3):
    factor = named_factor(h3, Which.FIRST)
    assert factor.name == "lie_factor"
    assert factor.well_defined
    assert factor.algebra.kind is Kind.FIRST
    assert len(factor.algebra.labels) == 1
    assert factor.report is not None and factor.report.passed


def test_named_leibniz_factors(leibniz):
    minus = named_factor(leibniz, Which.SECOND_MINUS)
    plus = named_factor(leibniz, Which.SECOND_PLUS)
    assert minus.name == "leibniz_factor"
    assert minus.algebra.kind is Kind.SECOND
    assert plus.name == "lie_factor"
    assert plus.algebra.kind is Kind.FIRST
    assert minus.algebra.dim == plus.algebra.dim == 1
    assert minus.report is not None and minus.report.passed
    assert plus.report is not None and plus.report.passed


def test_distinguished_set_deduplicates(sl2_f5, f5):
    assert distinguished_set(sl2_f5) == (zero_subspace(3, f5), full_space(3, f5))


def test_sl2_is_two_simple(sl2_f5):
    verdict = classify_simplicity(sl2_f5)
    assert verdict.i == 2
    assert verdict.simple is True
    assert verdict.offending_ideal is None
    assert verdict.exhaustive
    assert verdict.ideal_count == 2


def test_heisenberg_not_simple(h3_f5):
    verdict = classify_simplicity(h3_f5)
    assert verdict.i == 3
    assert verdict.simple is False
    offending = verdict.offending_ideal
    assert offending is not None
    assert offending.dim == 2
    assert offending.member((0, 0, 1))
    assert offending not in verdict.distinguished
    assert is_ideal(h3_f5, offending)
    assert verdict.ideal_count == 9


def test_leibniz_is_three_simple(leibniz_f5):
    verdict = classify_simplicity(leibniz_f5)
    assert verdict.i == 3
    assert verdict.simple is True
    assert verdict.ideal_count == 3


def test_simplicity_threads_agree(h3_f5):
    assert classify_simplicity(h3_f5, threads=1) == classify_simplicity(h3_f5, threads=4)


def test_rational_mode_finds_ideal(h3):
    verdict = classify_simplicity(h3)
    assert not verdict.exhaustive
    assert verdict.simple is False
    assert verdict.offending_ideal is not None
    assert is_ideal(h3, verdict.offending_ideal)


def test_rational_mode_inconclusive(q):
    a = trivial_from_base(sl2_base(q), {"h": 1, "k": 3}, Kind.FIRST, q)
    verdict = classify_simplicity(a)
    assert verdict.simple is None
    assert verdict.ideal_count is None


def test_generated_ideal(h3, q):
    assert generated_ideal(h3, [(1, 0, 0)]) == span([(1, 0, 0), (0, 0, 1)], 3, q)


def test_third_kind_has_no_simplicity(sl2_third):
    with pytest.raises(KindMismatch):
        classify_simplicity(sl2_third)
