from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liekit.algebra import BracketTensor, EndoSets, Kind, MultiAlgebra
from liekit.axioms import (
    check_antisymmetry,
    check_grading,
    check_hom_lie,
    check_jacobi_first,
    check_jacobi_second,
    check_jacobi_third,
    is_anti_symmetric,
    replay_witness,
    verify,
)
from liekit.constructions import sl2_base
from liekit.errors import KindMismatch, MissingEndoSets, NotGraded, StructureError
from liekit.field import FieldSpec
from liekit.linear import Matrix, identity, mat_scale
from liekit.search import SearchSpec, candidate_algebra


def _corrupted_sl2(sl2_f5):
    # [e, f]_k = e instead of 2h
    c = [list(row) for row in sl2_f5.tensor("k").c]
    c[0][1] = (1, 0, 0)
    c[1][0] = (4, 0, 0)
    tensor = BracketTensor.from_nested(c)
    return sl2_f5.with_brackets({"h": sl2_f5.tensor("h"), "k": tensor})


def test_scaled_first_kind_passes(h3, sl2_f5):
    for a in (h3, sl2_f5):
        report = verify(a)
        assert report.passed
        assert report.names() == ("antisymmetry", "jacobi_first", "long_jacobi_first")
        assert all(check.witness is None for check in report.checks)


def test_strict_alternating_adds_check(h3):
    report = verify(h3, strict_alternating=True)
    assert "alternating" in report.names()
    assert report.passed


def test_characteristic_two_note(f2):
    report = verify(MultiAlgebra.zero(f2, 1, ["h"], Kind.FIRST))
    assert report.passed
    assert report.notes
    assert not verify(MultiAlgebra.zero(f2, 1, ["h"], Kind.FIRST), strict_alternating=True).notes


def test_corrupted_sl2_fails_jacobi(sl2_f5):
    broken = _corrupted_sl2(sl2_f5)
    report = verify(broken)
    assert report.get("antisymmetry").passed
    jacobi = report.get("jacobi_first")
    assert not jacobi.passed
    assert jacobi.witness is not None
    assert jacobi.witness.labels == ("h", "k")
    assert replay_witness(broken, jacobi)
    assert not report.get("long_jacobi_first").passed


def test_witness_does_not_replay_on_repaired_algebra(sl2_f5):
    jacobi = check_jacobi_first(_corrupted_sl2(sl2_f5))
    assert not replay_witness(sl2_f5, jacobi)


def test_antisymmetry_failure_witness(h3):
    tensor = h3.tensor("h")
    c = [list(row) for row in tensor.c]
    c[0][0] = (1, 0, 0)
    broken = h3.with_brackets({"h": BracketTensor.from_nested(c), "k": h3.tensor("k")})
    result = check_antisymmetry(broken)
    assert not result.passed
    assert result.witness is not None
    assert result.witness.labels == ("h",)
    assert result.witness.indices == (0, 0)
    assert not is_anti_symmetric(broken)
    assert is_anti_symmetric(h3)


def test_leibniz_second_kind(leibniz):
    report = verify(leibniz)
    assert report.passed
    assert report.names() == ("jacobi_second", "label_flip")


def test_corrupted_leibniz_least_witness(leibniz, q):
    k = BracketTensor.from_products(2, q, {(0, 0): (1, 0)})
    broken = leibniz.with_brackets({"h": leibniz.tensor("h"), "k": k})
    main, _ = check_jacobi_second(broken)
    assert not main.passed
    w = main.witness
    assert w is not None
    assert w.labels == ("h", "k")
    assert w.indices == (0, 0, 0)
    assert w.lhs == (0, 1)
    assert w.rhs == (0, 0)


def test_jacobi_second_needs_second_kind(h3):
    with pytest.raises(KindMismatch):
        check_jacobi_second(h3)


def test_super_first_kind(super11):
    report = verify(super11)
    assert report.passed
    assert report.names()[0] == "grading"
    assert "super_jacobi_first" in report.names()


def test_odd_product_breaks_grading(super11, q):
    h = BracketTensor.from_products(2, q, {(1, 1): (1, 0), (0, 1): (1, 0)})
    broken = super11.with_brackets({"h": h, "k": super11.tensor("k")})
    result = check_grading(broken)
    assert not result.passed
    assert result.witness is not None
    assert result.witness.indices == (0, 1)
    assert result.witness.lhs == (1, 0)


def test_grading_check_needs_grading(h3):
    with pytest.raises(NotGraded):
        check_grading(h3)


def test_third_kind_identity_endos(sl2_third):
    report = verify(sl2_third)
    assert report.passed
    assert report.names() == ("jacobi_third",)


def test_third_kind_scaled_sigma_fails(sl2_third, f5):
    i3 = identity(3, f5)
    endos = EndoSets((mat_scale(2, i3),), (i3,), (i3,))
    a = MultiAlgebra.build(f5, Kind.THIRD, {"h": sl2_third.tensor("h")}, endos=endos)
    result = check_jacobi_third(a)
    assert not result.passed
    assert result.witness is not None
    assert result.witness.endos == (0, 0, 0)


def test_third_kind_without_endos(f5):
    a = MultiAlgebra.build(f5, Kind.THIRD, {"h": sl2_base(f5)})
    with pytest.raises(MissingEndoSets):
        verify(a)


def test_super_zero_algebras_pass(q):
    second = MultiAlgebra.zero(q, 2, ["h", "k"], Kind.SUPER_SECOND, grading=(0, 1))
    assert verify(second).passed
    i2 = identity(2, q)
    third = MultiAlgebra.zero(q, 2, ["h"], Kind.SUPER_THIRD, grading=(0, 1), endos=EndoSets((i2,), (i2,), (i2,)))
    report = verify(third)
    assert report.passed
    assert report.names() == ("grading", "endo_parity", "super_jacobi_third")


def test_odd_endomorphism_rejected(q):
    i2 = identity(2, q)
    swap = Matrix.from_rows(q, [(0, 1), (1, 0)])
    third = MultiAlgebra.zero(q, 2, ["h"], Kind.SUPER_THIRD, grading=(0, 1), endos=EndoSets((swap,), (i2,), (i2,)))
    assert not verify(third).get("endo_parity").passed


def test_hom_lie(f5):
    a = MultiAlgebra.build(f5, Kind.FIRST, {"h": sl2_base(f5)})
    assert check_hom_lie(a, identity(3, f5)).passed
    projection = Matrix.from_rows(f5, [(1, 0, 0), (0, 0, 0), (0, 0, 0)])
    assert not check_hom_lie(a, projection).passed


def test_hom_lie_needs_single_label(h3, q):
    with pytest.raises(StructureError):
        check_hom_lie(h3, identity(3, q))


def test_reports_independent_of_threads(sl2_f5):
    broken = _corrupted_sl2(sl2_f5)
    assert verify(broken, threads=1) == verify(broken, threads=4)


def _single_entry_mutations(a):
    for label in a.labels:
        c = a.tensor(label).c
        for i in range(a.dim):
            for j in range(a.dim):
                for r in range(a.dim):
                    nested = [[list(vec) for vec in row] for row in c]
                    nested[i][j][r] = a.field.add(nested[i][j][r], a.field.one)
                    brackets = dict(zip(a.labels, a.brackets))
                    brackets[label] = BracketTensor.from_nested(nested)
                    yield a.with_brackets(brackets)


def test_every_single_entry_mutation_fails(h3, sl2_f5):
    for a in (h3, sl2_f5):
        for mutant in _single_entry_mutations(a):
            report = verify(mutant)
            assert not report.passed
            assert all(replay_witness(mutant, failure) for failure in report.failures())


def _hom_lie_pair(field, tensor, sigma):
    lie = MultiAlgebra.build(field, Kind.FIRST, {"h": tensor})
    third = MultiAlgebra.build(field, Kind.THIRD, {"h": tensor}, endos=EndoSets((sigma,), (sigma,), (sigma,)))
    return check_hom_lie(lie, sigma).passed, check_jacobi_third(third).passed


def test_hom_lie_matches_third_kind_in_dimension_two(f3):
    spec = SearchSpec(f3, 2, label_count=1, alternating=True)
    for index in range(spec.total):
        tensor = candidate_algebra(spec, index).tensor("h")
        for entries in product(range(3), repeat=4):
            sigma = Matrix.from_rows(f3, [entries[:2], entries[2:]])
            hom_lie, third = _hom_lie_pair(f3, tensor, sigma)
            assert hom_lie == third


def test_hom_lie_and_third_kind_both_fail_on_projected_sl2(f3):
    projection = Matrix.from_rows(f3, [(1, 0, 0), (0, 0, 0), (0, 0, 0)])
    assert _hom_lie_pair(f3, sl2_base(f3), projection) == (False, False)
    assert _hom_lie_pair(f3, sl2_base(f3), identity(3, f3)) == (True, True)


DIM3_ALTERNATING = SearchSpec(FieldSpec.prime(3), 3, label_count=1, alternating=True)


@settings(derandomize=True, deadline=None, max_examples=150)
@given(
    st.integers(0, DIM3_ALTERNATING.total - 1),
    st.lists(st.integers(0, 2), min_size=9, max_size=9),
)
def test_hom_lie_matches_third_kind_in_dimension_three(index, entries):
    f3 = DIM3_ALTERNATING.field
    tensor = candidate_algebra(DIM3_ALTERNATING, index).tensor("h")
    sigma = Matrix.from_rows(f3, [entries[0:3], entries[3:6], entries[6:9]])
    hom_lie, third = _hom_lie_pair(f3, tensor, sigma)
    assert hom_lie == third
