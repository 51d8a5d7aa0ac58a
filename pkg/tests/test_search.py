from __future__ import annotations

import pytest

from liekit import search
from liekit.algebra import BracketTensor, Kind, bracket_eval
from liekit.axioms import verify
from liekit.config import Settings
from liekit.constructions import triviality_test
from liekit.errors import BoundsExceeded, StructureError
from liekit.field import FieldSpec
from liekit.ideals import Which, annihilator
from liekit.search import CensusTally, SearchSpec, brute_force_passes, candidate_algebra, exhaustive_search

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


def test_search_spec_bounds():
    with pytest.raises(BoundsExceeded):
        SearchSpec(FieldSpec.prime(5), 2)
    with pytest.raises(BoundsExceeded):
        SearchSpec(FieldSpec.rationals(), 2)
    with pytest.raises(BoundsExceeded):
        SearchSpec(F2, 4)
    with pytest.raises(BoundsExceeded):
        SearchSpec(F2, 2, label_count=3)
    with pytest.raises(StructureError):
        SearchSpec(F2, 2, kind=Kind.THIRD)
    with pytest.raises(StructureError):
        SearchSpec(F2, 2, kind=Kind.SECOND, alternating=True)


def test_candidate_counts():
    assert SearchSpec(F3, 2, alternating=True).total == 81
    assert SearchSpec(F2, 1).total == 4
    assert SearchSpec(F2, 2, label_count=1, kind=Kind.SECOND).total == 256


def test_candidate_digits_fill_last_label_first():
    spec = SearchSpec(F3, 2, alternating=True)
    a = candidate_algebra(spec, 1)
    assert a.tensor("h").is_zero()
    assert a.tensor("k").product(0, 1) == (0, 1)
    assert a.tensor("k").product(1, 0) == (0, 2)
    last = candidate_algebra(spec, spec.total - 1)
    assert last.tensor("h").product(0, 1) == (2, 2)
    with pytest.raises(BoundsExceeded):
        candidate_algebra(spec, spec.total)


def test_alternating_census_over_f3():
    report = exhaustive_search(SearchSpec(F3, 2, alternating=True))
    tally = report.tally
    assert tally.candidates == 81
    assert tally.passing == 33
    assert tally.passing_nontrivial == 0
    assert tally.annihilator_histogram == {"first": {0: 9, 1: 24}}
    assert tally.adjoint_checked == 33
    assert tally.adjoint_failures == 0
    assert tally.closure_violations == []
    assert tally.containment_violations == []
    assert tally.factor_violations == []
    assert report.certified


def test_one_dimensional_census_over_f2():
    tally = exhaustive_search(SearchSpec(F2, 1)).tally
    assert tally.candidates == 4
    assert tally.passing == 1
    assert tally.strict_alternating_passing == 1
    assert tally.passing_exemplars == [0]


def test_second_kind_census_is_certified():
    report = exhaustive_search(SearchSpec(F2, 2, label_count=1, kind=Kind.SECOND))
    assert report.tally.candidates == 256
    assert report.tally.passing > 0
    assert report.tally.passing_nontrivial == 0
    assert set(report.tally.annihilator_histogram) == {"second_minus", "second_plus"}
    assert report.certified


def test_census_independent_of_threads_and_chunks():
    spec = SearchSpec(F3, 2, alternating=True)
    single = exhaustive_search(spec, threads=1, settings=Settings(search_chunk_size=81))
    pooled = exhaustive_search(spec, threads=4, settings=Settings(search_chunk_size=7))
    assert single == pooled


def test_candidate_cap():
    with pytest.raises(BoundsExceeded):
        exhaustive_search(SearchSpec(F3, 2, alternating=True), settings=Settings(max_search_candidates=80))


def test_tally_merge_keeps_exemplar_limit():
    left = CensusTally(candidates=2, passing=2, passing_exemplars=[4, 9])
    right = CensusTally(candidates=1, passing=1, passing_exemplars=[1])
    merged = left.merge(right, limit=2)
    assert merged.candidates == 3
    assert merged.passing == 3
    assert merged.passing_exemplars == [1, 4]


def _proportional(a):
    h, k = (list(t.entries()) for t in a.brackets)
    p = a.field.p
    return all((h[x] * k[y] - h[y] * k[x]) % p == 0 for x in range(len(h)) for y in range(len(h)))


def test_triviality_matches_proportionality_scan():
    spec = SearchSpec(F3, 2, alternating=True)
    for index in range(spec.total):
        a = candidate_algebra(spec, index)
        assert triviality_test(a).trivial == _proportional(a)


def test_census_annihilators_hold_every_generator():
    spec = SearchSpec(F3, 2, alternating=True)
    for index in range(spec.total):
        a = candidate_algebra(spec, index)
        if not verify(a).passed:
            continue
        ann = annihilator(a, Which.FIRST)
        for i in range(a.dim):
            for j in range(a.dim):
                x, y = a.basis(i), a.basis(j)
                diff = tuple(
                    (u - v) % 3 for u, v in zip(bracket_eval(a, "h", x, y), bracket_eval(a, "k", x, y))
                )
                assert ann.member(diff)


def test_brute_force_agrees_with_verify():
    for spec in (SearchSpec(F3, 2, alternating=True), SearchSpec(F2, 2, label_count=1, kind=Kind.SECOND)):
        for index in range(spec.total):
            a = candidate_algebra(spec, index)
            assert brute_force_passes(a) == verify(a).passed


def test_brute_force_rejects_broken_jacobi(sl2_f5):
    assert brute_force_passes(sl2_f5)
    c = [list(row) for row in sl2_f5.tensor("k").c]
    c[0][1] = (1, 0, 0)
    c[1][0] = (4, 0, 0)
    broken = sl2_f5.with_brackets({"h": sl2_f5.tensor("h"), "k": BracketTensor.from_nested(c)})
    assert not brute_force_passes(broken)


def test_brute_force_needs_ungraded_prime_field(super11, h3):
    with pytest.raises(StructureError):
        brute_force_passes(super11)
    with pytest.raises(StructureError):
        brute_force_passes(h3)


def test_census_flags_disagreement_with_brute_force(monkeypatch):
    monkeypatch.setattr(search, "brute_force_passes", lambda a: False)
    report = exhaustive_search(SearchSpec(F3, 2, alternating=True), threads=1)
    assert report.tally.passing == 0
    assert len(report.tally.uncertified_positives) == 33
    assert report.tally.uncertified_negatives == []
    assert not report.certified
