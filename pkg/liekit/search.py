"""Exhaustive certified census of small structure-constant families."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import partial
from itertools import product

import structlog

from liekit.algebra import BracketTensor, Kind, MultiAlgebra
from liekit.axioms import check_alternating, replay_witness, verify
from liekit.config import HARD_CANDIDATE_CAP, Settings, get_settings
from liekit.constructions import triviality_test
from liekit.errors import BoundsExceeded, InternalClosureFailure, StructureError
from liekit.field import FieldSpec
from liekit.ideals import WHICH_FOR_KIND, Which, annihilator, check_containment, named_factor
from liekit.representations import adjoint_module, check_module
from liekit.workers import run_chunks

logger = structlog.get_logger(__name__)

SEARCH_PRIMES = (2, 3)
MAX_SEARCH_DIM = 3
MAX_LABELS = 2
LABEL_NAMES = ("h", "k")


@dataclass(frozen=True)
class SearchSpec:
    field: FieldSpec
    dim: int
    label_count: int = 2
    kind: Kind = Kind.FIRST
    alternating: bool = False

    def __post_init__(self) -> None:
        if self.field.p not in SEARCH_PRIMES:
            raise BoundsExceeded(f"searches run over F_2 or F_3, got {self.field}")
        if not 1 <= self.dim <= MAX_SEARCH_DIM:
            raise BoundsExceeded(f"search dimension must be 1..{MAX_SEARCH_DIM}")
        if not 1 <= self.label_count <= MAX_LABELS:
            raise BoundsExceeded(f"searches use 1..{MAX_LABELS} labels")
        if self.kind not in (Kind.FIRST, Kind.SECOND):
            raise StructureError(f"searches cover the first and second kinds, got {self.kind.value}")
        if self.alternating and self.kind is not Kind.FIRST:
            raise StructureError("the alternating filter applies to first-kind searches")

    @property
    def labels(self) -> tuple[str, ...]:
        return LABEL_NAMES[: self.label_count]

    def positions(self) -> list[tuple[int, int, int]]:
        """Free ``(i, j, l)`` entries of one tensor."""
        n = self.dim
        if self.alternating:
            return [(i, j, r) for i in range(n) for j in range(i + 1, n) for r in range(n)]
        return [(i, j, r) for i in range(n) for j in range(n) for r in range(n)]

    @property
    def free_count(self) -> int:
        return len(self.positions()) * self.label_count

    @property
    def total(self) -> int:
        assert self.field.p is not None
        return self.field.p**self.free_count


def candidate_algebra(spec: SearchSpec, index: int) -> MultiAlgebra:
    """Candidate ``index``: its base-p digits, most significant first, fill the free entries."""
    if not 0 <= index < spec.total:
        raise BoundsExceeded(f"candidate {index} outside 0..{spec.total - 1}")
    p = spec.field.p
    assert p is not None
    positions = spec.positions()
    digits = []
    rest = index
    for _ in range(spec.free_count):
        rest, digit = divmod(rest, p)
        digits.append(digit)
    digits.reverse()

    n = spec.dim
    tensors = {}
    for a, label in enumerate(spec.labels):
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        chunk = digits[a * len(positions) : (a + 1) * len(positions)]
        for (i, j, r), d in zip(positions, chunk):
            c[i][j][r] = d
            if spec.alternating:
                c[j][i][r] = (-d) % p
        tensors[label] = BracketTensor.from_nested(c)
    return MultiAlgebra.build(spec.field, spec.kind, tensors)


def _merge_exemplars(a: list[int], b: list[int], limit: int) -> list[int]:
    return sorted(a + b)[:limit]


@dataclass
class CensusTally:
    candidates: int = 0
    passing: int = 0
    passing_nontrivial: int = 0
    strict_alternating_passing: int = 0
    annihilator_histogram: dict[str, Counter[int]] = field(default_factory=dict)
    adjoint_checked: int = 0
    adjoint_failures: int = 0
    trivial_adjoint_failures: list[int] = field(default_factory=list)
    nontrivial_adjoint_failures: list[int] = field(default_factory=list)
    closure_violations: list[int] = field(default_factory=list)
    containment_violations: list[int] = field(default_factory=list)
    factor_violations: list[int] = field(default_factory=list)
    uncertified_positives: list[int] = field(default_factory=list)
    uncertified_negatives: list[int] = field(default_factory=list)
    passing_exemplars: list[int] = field(default_factory=list)
    nontrivial_exemplars: list[int] = field(default_factory=list)

    def merge(self, other: CensusTally, limit: int) -> CensusTally:
        histogram: dict[str, Counter[int]] = {}
        for key in sorted(set(self.annihilator_histogram) | set(other.annihilator_histogram)):
            histogram[key] = self.annihilator_histogram.get(key, Counter()) + other.annihilator_histogram.get(
                key, Counter()
            )
        return CensusTally(
            candidates=self.candidates + other.candidates,
            passing=self.passing + other.passing,
            passing_nontrivial=self.passing_nontrivial + other.passing_nontrivial,
            strict_alternating_passing=self.strict_alternating_passing + other.strict_alternating_passing,
            annihilator_histogram=histogram,
            adjoint_checked=self.adjoint_checked + other.adjoint_checked,
            adjoint_failures=self.adjoint_failures + other.adjoint_failures,
            trivial_adjoint_failures=self.trivial_adjoint_failures + other.trivial_adjoint_failures,
            nontrivial_adjoint_failures=self.nontrivial_adjoint_failures + other.nontrivial_adjoint_failures,
            closure_violations=self.closure_violations + other.closure_violations,
            containment_violations=self.containment_violations + other.containment_violations,
            factor_violations=self.factor_violations + other.factor_violations,
            uncertified_positives=self.uncertified_positives + other.uncertified_positives,
            uncertified_negatives=self.uncertified_negatives + other.uncertified_negatives,
            passing_exemplars=_merge_exemplars(self.passing_exemplars, other.passing_exemplars, limit),
            nontrivial_exemplars=_merge_exemplars(self.nontrivial_exemplars, other.nontrivial_exemplars, limit),
        )


@dataclass(frozen=True)
class CensusReport:
    spec: SearchSpec
    tally: CensusTally

    @property
    def certified(self) -> bool:
        t = self.tally
        return not (
            t.uncertified_positives
            or t.uncertified_negatives
            or t.closure_violations
            or t.containment_violations
            or t.factor_violations
            or t.trivial_adjoint_failures
        )


Constants = list[list[list[int]]]


def _outer(c_in: Constants, c_out: Constants, i: int, j: int, m: int, p: int) -> list[int]:
    """Coordinates of ``[[e_i, e_j]_in, e_m]_out``."""
    n = len(c_in)
    return [sum(c_in[i][j][r] * c_out[r][m][s] for r in range(n)) % p for s in range(n)]


def _inner(c_in: Constants, c_out: Constants, i: int, j: int, m: int, p: int) -> list[int]:
    """Coordinates of ``[e_i, [e_j, e_m]_in]_out``."""
    n = len(c_in)
    return [sum(c_in[j][m][r] * c_out[i][r][s] for r in range(n)) % p for s in range(n)]


def _add(p: int, *terms: list[int]) -> list[int]:
    return [sum(column) % p for column in zip(*terms)]


def brute_force_passes(a: MultiAlgebra) -> bool:
    """Defining identities of an ungraded 1st- or 2nd-kind algebra over F_p, by plain loops.

    Works on the raw structure constants; shares no code with the identity sweeps.
    """
    p = a.field.p
    if p is None or a.is_graded or a.kind not in (Kind.FIRST, Kind.SECOND):
        raise StructureError(f"brute force covers ungraded 1st and 2nd kinds over F_p, got {a.kind.value}")
    n = a.dim
    c = {k: [[list(a.tensor(k).c[i][j]) for j in range(n)] for i in range(n)] for k in a.labels}
    labels = list(a.labels)
    triples = list(product(range(n), repeat=3))

    if a.kind is Kind.FIRST:
        for k in labels:
            for i, j, r in triples:
                if (c[k][i][j][r] + c[k][j][i][r]) % p:
                    return False
        for h, k in product(labels, repeat=2):
            for i, j, m in triples:
                total = _add(
                    p,
                    _outer(c[h], c[k], i, j, m, p),
                    _outer(c[k], c[h], j, m, i, p),
                    _outer(c[h], c[k], m, i, j, p),
                )
                if any(total):
                    return False
        for x, h in enumerate(labels):
            for k in labels[x:]:
                for i, j, m in triples:
                    terms = []
                    for inner, outer in ((h, k), (k, h)):
                        terms += [
                            _outer(c[inner], c[outer], i, j, m, p),
                            _outer(c[inner], c[outer], j, m, i, p),
                            _outer(c[inner], c[outer], m, i, j, p),
                        ]
                    if any(_add(p, *terms)):
                        return False
        return True

    for h, k in product(labels, repeat=2):
        for i, j, m in triples:
            lhs = _outer(c[k], c[h], i, j, m, p)
            rhs = _add(p, _inner(c[h], c[k], i, j, m, p), _outer(c[h], c[k], i, m, j, p))
            if lhs != rhs:
                return False
            if lhs != _outer(c[h], c[k], i, j, m, p):
                return False
    return True


def _factor_ok(a: MultiAlgebra, which: Which) -> bool:
    factor = named_factor(a, which, threads=1)
    return factor.well_defined and factor.report is not None and factor.report.passed


def _examine(spec: SearchSpec, index: int, tally: CensusTally, limit: int) -> None:
    a = candidate_algebra(spec, index)
    tally.candidates += 1
    report = verify(a, threads=1)
    independent = brute_force_passes(a)
    if not report.passed:
        if independent or not all(replay_witness(a, failure) for failure in report.failures()):
            tally.uncertified_negatives.append(index)
        return
    if not independent:
        tally.uncertified_positives.append(index)
        return

    tally.passing += 1
    if len(tally.passing_exemplars) < limit:
        tally.passing_exemplars.append(index)
    if spec.field.p == 2 and spec.kind is Kind.FIRST and check_alternating(a).passed:
        tally.strict_alternating_passing += 1

    trivial = triviality_test(a).trivial
    if not trivial:
        tally.passing_nontrivial += 1
        if len(tally.nontrivial_exemplars) < limit:
            tally.nontrivial_exemplars.append(index)

    closed = True
    for which in WHICH_FOR_KIND[a.kind]:
        try:
            dim = annihilator(a, which).dim
        except InternalClosureFailure:
            closed = False
            continue
        tally.annihilator_histogram.setdefault(which.value, Counter())[dim] += 1
    if not closed:
        tally.closure_violations.append(index)
    else:
        if a.kind is Kind.SECOND and not check_containment(a):
            tally.containment_violations.append(index)
        if not all(_factor_ok(a, which) for which in WHICH_FOR_KIND[a.kind]):
            tally.factor_violations.append(index)

    tally.adjoint_checked += 1
    if not check_module(adjoint_module(a), threads=1).passed:
        tally.adjoint_failures += 1
        (tally.trivial_adjoint_failures if trivial else tally.nontrivial_adjoint_failures).append(index)


def _tally_chunk(spec: SearchSpec, limit: int, chunk: range) -> CensusTally:
    tally = CensusTally()
    for index in chunk:
        _examine(spec, index, tally, limit)
    return tally


def exhaustive_search(
    spec: SearchSpec, threads: int | None = None, settings: Settings | None = None
) -> CensusReport:
    """Verify every candidate of ``spec`` and tally the certified results."""
    settings = settings or get_settings()
    cap = min(settings.max_search_candidates, HARD_CANDIDATE_CAP)
    if spec.total > cap:
        raise BoundsExceeded(f"{spec.total} candidates exceed the cap of {cap}")
    logger.info(
        "search.started",
        field=str(spec.field),
        dim=spec.dim,
        labels=spec.label_count,
        kind=spec.kind.value,
        alternating=spec.alternating,
        total=spec.total,
    )
    limit = settings.exemplar_limit
    partials = run_chunks(
        partial(_tally_chunk, spec, limit),
        spec.total,
        settings.search_chunk_size,
        threads,
        event="search.chunk_completed",
    )
    tally = CensusTally()
    for part in partials:
        tally = tally.merge(part, limit)
    report = CensusReport(spec, tally)
    logger.info("search.finished", passing=tally.passing, certified=report.certified)
    return report
