"""Exact verifiers for the defining identities of the six algebra kinds.

Every identity is checked on basis tuples, which is complete by
multilinearity. A sweep walks labels first, then basis indices, then
endomorphism indices, and stops at the first failing case, so the witness
it reports is the least failing tuple in that order.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Generic, TypeVar

import structlog

from liekit.algebra import EndoSets, Kind, MultiAlgebra, bracket_eval
from liekit.errors import KindMismatch, MissingEndoSets, NotGraded, StructureError
from liekit.linear import Matrix, Vector, block_projection, mat_vec, vec_add, vec_neg, zero_vector
from liekit.workers import run_ordered

logger = structlog.get_logger(__name__)

S = TypeVar("S")

Case = tuple[tuple[str, ...], tuple[int, ...], tuple[int, ...] | None]


@dataclass(frozen=True)
class Witness:
    """A concrete failing case; ``lhs`` and ``rhs`` are vectors or matrix rows."""

    labels: tuple[str, ...]
    indices: tuple[int, ...]
    endos: tuple[int, ...] | None
    lhs: tuple[Any, ...]
    rhs: tuple[Any, ...]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: Witness | None = None

    def __post_init__(self) -> None:
        if self.passed == (self.witness is not None):
            raise StructureError("a witness is present exactly when a check fails")


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(check.name for check in self.checks)


@dataclass(frozen=True)
class Identity(Generic[S]):
    """An identity as a finite case enumeration plus a two-sided evaluation."""

    name: str
    cases: Callable[[S], Iterable[Case]]
    evaluate: Callable[[S, Case], tuple[tuple[Any, ...], tuple[Any, ...]]]


def sweep(subject: S, identity: Identity[S]) -> CheckResult:
    for case in identity.cases(subject):
        lhs, rhs = identity.evaluate(subject, case)
        if lhs != rhs:
            labels, indices, endos = case
            logger.debug("axioms.check_failed", identity=identity.name, labels=labels, indices=indices)
            return CheckResult(identity.name, False, Witness(labels, indices, endos, lhs, rhs))
    return CheckResult(identity.name, True)


def replay_witness(subject: S, result: CheckResult, identity: Identity[S] | None = None) -> bool:
    """Re-evaluate a failure witness; True iff it still fails with the same sides."""
    if result.witness is None:
        return False
    identity = identity or _lookup(result.name)
    w = result.witness
    lhs, rhs = identity.evaluate(subject, (w.labels, w.indices, w.endos))
    return lhs != rhs and lhs == w.lhs and rhs == w.rhs


def _lookup(name: str) -> Identity[Any]:
    if name in IDENTITIES:
        return IDENTITIES[name]
    # module identities register themselves on import
    from liekit.representations import MODULE_IDENTITIES

    return MODULE_IDENTITIES[name]


# -- case enumerations -------------------------------------------------------


def _single_pairs(a: MultiAlgebra) -> Iterator[Case]:
    for k in a.labels:
        for i, j in product(range(a.dim), repeat=2):
            yield (k,), (i, j), None


def _single_upper_pairs(a: MultiAlgebra) -> Iterator[Case]:
    for k in a.labels:
        for i in range(a.dim):
            for j in range(i, a.dim):
                yield (k,), (i, j), None


def _single_even_diagonal(a: MultiAlgebra) -> Iterator[Case]:
    for k in a.labels:
        for i in range(a.dim):
            if a.parity(i) == 0:
                yield (k,), (i,), None


def _ordered_triples(a: MultiAlgebra) -> Iterator[Case]:
    for h, k in a.labels.ordered_pairs():
        for idx in product(range(a.dim), repeat=3):
            yield (h, k), idx, None


def _unordered_triples(a: MultiAlgebra) -> Iterator[Case]:
    for h, k in a.labels.unordered_pairs():
        for idx in product(range(a.dim), repeat=3):
            yield (h, k), idx, None


def _endo_triples(a: MultiAlgebra) -> Iterator[Case]:
    endos = _require_endos(a)
    for h, k in a.labels.ordered_pairs():
        for idx in product(range(a.dim), repeat=3):
            for choice in endos.triples():
                yield (h, k), idx, choice


def _endo_members(a: MultiAlgebra) -> Iterator[Case]:
    for name, family in _require_endos(a).families():
        for m in range(len(family)):
            yield (name,), (m,), None


def _require_endos(a: MultiAlgebra) -> EndoSets:
    if a.endos is None:
        raise MissingEndoSets(f"kind {a.kind.value} needs sigma, sigma_ring and sigma_check")
    return a.endos


# -- evaluations -------------------------------------------------------------


def _sum(a: MultiAlgebra, *terms: Vector) -> Vector:
    acc = zero_vector(a.dim, a.field)
    for term in terms:
        acc = vec_add(a.field, acc, term)
    return acc


def _signed(a: MultiAlgebra, exponent: int, v: Vector) -> Vector:
    return v if exponent % 2 == 0 else vec_neg(a.field, v)


def _basis(a: MultiAlgebra, idx: Sequence[int]) -> list[Vector]:
    return [a.basis(i) for i in idx]


def _eval_grading(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
    (k,), (i, j), _ = case
    out = a.tensor(k).product(i, j)
    assert a.grading is not None
    expected = (a.parity(i) + a.parity(j)) % 2
    return out, block_projection(a.field, out, a.grading.parity, expected)


def _eval_antisymmetry(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
    (k,), (i, j), _ = case
    tensor = a.tensor(k)
    lhs = tensor.product(i, j)
    rhs = vec_neg(a.field, _signed(a, a.parity(i) * a.parity(j), tensor.product(j, i)))
    return lhs, rhs


def _eval_alternating(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
    (k,), (i,), _ = case
    return a.tensor(k).product(i, i), zero_vector(a.dim, a.field)


def _eval_jacobi_first(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
    (h, k), idx, _ = case
    x, y, z = _basis(a, idx)
    t1 = bracket_eval(a, k, bracket_eval(a, h, x, y), z)
    t2 = bracket_eval(a, h, bracket_eval(a, k, y, z), x)
    t3 = bracket_eval(a, k, bracket_eval(a, h, z, x), y)
    return _sum(a, t1, t2, t3), zero_vector(a.dim, a.field)


def _eval_super_jacobi_first(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
    (h, k), (i, j, m), _ = case
    x, y, z = _basis(a, (i, j, m))
    lhs = bracket_eval(a, k, bracket_eval(a, h, x, y), z)
    r1 = bracket_eval(a, h, x, bracket_eval(a, k, y, z))
    r2 = bracket_eval(a, k, bracket_eval(a, h, x, z), y)
    return lhs, _sum(a, r1, _signed(a, a.parity(j) * a.parity(m), r2))


def _eval_long_jacobi_first(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
    (h, k), (i, j, m), _ = case
    x, y, z = _basis(a, (i, j, m))
    al, be, ga = a.parity(i), a.parity(j), a.parity(m)
    terms = []
    for inner, outer in ((h, k), (k, h)):
        terms.append(_signed(a, ga * al, bracket_eval(a, outer, bracket_eval(a, inner, x, y), z)))
        terms.append(_signed(a, al * be, bracket_eval(a, outer, bracket_eval(a, inner, y, z), x)))
        terms.append(_signed(a, be * ga, bracket_eval(a, outer, bracket_eval(a, inner, z, x), y)))
    return _sum(a, *terms), zero_vector(a.dim, a.field)


def _eval_jacobi_second(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
    (h, k), (i, j, m), _ = case
    x, y, z = _basis(a, (i, j, m))
    lhs = bracket_eval(a, h, bracket_eval(a, k, x, y), z)
    r1 = bracket_eval(a, k, x, bracket_eval(a, h, y, z))
    r2 = bracket_eval(a, k, bracket_eval(a, h, x, z), y)
    return lhs, _sum(a, r1, _signed(a, a.parity(j) * a.parity(m), r2))


def _eval_label_flip(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
    (h, k), idx, _ = case
    x, y, z = _basis(a, idx)
    lhs = bracket_eval(a, h, bracket_eval(a, k, x, y), z)
    rhs = bracket_eval(a, k, bracket_eval(a, h, x, y), z)
    return lhs, rhs


def _eval_jacobi_third(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
    (h, k), (i, j, m), choice = case
    assert choice is not None
    endos = _require_endos(a)
    sigma = endos.sigma[choice[0]]
    ring = endos.sigma_ring[choice[1]]
    check = endos.sigma_check[choice[2]]
    x, y, z = _basis(a, (i, j, m))
    lhs = bracket_eval(a, k, bracket_eval(a, h, x, y), mat_vec(sigma, z))
    r1 = bracket_eval(a, h, mat_vec(ring, x), bracket_eval(a, k, y, z))
    r2 = bracket_eval(a, h, bracket_eval(a, k, x, z), mat_vec(check, y))
    return lhs, _sum(a, r1, _signed(a, a.parity(j) * a.parity(m), r2))


def _eval_endo_parity(a: MultiAlgebra, case: Case) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    (name,), (m,), _ = case
    matrix: Matrix = dict(_require_endos(a).families())[name][m]
    assert a.grading is not None
    parity = a.grading.parity
    even_part = tuple(
        tuple(entry if parity[r] == parity[c] else a.field.zero for c, entry in enumerate(row))
        for r, row in enumerate(matrix.rows)
    )
    return matrix.rows, even_part


IDENTITIES: dict[str, Identity[MultiAlgebra]] = {
    ident.name: ident
    for ident in (
        Identity("grading", _single_pairs, _eval_grading),
        Identity("antisymmetry", _single_upper_pairs, _eval_antisymmetry),
        Identity("alternating", _single_even_diagonal, _eval_alternating),
        Identity("jacobi_first", _ordered_triples, _eval_jacobi_first),
        Identity("super_jacobi_first", _ordered_triples, _eval_super_jacobi_first),
        Identity("long_jacobi_first", _unordered_triples, _eval_long_jacobi_first),
        Identity("jacobi_second", _ordered_triples, _eval_jacobi_second),
        Identity("super_jacobi_second", _ordered_triples, _eval_jacobi_second),
        Identity("label_flip", _ordered_triples, _eval_label_flip),
        Identity("jacobi_third", _endo_triples, _eval_jacobi_third),
        Identity("super_jacobi_third", _endo_triples, _eval_jacobi_third),
        Identity("endo_parity", _endo_members, _eval_endo_parity),
    )
}


# -- individual checks -------------------------------------------------------


def check_grading(a: MultiAlgebra) -> CheckResult:
    if not a.is_graded:
        raise NotGraded(f"kind {a.kind.value} carries no grading")
    return sweep(a, IDENTITIES["grading"])


def check_antisymmetry(a: MultiAlgebra) -> CheckResult:
    """Plain or super anti-symmetry, depending on whether ``a`` is graded."""
    return sweep(a, IDENTITIES["antisymmetry"])


def check_alternating(a: MultiAlgebra) -> CheckResult:
    """``[x, x]_k = 0`` on even basis vectors; stronger than anti-symmetry in characteristic 2."""
    return sweep(a, IDENTITIES["alternating"])


def check_jacobi_first(a: MultiAlgebra) -> CheckResult:
    if a.kind is Kind.FIRST:
        return sweep(a, IDENTITIES["jacobi_first"])
    if a.kind is Kind.SUPER_FIRST:
        return sweep(a, IDENTITIES["super_jacobi_first"])
    raise KindMismatch(f"jacobi_first needs a 1st-kind algebra, got {a.kind.value}")


def check_long_jacobi_first(a: MultiAlgebra) -> CheckResult:
    if a.kind.order != 1:
        raise KindMismatch(f"long_jacobi_first needs a 1st-kind algebra, got {a.kind.value}")
    return sweep(a, IDENTITIES["long_jacobi_first"])


def check_jacobi_second(a: MultiAlgebra) -> tuple[CheckResult, CheckResult]:
    if a.kind.order != 2:
        raise KindMismatch(f"jacobi_second needs a 2nd-kind algebra, got {a.kind.value}")
    name = "super_jacobi_second" if a.kind.is_super else "jacobi_second"
    return sweep(a, IDENTITIES[name]), sweep(a, IDENTITIES["label_flip"])


def check_jacobi_third(a: MultiAlgebra) -> CheckResult:
    if a.kind.order != 3:
        raise KindMismatch(f"jacobi_third needs a 3rd-kind algebra, got {a.kind.value}")
    _require_endos(a)
    name = "super_jacobi_third" if a.kind.is_super else "jacobi_third"
    return sweep(a, IDENTITIES[name])


def check_endo_parity(a: MultiAlgebra) -> CheckResult:
    if not a.is_graded:
        raise NotGraded("endomorphism parity needs a grading")
    return sweep(a, IDENTITIES["endo_parity"])


def hom_lie_identity(sigma: Matrix) -> Identity[MultiAlgebra]:
    def cases(a: MultiAlgebra) -> Iterator[Case]:
        (k,) = a.labels.labels
        for idx in product(range(a.dim), repeat=3):
            yield (k,), idx, None

    def evaluate(a: MultiAlgebra, case: Case) -> tuple[Vector, Vector]:
        (k,), idx, _ = case
        x, y, z = _basis(a, idx)
        t1 = bracket_eval(a, k, bracket_eval(a, k, x, y), mat_vec(sigma, z))
        t2 = bracket_eval(a, k, bracket_eval(a, k, y, z), mat_vec(sigma, x))
        t3 = bracket_eval(a, k, bracket_eval(a, k, z, x), mat_vec(sigma, y))
        return _sum(a, t1, t2, t3), zero_vector(a.dim, a.field)

    return Identity("hom_lie", cases, evaluate)


def check_hom_lie(a: MultiAlgebra, sigma: Matrix) -> CheckResult:
    """The sigma-twisted cyclic Jacobi identity of a single ungraded bracket."""
    if len(a.labels) != 1 or a.is_graded:
        raise StructureError("hom_lie needs a single-label ungraded algebra")
    if sigma.shape != (a.dim, a.dim):
        raise StructureError(f"sigma must be {a.dim}x{a.dim}")
    return sweep(a, hom_lie_identity(sigma))


def is_anti_symmetric(a: MultiAlgebra) -> bool:
    """Whether every product is (super) anti-symmetric."""
    return check_antisymmetry(a).passed


# -- full suites -------------------------------------------------------------


def suite(a: MultiAlgebra, strict_alternating: bool = False) -> list[Identity[MultiAlgebra]]:
    """Identities defining ``a.kind``, in report order."""
    names: list[str] = []
    if a.kind.is_super:
        names.append("grading")
    if a.kind.order == 1:
        names.append("antisymmetry")
        if strict_alternating:
            names.append("alternating")
        names.append("super_jacobi_first" if a.kind.is_super else "jacobi_first")
        names.append("long_jacobi_first")
    elif a.kind.order == 2:
        names.append("super_jacobi_second" if a.kind.is_super else "jacobi_second")
        names.append("label_flip")
    else:
        _require_endos(a)
        if a.kind.is_super:
            names.append("endo_parity")
        names.append("super_jacobi_third" if a.kind.is_super else "jacobi_third")
    return [IDENTITIES[name] for name in names]


def verify(a: MultiAlgebra, strict_alternating: bool = False, threads: int | None = None) -> VerificationReport:
    """Run every identity of ``a.kind``; never stops at the first failing check."""
    identities = suite(a, strict_alternating)
    checks = run_ordered(lambda ident: sweep(a, ident), identities, threads)
    notes: list[str] = []
    if a.field.p == 2 and a.kind.order == 1 and not strict_alternating:
        notes.append("characteristic 2: anti-symmetry does not imply [x, x] = 0; pass --strict-alternating to demand it")
    return VerificationReport(tuple(checks), tuple(notes))
