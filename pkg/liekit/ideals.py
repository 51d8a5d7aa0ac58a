"""Ideals, annihilators, factor algebras and simplicity."""

from __future__ import annotations

import enum
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import structlog

from liekit.algebra import BracketTensor, Kind, MultiAlgebra, bracket_eval, multiplication_operators
from liekit.axioms import VerificationReport, verify
from liekit.config import get_settings
from liekit.errors import (
    BoundsExceeded,
    DimensionMismatch,
    InternalClosureFailure,
    KindMismatch,
    NotAnIdeal,
)
from liekit.linear import (
    Subspace,
    Vector,
    full_space,
    invariant_closure,
    is_zero_vector,
    quotient_basis,
    span,
    subspace_enumerator,
    vec_add,
    vec_neg,
    vec_sub,
    zero_subspace,
)
from liekit.workers import run_chunks

logger = structlog.get_logger(__name__)


class Which(str, enum.Enum):
    FIRST = "first"
    SECOND_PLUS = "second_plus"
    SECOND_MINUS = "second_minus"
    SUPER_FIRST = "super_first"
    SUPER_SECOND_PLUS = "super_second_plus"
    SUPER_SECOND_MINUS = "super_second_minus"

    @property
    def kind(self) -> Kind:
        return Kind(self.value.removesuffix("_plus").removesuffix("_minus"))

    @property
    def is_plus(self) -> bool:
        return self.value.endswith("_plus")


WHICH_FOR_KIND: dict[Kind, tuple[Which, ...]] = {
    Kind.FIRST: (Which.FIRST,),
    Kind.SECOND: (Which.SECOND_MINUS, Which.SECOND_PLUS),
    Kind.SUPER_FIRST: (Which.SUPER_FIRST,),
    Kind.SUPER_SECOND: (Which.SUPER_SECOND_MINUS, Which.SUPER_SECOND_PLUS),
}

FACTOR_NAMES: dict[Which, tuple[str, Kind]] = {
    Which.FIRST: ("lie_factor", Kind.FIRST),
    Which.SECOND_PLUS: ("lie_factor", Kind.FIRST),
    Which.SECOND_MINUS: ("leibniz_factor", Kind.SECOND),
    Which.SUPER_FIRST: ("super_factor", Kind.SUPER_FIRST),
    Which.SUPER_SECOND_PLUS: ("plus_super_factor", Kind.SUPER_FIRST),
    Which.SUPER_SECOND_MINUS: ("minus_super_factor", Kind.SUPER_SECOND),
}


def resolve_which(kind: Kind, text: str) -> Which:
    """Accept a full annihilator name, or ``first``/``plus``/``minus`` relative to ``kind``."""
    options = WHICH_FOR_KIND.get(kind)
    if not options:
        raise KindMismatch(f"kind {kind.value} has no annihilators")
    for which in options:
        if text in (which.value, _short_name(which)):
            return which
    raise KindMismatch(f"annihilator {text!r} does not apply to kind {kind.value}")


def _short_name(which: Which) -> str:
    if which.kind.order == 1:
        return "first"
    return "plus" if which.is_plus else "minus"


def check_which(kind: Kind, which: Which) -> None:
    if which not in WHICH_FOR_KIND.get(kind, ()):
        raise KindMismatch(f"annihilator {which.value} does not apply to kind {kind.value}")


@dataclass(frozen=True)
class IdealWitness:
    subspace: Subspace
    is_graded: bool
    closure_checked: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class IdealViolation:
    side: str
    label: str
    basis_index: int
    image: Vector


def _sides(a: MultiAlgebra) -> tuple[str, ...]:
    if a.kind.order == 3:
        raise KindMismatch("3rd-kind algebras have no ideal theory")
    # anti-symmetry makes the left condition sufficient for the 1st kinds
    return ("left",) if a.kind.order == 1 else ("left", "right")


def ideal_violation(a: MultiAlgebra, s: Subspace) -> IdealViolation | None:
    """First product of a basis vector of ``L`` with one of ``s`` that leaves ``s``."""
    if s.ambient_dim != a.dim:
        raise DimensionMismatch(f"subspace of ambient {s.ambient_dim} in dimension {a.dim}")
    sides = _sides(a)
    for side in sides:
        for k in a.labels:
            for i in range(a.dim):
                e = a.basis(i)
                for v in s.basis:
                    image = bracket_eval(a, k, e, v) if side == "left" else bracket_eval(a, k, v, e)
                    if not s.member(image):
                        return IdealViolation(side, k, i, image)
    return None


def ideal_witness(a: MultiAlgebra, s: Subspace) -> IdealWitness | None:
    if a.grading is not None and not s.is_graded(a.grading.parity):
        return None
    if ideal_violation(a, s) is not None:
        return None
    checked = tuple((side, k) for side in _sides(a) for k in a.labels)
    return IdealWitness(s, a.grading is not None, checked)


def is_ideal(a: MultiAlgebra, s: Subspace) -> bool:
    return ideal_witness(a, s) is not None


def annihilator_generators(a: MultiAlgebra, which: Which) -> Iterator[Vector]:
    """Generator vectors over all basis pairs and ordered label pairs."""
    check_which(a.kind, which)
    field = a.field
    for h, k in a.labels.ordered_pairs():
        ch, ck = a.tensor(h), a.tensor(k)
        for i in range(a.dim):
            for j in range(a.dim):
                if which.is_plus:
                    swapped = ck.product(j, i)
                    if a.parity(i) * a.parity(j) % 2:
                        swapped = vec_neg(field, swapped)
                    yield vec_add(field, ch.product(i, j), swapped)
                else:
                    yield vec_sub(field, ch.product(i, j), ck.product(i, j))


def annihilator(a: MultiAlgebra, which: Which) -> Subspace:
    """Span of the annihilator generators, checked to be a (graded) ideal."""
    sub = span(annihilator_generators(a, which), a.dim, a.field)
    if not is_ideal(a, sub):
        logger.error("ideals.closure_failure", which=which.value, dim=sub.dim)
        raise InternalClosureFailure(f"the {which.value} annihilator is not an ideal", sub)
    return sub


def check_containment(a: MultiAlgebra) -> bool:
    """Minus annihilator contained in the plus annihilator (2nd kinds)."""
    if a.kind.order != 2:
        raise KindMismatch(f"containment applies to 2nd kinds, got {a.kind.value}")
    minus, plus = (annihilator(a, w) for w in WHICH_FOR_KIND[a.kind])
    return plus.contains(minus)


# -- factors -----------------------------------------------------------------


@dataclass(frozen=True)
class FactorResult:
    algebra: MultiAlgebra
    well_defined: bool
    violation: tuple[str, str, int, int] | None = None


def factor_algebra(a: MultiAlgebra, i: Subspace) -> FactorResult:
    """Structure constants on ``L / i``, one tensor per label.

    ``well_defined`` holds iff every label induces the same product on the
    quotient; ``violation`` names the first (h, k, i, j) that disagrees.
    """
    if not is_ideal(a, i):
        raise NotAnIdeal(f"subspace of dim {i.dim} is not an ideal")
    q = quotient_basis(a.dim, i)
    field = a.field
    for v in i.basis:
        for k in a.labels:
            for j in range(a.dim):
                e = a.basis(j)
                if not is_zero_vector(q.project(bracket_eval(a, k, v, e))) or not is_zero_vector(
                    q.project(bracket_eval(a, k, e, v))
                ):
                    raise NotAnIdeal("product depends on the coset representative")

    tensors = {}
    for k in a.labels:
        c = a.tensor(k).c
        tensors[k] = BracketTensor(
            q.dim,
            tuple(tuple(q.project(c[r][s]) for s in q.columns) for r in q.columns),
        )

    violation = None
    for h, k in a.labels.ordered_pairs():
        if violation is not None:
            break
        ch, ck = a.tensor(h), a.tensor(k)
        for r in range(a.dim):
            for s in range(a.dim):
                if not is_zero_vector(q.project(vec_sub(field, ch.product(r, s), ck.product(r, s)))):
                    violation = (h, k, r, s)
                    break
            if violation is not None:
                break

    grading = tuple(a.grading[c] for c in q.columns) if a.grading is not None else None
    quotient = MultiAlgebra.build(field, a.kind, tensors, grading)
    return FactorResult(quotient, violation is None, violation)


@dataclass(frozen=True)
class NamedFactor:
    name: str
    which: Which
    ideal: Subspace
    algebra: MultiAlgebra
    well_defined: bool
    violation: tuple[str, str, int, int] | None
    report: VerificationReport | None


def named_factor(a: MultiAlgebra, which: Which, threads: int | None = None) -> NamedFactor:
    """Factor by an annihilator, collapsed to the single induced product and verified."""
    ideal = annihilator(a, which)
    result = factor_algebra(a, ideal)
    name, kind = FACTOR_NAMES[which]
    first = a.labels.labels[0]
    collapsed = MultiAlgebra.build(
        a.field,
        kind,
        {first: result.algebra.tensor(first)},
        result.algebra.grading.parity if result.algebra.grading is not None else None,
    )
    report = verify(collapsed, threads=threads) if result.well_defined else None
    return NamedFactor(name, which, ideal, collapsed, result.well_defined, result.violation, report)


# -- simplicity --------------------------------------------------------------


@dataclass(frozen=True)
class SimplicityVerdict:
    distinguished: tuple[Subspace, ...]
    i: int
    simple: bool | None
    offending_ideal: Subspace | None
    exhaustive: bool
    ideal_count: int | None = None


def distinguished_set(a: MultiAlgebra) -> tuple[Subspace, ...]:
    """Distinct members of ``{0, annihilators..., L}`` in that order."""
    members = [zero_subspace(a.dim, a.field)]
    members += [annihilator(a, w) for w in WHICH_FOR_KIND.get(a.kind, ())]
    members.append(full_space(a.dim, a.field))
    unique: list[Subspace] = []
    for m in members:
        if m not in unique:
            unique.append(m)
    return tuple(unique)


def generated_ideal(a: MultiAlgebra, v: Sequence[Vector]) -> Subspace:
    ops = multiplication_operators(a, two_sided=a.kind.order == 2)
    parity = a.grading.parity if a.grading is not None else None
    return invariant_closure(v, ops, a.dim, a.field, parity)


def classify_simplicity(a: MultiAlgebra, threads: int | None = None) -> SimplicityVerdict:
    if a.kind.order == 3:
        raise KindMismatch("simplicity is not defined for 3rd-kind algebras")
    distinguished = distinguished_set(a)
    if a.field.is_rational:
        return _generated_mode(a, distinguished)
    return _exhaustive_mode(a, distinguished, threads)


def _generated_mode(a: MultiAlgebra, distinguished: tuple[Subspace, ...]) -> SimplicityVerdict:
    seeds = [a.basis(i) for i in range(a.dim)]
    for w in WHICH_FOR_KIND.get(a.kind, ()):
        seeds += [v for v in annihilator_generators(a, w) if not is_zero_vector(v)]
    outside = {
        ideal
        for ideal in (generated_ideal(a, [v]) for v in seeds)
        if ideal not in distinguished
    }
    if outside:
        offending = min(outside, key=Subspace.sort_key)
        return SimplicityVerdict(distinguished, len(distinguished), False, offending, False)
    return SimplicityVerdict(distinguished, len(distinguished), None, None, False)


def _exhaustive_mode(
    a: MultiAlgebra, distinguished: tuple[Subspace, ...], threads: int | None
) -> SimplicityVerdict:
    parity = a.grading.parity if a.grading is not None else None
    try:
        candidates = list(subspace_enumerator(parity)(a.dim, a.field))
    except BoundsExceeded:
        logger.warning("ideals.enumeration_out_of_bounds", dim=a.dim, field=str(a.field))
        raise

    def _scan(chunk: range) -> tuple[int, Subspace | None]:
        count = 0
        offending = None
        for idx in chunk:
            s = candidates[idx]
            if is_ideal(a, s):
                count += 1
                if offending is None and s not in distinguished:
                    offending = s
        return count, offending

    chunk_size = get_settings().search_chunk_size
    partials = run_chunks(_scan, len(candidates), chunk_size, threads, event="ideals.chunk_completed")
    ideal_count = sum(count for count, _ in partials)
    offending = next((off for _, off in partials if off is not None), None)
    return SimplicityVerdict(
        distinguished,
        len(distinguished),
        offending is None,
        offending,
        True,
        ideal_count,
    )
