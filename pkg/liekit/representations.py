"""Ordinary modules over 1st- and 2nd-kind (super)algebras."""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from itertools import product

import structlog

from liekit.algebra import (
    Grading,
    Kind,
    MultiAlgebra,
    is_even_map,
    left_multiplication,
    right_multiplication,
)
from liekit.axioms import Case, CheckResult, Identity, VerificationReport, sweep
from liekit.config import get_settings
from liekit.errors import (
    DimensionMismatch,
    InternalClosureFailure,
    KindMismatch,
    MissingG,
    StructureError,
)
from liekit.field import FieldSpec
from liekit.ideals import WHICH_FOR_KIND, Which, check_which
from liekit.linear import (
    Matrix,
    Subspace,
    Vector,
    full_space,
    inverse,
    invariant_closure,
    is_zero_vector,
    mat_add,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    span,
    subspace_enumerator,
    unit_vector,
    zero_matrix,
    zero_subspace,
)
from liekit.workers import run_chunks, run_ordered

logger = structlog.get_logger(__name__)

Family = tuple[tuple[Matrix, ...], ...]
Evaluator = Callable[["ModuleRep", Case], tuple[tuple, tuple]]


@dataclass(frozen=True)
class ModuleRep:
    """Representation maps stored per label and per algebra basis vector.

    ``f[a][i]`` is the matrix of ``f_k(e_i)`` for the ``a``-th label ``k``;
    values at other elements follow by linearity.
    """

    algebra: MultiAlgebra
    carrier_dim: int
    f: Family
    g: Family | None = None
    carrier_grading: Grading | None = None

    def __post_init__(self) -> None:
        a = self.algebra
        if a.kind.order == 3:
            raise KindMismatch("3rd-kind algebras have no ordinary modules")
        if a.kind.order == 1 and self.g is not None:
            raise StructureError(f"kind {a.kind.value} takes no g family")
        if a.kind.is_super != (self.carrier_grading is not None):
            raise StructureError("a carrier grading is required exactly for super kinds")
        if self.carrier_grading is not None and len(self.carrier_grading) != self.carrier_dim:
            raise DimensionMismatch("carrier grading length differs from carrier dimension")
        for name, family in (("f", self.f), ("g", self.g)):
            if family is None:
                continue
            if len(family) != len(a.labels) or any(len(maps) != a.dim for maps in family):
                raise DimensionMismatch(f"{name} needs one matrix per label and basis vector")
            for maps in family:
                for m in maps:
                    if m.shape != (self.carrier_dim, self.carrier_dim) or m.field != a.field:
                        raise DimensionMismatch(
                            f"{name} matrices must be {self.carrier_dim}x{self.carrier_dim}"
                        )

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def kind(self) -> Kind:
        return self.algebra.kind

    def carrier_parity(self, v: int) -> int:
        return self.carrier_grading[v] if self.carrier_grading is not None else 0

    def maps(self, family: str, k: str) -> tuple[Matrix, ...]:
        fam = self.f if family == "f" else self.g
        if fam is None:
            raise MissingG(f"kind {self.kind.value} representation needs its g family")
        return fam[self.algebra.labels.index(k)]

    def evaluate(self, family: str, k: str, x: Vector) -> Matrix:
        """Matrix of ``f_k(x)`` (or ``g_k(x)``) by linear extension."""
        acc = zero_matrix(self.carrier_dim, self.carrier_dim, self.field)
        for coeff, m in zip(x, self.maps(family, k)):
            if coeff != 0:
                acc = mat_add(acc, mat_scale(coeff, m))
        return acc

    def operators(self) -> list[Matrix]:
        ops = [m for maps in self.f for m in maps]
        if self.g is not None:
            ops += [m for maps in self.g for m in maps]
        return ops


# -- module identities -------------------------------------------------------


def _pair_cases(rep: ModuleRep) -> Iterator[Case]:
    for h, k in rep.algebra.labels.ordered_pairs():
        for i, j in product(range(rep.algebra.dim), repeat=2):
            yield (h, k), (i, j), None


def _family_cases(rep: ModuleRep) -> Iterator[Case]:
    families = ("f", "g") if rep.g is not None else ("f",)
    for family in families:
        for k in rep.algebra.labels:
            for i in range(rep.algebra.dim):
                yield (family, k), (i,), None


def _signed(rep: ModuleRep, exponent: int, m: Matrix) -> Matrix:
    return m if exponent % 2 == 0 else mat_scale(rep.field.neg(rep.field.one), m)


def _bracket_image(rep: ModuleRep, family: str, outer: str, inner: str, i: int, j: int) -> Matrix:
    """``family_outer([e_i, e_j]_inner)``."""
    return rep.evaluate(family, outer, rep.algebra.tensor(inner).product(i, j))


def _eval_module_bracket(rep: ModuleRep, case: Case) -> tuple[tuple, tuple]:
    (h, k), (i, j), _ = case
    f = rep.maps
    a = rep.algebra
    lhs = _bracket_image(rep, "f", h, k, i, j)
    rhs = mat_sub(
        mat_mul(f("f", h)[i], f("f", k)[j]),
        _signed(rep, a.parity(i) * a.parity(j), mat_mul(f("f", h)[j], f("f", k)[i])),
    )
    return lhs.rows, rhs.rows


def _eval_module_commute(rep: ModuleRep, case: Case) -> tuple[tuple, tuple]:
    (h, k), (i, j), _ = case
    f = rep.maps
    return mat_mul(f("f", k)[i], f("f", h)[j]).rows, mat_mul(f("f", h)[i], f("f", k)[j]).rows


def _bracket_rule(family: str) -> Evaluator:
    def evaluate(rep: ModuleRep, case: Case) -> tuple[tuple, tuple]:
        (h, k), (i, j), _ = case
        m = rep.maps
        a = rep.algebra
        lhs = _bracket_image(rep, family, h, k, i, j)
        rhs = mat_sub(
            _signed(rep, a.parity(i) * a.parity(j), mat_mul(m(family, h)[i], m("f", k)[j])),
            mat_mul(m("f", k)[j], m(family, h)[i]),
        )
        return lhs.rows, rhs.rows

    return evaluate


def _product_rule(left: tuple[str, str, str, str], right: tuple[str, str, str, str]) -> Evaluator:
    """``A_p(x) B_q(y) = C_r(x) D_s(y)``; each side names two families and their labels."""

    def side(rep: ModuleRep, spec: tuple[str, str, str, str], h: str, k: str, i: int, j: int) -> Matrix:
        fam_x, lab_x, fam_y, lab_y = spec
        labels = {"h": h, "k": k}
        return mat_mul(rep.maps(fam_x, labels[lab_x])[i], rep.maps(fam_y, labels[lab_y])[j])

    def evaluate(rep: ModuleRep, case: Case) -> tuple[tuple, tuple]:
        (h, k), (i, j), _ = case
        return side(rep, left, h, k, i, j).rows, side(rep, right, h, k, i, j).rows

    return evaluate


def _eval_rep_parity(rep: ModuleRep, case: Case) -> tuple[tuple, tuple]:
    (family, k), (i,), _ = case
    m = rep.maps(family, k)[i]
    shift = rep.algebra.parity(i)
    kept = tuple(
        tuple(
            entry if rep.carrier_parity(r) == (rep.carrier_parity(c) + shift) % 2 else rep.field.zero
            for c, entry in enumerate(row)
        )
        for r, row in enumerate(m.rows)
    )
    return m.rows, kept


MODULE_IDENTITIES: dict[str, Identity[ModuleRep]] = {
    ident.name: ident
    for ident in (
        Identity("rep_parity", _family_cases, _eval_rep_parity),
        Identity("module_bracket", _pair_cases, _eval_module_bracket),
        Identity("module_commute", _pair_cases, _eval_module_commute),
        Identity("f_bracket", _pair_cases, _bracket_rule("f")),
        Identity("g_bracket", _pair_cases, _bracket_rule("g")),
        Identity("gg", _pair_cases, _product_rule(("g", "k", "g", "h"), ("g", "h", "f", "k"))),
        Identity("gf", _pair_cases, _product_rule(("g", "h", "f", "k"), ("g", "k", "f", "h"))),
        Identity("ff", _pair_cases, _product_rule(("f", "k", "f", "h"), ("f", "h", "f", "k"))),
        Identity("fg", _pair_cases, _product_rule(("f", "k", "g", "h"), ("f", "h", "g", "k"))),
    )
}


def module_suite(rep: ModuleRep) -> list[Identity[ModuleRep]]:
    names = ["rep_parity"] if rep.kind.is_super else []
    if rep.kind.order == 1:
        names += ["module_bracket", "module_commute"]
    else:
        if rep.g is None:
            raise MissingG(f"kind {rep.kind.value} representation needs its g family")
        names += ["f_bracket", "g_bracket", "gg", "gf", "ff", "fg"]
    return [MODULE_IDENTITIES[name] for name in names]


def check_module(rep: ModuleRep, threads: int | None = None) -> VerificationReport:
    identities = module_suite(rep)
    checks: list[CheckResult] = run_ordered(lambda ident: sweep(rep, ident), identities, threads)
    return VerificationReport(tuple(checks))


# -- constructions -----------------------------------------------------------


def adjoint_module(a: MultiAlgebra) -> ModuleRep:
    """``ad_k`` for the 1st kinds; ``(-r_k, l_k)`` for the 2nd kinds. Not verified."""
    if a.kind.order == 3:
        raise KindMismatch("3rd-kind algebras have no adjoint module")
    minus_one = a.field.neg(a.field.one)
    left = tuple(tuple(left_multiplication(a, k, i) for i in range(a.dim)) for k in a.labels)
    if a.kind.order == 1:
        return ModuleRep(a, a.dim, left, None, a.grading)
    right = tuple(
        tuple(mat_scale(minus_one, right_multiplication(a, k, i)) for i in range(a.dim))
        for k in a.labels
    )
    return ModuleRep(a, a.dim, right, left, a.grading)


def change_module_basis(rep: ModuleRep, p: Matrix) -> ModuleRep:
    """Conjugate every map by ``p``; columns of ``p`` are the new carrier basis."""
    if p.shape != (rep.carrier_dim, rep.carrier_dim):
        raise DimensionMismatch(f"basis change must be {rep.carrier_dim}x{rep.carrier_dim}")
    if rep.carrier_grading is not None and not is_even_map(p, rep.carrier_grading.parity):
        raise StructureError("basis change of a graded carrier must be even")
    p_inv = inverse(p)

    def conj(family: Family | None) -> Family | None:
        if family is None:
            return None
        return tuple(tuple(mat_mul(p_inv, mat_mul(m, p)) for m in maps) for maps in family)

    f = conj(rep.f)
    assert f is not None
    return ModuleRep(rep.algebra, rep.carrier_dim, f, conj(rep.g), rep.carrier_grading)


# -- submodules --------------------------------------------------------------


def is_submodule(rep: ModuleRep, u: Subspace) -> bool:
    if u.ambient_dim != rep.carrier_dim:
        raise DimensionMismatch(f"subspace of ambient {u.ambient_dim} in carrier {rep.carrier_dim}")
    if rep.carrier_grading is not None and not u.is_graded(rep.carrier_grading.parity):
        return False
    return all(u.member(mat_vec(op, v)) for op in rep.operators() for v in u.basis)


def module_annihilator_generators(rep: ModuleRep, which: Which) -> Iterator[Vector]:
    check_which(rep.kind, which)
    pairs: list[tuple[str, str]] = []
    if rep.kind.order == 1:
        pairs = [("f", "f")]
    elif which.is_plus:
        pairs = [("g", "f")]
    else:
        pairs = [("f", "f"), ("g", "g")]
    for first, second in pairs:
        for h, k in rep.algebra.labels.ordered_pairs():
            for i in range(rep.algebra.dim):
                diff = mat_sub(rep.maps(first, h)[i], rep.maps(second, k)[i])
                for v in range(rep.carrier_dim):
                    yield diff.column(v)


def module_annihilator(rep: ModuleRep, which: Which) -> Subspace:
    sub = span(module_annihilator_generators(rep, which), rep.carrier_dim, rep.field)
    if not is_submodule(rep, sub):
        logger.error("representations.closure_failure", which=which.value, dim=sub.dim)
        raise InternalClosureFailure(f"the {which.value} module annihilator is not a submodule", sub)
    return sub


def check_module_containment(rep: ModuleRep) -> bool:
    if rep.kind.order != 2:
        raise KindMismatch(f"containment applies to 2nd kinds, got {rep.kind.value}")
    minus, plus = (module_annihilator(rep, w) for w in WHICH_FOR_KIND[rep.kind])
    return plus.contains(minus)


@dataclass(frozen=True)
class SubmoduleVerdict:
    distinguished: tuple[Subspace, ...]
    i: int
    irreducible: bool | None
    offending: Subspace | None
    exhaustive: bool
    submodule_count: int | None = None


def module_distinguished_set(rep: ModuleRep) -> tuple[Subspace, ...]:
    members = [zero_subspace(rep.carrier_dim, rep.field)]
    members += [module_annihilator(rep, w) for w in WHICH_FOR_KIND[rep.kind]]
    members.append(full_space(rep.carrier_dim, rep.field))
    unique: list[Subspace] = []
    for m in members:
        if m not in unique:
            unique.append(m)
    return tuple(unique)


def generated_submodule(rep: ModuleRep, vectors: Sequence[Vector]) -> Subspace:
    parity = rep.carrier_grading.parity if rep.carrier_grading is not None else None
    return invariant_closure(vectors, rep.operators(), rep.carrier_dim, rep.field, parity)


def classify_irreducibility(rep: ModuleRep, threads: int | None = None) -> SubmoduleVerdict:
    distinguished = module_distinguished_set(rep)
    n = len(distinguished)
    if rep.field.is_rational:
        seeds = [unit_vector(rep.carrier_dim, v, rep.field) for v in range(rep.carrier_dim)]
        for w in WHICH_FOR_KIND[rep.kind]:
            seeds += [v for v in module_annihilator_generators(rep, w) if not is_zero_vector(v)]
        outside = {
            sub for sub in (generated_submodule(rep, [v]) for v in seeds) if sub not in distinguished
        }
        if outside:
            return SubmoduleVerdict(distinguished, n, False, min(outside, key=Subspace.sort_key), False)
        return SubmoduleVerdict(distinguished, n, None, None, False)

    parity = rep.carrier_grading.parity if rep.carrier_grading is not None else None
    candidates = list(subspace_enumerator(parity)(rep.carrier_dim, rep.field))

    def _scan(chunk: range) -> tuple[int, Subspace | None]:
        count = 0
        offending = None
        for idx in chunk:
            u = candidates[idx]
            if is_submodule(rep, u):
                count += 1
                if offending is None and u not in distinguished:
                    offending = u
        return count, offending

    partials = run_chunks(
        _scan,
        len(candidates),
        get_settings().search_chunk_size,
        threads,
        event="representations.chunk_completed",
    )
    offending = next((off for _, off in partials if off is not None), None)
    return SubmoduleVerdict(
        distinguished,
        n,
        offending is None,
        offending,
        True,
        sum(count for count, _ in partials),
    )
