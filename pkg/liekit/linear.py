"""Dense exact linear algebra over a :class:`~liekit.field.FieldSpec`.

Vectors are tuples of raw field values. Subspaces are stored by their
reduced row-echelon basis, so two subspaces are equal exactly when their
dataclasses compare equal.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Any

from sympy import GF, QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from liekit.errors import BoundsExceeded, DimensionMismatch, SingularMatrix
from liekit.field import FieldSpec, Raw

Vector = tuple[Raw, ...]

MAX_ENUMERATION_DIM = 4
ENUMERABLE_PRIMES = (2, 3, 5)


# -- vectors -----------------------------------------------------------------


def zero_vector(n: int, field: FieldSpec) -> Vector:
    return (field.zero,) * n


def unit_vector(n: int, i: int, field: FieldSpec) -> Vector:
    return tuple(field.one if j == i else field.zero for j in range(n))


def vec_add(field: FieldSpec, u: Vector, v: Vector) -> Vector:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field: FieldSpec, u: Vector, v: Vector) -> Vector:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field: FieldSpec, c: Raw, v: Vector) -> Vector:
    return tuple(field.mul(c, a) for a in v)


def vec_neg(field: FieldSpec, v: Vector) -> Vector:
    return tuple(field.neg(a) for a in v)


def is_zero_vector(v: Vector) -> bool:
    return all(a == 0 for a in v)


def linear_combination(
    field: FieldSpec, coeffs: Sequence[Raw], vectors: Sequence[Vector], n: int
) -> Vector:
    acc = [field.zero] * n
    for c, vec in zip(coeffs, vectors):
        if c == 0:
            continue
        for idx, entry in enumerate(vec):
            if entry != 0:
                acc[idx] = field.add(acc[idx], field.mul(c, entry))
    return tuple(acc)


# -- matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix; every entry is a raw value of ``field``."""

    field: FieldSpec
    rows: tuple[Vector, ...]
    ncols: int

    def __post_init__(self) -> None:
        if any(len(row) != self.ncols for row in self.rows):
            raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable[Raw]], ncols: int | None = None) -> Matrix:
        materialized = tuple(tuple(row) for row in rows)
        width = ncols if ncols is not None else (len(materialized[0]) if materialized else 0)
        return cls(field, materialized, width)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def is_zero(self) -> bool:
        return all(is_zero_vector(row) for row in self.rows)


def identity(n: int, field: FieldSpec) -> Matrix:
    return Matrix(field, tuple(unit_vector(n, i, field) for i in range(n)), n)


def zero_matrix(nrows: int, ncols: int, field: FieldSpec) -> Matrix:
    return Matrix(field, tuple(zero_vector(ncols, field) for _ in range(nrows)), ncols)


def from_columns(field: FieldSpec, columns: Sequence[Vector], nrows: int) -> Matrix:
    return Matrix(
        field,
        tuple(tuple(col[r] for col in columns) for r in range(nrows)),
        len(columns),
    )


def mat_vec(m: Matrix, v: Vector) -> Vector:
    if m.ncols != len(v):
        raise DimensionMismatch(f"{m.shape} matrix applied to length-{len(v)} vector")
    field = m.field
    out = []
    for row in m.rows:
        acc = field.zero
        for a, b in zip(row, v):
            if a != 0 and b != 0:
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return tuple(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    field = a.field
    columns = [mat_vec(a, b.column(j)) for j in range(b.ncols)]
    return from_columns(field, columns, a.nrows)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    return Matrix(a.field, tuple(vec_add(a.field, r, s) for r, s in zip(a.rows, b.rows)), a.ncols)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot subtract {a.shape} and {b.shape}")
    return Matrix(a.field, tuple(vec_sub(a.field, r, s) for r, s in zip(a.rows, b.rows)), a.ncols)


def mat_scale(c: Raw, m: Matrix) -> Matrix:
    return Matrix(m.field, tuple(vec_scale(m.field, c, r) for r in m.rows), m.ncols)


def _domain(field: FieldSpec) -> Domain:
    return QQ if field.p is None else GF(field.p, symmetric=False)


def _to_domain(domain: Domain, field: FieldSpec, a: Raw) -> Any:
    if field.p is None:
        return domain(a.numerator, a.denominator)
    return domain(a)


def _from_sympy(field: FieldSpec, a: Any) -> Raw:
    if field.p is None:
        return Fraction(int(a.p), int(a.q))
    return int(a) % field.p


def _row_reduce(field: FieldSpec, rows: Sequence[Vector], ncols: int) -> tuple[list[list[Raw]], list[int]]:
    """Nonzero RREF rows and their pivot columns, reduced by sympy over QQ or GF(p)."""
    if not rows or ncols == 0:
        return [], []
    domain = _domain(field)
    dm = DomainMatrix(
        [[_to_domain(domain, field, a) for a in row] for row in rows],
        (len(rows), ncols),
        domain,
    )
    reduced, pivots = dm.rref()
    nonzero = reduced.to_Matrix().tolist()[: len(pivots)]
    return [[_from_sympy(field, a) for a in row] for row in nonzero], list(pivots)


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form with zero rows pruned."""
    rows, _ = _row_reduce(m.field, m.rows, m.ncols)
    return Matrix.from_rows(m.field, rows, m.ncols)


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if m.ncols != n:
        raise DimensionMismatch(f"cannot invert a {m.shape} matrix")
    field = m.field
    augmented = [row + unit_vector(n, i, field) for i, row in enumerate(m.rows)]
    rows, pivots = _row_reduce(field, augmented, 2 * n)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return Matrix.from_rows(field, (row[n:] for row in rows), n)


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of field^ambient_dim, identified with its RREF basis."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, a in enumerate(row) if a != 0) for row in self.basis)

    @property
    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient_dim)

    def sort_key(self) -> tuple:
        return (self.dim, tuple(a for row in self.basis for a in row))

    def reduce(self, v: Vector) -> Vector:
        """Remainder of ``v`` after clearing every pivot column of the basis."""
        field = self.field
        rem = list(v)
        for row, col in zip(self.basis, self.pivots):
            c = rem[col]
            if c != 0:
                rem = [field.sub(a, field.mul(c, b)) for a, b in zip(rem, row)]
        return tuple(rem)

    def member(self, v: Vector) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"length-{len(v)} vector in ambient {self.ambient_dim}")
        return is_zero_vector(self.reduce(v))

    def contains(self, other: Subspace) -> bool:
        _check_compatible(self, other)
        return all(self.member(v) for v in other.basis)

    def sum(self, other: Subspace) -> Subspace:
        _check_compatible(self, other)
        return span(self.basis + other.basis, self.ambient_dim, self.field)

    def equals(self, other: Subspace) -> bool:
        _check_compatible(self, other)
        return self == other

    def is_graded(self, parity: Sequence[int]) -> bool:
        """True iff the subspace splits along the even/odd coordinate blocks."""
        if len(parity) != self.ambient_dim:
            raise DimensionMismatch("grading length differs from ambient dimension")
        for v in self.basis:
            for block in (0, 1):
                part = block_projection(self.field, v, parity, block)
                if not self.member(part):
                    return False
        return True


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim or a.field != b.field:
        raise DimensionMismatch(
            f"subspaces of {a.field}^{a.ambient_dim} and {b.field}^{b.ambient_dim}"
        )


def span(vectors: Iterable[Vector], ambient_dim: int, field: FieldSpec) -> Subspace:
    rows = [tuple(v) for v in vectors]
    for row in rows:
        if len(row) != ambient_dim:
            raise DimensionMismatch(f"length-{len(row)} vector in ambient {ambient_dim}")
    reduced, _ = _row_reduce(field, rows, ambient_dim)
    return Subspace(field, ambient_dim, tuple(tuple(row) for row in reduced))


def zero_subspace(ambient_dim: int, field: FieldSpec) -> Subspace:
    return Subspace(field, ambient_dim, ())


def full_space(ambient_dim: int, field: FieldSpec) -> Subspace:
    return Subspace(field, ambient_dim, identity(ambient_dim, field).rows)


def block_projection(field: FieldSpec, v: Vector, parity: Sequence[int], block: int) -> Vector:
    return tuple(a if parity[i] == block else field.zero for i, a in enumerate(v))


def invariant_closure(
    generators: Iterable[Vector],
    operators: Sequence[Matrix],
    ambient_dim: int,
    field: FieldSpec,
    parity: Sequence[int] | None = None,
) -> Subspace:
    """Smallest subspace containing ``generators`` and stable under ``operators``.

    With ``parity`` the result is additionally graded.
    """
    current = span(generators, ambient_dim, field)
    while True:
        images = [mat_vec(op, v) for op in operators for v in current.basis]
        if parity is not None:
            images += [block_projection(field, v, parity, b) for v in current.basis for b in (0, 1)]
        grown = span(current.basis + tuple(images), ambient_dim, field)
        if grown == current:
            return current
        current = grown


# -- quotients ---------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Coordinates on V / I with respect to unit-vector coset representatives."""

    subspace: Subspace
    representatives: tuple[Vector, ...]
    columns: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.columns)

    def project(self, v: Vector) -> Vector:
        rem = self.subspace.reduce(v)
        return tuple(rem[c] for c in self.columns)

    def lift(self, coords: Vector) -> Vector:
        field = self.subspace.field
        return linear_combination(field, coords, self.representatives, self.subspace.ambient_dim)


def quotient_basis(ambient_dim: int, i: Subspace) -> QuotientMap:
    if i.ambient_dim != ambient_dim:
        raise DimensionMismatch(f"subspace of ambient {i.ambient_dim}, expected {ambient_dim}")
    pivots = set(i.pivots)
    columns = tuple(c for c in range(ambient_dim) if c not in pivots)
    reps = tuple(unit_vector(ambient_dim, c, i.field) for c in columns)
    return QuotientMap(i, reps, columns)


# -- enumeration -------------------------------------------------------------


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _check_enumeration_bounds(ambient_dim: int, field: FieldSpec) -> None:
    if field.p not in ENUMERABLE_PRIMES:
        raise BoundsExceeded(f"subspace enumeration needs p in {ENUMERABLE_PRIMES}, got {field}")
    if ambient_dim > MAX_ENUMERATION_DIM:
        raise BoundsExceeded(f"subspace enumeration capped at dimension {MAX_ENUMERATION_DIM}")


def _subspaces_of_dim(n: int, k: int, field: FieldSpec) -> Iterator[Subspace]:
    values = field.elements()
    for pivots in combinations(range(n), k):
        free = [
            (r, c)
            for r, pc in enumerate(pivots)
            for c in range(pc + 1, n)
            if c not in pivots
        ]
        for assignment in product(values, repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), value in zip(free, assignment):
                rows[r][c] = value
            yield Subspace(field, n, tuple(tuple(row) for row in rows))


def enumerate_subspaces(ambient_dim: int, field: FieldSpec) -> Iterator[Subspace]:
    """Every subspace exactly once: by dimension, then lexicographically."""
    _check_enumeration_bounds(ambient_dim, field)
    for k in range(ambient_dim + 1):
        yield from sorted(_subspaces_of_dim(ambient_dim, k, field), key=Subspace.sort_key)


def enumerate_graded_subspaces(parity: Sequence[int], field: FieldSpec) -> Iterator[Subspace]:
    """Every graded subspace U_0 + U_1, in the same canonical order."""
    n = len(parity)
    _check_enumeration_bounds(n, field)
    even = [i for i, p in enumerate(parity) if p == 0]
    odd = [i for i, p in enumerate(parity) if p == 1]

    def embed(sub: Subspace, positions: list[int]) -> tuple[Vector, ...]:
        out = []
        for row in sub.basis:
            full = [field.zero] * n
            for pos, a in zip(positions, row):
                full[pos] = a
            out.append(tuple(full))
        return tuple(out)

    even_parts = [embed(s, even) for s in enumerate_subspaces(len(even), field)]
    odd_parts = [embed(s, odd) for s in enumerate_subspaces(len(odd), field)]
    found = [span(u0 + u1, n, field) for u0 in even_parts for u1 in odd_parts]
    yield from sorted(found, key=Subspace.sort_key)


def subspace_enumerator(parity: Sequence[int] | None) -> Callable[[int, FieldSpec], Iterator[Subspace]]:
    if parity is None:
        return enumerate_subspaces
    return lambda _n, field: enumerate_graded_subspaces(parity, field)
