"""Multi-bracket algebras given by structure constants on a fixed basis."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, replace

from liekit.errors import DimensionMismatch, NotGraded, StructureError, UnknownLabel
from liekit.field import FieldSpec, Raw
from liekit.linear import Matrix, Vector, mat_vec, unit_vector, zero_vector


class Kind(str, enum.Enum):
    FIRST = "first"
    SECOND = "second"
    THIRD = "third"
    SUPER_FIRST = "super_first"
    SUPER_SECOND = "super_second"
    SUPER_THIRD = "super_third"

    @property
    def is_super(self) -> bool:
        return self.value.startswith("super_")

    @property
    def order(self) -> int:
        """1, 2 or 3 for the 1st, 2nd and 3rd kinds, graded or not."""
        return {"first": 1, "second": 2, "third": 3}[self.value.removeprefix("super_")]

    @property
    def ungraded(self) -> Kind:
        return Kind(self.value.removeprefix("super_"))

    def graded(self) -> Kind:
        return Kind(f"super_{self.ungraded.value}")


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"
    ZERO = "zero"


@dataclass(frozen=True)
class LabelSet:
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise StructureError("label set must be nonempty")
        if len(set(self.labels)) != len(self.labels):
            raise StructureError(f"duplicate labels in {list(self.labels)}")

    @classmethod
    def of(cls, labels: Iterable[str]) -> LabelSet:
        return cls(tuple(labels))

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise UnknownLabel(label) from exc

    def ordered_pairs(self) -> Iterator[tuple[str, str]]:
        for h in self.labels:
            for k in self.labels:
                yield h, k

    def unordered_pairs(self) -> Iterator[tuple[str, str]]:
        """Pairs ``{h, k}`` with repetition, each once, in label order."""
        for a, h in enumerate(self.labels):
            for k in self.labels[a:]:
                yield h, k


@dataclass(frozen=True)
class BracketTensor:
    """Structure constants: ``c[i][j]`` is the coordinate vector of ``e_i * e_j``."""

    dim: int
    c: tuple[tuple[Vector, ...], ...]

    def __post_init__(self) -> None:
        n = self.dim
        if len(self.c) != n or any(len(row) != n for row in self.c):
            raise DimensionMismatch(f"tensor is not {n}x{n}x{n}")
        if any(len(vec) != n for row in self.c for vec in row):
            raise DimensionMismatch(f"tensor is not {n}x{n}x{n}")

    @classmethod
    def from_nested(cls, values: Sequence[Sequence[Sequence[Raw]]]) -> BracketTensor:
        c = tuple(tuple(tuple(vec) for vec in row) for row in values)
        return cls(len(c), c)

    @classmethod
    def zero(cls, dim: int, field: FieldSpec) -> BracketTensor:
        z = zero_vector(dim, field)
        return cls(dim, tuple(tuple(z for _ in range(dim)) for _ in range(dim)))

    @classmethod
    def from_products(
        cls, dim: int, field: FieldSpec, products: dict[tuple[int, int], Sequence[Raw]]
    ) -> BracketTensor:
        """Tensor whose only nonzero basis products are listed in ``products``."""
        rows = [[zero_vector(dim, field) for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in products.items():
            rows[i][j] = tuple(field.coerce(a) for a in vec)
        return cls(dim, tuple(tuple(row) for row in rows))

    def product(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def entries(self) -> Iterator[Raw]:
        for row in self.c:
            for vec in row:
                yield from vec

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries())

    def scaled(self, field: FieldSpec, s: Raw) -> BracketTensor:
        return BracketTensor(
            self.dim,
            tuple(tuple(tuple(field.mul(s, a) for a in vec) for vec in row) for row in self.c),
        )


@dataclass(frozen=True)
class Grading:
    parity: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(p not in (0, 1) for p in self.parity):
            raise StructureError(f"parities must be 0 or 1, got {list(self.parity)}")

    def __len__(self) -> int:
        return len(self.parity)

    def __getitem__(self, i: int) -> int:
        return self.parity[i]

    def block(self, p: int) -> tuple[int, ...]:
        return tuple(i for i, q in enumerate(self.parity) if q == p)


@dataclass(frozen=True)
class EndoSets:
    sigma: tuple[Matrix, ...]
    sigma_ring: tuple[Matrix, ...]
    sigma_check: tuple[Matrix, ...]

    def families(self) -> tuple[tuple[str, tuple[Matrix, ...]], ...]:
        return (
            ("sigma", self.sigma),
            ("sigma_ring", self.sigma_ring),
            ("sigma_check", self.sigma_check),
        )

    def triples(self) -> Iterator[tuple[int, int, int]]:
        for a in range(len(self.sigma)):
            for b in range(len(self.sigma_ring)):
                for c in range(len(self.sigma_check)):
                    yield a, b, c


@dataclass(frozen=True)
class MultiAlgebra:
    field: FieldSpec
    dim: int
    labels: LabelSet
    kind: Kind
    brackets: tuple[BracketTensor, ...]
    grading: Grading | None = None
    endos: EndoSets | None = None

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise StructureError("dimension must be nonnegative")
        if len(self.brackets) != len(self.labels):
            raise StructureError(
                f"{len(self.labels)} labels but {len(self.brackets)} bracket tensors"
            )
        for label, tensor in zip(self.labels, self.brackets):
            if tensor.dim != self.dim:
                raise DimensionMismatch(f"tensor {label!r} has dim {tensor.dim}, expected {self.dim}")
        if self.kind.is_super and self.grading is None:
            raise StructureError(f"kind {self.kind.value} requires a grading")
        if not self.kind.is_super and self.grading is not None:
            raise StructureError(f"kind {self.kind.value} takes no grading")
        if self.grading is not None and len(self.grading) != self.dim:
            raise DimensionMismatch("grading length differs from dimension")
        if self.endos is not None:
            if self.kind.order != 3:
                raise StructureError(f"kind {self.kind.value} takes no endomorphism sets")
            for name, family in self.endos.families():
                if not family:
                    raise StructureError(f"endomorphism set {name} must be nonempty")
                for m in family:
                    if m.shape != (self.dim, self.dim) or m.field != self.field:
                        raise DimensionMismatch(f"endomorphism in {name} is not {self.dim}x{self.dim}")

    @classmethod
    def build(
        cls,
        field: FieldSpec,
        kind: Kind,
        brackets: dict[str, BracketTensor],
        grading: Sequence[int] | None = None,
        endos: EndoSets | None = None,
    ) -> MultiAlgebra:
        labels = LabelSet.of(brackets)
        tensors = tuple(brackets.values())
        dim = tensors[0].dim if tensors else 0
        return cls(
            field,
            dim,
            labels,
            kind,
            tensors,
            Grading(tuple(grading)) if grading is not None else None,
            endos,
        )

    @classmethod
    def zero(
        cls,
        field: FieldSpec,
        dim: int,
        labels: Iterable[str],
        kind: Kind,
        grading: Sequence[int] | None = None,
        endos: EndoSets | None = None,
    ) -> MultiAlgebra:
        tensors = {label: BracketTensor.zero(dim, field) for label in labels}
        if kind.is_super and grading is None:
            grading = (0,) * dim
        return cls.build(field, kind, tensors, grading, endos)

    @property
    def is_graded(self) -> bool:
        return self.grading is not None

    def tensor(self, label: str) -> BracketTensor:
        return self.brackets[self.labels.index(label)]

    def parity(self, i: int) -> int:
        """Parity of basis vector ``i``; every vector counts as even when ungraded."""
        return self.grading[i] if self.grading is not None else 0

    def basis(self, i: int) -> Vector:
        return unit_vector(self.dim, i, self.field)

    def with_brackets(self, brackets: dict[str, BracketTensor]) -> MultiAlgebra:
        return replace(self, labels=LabelSet.of(brackets), brackets=tuple(brackets.values()))


def sign(field: FieldSpec, exponent: int) -> Raw:
    """(-1)^exponent as a field element."""
    return field.one if exponent % 2 == 0 else field.neg(field.one)


def bracket_eval(a: MultiAlgebra, k: str, x: Vector, y: Vector) -> Vector:
    """Bilinear extension of the structure constants of label ``k``."""
    tensor = a.tensor(k)
    n = a.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(f"elements of length {len(x)}, {len(y)} in dimension {n}")
    field = a.field
    out = [field.zero] * n
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        row = tensor.c[i]
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            coeff = field.mul(xi, yj)
            for idx, entry in enumerate(row[j]):
                if entry != 0:
                    out[idx] = field.add(out[idx], field.mul(coeff, entry))
    return tuple(out)


def parity_of(a: MultiAlgebra, x: Vector) -> Parity:
    if a.grading is None:
        raise NotGraded(f"kind {a.kind.value} carries no grading")
    if len(x) != a.dim:
        raise DimensionMismatch(f"element of length {len(x)} in dimension {a.dim}")
    support = {a.grading[i] for i, xi in enumerate(x) if xi != 0}
    if not support:
        return Parity.ZERO
    if support == {0}:
        return Parity.EVEN
    if support == {1}:
        return Parity.ODD
    return Parity.MIXED


def apply_endo(m: Matrix, x: Vector) -> Vector:
    return mat_vec(m, x)


def left_multiplication(a: MultiAlgebra, k: str, i: int) -> Matrix:
    """Matrix of ``v -> e_i *_k v``."""
    c = a.tensor(k).c
    n = a.dim
    return Matrix(a.field, tuple(tuple(c[i][j][r] for j in range(n)) for r in range(n)), n)


def right_multiplication(a: MultiAlgebra, k: str, i: int) -> Matrix:
    """Matrix of ``v -> v *_k e_i``."""
    c = a.tensor(k).c
    n = a.dim
    return Matrix(a.field, tuple(tuple(c[j][i][r] for j in range(n)) for r in range(n)), n)


def multiplication_operators(a: MultiAlgebra, two_sided: bool) -> list[Matrix]:
    ops = [left_multiplication(a, k, i) for k in a.labels for i in range(a.dim)]
    if two_sided:
        ops += [right_multiplication(a, k, i) for k in a.labels for i in range(a.dim)]
    return ops


def is_even_map(m: Matrix, source: Sequence[int], target: Sequence[int] | None = None) -> bool:
    """True iff ``m`` maps each parity block of ``source`` into the same block of ``target``."""
    return _shifts_parity_by(m, source, target or source, 0)


def is_odd_map(m: Matrix, source: Sequence[int], target: Sequence[int] | None = None) -> bool:
    return _shifts_parity_by(m, source, target or source, 1)


def _shifts_parity_by(m: Matrix, source: Sequence[int], target: Sequence[int], shift: int) -> bool:
    for row_idx, row in enumerate(m.rows):
        for col_idx, entry in enumerate(row):
            if entry != 0 and target[row_idx] != (source[col_idx] + shift) % 2:
                return False
    return True
