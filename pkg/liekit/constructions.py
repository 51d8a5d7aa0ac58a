"""Instance factories and the triviality decision."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import structlog

from liekit.algebra import BracketTensor, EndoSets, Kind, MultiAlgebra, is_even_map
from liekit.axioms import verify
from liekit.errors import AlgebraMismatch, BaseNotAdmissible, DimensionMismatch, StructureError
from liekit.field import FieldSpec, Raw
from liekit.linear import Matrix, inverse, linear_combination, mat_mul, mat_vec

logger = structlog.get_logger(__name__)


# -- standard base brackets --------------------------------------------------


def heisenberg_base(field: FieldSpec) -> BracketTensor:
    """``[e0, e1] = e2``; everything else vanishes."""
    return BracketTensor.from_products(3, field, {(0, 1): (0, 0, 1), (1, 0): (0, 0, -1)})


def sl2_base(field: FieldSpec) -> BracketTensor:
    """sl2 on the basis (e, f, h): ``[e, f] = h``, ``[h, e] = 2e``, ``[h, f] = -2f``."""
    return BracketTensor.from_products(
        3,
        field,
        {
            (0, 1): (0, 0, 1),
            (1, 0): (0, 0, -1),
            (2, 0): (2, 0, 0),
            (0, 2): (-2, 0, 0),
            (2, 1): (0, -2, 0),
            (1, 2): (0, 2, 0),
        },
    )


def leibniz2_base(field: FieldSpec) -> BracketTensor:
    """The 2-dimensional Leibniz algebra ``<a, a> = b``."""
    return BracketTensor.from_products(2, field, {(0, 0): (0, 1)})


def super11_base(field: FieldSpec) -> BracketTensor:
    """The (1|1) superalgebra with even ``e0``, odd ``e1`` and ``[e1, e1] = e0``."""
    return BracketTensor.from_products(2, field, {(1, 1): (1, 0)})


SUPER11_GRADING = (0, 1)


# -- trivial construction ----------------------------------------------------


@dataclass(frozen=True)
class TrivialityResult:
    trivial: bool
    base: BracketTensor | None = None
    phi: dict[str, Raw] | None = None


def trivial_from_base(
    base: BracketTensor,
    phi: Mapping[str, Raw],
    kind: Kind,
    field: FieldSpec,
    grading: Sequence[int] | None = None,
    endos: EndoSets | None = None,
) -> MultiAlgebra:
    """Family ``[x, y]_k = phi(k) [x, y]`` over an admissible base bracket."""
    if not phi:
        raise StructureError("phi must name at least one label")
    single = MultiAlgebra.build(field, kind, {"base": base}, grading, endos)
    report = verify(single)
    if not report.passed:
        logger.info("constructions.base_rejected", kind=kind.value, failed=[c.name for c in report.failures()])
        raise BaseNotAdmissible(f"base bracket is not a {kind.value} algebra", report)
    tensors = {label: base.scaled(field, field.coerce(s)) for label, s in phi.items()}
    return MultiAlgebra.build(field, kind, tensors, grading, endos)


def triviality_test(a: MultiAlgebra) -> TrivialityResult:
    """Decide whether every tensor is a scalar multiple of a single one."""
    field = a.field
    nonzero = [(label, t) for label, t in zip(a.labels, a.brackets) if not t.is_zero()]
    if not nonzero:
        return TrivialityResult(True, a.brackets[0], {label: field.zero for label in a.labels})
    base_label, base = nonzero[0]
    base_entries = list(base.entries())
    pivot = next(idx for idx, value in enumerate(base_entries) if value != 0)
    phi: dict[str, Raw] = {}
    for label, tensor in zip(a.labels, a.brackets):
        entries = list(tensor.entries())
        ratio = field.div(entries[pivot], base_entries[pivot])
        if any(field.mul(ratio, b) != e for b, e in zip(base_entries, entries)):
            return TrivialityResult(False)
        phi[label] = ratio
    assert phi[base_label] == field.one
    return TrivialityResult(True, base, phi)


# -- combinations ------------------------------------------------------------


def _block_diagonal(field: FieldSpec, top: Matrix, bottom: Matrix) -> Matrix:
    n1, n2 = top.nrows, bottom.nrows
    rows = [row + (field.zero,) * n2 for row in top.rows]
    rows += [(field.zero,) * n1 + row for row in bottom.rows]
    return Matrix(field, tuple(rows), n1 + n2)


def direct_sum(a: MultiAlgebra, b: MultiAlgebra) -> MultiAlgebra:
    """Block-diagonal structure constants; b's basis follows a's."""
    if a.field != b.field or a.labels != b.labels or a.kind != b.kind:
        raise AlgebraMismatch("direct sums need one field, one label set and one kind")
    field = a.field
    n1, n2 = a.dim, b.dim
    n = n1 + n2
    tensors = {}
    for label in a.labels:
        ca, cb = a.tensor(label).c, b.tensor(label).c
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if i < n1 and j < n1:
                    row.append(ca[i][j] + (field.zero,) * n2)
                elif i >= n1 and j >= n1:
                    row.append((field.zero,) * n1 + cb[i - n1][j - n1])
                else:
                    row.append((field.zero,) * n)
            rows.append(tuple(row))
        tensors[label] = BracketTensor(n, tuple(rows))
    grading = None
    if a.grading is not None and b.grading is not None:
        grading = a.grading.parity + b.grading.parity
    endos = None
    if a.endos is not None and b.endos is not None:
        endos = EndoSets(
            *(
                tuple(_block_diagonal(field, x, y) for x in fa for y in fb)
                for (_, fa), (_, fb) in zip(a.endos.families(), b.endos.families())
            )
        )
    return MultiAlgebra.build(field, a.kind, tensors, grading, endos)


def change_basis(a: MultiAlgebra, p: Matrix) -> MultiAlgebra:
    """Transport the structure along ``p``, whose columns are the new basis vectors."""
    n = a.dim
    if p.shape != (n, n):
        raise DimensionMismatch(f"basis change must be {n}x{n}")
    if a.grading is not None and not is_even_map(p, a.grading.parity):
        raise StructureError("basis change of a graded algebra must be even")
    field = a.field
    p_inv = inverse(p)
    columns = [p.column(j) for j in range(n)]
    tensors = {}
    for label in a.labels:
        c = a.tensor(label).c
        rows = []
        for r in range(n):
            row = []
            for s in range(n):
                coeffs: list[Raw] = []
                vectors = []
                for i, x in enumerate(columns[r]):
                    for j, y in enumerate(columns[s]):
                        coeffs.append(field.mul(x, y))
                        vectors.append(c[i][j])
                row.append(mat_vec(p_inv, linear_combination(field, coeffs, vectors, n)))
            rows.append(tuple(row))
        tensors[label] = BracketTensor(n, tuple(rows))
    endos = None
    if a.endos is not None:
        endos = EndoSets(
            *(tuple(mat_mul(p_inv, mat_mul(m, p)) for m in family) for _, family in a.endos.families())
        )
    grading = a.grading.parity if a.grading is not None else None
    return MultiAlgebra.build(field, a.kind, tensors, grading, endos)
