"""JSON documents for algebras, modules and subspaces, and report payloads.

Scalars are strings in the exact-field grammar. Canonical output is
``json.dumps(doc, sort_keys=True)`` plus a newline, so saving a loaded
document reproduces it byte for byte.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, TypeVar

import structlog
from pydantic import BaseModel, ValidationError

from liekit.algebra import BracketTensor, EndoSets, Grading, MultiAlgebra
from liekit.axioms import CheckResult, VerificationReport
from liekit.errors import DivisionByZero, ParseError, SchemaError, StructureError
from liekit.field import FieldSpec, Raw
from liekit.linear import Matrix, Subspace, span
from liekit.representations import ModuleRep
from liekit.schemas import AlgebraDoc, FieldDoc, MatrixDoc, ModuleDoc, SubspaceDoc
from liekit.search import CensusReport

logger = structlog.get_logger(__name__)

M = TypeVar("M", bound=BaseModel)


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def read_json(path: Path) -> tuple[Any, bytes]:
    """Parsed document plus the raw bytes it was read from."""
    raw = path.read_bytes()
    logger.debug("codec.document_read", path=str(path), size=len(raw))
    try:
        return json.loads(raw.decode("utf-8")), raw
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 text") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def validate(model: type[M], data: Any, source: str) -> M:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        locations = "; ".join(
            f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}" for err in exc.errors()
        )
        raise SchemaError(f"{source}: {locations}") from exc


# -- scalars and fields ------------------------------------------------------


def field_from_doc(doc: FieldDoc) -> FieldSpec:
    try:
        return FieldSpec.rationals() if doc.type == "Q" else FieldSpec.prime(doc.p or 0)
    except StructureError as exc:
        raise SchemaError(f"field: {exc}") from exc


def field_to_doc(field: FieldSpec) -> dict[str, Any]:
    return field.describe()


def _scalar(field: FieldSpec, text: str, path: str) -> Raw:
    try:
        return field.parse(text)
    except (ParseError, DivisionByZero) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _vector(field: FieldSpec, values: Sequence[str], path: str) -> tuple[Raw, ...]:
    return tuple(_scalar(field, text, f"{path}.{idx}") for idx, text in enumerate(values))


def _matrix(field: FieldSpec, rows: Sequence[Sequence[str]], ncols: int, path: str) -> Matrix:
    return Matrix(field, tuple(_vector(field, row, f"{path}.{r}") for r, row in enumerate(rows)), ncols)


def format_value(field: FieldSpec, value: Any) -> Any:
    """Scalars to strings, recursively through tuples and lists."""
    if isinstance(value, (tuple, list)):
        return [format_value(field, item) for item in value]
    return field.format(value)


def _matrix_doc(m: Matrix) -> list[list[str]]:
    return format_value(m.field, m.rows)


# -- algebras ----------------------------------------------------------------


def algebra_from_doc(doc: AlgebraDoc, source: str = "<algebra>") -> MultiAlgebra:
    field = field_from_doc(doc.field)
    n = doc.dim
    tensors = {}
    for label in doc.labels:
        nested = doc.brackets[label]
        tensors[label] = BracketTensor(
            n,
            tuple(
                tuple(_vector(field, vec, f"{source}:brackets.{label}.{i}.{j}") for j, vec in enumerate(row))
                for i, row in enumerate(nested)
            ),
        )
    endos = None
    if doc.endos is not None:
        endos = EndoSets(
            *(
                tuple(
                    _matrix(field, m, n, f"{source}:endos.{name}.{idx}")
                    for idx, m in enumerate(getattr(doc.endos, name))
                )
                for name in ("sigma", "sigma_ring", "sigma_check")
            )
        )
    try:
        return MultiAlgebra.build(field, doc.kind, tensors, doc.grading, endos)
    except StructureError as exc:
        raise SchemaError(f"{source}: {exc}") from exc


def algebra_to_doc(a: MultiAlgebra) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "field": field_to_doc(a.field),
        "dim": a.dim,
        "labels": list(a.labels),
        "kind": a.kind.value,
        "brackets": {label: format_value(a.field, t.c) for label, t in zip(a.labels, a.brackets)},
    }
    if a.grading is not None:
        doc["grading"] = list(a.grading.parity)
    if a.endos is not None:
        doc["endos"] = {name: [_matrix_doc(m) for m in family] for name, family in a.endos.families()}
    return doc


def parse_algebra(data: Any, source: str) -> MultiAlgebra:
    return algebra_from_doc(validate(AlgebraDoc, data, source), source)


def load_algebra(path: Path) -> MultiAlgebra:
    data, _ = read_json(path)
    return parse_algebra(data, str(path))


def save_algebra(a: MultiAlgebra, path: Path) -> None:
    path.write_text(dumps(algebra_to_doc(a)), encoding="utf-8")


# -- modules -----------------------------------------------------------------


@dataclass(frozen=True)
class LoadedModule:
    """A representation plus how its document referred to the algebra."""

    rep: ModuleRep
    algebra_ref: str | None = None
    inline: bool = False


def _family(
    field: FieldSpec, a: MultiAlgebra, family: dict[str, list[MatrixDoc]], n: int, path: str
) -> tuple[tuple[Matrix, ...], ...]:
    if set(family) != set(a.labels):
        raise SchemaError(f"{path}: needs one entry per label {list(a.labels)}")
    out = []
    for label in a.labels:
        maps = family[label]
        if len(maps) != a.dim:
            raise SchemaError(f"{path}.{label}: needs one matrix per basis vector ({a.dim})")
        out.append(tuple(_matrix(field, m, n, f"{path}.{label}.{idx}") for idx, m in enumerate(maps)))
    return tuple(out)


def module_from_doc(
    doc: ModuleDoc, source: str, base_dir: Path, algebra: MultiAlgebra | None = None
) -> LoadedModule:
    """Resolve the algebra, then build the representation.

    An algebra given by the caller wins; a module document that names a
    different algebra is rejected.
    """
    ref: str | None = None
    inline = False
    named: MultiAlgebra | None = None
    if isinstance(doc.algebra, str):
        ref = doc.algebra
        named = load_algebra(base_dir / ref)
    elif isinstance(doc.algebra, AlgebraDoc):
        inline = True
        named = algebra_from_doc(doc.algebra, f"{source}:algebra")
    if algebra is not None and named is not None and named != algebra:
        raise SchemaError(f"{source}: module algebra differs from the algebra given")
    a = algebra or named
    if a is None:
        raise SchemaError(f"{source}: no algebra given for the module")

    field = a.field
    n = doc.carrier_dim
    f = _family(field, a, doc.f, n, f"{source}:f")
    g = _family(field, a, doc.g, n, f"{source}:g") if doc.g is not None else None
    try:
        grading = Grading(tuple(doc.carrier_grading)) if doc.carrier_grading is not None else None
        rep = ModuleRep(a, n, f, g, grading)
    except StructureError as exc:
        raise SchemaError(f"{source}: {exc}") from exc
    return LoadedModule(rep, ref, inline)


def module_to_doc(rep: ModuleRep, algebra_ref: str | None = None, inline: bool = False) -> dict[str, Any]:
    a = rep.algebra
    doc: dict[str, Any] = {
        "carrier_dim": rep.carrier_dim,
        "f": {label: [_matrix_doc(m) for m in maps] for label, maps in zip(a.labels, rep.f)},
    }
    if algebra_ref is not None:
        doc["algebra"] = algebra_ref
    elif inline:
        doc["algebra"] = algebra_to_doc(a)
    if rep.g is not None:
        doc["g"] = {label: [_matrix_doc(m) for m in maps] for label, maps in zip(a.labels, rep.g)}
    if rep.carrier_grading is not None:
        doc["carrier_grading"] = list(rep.carrier_grading.parity)
    return doc


def load_module(path: Path, algebra: MultiAlgebra | None = None) -> LoadedModule:
    data, _ = read_json(path)
    doc = validate(ModuleDoc, data, str(path))
    return module_from_doc(doc, str(path), path.parent, algebra)


def save_module(loaded: LoadedModule, path: Path) -> None:
    path.write_text(dumps(module_to_doc(loaded.rep, loaded.algebra_ref, loaded.inline)), encoding="utf-8")


# -- subspaces ---------------------------------------------------------------


def subspace_from_doc(doc: SubspaceDoc, source: str) -> Subspace:
    field = field_from_doc(doc.field)
    rows = [_vector(field, row, f"{source}:basis.{r}") for r, row in enumerate(doc.basis)]
    return span(rows, doc.ambient_dim, field)


def subspace_rows(s: Subspace) -> list[list[str]]:
    return format_value(s.field, s.basis)


def subspace_to_doc(s: Subspace) -> dict[str, Any]:
    return {"field": field_to_doc(s.field), "ambient_dim": s.ambient_dim, "basis": subspace_rows(s)}


def load_subspace(path: Path) -> Subspace:
    data, _ = read_json(path)
    return subspace_from_doc(validate(SubspaceDoc, data, str(path)), str(path))


def save_subspace(s: Subspace, path: Path) -> None:
    path.write_text(dumps(subspace_to_doc(s)), encoding="utf-8")


# -- reports -----------------------------------------------------------------


def check_to_dict(field: FieldSpec, check: CheckResult) -> dict[str, Any]:
    out: dict[str, Any] = {"name": check.name, "passed": check.passed}
    w = check.witness
    if w is not None:
        out["witness"] = {
            "labels": list(w.labels),
            "indices": list(w.indices),
            "lhs": format_value(field, w.lhs),
            "rhs": format_value(field, w.rhs),
        }
        if w.endos is not None:
            out["witness"]["endos"] = list(w.endos)
    return out


def report_to_dicts(field: FieldSpec, report: VerificationReport) -> list[dict[str, Any]]:
    return [check_to_dict(field, check) for check in report.checks]


def census_to_dict(report: CensusReport) -> dict[str, Any]:
    spec, t = report.spec, report.tally
    return {
        "spec": {
            "field": field_to_doc(spec.field),
            "dim": spec.dim,
            "labels": list(spec.labels),
            "kind": spec.kind.value,
            "alternating": spec.alternating,
        },
        "candidates": t.candidates,
        "passing": t.passing,
        "passing_nontrivial": t.passing_nontrivial,
        "strict_alternating_passing": t.strict_alternating_passing,
        "annihilator_histogram": {
            which: {str(dim): count for dim, count in sorted(counts.items())}
            for which, counts in sorted(t.annihilator_histogram.items())
        },
        "adjoint_checked": t.adjoint_checked,
        "adjoint_failures": t.adjoint_failures,
        "trivial_adjoint_failures": t.trivial_adjoint_failures,
        "nontrivial_adjoint_failures": t.nontrivial_adjoint_failures,
        "closure_violations": t.closure_violations,
        "containment_violations": t.containment_violations,
        "factor_violations": t.factor_violations,
        "uncertified_positives": t.uncertified_positives,
        "uncertified_negatives": t.uncertified_negatives,
        "passing_exemplars": t.passing_exemplars,
        "nontrivial_exemplars": t.nontrivial_exemplars,
        "certified": report.certified,
    }
