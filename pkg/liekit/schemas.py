from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, model_validator

from liekit.algebra import Kind

ScalarText = StrictStr
MatrixDoc = list[list[ScalarText]]
TensorDoc = list[list[list[ScalarText]]]
Bit = Literal[0, 1]


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FieldDoc(_Document):
    type: Literal["Q", "Fp"]
    p: Optional[StrictInt] = None

    @model_validator(mode="after")
    def _prime_iff_fp(self) -> FieldDoc:
        if self.type == "Fp" and self.p is None:
            raise ValueError("field Fp needs its prime p")
        if self.type == "Q" and self.p is not None:
            raise ValueError("field Q takes no p")
        return self


class EndosDoc(_Document):
    sigma: list[MatrixDoc] = Field(min_length=1)
    sigma_ring: list[MatrixDoc] = Field(min_length=1)
    sigma_check: list[MatrixDoc] = Field(min_length=1)


def _check_square(rows: MatrixDoc, n: int, where: str) -> None:
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"{where} must be {n}x{n}")


class AlgebraDoc(_Document):
    field: FieldDoc
    dim: StrictInt = Field(ge=0)
    labels: list[str] = Field(min_length=1)
    kind: Kind
    grading: Optional[list[Bit]] = None
    brackets: dict[str, TensorDoc]
    endos: Optional[EndosDoc] = None

    @model_validator(mode="after")
    def _mirror_algebra_invariants(self) -> AlgebraDoc:
        n = self.dim
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        if set(self.brackets) != set(self.labels):
            raise ValueError("brackets must have exactly one tensor per label")
        for label, tensor in self.brackets.items():
            if len(tensor) != n or any(len(row) != n or any(len(v) != n for v in row) for row in tensor):
                raise ValueError(f"bracket {label!r} must be {n}x{n}x{n}")
        if self.kind.is_super and self.grading is None:
            raise ValueError(f"kind {self.kind.value} requires a grading")
        if not self.kind.is_super and self.grading is not None:
            raise ValueError(f"kind {self.kind.value} takes no grading")
        if self.grading is not None and len(self.grading) != n:
            raise ValueError("grading length differs from dim")
        if self.kind.order == 3 and self.endos is None:
            raise ValueError(f"kind {self.kind.value} requires endos")
        if self.kind.order != 3 and self.endos is not None:
            raise ValueError(f"kind {self.kind.value} takes no endos")
        if self.endos is not None:
            for name in ("sigma", "sigma_ring", "sigma_check"):
                for idx, m in enumerate(getattr(self.endos, name)):
                    _check_square(m, n, f"endos.{name}.{idx}")
        return self


class ModuleDoc(_Document):
    algebra: Optional[Union[str, AlgebraDoc]] = None
    carrier_dim: StrictInt = Field(ge=0)
    carrier_grading: Optional[list[Bit]] = None
    f: dict[str, list[MatrixDoc]]
    g: Optional[dict[str, list[MatrixDoc]]] = None

    @model_validator(mode="after")
    def _square_maps(self) -> ModuleDoc:
        if self.carrier_grading is not None and len(self.carrier_grading) != self.carrier_dim:
            raise ValueError("carrier_grading length differs from carrier_dim")
        for name, family in (("f", self.f), ("g", self.g)):
            for label, maps in (family or {}).items():
                for idx, m in enumerate(maps):
                    _check_square(m, self.carrier_dim, f"{name}.{label}.{idx}")
        return self


class SubspaceDoc(_Document):
    field: FieldDoc
    ambient_dim: StrictInt = Field(ge=0)
    basis: list[list[ScalarText]]

    @model_validator(mode="after")
    def _row_lengths(self) -> SubspaceDoc:
        if any(len(row) != self.ambient_dim for row in self.basis):
            raise ValueError(f"basis rows must have length {self.ambient_dim}")
        return self
