from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from liekit.linear import Subspace


class LiekitError(Exception):
    """Base class for every error raised by the kernel."""


class FieldMismatch(LiekitError):
    """Operands live in different fields."""


class DivisionByZero(LiekitError, ZeroDivisionError):
    """Division by the zero element of a field."""


class ParseError(LiekitError, ValueError):
    """Text that does not follow a documented grammar."""


class SchemaError(LiekitError):
    """A document that parses but violates its schema."""


class StructureError(LiekitError, ValueError):
    """An object whose shape violates its invariants."""


class DimensionMismatch(LiekitError):
    """Vectors, matrices or subspaces of incompatible sizes."""


class BoundsExceeded(LiekitError):
    """An exhaustive computation outside its supported bounds."""


class UnknownLabel(LiekitError, KeyError):
    """A bracket label outside the algebra's label set."""


class NotGraded(LiekitError):
    """A graded operation applied to an ungraded object."""


class KindMismatch(LiekitError):
    """An operation applied to an algebra of the wrong kind."""


class MissingEndoSets(LiekitError):
    """A 3rd-kind check without endomorphism sets."""


class MissingG(LiekitError):
    """A 2nd-kind representation without its g family."""


class SingularMatrix(LiekitError):
    """Inverse requested for a singular matrix."""


class NotAnIdeal(LiekitError):
    """Quotient requested by a subspace that is not an ideal."""


class AlgebraMismatch(LiekitError):
    """Algebras that cannot be combined."""


class InternalClosureFailure(LiekitError):
    """A computed annihilator that is not closed as claimed."""

    def __init__(self, message: str, subspace: Subspace) -> None:
        super().__init__(message)
        self.subspace = subspace


class BaseNotAdmissible(LiekitError):
    """A base bracket that fails its own single-bracket axioms."""

    def __init__(self, message: str, report: Any) -> None:
        super().__init__(message)
        self.report = report
