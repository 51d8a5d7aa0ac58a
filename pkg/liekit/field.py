"""Exact scalar arithmetic over Q and prime fields F_p.

Kernel code works on *raw* values (``Fraction`` for Q, ``int`` residues for
F_p) through the methods of :class:`FieldSpec`; :class:`Scalar` wraps a raw
value together with its field for callers that want operator syntax.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal, Union

from sympy import isprime

from liekit.errors import DivisionByZero, FieldMismatch, ParseError, StructureError

Raw = Union[int, Fraction]

MAX_PRIME = 2**31

SCALAR_RE = re.compile(r"^(?P<num>-?[0-9]+)(?:/(?P<den>[1-9][0-9]*))?$")


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is None:
            return
        if not 2 <= self.p < MAX_PRIME or not isprime(self.p):
            raise StructureError(f"{self.p} is not a prime below 2^31")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.p is None else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.p is None else 1

    def coerce(self, value: int | Fraction) -> Raw:
        """Map an integer or fraction into canonical form in this field."""
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a: Raw, b: Raw) -> Raw:
        if self.p is None:
            return a + b
        return (a + b) % self.p

    def sub(self, a: Raw, b: Raw) -> Raw:
        if self.p is None:
            return a - b
        return (a - b) % self.p

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.p is None:
            return a * b
        return (a * b) % self.p

    def neg(self, a: Raw) -> Raw:
        if self.p is None:
            return -a
        return (-a) % self.p

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(int(a), -1, self.p)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    @staticmethod
    def is_zero(a: Raw) -> bool:
        return a == 0

    def elements(self) -> tuple[int, ...]:
        if self.p is None:
            raise StructureError("the rationals cannot be enumerated")
        return tuple(range(self.p))

    def parse(self, text: str) -> Raw:
        match = SCALAR_RE.match(text.strip())
        if not match:
            raise ParseError(f"malformed scalar {text!r}")
        num = int(match.group("num"))
        den = int(match.group("den") or 1)
        if self.p is not None and den % self.p == 0:
            raise DivisionByZero(f"denominator {den} vanishes mod {self.p}")
        return self.coerce(Fraction(num, den))

    def format(self, value: Raw) -> str:
        if self.p is None:
            value = Fraction(value)
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return str(int(value) % self.p)

    def describe(self) -> dict[str, Any]:
        if self.p is None:
            return {"type": "Q"}
        return {"type": "Fp", "p": self.p}

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"


Op = Literal["add", "sub", "mul", "div"]


@dataclass(frozen=True)
class Scalar:
    value: Raw
    field: FieldSpec

    @classmethod
    def of(cls, value: int | Fraction, field: FieldSpec) -> Scalar:
        return cls(field.coerce(value), field)

    def _check(self, other: Scalar) -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.field.add(self.value, other.value), self.field)

    def __sub__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.field.mul(self.value, other.value), self.field)

    def __truediv__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.field.div(self.value, other.value), self.field)

    def __neg__(self) -> Scalar:
        return Scalar(self.field.neg(self.value), self.field)

    def __str__(self) -> str:
        return self.field.format(self.value)


def scalar_arith(a: Scalar, b: Scalar, op: Op) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def scalar_parse(text: str, field: FieldSpec) -> Scalar:
    return Scalar(field.parse(text), field)


def scalar_format(scalar: Scalar) -> str:
    return scalar.field.format(scalar.value)
