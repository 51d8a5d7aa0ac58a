from __future__ import annotations

import argparse
import re
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import NoReturn

from liekit.algebra import Kind


class CommandParseError(Exception):
    """Raised when the command line cannot be parsed."""


@dataclass
class Options:
    json_output: bool = False
    seed: int | None = None
    threads: int | None = None


@dataclass
class VerifyCommand:
    path: Path
    strict_alternating: bool = False
    options: Options = field(default_factory=Options)


@dataclass
class AnnihilatorCommand:
    path: Path
    which: str
    options: Options = field(default_factory=Options)


@dataclass
class QuotientCommand:
    path: Path
    by_annihilator: str | None = None
    by_subspace: Path | None = None
    options: Options = field(default_factory=Options)


@dataclass
class SimpleCommand:
    path: Path
    options: Options = field(default_factory=Options)


@dataclass
class ModuleVerifyCommand:
    algebra_path: Path
    module_path: Path
    options: Options = field(default_factory=Options)


@dataclass
class ModuleAdjointCommand:
    algebra_path: Path
    check: bool = False
    options: Options = field(default_factory=Options)


@dataclass
class ModuleIrreducibleCommand:
    algebra_path: Path
    module_path: Path
    options: Options = field(default_factory=Options)


@dataclass
class TrivialCommand:
    path: Path
    options: Options = field(default_factory=Options)


@dataclass
class SearchCommand:
    kind: Kind
    dim: int
    p: int
    labels: int = 2
    alternating: bool = False
    options: Options = field(default_factory=Options)


Command = (
    VerifyCommand
    | AnnihilatorCommand
    | QuotientCommand
    | SimpleCommand
    | ModuleVerifyCommand
    | ModuleAdjointCommand
    | ModuleIrreducibleCommand
    | TrivialCommand
    | SearchCommand
)


FIELD_RE = re.compile(r"^F_?(?P<p>[0-9]+)$", re.IGNORECASE)
ANNIHILATOR_RE = re.compile(r"^annihilator:(?P<which>[a-z_]+)$")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise CommandParseError(message)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _prime_field(text: str) -> int:
    match = FIELD_RE.match(text)
    if not match:
        raise argparse.ArgumentTypeError(f"expected a prime field like F3, got {text!r}")
    return int(match.group("p"))


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    """Flags accepted both before and after the command name."""
    default = argparse.SUPPRESS if suppress else None
    parent = _Parser(add_help=False)
    parent.add_argument(
        "--json", dest="json_output", action="store_true", default=argparse.SUPPRESS if suppress else False
    )
    parent.add_argument("--seed", type=int, default=default)
    parent.add_argument("--threads", type=_positive, default=default)
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="liekit",
        description="Exact checks for Lie-like algebras and superalgebras of the 1st, 2nd and 3rd kinds.",
        parents=[_global_flags(suppress=False)],
    )
    sub_flags = [_global_flags(suppress=True)]
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    verify = commands.add_parser("verify", parents=sub_flags, help="run the axiom suite of an algebra")
    verify.add_argument("file", type=Path)
    verify.add_argument("--strict-alternating", action="store_true")

    annihilator = commands.add_parser("annihilator", parents=sub_flags, help="compute an annihilator")
    annihilator.add_argument("file", type=Path)
    annihilator.add_argument("--which", required=True)

    quotient = commands.add_parser("quotient", parents=sub_flags, help="factor by an ideal")
    quotient.add_argument("file", type=Path)
    quotient.add_argument("--by", required=True, help="annihilator:WHICH or a subspace file")

    simple = commands.add_parser("simple", parents=sub_flags, help="classify i-simplicity")
    simple.add_argument("file", type=Path)

    trivial = commands.add_parser("trivial", parents=sub_flags, help="decide triviality")
    trivial.add_argument("file", type=Path)

    module = commands.add_parser("module", help="module operations")
    module_commands = module.add_subparsers(dest="module_command", required=True, parser_class=_Parser)
    module_verify = module_commands.add_parser("verify", parents=sub_flags)
    module_verify.add_argument("algebra", type=Path)
    module_verify.add_argument("module", type=Path)
    module_adjoint = module_commands.add_parser("adjoint", parents=sub_flags)
    module_adjoint.add_argument("algebra", type=Path)
    module_adjoint.add_argument("--check", action="store_true")
    module_irreducible = module_commands.add_parser("irreducible", parents=sub_flags)
    module_irreducible.add_argument("algebra", type=Path)
    module_irreducible.add_argument("module", type=Path)

    search = commands.add_parser("search", parents=sub_flags, help="exhaustive census over F2 or F3")
    search.add_argument("--kind", required=True, choices=[Kind.FIRST.value, Kind.SECOND.value])
    search.add_argument("--dim", required=True, type=_positive)
    search.add_argument("--field", required=True, type=_prime_field)
    search.add_argument("--labels", type=_positive, default=2)
    search.add_argument("--alternating", action="store_true")
    return parser


def parse_command(argv: Sequence[str]) -> Command:
    """Parse a command line (without the program name) into a command."""
    args = build_parser().parse_args(list(argv))
    options = Options(json_output=args.json_output, seed=args.seed, threads=args.threads)

    if args.command == "verify":
        return VerifyCommand(args.file, args.strict_alternating, options)
    if args.command == "annihilator":
        return AnnihilatorCommand(args.file, args.which, options)
    if args.command == "quotient":
        if match := ANNIHILATOR_RE.match(args.by):
            return QuotientCommand(args.file, by_annihilator=match.group("which"), options=options)
        return QuotientCommand(args.file, by_subspace=Path(args.by), options=options)
    if args.command == "simple":
        return SimpleCommand(args.file, options)
    if args.command == "trivial":
        return TrivialCommand(args.file, options)
    if args.command == "module":
        if args.module_command == "verify":
            return ModuleVerifyCommand(args.algebra, args.module, options)
        if args.module_command == "adjoint":
            return ModuleAdjointCommand(args.algebra, args.check, options)
        return ModuleIrreducibleCommand(args.algebra, args.module, options)
    if args.command == "search":
        return SearchCommand(Kind(args.kind), args.dim, args.field, args.labels, args.alternating, options)

    raise CommandParseError(f"unknown command {args.command!r}")
