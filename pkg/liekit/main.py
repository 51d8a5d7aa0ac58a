"""Command-line entry point: dispatch, report envelope and exit codes.

Exit codes: 0 when every check passes or a computation completes, 1 when a
mathematical check fails (the report is still printed), 2 for usage and
format errors.
"""

from __future__ import annotations

import hashlib
import json
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import structlog
from pydantic import ValidationError

from liekit.algebra import Kind, MultiAlgebra
from liekit.axioms import VerificationReport, is_anti_symmetric, verify
from liekit.codec import (
    algebra_to_doc,
    census_to_dict,
    dumps,
    format_value,
    load_module,
    module_to_doc,
    parse_algebra,
    read_json,
    report_to_dicts,
    subspace_from_doc,
    subspace_rows,
    validate,
)
from liekit.commands import (
    AnnihilatorCommand,
    Command,
    CommandParseError,
    ModuleAdjointCommand,
    ModuleIrreducibleCommand,
    ModuleVerifyCommand,
    QuotientCommand,
    SearchCommand,
    SimpleCommand,
    TrivialCommand,
    VerifyCommand,
    parse_command,
)
from liekit.config import Settings, get_settings
from liekit.constructions import triviality_test
from liekit.errors import (
    BaseNotAdmissible,
    InternalClosureFailure,
    LiekitError,
    NotAnIdeal,
    SchemaError,
)
from liekit.field import FieldSpec
from liekit.ideals import (
    Which,
    annihilator,
    check_containment,
    classify_simplicity,
    factor_algebra,
    ideal_violation,
    named_factor,
    resolve_which,
)
from liekit.linear import Subspace
from liekit.representations import adjoint_module, check_module, classify_irreducibility
from liekit.schemas import SubspaceDoc
from liekit.search import SearchSpec, exhaustive_search
from utils.logging import setup_logging

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

MATHEMATICAL_FAILURES = (InternalClosureFailure, NotAnIdeal, BaseNotAdmissible)

KIND_NOTES: dict[Kind, str] = {
    Kind.FIRST: "1st kind: the mixed-label Jacobi-like identity is checked for every ordered label pair, "
    "the long form for every unordered pair",
    Kind.SECOND: "2nd kind: the mixed-label identity is read as <<x,y>_k,z>_h = <x,<y,z>_h>_k + s<<x,z>_h,y>_k "
    "and the label-flip identity <<x,y>_k,z>_h = <<x,y>_h,z>_k is checked separately",
    Kind.THIRD: "3rd kind: the twisted identity is checked for every triple drawn from sigma, sigma_ring "
    "and sigma_check",
}

DISTINGUISHED_NOTE = (
    "2nd kinds: the distinguished set is {0, minus annihilator, plus annihilator, L}, "
    "both annihilators taken in the 2nd-kind sense"
)
SUPER_PLUS_CLOSURE_NOTE = (
    "super 2nd kind: the plus super annihilator is checked to be closed into itself, "
    "not into the ungraded plus annihilator"
)


def _interpretation_notes(kind: Kind, which: Which | None = None) -> list[str]:
    notes = []
    if kind.order == 2 and which is None:
        notes.append(DISTINGUISHED_NOTE)
    if kind is Kind.SUPER_SECOND and which in (None, Which.SUPER_SECOND_PLUS):
        notes.append(SUPER_PLUS_CLOSURE_NOTE)
    return notes


@dataclass
class Outcome:
    command: str
    inputs: list[bytes] = field(default_factory=list)
    checks: list[dict[str, Any]] = field(default_factory=list)
    result: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def add_report(self, field_spec: FieldSpec, report: VerificationReport) -> None:
        self.checks += report_to_dicts(field_spec, report)
        self.notes += [note for note in report.notes if note not in self.notes]
        if not report.passed:
            self.exit_code = EXIT_FAILED

    def envelope(self) -> dict[str, Any]:
        digest = hashlib.sha256()
        for raw in self.inputs:
            digest.update(raw)
        return {
            "command": self.command,
            "input_digest": f"sha256:{digest.hexdigest()}",
            "checks": self.checks,
            "result": self.result,
            "notes": self.notes,
        }


def _load_algebra(path: Path, outcome: Outcome) -> MultiAlgebra:
    data, raw = read_json(path)
    outcome.inputs.append(raw)
    return parse_algebra(data, str(path))


def _rows(s: Subspace | None) -> list[list[str]] | None:
    return subspace_rows(s) if s is not None else None


def _threads(command: Command, settings: Settings) -> int:
    return command.options.threads or settings.threads


def _algebra_summary(a: MultiAlgebra) -> dict[str, Any]:
    return {"kind": a.kind.value, "field": str(a.field), "dim": a.dim, "labels": list(a.labels)}


# -- handlers ----------------------------------------------------------------


def _handle_verify(command: VerifyCommand, settings: Settings) -> Outcome:
    outcome = Outcome("verify")
    a = _load_algebra(command.path, outcome)
    report = verify(a, command.strict_alternating, _threads(command, settings))
    outcome.add_report(a.field, report)
    outcome.result = {**_algebra_summary(a), "passed": report.passed}
    if a.kind.order == 3:
        outcome.result["anti_symmetric"] = is_anti_symmetric(a)
    outcome.notes.append(KIND_NOTES[a.kind.ungraded])
    return outcome


def _handle_annihilator(command: AnnihilatorCommand) -> Outcome:
    outcome = Outcome("annihilator")
    a = _load_algebra(command.path, outcome)
    which = resolve_which(a.kind, command.which)
    outcome.result = {"which": which.value}
    try:
        s = annihilator(a, which)
    except InternalClosureFailure as exc:
        outcome.result.update(closed=False, dim=exc.subspace.dim, rows=_rows(exc.subspace))
        outcome.exit_code = EXIT_FAILED
        return outcome
    outcome.result.update(closed=True, dim=s.dim, rows=_rows(s))
    outcome.notes += _interpretation_notes(a.kind, which)
    if a.kind.order == 2:
        contained = check_containment(a)
        outcome.result["minus_in_plus"] = contained
        if not contained:
            outcome.exit_code = EXIT_FAILED
    return outcome


def _handle_quotient(command: QuotientCommand, settings: Settings) -> Outcome:
    outcome = Outcome("quotient")
    a = _load_algebra(command.path, outcome)
    threads = _threads(command, settings)

    if command.by_annihilator is not None:
        which = resolve_which(a.kind, command.by_annihilator)
        factor = named_factor(a, which, threads)
        outcome.result = {
            "by": f"annihilator:{which.value}",
            "ideal": _rows(factor.ideal),
            "factor": factor.name,
            "well_defined": factor.well_defined,
            "violation": list(factor.violation) if factor.violation else None,
            "algebra": algebra_to_doc(factor.algebra),
        }
        outcome.notes += _interpretation_notes(a.kind, which)
        if factor.report is not None:
            outcome.add_report(a.field, factor.report)
        if not factor.well_defined:
            outcome.exit_code = EXIT_FAILED
        return outcome

    assert command.by_subspace is not None
    data, raw = read_json(command.by_subspace)
    outcome.inputs.append(raw)
    s = subspace_from_doc(validate(SubspaceDoc, data, str(command.by_subspace)), str(command.by_subspace))
    if s.field != a.field:
        raise SchemaError(f"{command.by_subspace}: subspace over {s.field}, algebra over {a.field}")
    outcome.result = {"by": str(command.by_subspace), "ideal": _rows(s)}
    try:
        result = factor_algebra(a, s)
    except NotAnIdeal:
        violation = ideal_violation(a, s)
        outcome.result["is_ideal"] = False
        outcome.result["violation"] = (
            {
                "side": violation.side,
                "label": violation.label,
                "basis_index": violation.basis_index,
                "image": format_value(a.field, violation.image),
            }
            if violation is not None
            else "not graded"
        )
        outcome.exit_code = EXIT_FAILED
        return outcome
    outcome.result.update(
        is_ideal=True,
        well_defined=result.well_defined,
        violation=list(result.violation) if result.violation else None,
        algebra=algebra_to_doc(result.algebra),
    )
    outcome.add_report(a.field, verify(result.algebra, threads=threads))
    if not result.well_defined:
        outcome.exit_code = EXIT_FAILED
    return outcome


def _handle_simple(command: SimpleCommand, settings: Settings) -> Outcome:
    outcome = Outcome("simple")
    a = _load_algebra(command.path, outcome)
    verdict = classify_simplicity(a, _threads(command, settings))
    outcome.result = {
        "i": verdict.i,
        "simple": verdict.simple,
        "exhaustive": verdict.exhaustive,
        "distinguished": [_rows(s) for s in verdict.distinguished],
        "offending_ideal": _rows(verdict.offending_ideal),
        "ideal_count": verdict.ideal_count,
    }
    outcome.notes += _interpretation_notes(a.kind)
    if not verdict.exhaustive:
        outcome.notes.append(
            "over Q only ideals generated by one vector are examined; simple is null when none escapes"
        )
    return outcome


def _handle_module_verify(command: ModuleVerifyCommand, settings: Settings) -> Outcome:
    outcome = Outcome("module verify")
    a = _load_algebra(command.algebra_path, outcome)
    outcome.inputs.append(command.module_path.read_bytes())
    rep = load_module(command.module_path, a).rep
    report = check_module(rep, _threads(command, settings))
    outcome.add_report(a.field, report)
    outcome.result = {**_algebra_summary(a), "carrier_dim": rep.carrier_dim, "passed": report.passed}
    return outcome


def _handle_module_adjoint(command: ModuleAdjointCommand, settings: Settings) -> Outcome:
    outcome = Outcome("module adjoint")
    a = _load_algebra(command.algebra_path, outcome)
    rep = adjoint_module(a)
    outcome.result = {"module": module_to_doc(rep)}
    if a.kind.order == 2:
        outcome.notes.append("2nd kind adjoint module: f_k = -r_k and g_k = l_k")
    if command.check:
        report = check_module(rep, _threads(command, settings))
        outcome.add_report(a.field, report)
        outcome.result["passed"] = report.passed
    return outcome


def _handle_module_irreducible(command: ModuleIrreducibleCommand, settings: Settings) -> Outcome:
    outcome = Outcome("module irreducible")
    a = _load_algebra(command.algebra_path, outcome)
    outcome.inputs.append(command.module_path.read_bytes())
    rep = load_module(command.module_path, a).rep
    verdict = classify_irreducibility(rep, _threads(command, settings))
    outcome.result = {
        "i": verdict.i,
        "irreducible": verdict.irreducible,
        "exhaustive": verdict.exhaustive,
        "distinguished": [_rows(s) for s in verdict.distinguished],
        "offending_submodule": _rows(verdict.offending),
        "submodule_count": verdict.submodule_count,
    }
    return outcome


def _handle_trivial(command: TrivialCommand) -> Outcome:
    outcome = Outcome("trivial")
    a = _load_algebra(command.path, outcome)
    result = triviality_test(a)
    outcome.result = {"trivial": result.trivial}
    if result.trivial:
        assert result.base is not None and result.phi is not None
        outcome.result["base"] = format_value(a.field, result.base.c)
        outcome.result["phi"] = {label: a.field.format(s) for label, s in result.phi.items()}
    return outcome


def _handle_search(command: SearchCommand, settings: Settings) -> Outcome:
    spec = SearchSpec(FieldSpec.prime(command.p), command.dim, command.labels, command.kind, command.alternating)
    outcome = Outcome("search")
    request = {
        "kind": spec.kind.value,
        "dim": spec.dim,
        "p": command.p,
        "labels": spec.label_count,
        "alternating": spec.alternating,
    }
    outcome.inputs.append(dumps(request).encode("utf-8"))
    report = exhaustive_search(spec, _threads(command, settings), settings)
    outcome.result = census_to_dict(report)
    outcome.notes.append("counts are of labeled structure-constant families, not isomorphism classes")
    if command.p == 2 and spec.kind is Kind.FIRST:
        outcome.notes.append(
            "characteristic 2: strict_alternating_passing counts passing candidates with [x, x]_k = 0"
        )
    if not report.certified:
        outcome.exit_code = EXIT_FAILED
    return outcome


def handle_command(command: Command, settings: Settings) -> Outcome:
    if isinstance(command, VerifyCommand):
        return _handle_verify(command, settings)
    if isinstance(command, AnnihilatorCommand):
        return _handle_annihilator(command)
    if isinstance(command, QuotientCommand):
        return _handle_quotient(command, settings)
    if isinstance(command, SimpleCommand):
        return _handle_simple(command, settings)
    if isinstance(command, ModuleVerifyCommand):
        return _handle_module_verify(command, settings)
    if isinstance(command, ModuleAdjointCommand):
        return _handle_module_adjoint(command, settings)
    if isinstance(command, ModuleIrreducibleCommand):
        return _handle_module_irreducible(command, settings)
    if isinstance(command, TrivialCommand):
        return _handle_trivial(command)
    if isinstance(command, SearchCommand):
        return _handle_search(command, settings)
    raise CommandParseError(f"unsupported command {type(command).__name__}")


# -- output ------------------------------------------------------------------


def render_text(envelope: dict[str, Any], exit_code: int) -> str:
    status = "ok" if exit_code == EXIT_OK else "FAILED"
    lines = [f"{envelope['command']}: {status}"]
    for check in envelope["checks"]:
        if check["passed"]:
            lines.append(f"  {check['name']}: ok")
        else:
            w = check["witness"]
            lines.append(
                f"  {check['name']}: FAILED labels={','.join(w['labels'])} "
                f"indices={','.join(str(i) for i in w['indices'])}"
            )
    for key in sorted(envelope["result"]):
        lines.append(f"  {key}: {json.dumps(envelope['result'][key], sort_keys=True)}")
    lines += [f"  note: {note}" for note in envelope["notes"]]
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    try:
        settings = get_settings()
    except ValidationError as exc:
        sys.stderr.write(f"liekit: invalid LIEKIT_* environment: {exc}\n")
        return EXIT_USAGE
    setup_logging(settings.structlog_level)

    try:
        command = parse_command(sys.argv[1:] if argv is None else argv)
    except CommandParseError as exc:
        sys.stderr.write(f"liekit: error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=type(command).__name__)
    if command.options.seed is not None:
        logger.debug("cli.seed_ignored", seed=command.options.seed)

    try:
        outcome = handle_command(command, settings)
    except MATHEMATICAL_FAILURES as exc:
        logger.warning("cli.check_failed", error=str(exc), error_type=type(exc).__name__)
        sys.stderr.write(f"liekit: {exc}\n")
        return EXIT_FAILED
    except (LiekitError, CommandParseError, OSError) as exc:
        logger.warning("cli.command_failed", error=str(exc), error_type=type(exc).__name__)
        sys.stderr.write(f"liekit: error: {exc}\n")
        return EXIT_USAGE
    except Exception:
        logger.exception("cli.unexpected_error")
        return EXIT_USAGE

    envelope = outcome.envelope()
    if command.options.json_output:
        sys.stdout.write(dumps(envelope))
    else:
        sys.stdout.write(render_text(envelope, outcome.exit_code))
    logger.info("cli.command_completed", command=outcome.command, exit_code=outcome.exit_code)
    return outcome.exit_code


def run() -> None:
    sys.exit(main())
