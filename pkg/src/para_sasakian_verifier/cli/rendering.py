"""Report assembly and rendering.

Text output goes through a rich console; JSON output is the pydantic
report dumped with a fixed indent. Both are built from the same
``VerificationReport`` so the two formats never disagree.
"""

import logging
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from enum import StrEnum
from typing import Any

import typer
from pydantic import BaseModel
from rich import box
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from para_sasakian_verifier.core.exceptions import AppError, PreconditionError
from para_sasakian_verifier.models.geometry import GeometryCache, TParams
from para_sasakian_verifier.models.reports import CheckStatus, Witness
from para_sasakian_verifier.models.schemas import (
    CheckEntry,
    ConditionsEntry,
    ErrorReport,
    GeometryPayload,
    PresetEntry,
    SkippedGroup,
    VerdictEntry,
    VerificationReport,
)
from para_sasakian_verifier.models.tensor import Tensor, format_rational
from para_sasakian_verifier.services.curvature_service import (
    constant_curvature_test,
    einstein_test,
)
from para_sasakian_verifier.services.symmetry_service import SymmetryVerdict, TheoremConditions
from para_sasakian_verifier.services.verification_service import VerificationOutcome

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


class OutputFormat(StrEnum):
    TEXT = "text"
    JSON = "json"


def emit_error(error: AppError, output_format: OutputFormat) -> None:
    """One-line error on stderr, or an ErrorReport object on stdout in JSON mode."""
    detail = None
    if isinstance(error, PreconditionError) and error.report is not None:
        failures = ", ".join(result.id for result in error.report.failures)
        detail = f"{error.report.summary()}; failed: {failures}" if failures else error.report.summary()
    if output_format is OutputFormat.JSON:
        emit_json(ErrorReport(error=error.message, code=error.code, detail=detail))
    else:
        typer.echo(f"error: {error.code}: {error.message}", err=True)
        if detail:
            typer.echo(f"  {detail}", err=True)


@contextmanager
def error_boundary(output_format: OutputFormat) -> Iterator[None]:
    """Map application errors to exit code 2."""
    try:
        yield
    except (typer.Exit, typer.Abort):
        raise
    except AppError as e:
        logger.info("Command refused: %s (%s)", e.message, e.code)
        emit_error(e, output_format)
        raise typer.Exit(EXIT_ERROR) from e
    except Exception as e:
        logger.exception("Unexpected error")
        emit_error(AppError(str(e), "INTERNAL_ERROR"), output_format)
        raise typer.Exit(EXIT_ERROR) from e


def emit_json(model: BaseModel) -> None:
    typer.echo(model.model_dump_json(indent=2, exclude_none=True))


# Report assembly


def _optional(value: Any) -> str | None:
    return None if value is None else format_rational(value)


def geometry_payload(geom: GeometryCache) -> GeometryPayload:
    return GeometryPayload(
        connection=geom.conn.gamma.to_nested(),
        riemann=geom.riemann.to_nested(),
        ricci=geom.ricci.to_nested(),
        ricci_operator=geom.ricci_op.to_nested(),
        scalar=format_rational(geom.scalar),
        constant_curvature=_optional(constant_curvature_test(geom.riemann_low, geom.g)),
        einstein_constant=_optional(einstein_test(geom.ricci, geom.g)),
    )


def coefficient_strings(params: TParams) -> list[str]:
    return [format_rational(a) for a in params.coefficients]


def verdict_entry(verdict: SymmetryVerdict) -> VerdictEntry:
    return VerdictEntry(
        preset=verdict.params.label,
        mode=str(verdict.mode),
        passed=verdict.passed,
        coefficients=coefficient_strings(verdict.params),
        defect_max_entry=format_rational(verdict.defect_max_entry),
        witness=list(verdict.witness) if verdict.witness is not None else None,
    )


def conditions_entry(label: str, conditions: TheoremConditions) -> ConditionsEntry:
    return ConditionsEntry(
        preset=label,
        c1=format_rational(conditions.c1),
        c2=format_rational(conditions.c2),
        c3=format_rational(conditions.c3),
        c4=format_rational(conditions.c4),
        c5=format_rational(conditions.c5),
        verdict=str(conditions.verdict),
        thm41_applicable=conditions.thm41_applicable,
    )


def preset_entry(params: TParams, conditions: TheoremConditions) -> PresetEntry:
    return PresetEntry(
        name=params.label,
        dim=params.dim or 0,
        coefficients=coefficient_strings(params),
        conditions=conditions_entry(params.label, conditions),
    )


def build_report(
    outcome: VerificationOutcome, source: str, generated_at: str | None = None
) -> VerificationReport:
    """Assemble the wire report from a verification outcome, in execution order."""
    manifest = outcome.manifest
    epsilon = manifest.pc.eps if manifest.pc is not None else manifest.epsilon
    reference = manifest.reference
    return VerificationReport(
        manifest=manifest.name or source,
        dim=manifest.dim,
        epsilon=_optional(epsilon),
        generated_at=generated_at,
        passed=outcome.passed,
        geometry=geometry_payload(outcome.geometry) if outcome.geometry is not None else None,
        checks=[
            CheckEntry(group=group, id=result.id, status=result.status, witness=result.witness)
            for group, report in outcome.reports
            for result in report.results
        ],
        skipped=[SkippedGroup(group=group, reason=reason) for group, reason in outcome.skipped],
        verdicts=[verdict_entry(v) for v in outcome.verdicts],
        theorem_conditions=[conditions_entry(label, c) for label, c in outcome.conditions],
        reference_comparisons=outcome.comparisons,
        reference_discrepancies=outcome.discrepancies,
        reference_notes=list(reference.notes) if reference is not None else [],
    )


# Text rendering


def _status(passed: bool) -> str:
    return "[green]PASS[/]" if passed else "[red]FAIL[/]"


def _index(index: Sequence[int]) -> str:
    return "(" + ",".join(str(i) for i in index) + ")"


def format_witness(witness: Witness | None) -> str:
    if witness is None:
        return ""
    parts = []
    if witness.index:
        parts.append(f"at {_index(witness.index)}")
    if witness.expected is not None or witness.actual is not None:
        parts.append(f"expected {witness.expected}, got {witness.actual}")
    if witness.detail:
        parts.append(witness.detail)
    return escape("; ".join(parts))


def render_report_text(report: VerificationReport, console: Console) -> None:
    console.print(f"[bold]{escape(report.manifest)}[/]  dim={report.dim}  epsilon={report.epsilon or '-'}")
    if report.generated_at:
        console.print(f"generated at {report.generated_at}")
    if report.geometry is not None:
        console.print(f"scalar curvature r = {report.geometry.scalar}")

    groups: dict[str, list[CheckEntry]] = {}
    for entry in report.checks:
        groups.setdefault(entry.group, []).append(entry)
    for group, entries in groups.items():
        table = Table(title=group, box=box.SIMPLE, title_justify="left")
        table.add_column("check")
        table.add_column("status")
        table.add_column("witness")
        for entry in entries:
            table.add_row(entry.id, _status(entry.status is CheckStatus.PASS), format_witness(entry.witness))
        console.print(table)

    for skipped in report.skipped:
        console.print(f"[yellow]skipped[/] {skipped.group}: {escape(skipped.reason)}")

    if report.verdicts:
        table = Table(title="phi-T-symmetry", box=box.SIMPLE, title_justify="left")
        for column in ("preset", "mode", "result", "max |defect|", "witness"):
            table.add_column(column)
        for v in report.verdicts:
            witness = _index(v.witness) if v.witness else ""
            table.add_row(v.preset, v.mode, _status(v.passed), v.defect_max_entry, witness)
        console.print(table)

    if report.theorem_conditions:
        render_conditions_text(report.theorem_conditions, console)

    if report.reference_comparisons:
        table = Table(title="reference values", box=box.SIMPLE, title_justify="left")
        for column in ("quantity", "index", "reference", "derived", ""):
            table.add_column(column)
        for c in report.reference_comparisons:
            mark = "agrees" if c.agrees else "[yellow]differs[/]"
            table.add_row(c.quantity, _index(c.index) if c.index else "", c.reference, c.derived, mark)
        console.print(table)
        for note in report.reference_notes:
            console.print(f"note: {escape(note)}")
        console.print(
            f"{len(report.reference_discrepancies)} of {len(report.reference_comparisons)} "
            "reference values differ from the derived geometry"
        )

    console.print(f"[bold]{'PASS' if report.passed else 'FAIL'}[/]")


def render_conditions_text(entries: Sequence[ConditionsEntry], console: Console) -> None:
    table = Table(title="theorem conditions", box=box.SIMPLE, title_justify="left")
    for column in ("preset", "c1", "c2", "c3", "c4", "c5", "verdict", "c3..c5 not all zero"):
        table.add_column(column)
    for e in entries:
        table.add_row(e.preset, e.c1, e.c2, e.c3, e.c4, e.c5, e.verdict, "yes" if e.thm41_applicable else "no")
    console.print(table)


def render_presets_text(entries: Sequence[PresetEntry], console: Console) -> None:
    table = Table(title=f"presets (dim {entries[0].dim})" if entries else "presets", box=box.SIMPLE)
    table.add_column("preset")
    for i in range(8):
        table.add_column(f"a{i}")
    for entry in entries:
        table.add_row(entry.name, *entry.coefficients)
    console.print(table)
    render_conditions_text([entry.conditions for entry in entries], console)


def _nonzero_rows(t: Tensor) -> list[tuple[str, str]]:
    return [(_index(tuple(i + 1 for i in index)), format_rational(v)) for index, v in t.nonzero_items()]


def render_geometry_text(name: str, geom: GeometryCache, payload: GeometryPayload, console: Console) -> None:
    """Nonzero components of the derived geometry, 1-based."""
    console.print(f"[bold]{escape(name)}[/]  dim={geom.dim}")
    sections = (
        ("connection Gamma[k,i,j]: nabla_{e_i} e_j = sum_k Gamma e_k", geom.conn.gamma),
        ("curvature R[l,i,j,k]: R(e_i,e_j)e_k = sum_l R e_l", geom.riemann),
        ("Ricci tensor S[i,j]", geom.ricci),
        ("Ricci operator Q[i,j]", geom.ricci_op),
    )
    for title, tensor in sections:
        table = Table(title=escape(title), box=box.SIMPLE, title_justify="left")
        table.add_column("index")
        table.add_column("value")
        for index, value in _nonzero_rows(tensor):
            table.add_row(index, value)
        if tensor.is_zero():
            table.add_row("all", "0")
        console.print(table)

    console.print(f"scalar curvature r = {payload.scalar}")
    if payload.constant_curvature is not None:
        console.print(f"constant curvature c = {payload.constant_curvature}")
    if payload.einstein_constant is not None:
        console.print(f"Einstein constant lambda = {payload.einstein_constant}")
