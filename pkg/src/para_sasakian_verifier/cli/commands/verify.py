"""``verify``: run the check groups against a manifest."""

import asyncio
import logging
from datetime import UTC, datetime
from enum import StrEnum

import typer

from para_sasakian_verifier.cli.rendering import (
    EXIT_FAIL,
    EXIT_PASS,
    OutputFormat,
    build_report,
    emit_json,
    error_boundary,
    render_report_text,
)
from para_sasakian_verifier.core.exceptions import UsageError
from para_sasakian_verifier.dependencies import get_app_state
from para_sasakian_verifier.models.geometry import COEFFICIENT_COUNT, TParams
from para_sasakian_verifier.models.tensor import Rational, parse_rational
from para_sasakian_verifier.services.symmetry_service import SymmetryMode
from para_sasakian_verifier.services.t_curvature_service import preset
from para_sasakian_verifier.services.verification_service import parse_check_groups

logger = logging.getLogger(__name__)


class ModeChoice(StrEnum):
    LOCAL = "local"
    GLOBAL = "global"
    BOTH = "both"

    @property
    def modes(self) -> tuple[SymmetryMode, ...]:
        if self is ModeChoice.BOTH:
            return (SymmetryMode.LOCAL, SymmetryMode.GLOBAL)
        return (SymmetryMode(self.value),)


def _rational_option(name: str, text: str) -> Rational:
    try:
        return parse_rational(text.strip())
    except ValueError as e:
        raise UsageError(f"{name}: bad rational {text!r}") from e


def parse_params_option(
    m: int,
    preset_name: str | None,
    params: str | None,
    a0: str | None,
    a1: str | None,
) -> TParams | None:
    """Coefficient vector selected on the command line, if any.

    Raises:
        UsageError: conflicting or malformed options
    """
    if preset_name is not None and params is not None:
        raise UsageError("--preset and --params are mutually exclusive")
    if (a0 is not None or a1 is not None) and preset_name is None:
        raise UsageError("--a0/--a1 need --preset")

    if params is not None:
        values = [_rational_option("--params", v) for v in params.split(",")]
        if len(values) != COEFFICIENT_COUNT:
            raise UsageError(f"--params needs {COEFFICIENT_COUNT} values, got {len(values)}")
        return TParams(tuple(values), dim=m)
    if preset_name is not None:
        free0 = _rational_option("--a0", a0) if a0 is not None else None
        free1 = _rational_option("--a1", a1) if a1 is not None else None
        return preset(preset_name.lower(), m, free0, free1)
    return None


def verify(
    ctx: typer.Context,
    manifest: str = typer.Argument(..., help="Manifest file, or the name of a bundled manifest"),
    preset_name: str | None = typer.Option(None, "--preset", help="Judge a single named preset"),
    params: str | None = typer.Option(
        None, "--params", help="Explicit coefficients a0,a1,...,a7 (rationals p/q)"
    ),
    a0: str | None = typer.Option(None, "--a0", help="Free parameter a0 of a free preset family"),
    a1: str | None = typer.Option(None, "--a1", help="Free parameter a1 of a free preset family"),
    mode: ModeChoice = typer.Option(ModeChoice.BOTH, "--mode", case_sensitive=False, help="phi-T-symmetry mode"),
    checks: str | None = typer.Option(
        None, "--checks", help="Comma list of check groups (default: all)"
    ),
    output_format: OutputFormat | None = typer.Option(
        None, "--format", case_sensitive=False, help="Report format (default from settings)"
    ),
    timestamps: bool | None = typer.Option(
        None, "--timestamps/--no-timestamps", help="Stamp the report with the generation time"
    ),
) -> None:
    """
    Verify a manifest: axioms, identities, T-curvature and symmetry verdicts.

    Exit codes: 0 every executed check passed, 1 at least one check failed,
    2 usage, parse or precondition error.

    Examples:
        psverify verify e3_plus.manifest --preset concircular --mode both
        psverify verify e3_minus.manifest --format json
    """
    state = get_app_state(ctx)
    fmt = output_format or OutputFormat(state.settings.output_format)
    stamp = state.settings.timestamps if timestamps is None else timestamps

    with error_boundary(fmt):
        groups = parse_check_groups(checks)
        loaded = state.catalog.load(manifest)
        selected = parse_params_option(loaded.dim, preset_name, params, a0, a1)
        outcome = asyncio.run(state.verifier.verify(loaded, selected, mode.modes, groups))
        generated_at = datetime.now(UTC).isoformat(timespec="seconds") if stamp else None
        report = build_report(outcome, manifest, generated_at)

        if fmt is OutputFormat.JSON:
            emit_json(report)
        else:
            render_report_text(report, state.console)

    code = EXIT_PASS if outcome.passed else EXIT_FAIL
    logger.info("verify %s exited %d", manifest, code)
    raise typer.Exit(code)
