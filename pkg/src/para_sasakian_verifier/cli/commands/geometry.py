"""``geometry``: print the derived connection and curvature of a manifest."""

import typer

from para_sasakian_verifier.cli.rendering import (
    OutputFormat,
    emit_json,
    error_boundary,
    geometry_payload,
    render_geometry_text,
)
from para_sasakian_verifier.core.exceptions import PreconditionError
from para_sasakian_verifier.dependencies import get_app_state
from para_sasakian_verifier.services.curvature_service import build_geometry
from para_sasakian_verifier.services.frame_service import validate_frame


def geometry(
    ctx: typer.Context,
    manifest: str = typer.Argument(..., help="Manifest file, or the name of a bundled manifest"),
    output_format: OutputFormat | None = typer.Option(
        None, "--format", case_sensitive=False, help="Output format (default from settings)"
    ),
) -> None:
    """
    Print Gamma, R, S, Q and r of the manifest's frame.

    Refused (exit 2) when the frame itself is invalid.
    """
    state = get_app_state(ctx)
    fmt = output_format or OutputFormat(state.settings.output_format)

    with error_boundary(fmt):
        loaded = state.catalog.load(manifest)
        frame = validate_frame(loaded.frame)
        if not frame.passed:
            raise PreconditionError("frame validation failed", frame)
        geom = build_geometry(loaded.frame)
        payload = geometry_payload(geom)
        if fmt is OutputFormat.JSON:
            emit_json(payload)
        else:
            render_geometry_text(loaded.name or manifest, geom, payload, state.console)
