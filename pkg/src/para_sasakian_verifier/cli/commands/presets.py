"""``presets``: list the curvature catalog at a dimension."""

import typer
from pydantic import TypeAdapter

from para_sasakian_verifier.cli.rendering import (
    OutputFormat,
    error_boundary,
    preset_entry,
    render_presets_text,
)
from para_sasakian_verifier.dependencies import get_app_state
from para_sasakian_verifier.models.schemas import PresetEntry
from para_sasakian_verifier.services.symmetry_service import theorem_conditions
from para_sasakian_verifier.services.t_curvature_service import PRESET_NAMES, preset

PRESET_LIST = TypeAdapter(list[PresetEntry])


def preset_table(m: int) -> list[PresetEntry]:
    """Every preset at dimension m with its coefficient conditions, in catalog order."""
    entries = []
    for name in PRESET_NAMES:
        params = preset(name, m)
        entries.append(preset_entry(params, theorem_conditions(params, m)))
    return entries


def presets(
    ctx: typer.Context,
    dim: int = typer.Option(3, "--dim", "-m", help="Manifold dimension (at least 3)"),
    output_format: OutputFormat | None = typer.Option(
        None, "--format", case_sensitive=False, help="Output format (default from settings)"
    ),
) -> None:
    """
    List the twenty presets with exact coefficients and theorem classification.
    """
    state = get_app_state(ctx)
    fmt = output_format or OutputFormat(state.settings.output_format)

    with error_boundary(fmt):
        entries = preset_table(dim)
        if fmt is OutputFormat.JSON:
            typer.echo(PRESET_LIST.dump_json(entries, indent=2).decode())
        else:
            render_presets_text(entries, state.console)
