"""CLI application entry point."""

import typer

from para_sasakian_verifier import __version__
from para_sasakian_verifier.cli.commands.geometry import geometry
from para_sasakian_verifier.cli.commands.presets import presets
from para_sasakian_verifier.cli.commands.verify import verify
from para_sasakian_verifier.cli.rendering import EXIT_ERROR
from para_sasakian_verifier.config import get_settings
from para_sasakian_verifier.core.exceptions import UsageError
from para_sasakian_verifier.core.logging import setup_logging
from para_sasakian_verifier.dependencies import AppState


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(f"psverify {__version__}")
        raise typer.Exit()


def create_app() -> typer.Typer:
    """Create and configure the typer application."""
    app = typer.Typer(
        name="psverify",
        help="Exact verification of curvature identities on homogeneous (epsilon)-para Sasakian frames",
        no_args_is_help=True,
        pretty_exceptions_enable=False,
    )

    @app.callback()
    def root(
        ctx: typer.Context,
        log_level: str | None = typer.Option(
            None, "--log-level", help="DEBUG, INFO, WARNING or ERROR (default from settings)"
        ),
        version: bool = typer.Option(
            False, "--version", callback=_version_callback, is_eager=True, help="Show the version"
        ),
    ) -> None:
        settings = get_settings()
        try:
            setup_logging(log_level or settings.log_level)
        except UsageError as e:
            typer.echo(f"error: {e.code}: {e.message}", err=True)
            raise typer.Exit(EXIT_ERROR) from e
        ctx.obj = AppState.create(settings)

    app.command("verify")(verify)
    app.command("presets")(presets)
    app.command("geometry")(geometry)

    return app


app = create_app()


if __name__ == "__main__":
    app()
