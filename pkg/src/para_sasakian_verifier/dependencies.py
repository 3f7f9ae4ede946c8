"""Application state shared by the CLI commands."""

import logging
from dataclasses import dataclass

import typer
from rich.console import Console

from para_sasakian_verifier.config import Settings, get_settings
from para_sasakian_verifier.integrations.manifest import ManifestCatalog
from para_sasakian_verifier.services.verification_service import VerificationService

logger = logging.getLogger(__name__)


@dataclass
class AppState:
    """Application state container, stored on the typer context."""

    settings: Settings
    console: Console
    catalog: ManifestCatalog
    verifier: VerificationService

    @classmethod
    def create(cls, settings: Settings) -> "AppState":
        """Build the state for one invocation."""
        state = cls(
            settings=settings,
            console=Console(highlight=False, soft_wrap=True),
            catalog=ManifestCatalog(settings.catalog_dir),
            verifier=VerificationService(settings),
        )
        logger.debug("Application state initialized (catalog %s)", settings.catalog_dir)
        return state


def get_app_state(ctx: typer.Context) -> AppState:
    """Get application state from the root context, creating it if the callback did not run."""
    root = ctx.find_root()
    if not isinstance(root.obj, AppState):
        root.obj = AppState.create(get_settings())
    return root.obj
