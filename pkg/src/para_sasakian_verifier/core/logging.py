"""Logging configuration."""

import logging
import sys

from para_sasakian_verifier.core.exceptions import UsageError


def setup_logging(level: str = "WARNING") -> None:
    """Configure application logging.

    Log records go to stderr so that reports printed on stdout stay
    byte-identical between runs.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR)

    Raises:
        UsageError: unknown level name
    """
    levels = logging.getLevelNamesMapping()
    if level.upper() not in levels:
        raise UsageError(f"unknown log level: {level}")

    logging.basicConfig(
        level=levels[level.upper()],
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    # Reduce noise from markdown-it, pulled in by rich
    logging.getLogger("markdown_it").setLevel(logging.WARNING)
