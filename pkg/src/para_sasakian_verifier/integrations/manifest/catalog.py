"""Manifest lookup on disk and in the bundled catalog."""

import logging
from pathlib import Path

from para_sasakian_verifier.core.exceptions import ManifestParseError, UsageError
from para_sasakian_verifier.integrations.manifest.parser import parse_manifest
from para_sasakian_verifier.models.manifest import Manifest

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = ".manifest"


class ManifestCatalog:
    """Resolves manifest references to files.

    A reference is tried as a path first, then as a file name in the
    catalog directory, with and without the ``.manifest`` suffix.
    """

    def __init__(self, catalog_dir: Path):
        self.catalog_dir = catalog_dir

    def names(self) -> list[str]:
        """Bundled manifest file names, sorted."""
        if not self.catalog_dir.is_dir():
            return []
        return sorted(p.name for p in self.catalog_dir.glob(f"*{MANIFEST_SUFFIX}"))

    def resolve(self, reference: str | Path) -> Path:
        """Locate a manifest file.

        Raises:
            UsageError: nothing matches the reference
        """
        candidates = [Path(reference)]
        name = Path(reference).name
        candidates.append(self.catalog_dir / name)
        if not name.endswith(MANIFEST_SUFFIX):
            candidates.append(self.catalog_dir / f"{name}{MANIFEST_SUFFIX}")
        for candidate in candidates:
            if candidate.is_file():
                logger.debug("Resolved manifest %s -> %s", reference, candidate)
                return candidate
        raise UsageError(f"manifest not found: {reference}", "MANIFEST_NOT_FOUND")

    def load(self, reference: str | Path) -> Manifest:
        """Resolve and parse a manifest.

        Raises:
            UsageError: the manifest cannot be found
            ManifestParseError: the manifest is malformed
        """
        path = self.resolve(reference)
        raw = path.read_bytes()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            line = raw[: e.start].count(b"\n") + 1
            raise ManifestParseError(f"manifest is not valid UTF-8 ({e.reason})", line) from e
        return parse_manifest(text)
