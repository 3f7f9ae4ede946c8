"""Manifest file format integration package."""

from para_sasakian_verifier.integrations.manifest.catalog import ManifestCatalog
from para_sasakian_verifier.integrations.manifest.parser import parse_manifest
from para_sasakian_verifier.integrations.manifest.writer import serialize_manifest

__all__ = ["ManifestCatalog", "parse_manifest", "serialize_manifest"]
