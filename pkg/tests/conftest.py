"""Pytest configuration and fixtures."""

import pytest

from para_sasakian_verifier.config import BUNDLED_CATALOG, Settings
from para_sasakian_verifier.integrations.manifest import ManifestCatalog
from para_sasakian_verifier.models.geometry import FrameSpec, GeometryCache, ParacontactSpec
from para_sasakian_verifier.models.manifest import Manifest
from para_sasakian_verifier.models.tensor import Rational
from para_sasakian_verifier.services.curvature_service import build_geometry


@pytest.fixture
def settings() -> Settings:
    """Create test settings with small sample counts."""
    return Settings(
        log_level="WARNING",
        random_param_count=100,
        einstein_sample_count=5,
        concurrent_sweep=True,
    )


@pytest.fixture(scope="session")
def catalog() -> ManifestCatalog:
    """The bundled manifest catalog."""
    return ManifestCatalog(BUNDLED_CATALOG)


@pytest.fixture(scope="session", params=["e3_plus", "e3_minus"])
def e3_manifest(request: pytest.FixtureRequest, catalog: ManifestCatalog) -> Manifest:
    """The three-dimensional example, once per epsilon."""
    return catalog.load(request.param)


@pytest.fixture(scope="session")
def e3_frame(e3_manifest: Manifest) -> FrameSpec:
    return e3_manifest.frame


@pytest.fixture(scope="session")
def e3_structure(e3_manifest: Manifest) -> ParacontactSpec:
    assert e3_manifest.pc is not None
    return e3_manifest.pc


@pytest.fixture(scope="session")
def e3_geometry(e3_frame: FrameSpec) -> GeometryCache:
    return build_geometry(e3_frame)


@pytest.fixture(scope="session")
def eps(e3_structure: ParacontactSpec) -> Rational:
    return e3_structure.eps


@pytest.fixture(scope="session")
def heisenberg(catalog: ManifestCatalog) -> Manifest:
    return catalog.load("heisenberg")


@pytest.fixture(scope="session")
def abelian(catalog: ManifestCatalog) -> Manifest:
    return catalog.load("abelian_flat")


@pytest.fixture(scope="session")
def broken_jacobi(catalog: ManifestCatalog) -> Manifest:
    return catalog.load("broken_jacobi")
