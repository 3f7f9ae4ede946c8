"""Unit tests for curvature derivation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from para_sasakian_verifier.core.exceptions import PreconditionError, UsageError
from para_sasakian_verifier.models.geometry import FrameSpec, GeometryCache
from para_sasakian_verifier.models.manifest import Manifest
from para_sasakian_verifier.models.tensor import DOWN, UP, Rational, Tensor, contract
from para_sasakian_verifier.services.connection_service import koszul_connection
from para_sasakian_verifier.services.curvature_service import (
    build_geometry,
    constant_curvature_test,
    covariant_derivative,
    curvature_symmetry_suite,
    einstein_test,
    ricci,
)

IDENTITY_4 = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
# ad(e4) is minus the identity on span(e1, e2, e3): real hyperbolic 4-space
HYPERBOLIC_4 = FrameSpec.from_brackets(IDENTITY_4, {(1, 4): {1: 1}, (2, 4): {2: 1}, (3, 4): {3: 1}})
HEISENBERG = FrameSpec.from_brackets([[1, 0, 0], [0, 1, 0], [0, 0, 1]], {(1, 2): {3: 1}})

rationals = st.builds(Rational, st.integers(-9, 9), st.integers(1, 9))


class TestE3Curvature:
    """Tests for the derived curvature of the three-dimensional example."""

    def test_scalar_curvature(self, e3_geometry: GeometryCache, eps: Rational) -> None:
        """Test r = -6 eps."""
        assert e3_geometry.scalar == -6 * eps

    def test_ricci_tensor(self, e3_geometry: GeometryCache, eps: Rational) -> None:
        """Test S = diag(-2 eps, -2 eps, -2)."""
        expected = Tensor.from_rows([[-2 * eps, 0, 0], [0, -2 * eps, 0], [0, 0, -2]], (DOWN, DOWN))
        assert e3_geometry.ricci == expected

    def test_constant_curvature(self, e3_geometry: GeometryCache, eps: Rational) -> None:
        """Test the example has constant curvature -eps."""
        assert constant_curvature_test(e3_geometry.riemann_low, e3_geometry.g) == -eps

    def test_einstein(self, e3_geometry: GeometryCache, eps: Rational) -> None:
        """Test S = -2 eps g."""
        assert einstein_test(e3_geometry.ricci, e3_geometry.g) == -2 * eps

    def test_curvature_table(self, e3_geometry: GeometryCache, eps: Rational) -> None:
        """Test components of R against values derived by hand from the connection."""
        R = e3_geometry.riemann
        # R(e1, e2)e1 = eps e2 and R(e1, e3)xi = -e1
        assert R[1, 0, 1, 0] == eps
        assert R[0, 0, 2, 2] == -1

    def test_parallel_curvature(self, e3_geometry: GeometryCache) -> None:
        """Test nabla R = 0 and nabla g = 0."""
        assert covariant_derivative(e3_geometry.riemann, e3_geometry.conn).is_zero()
        assert covariant_derivative(e3_geometry.g, e3_geometry.conn).is_zero()

    def test_symmetry_suite(self, e3_geometry: GeometryCache, e3_manifest: Manifest) -> None:
        """Test every curvature symmetry holds."""
        report = curvature_symmetry_suite(e3_geometry, e3_manifest.frame)
        assert report.passed
        assert len(report.results) == 5


class TestOtherFrames:
    """Tests on the frame-only catalog entries."""

    def test_heisenberg_scalar(self, heisenberg: Manifest) -> None:
        """Test r = -1/2 on the orthonormal Heisenberg frame."""
        geom = build_geometry(heisenberg.frame)
        assert geom.scalar == Rational(-1, 2)
        assert constant_curvature_test(geom.riemann_low, geom.g) is None
        assert einstein_test(geom.ricci, geom.g) is None
        assert curvature_symmetry_suite(geom, heisenberg.frame).passed

    def test_abelian_flat(self, abelian: Manifest) -> None:
        """Test the abelian frame is flat, with constant curvature 0."""
        geom = build_geometry(abelian.frame)
        assert geom.riemann.is_zero()
        assert constant_curvature_test(geom.riemann_low, geom.g) == 0

    def test_invalid_frame(self, broken_jacobi: Manifest) -> None:
        """Test no geometry is built for an invalid frame."""
        with pytest.raises(PreconditionError):
            build_geometry(broken_jacobi.frame)


class TestFaultInjection:
    """Tests that broken curvature is caught with a witness."""

    def test_ricci_needs_curvature_valence(self) -> None:
        """Test ricci refuses a tensor of the wrong valence."""
        with pytest.raises(UsageError):
            ricci(Tensor.zeros(3, (DOWN, DOWN, DOWN, DOWN)))

    def test_pair_symmetry_witness(self, e3_geometry: GeometryCache, e3_manifest: Manifest) -> None:
        """Test a perturbed lowered curvature breaks pair symmetry at the perturbed index."""
        low = e3_geometry.riemann_low
        bumped = Tensor.from_function(
            3, low.valence, lambda ijkl: low[ijkl] + (1 if ijkl == (0, 1, 0, 2) else 0)
        )
        broken = GeometryCache(
            g=e3_geometry.g,
            g_inv=e3_geometry.g_inv,
            conn=e3_geometry.conn,
            riemann=e3_geometry.riemann,
            riemann_low=bumped,
            ricci=e3_geometry.ricci,
            ricci_op=e3_geometry.ricci_op,
            scalar=e3_geometry.scalar,
        )
        report = curvature_symmetry_suite(broken, e3_manifest.frame)
        pair = report.get("riemann-pair-symmetry")
        assert not pair.passed
        assert pair.witness is not None
        assert pair.witness.index == (1, 2, 1, 3)


class TestCurvatureInvariants:
    """Relations that hold on every frame."""

    def test_constant_curvature_is_einstein(self, e3_geometry: GeometryCache) -> None:
        """Test constant curvature c gives S = c(m-1)g."""
        for geom in (e3_geometry, build_geometry(HYPERBOLIC_4)):
            c = constant_curvature_test(geom.riemann_low, geom.g)
            assert c is not None
            assert einstein_test(geom.ricci, geom.g) == c * (geom.dim - 1)

    def test_hyperbolic_space(self) -> None:
        """Test the four-dimensional hyperbolic frame has c = -1 and lambda = -3."""
        geom = build_geometry(HYPERBOLIC_4)
        assert constant_curvature_test(geom.riemann_low, geom.g) == -1
        assert einstein_test(geom.ricci, geom.g) == -3
        assert geom.scalar == -12

    @given(st.lists(rationals, min_size=27, max_size=27))
    @settings(max_examples=20, deadline=None)
    def test_derivative_commutes_with_contraction(self, entries: list[Rational]) -> None:
        """Test nabla(contract t) = contract(nabla t) on the Heisenberg frame."""
        t = Tensor(3, (UP, DOWN, DOWN), tuple(entries))
        conn = koszul_connection(HEISENBERG)
        assert covariant_derivative(contract(t, 0, 1), conn) == contract(covariant_derivative(t, conn), 1, 2)
