"""Unit tests for the paracontact structure and its identities."""

import pytest

from para_sasakian_verifier.core.exceptions import (
    AdaptedFrameError,
    DimensionError,
    PreconditionError,
    UsageError,
)
from para_sasakian_verifier.models.geometry import FrameSpec, GeometryCache, ParacontactSpec
from para_sasakian_verifier.models.manifest import Manifest
from para_sasakian_verifier.models.tensor import DOWN, UP, Rational, Tensor
from para_sasakian_verifier.services.curvature_service import build_geometry
from para_sasakian_verifier.services.paracontact_service import (
    dim3_formula_suite,
    horizontal_indices,
    identity_suite,
    phi_square_apply,
    phi_squared,
    structure_consequence_suite,
    validate_eps_ps,
    validate_paracontact,
)

IDENTITY_CHECKS = [
    "curvature-xi",
    "curvature-xi-first",
    "curvature-xi-x-xi",
    "curvature-lowered-xi",
    "eta-of-curvature",
    "ricci-xi",
    "ricci-operator-xi",
    "ricci-xi-xi",
    "ricci-phi-phi",
    "nabla-xi",
]

FLAT_STRUCTURE = ParacontactSpec.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]], [0, 0, 1], [0, 0, 1], 1)


class TestAxioms:
    """Tests for validate_paracontact and validate_eps_ps."""

    def test_e3_axioms(self, e3_frame: FrameSpec, e3_structure: ParacontactSpec) -> None:
        """Test the example satisfies every almost paracontact axiom."""
        report = validate_paracontact(e3_frame, e3_structure)
        assert report.passed
        assert len(report.results) == 8

    def test_e3_is_eps_para_sasakian(
        self, e3_frame: FrameSpec, e3_structure: ParacontactSpec, e3_geometry: GeometryCache
    ) -> None:
        """Test the defining condition and nabla xi = eps phi hold exactly."""
        report = validate_eps_ps(e3_frame, e3_structure, e3_geometry)
        assert report.passed
        assert [r.id for r in report.results] == ["eps-para-sasakian", "nabla-xi"]

    def test_phi_squared(self, e3_structure: ParacontactSpec) -> None:
        """Test phi^2 = I - eta (x) xi on the example."""
        expected = Tensor.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]], (UP, DOWN))
        assert phi_squared(e3_structure) == expected

    def test_broken_phi_fails_with_witness(self, e3_frame: FrameSpec, e3_structure: ParacontactSpec) -> None:
        """Test a perturbed phi fails phi^2 with the first broken entry."""
        rows = e3_structure.phi_rows()
        rows[0][1] = Rational(1)
        broken = ParacontactSpec.from_rows(rows, e3_structure.xi.entries, e3_structure.eta.entries, e3_structure.eps)
        report = validate_paracontact(e3_frame, broken)
        result = report.get("phi-squared")
        assert not result.passed
        assert result.witness is not None
        assert result.witness.index == (2, 1)

    def test_eps_ps_refused_on_broken_axioms(
        self, e3_frame: FrameSpec, e3_geometry: GeometryCache, e3_structure: ParacontactSpec
    ) -> None:
        """Test the defining condition is not evaluated when the axioms fail."""
        broken = ParacontactSpec.from_rows(
            e3_structure.phi_rows(), [0, 0, 2], e3_structure.eta.entries, e3_structure.eps
        )
        with pytest.raises(PreconditionError) as excinfo:
            validate_eps_ps(e3_frame, broken, e3_geometry)
        assert excinfo.value.report is not None
        assert not excinfo.value.report.passed

    def test_flat_frame_is_not_eps_para_sasakian(self, abelian: Manifest) -> None:
        """Test the axioms hold on the flat frame but the defining condition fails."""
        geom = build_geometry(abelian.frame)
        assert validate_paracontact(abelian.frame, FLAT_STRUCTURE).passed
        report = validate_eps_ps(abelian.frame, FLAT_STRUCTURE, geom)
        assert not report.get("eps-para-sasakian").passed
        assert not report.get("nabla-xi").passed


class TestHorizontal:
    """Tests for horizontal_indices."""

    def test_adapted(self, e3_frame: FrameSpec, e3_structure: ParacontactSpec) -> None:
        """Test e1 and e2 are horizontal on the example."""
        assert horizontal_indices(e3_frame, e3_structure) == (0, 1)

    def test_adapted_dimension_four(self) -> None:
        """Test xi = e4 leaves e1, e2 and e3 horizontal."""
        spec = FrameSpec.from_brackets([[1 if i == j else 0 for j in range(4)] for i in range(4)], {})
        pc = ParacontactSpec.from_rows(
            [[1 if i == j and i < 3 else 0 for j in range(4)] for i in range(4)],
            [0, 0, 0, 1],
            [0, 0, 0, 1],
            1,
        )
        assert horizontal_indices(spec, pc) == (0, 1, 2)

    def test_not_adapted(self, e3_frame: FrameSpec) -> None:
        """Test xi off the frame vectors is refused."""
        pc = ParacontactSpec.from_rows([[0, 0, 0]] * 3, [1, 0, 1], [0, 0, 1], 1)
        with pytest.raises(AdaptedFrameError):
            horizontal_indices(e3_frame, pc)

    def test_phi_square_apply_needs_one_up_slot(self, e3_structure: ParacontactSpec) -> None:
        """Test phi^2 is applied only to vector-valued tensors."""
        with pytest.raises(UsageError):
            phi_square_apply(Tensor.zeros(3, (UP, UP)), e3_structure)


class TestIdentitySuites:
    """Tests for the identity, consequence and dimension-3 suites."""

    def test_identity_suite(
        self, e3_frame: FrameSpec, e3_structure: ParacontactSpec, e3_geometry: GeometryCache, eps: Rational
    ) -> None:
        """Test all ten identities, with S(xi, xi) = -2 and Q xi = -2 eps xi."""
        report = identity_suite(e3_frame, e3_structure, e3_geometry)
        assert report.passed
        assert [r.id for r in report.results] == IDENTITY_CHECKS
        assert e3_geometry.ricci[2, 2] == -2
        assert [e3_geometry.ricci_op[l, 2] for l in range(3)] == [0, 0, -2 * eps]

    def test_identity_suite_refused(self, abelian: Manifest) -> None:
        """Test the identities are not asserted on a structure that is not (eps)-para Sasakian."""
        with pytest.raises(PreconditionError):
            identity_suite(abelian.frame, FLAT_STRUCTURE, build_geometry(abelian.frame))

    def test_consequences(
        self, e3_frame: FrameSpec, e3_structure: ParacontactSpec, e3_geometry: GeometryCache
    ) -> None:
        """Test phi^4 = phi^2, nabla eta and the nabla S identities."""
        report = structure_consequence_suite(e3_frame, e3_structure, e3_geometry)
        assert report.passed
        assert len(report.results) == 4

    def test_dim3_formulas(
        self, e3_frame: FrameSpec, e3_structure: ParacontactSpec, e3_geometry: GeometryCache
    ) -> None:
        """Test the dimension-3 closed forms and the constant-curvature criterion."""
        report = dim3_formula_suite(e3_frame, e3_structure, e3_geometry)
        assert report.passed
        assert report.get("constant-curvature-criterion").passed

    def test_dim3_refuses_other_dimensions(self) -> None:
        """Test the dimension-3 suite refuses m = 5."""
        spec = FrameSpec.from_brackets([[1 if i == j else 0 for j in range(5)] for i in range(5)], {})
        pc = ParacontactSpec.from_rows(
            [[1 if i == j and i < 4 else 0 for j in range(5)] for i in range(5)],
            [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1],
            1,
        )
        with pytest.raises(DimensionError):
            dim3_formula_suite(spec, pc, build_geometry(spec))
