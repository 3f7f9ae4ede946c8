"""Pydantic schemas for the JSON report.

Every rational travels as a canonical string ("p/q", "7", "0").
"""

from typing import Any

from pydantic import BaseModel, Field, computed_field

from para_sasakian_verifier.models.reports import CheckStatus, Witness


class CheckEntry(BaseModel):
    """One executed check."""

    group: str = Field(..., description="Check group the check belongs to")
    id: str
    status: CheckStatus
    witness: Witness | None = None


class SkippedGroup(BaseModel):
    """A check group that did not run."""

    group: str
    reason: str


class GeometryPayload(BaseModel):
    """Derived connection and curvature, nested lists of rational strings."""

    connection: Any = Field(..., description="Gamma[k][i][j], nabla_{e_i} e_j = sum_k Gamma^k_ij e_k")
    riemann: Any = Field(..., description="R[l][i][j][k], R(e_i,e_j)e_k = sum_l R^l_ijk e_l")
    ricci: Any
    ricci_operator: Any
    scalar: str
    constant_curvature: str | None = None
    einstein_constant: str | None = None


class VerdictEntry(BaseModel):
    """phi-T-symmetry verdict for one coefficient vector."""

    preset: str
    mode: str
    passed: bool
    coefficients: list[str]
    defect_max_entry: str
    witness: list[int] | None = Field(default=None, description="1-based (w, i, j, k, l)")


class ConditionsEntry(BaseModel):
    """Coefficient conditions of one coefficient vector."""

    preset: str
    c1: str
    c2: str
    c3: str
    c4: str
    c5: str
    verdict: str
    thm41_applicable: bool


class ReferenceComparison(BaseModel):
    """A published value next to the derived one."""

    quantity: str
    index: list[int] = Field(default_factory=list, description="1-based frame indices")
    reference: str
    derived: str
    agrees: bool


class VerificationReport(BaseModel):
    """Top-level JSON report of ``verify``."""

    manifest: str
    dim: int
    epsilon: str | None = None
    generated_at: str | None = None
    passed: bool
    geometry: GeometryPayload | None = None
    checks: list[CheckEntry] = Field(default_factory=list)
    skipped: list[SkippedGroup] = Field(default_factory=list)
    verdicts: list[VerdictEntry] = Field(default_factory=list)
    theorem_conditions: list[ConditionsEntry] = Field(default_factory=list)
    reference_comparisons: list[ReferenceComparison] = Field(default_factory=list)
    reference_discrepancies: list[ReferenceComparison] = Field(default_factory=list)
    reference_notes: list[str] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def paper_discrepancies(self) -> list[ReferenceComparison]:
        """``reference_discrepancies`` under the key of the published report schema."""
        return self.reference_discrepancies


class PresetEntry(BaseModel):
    """One row of the ``presets`` listing."""

    name: str
    dim: int
    coefficients: list[str]
    conditions: ConditionsEntry


class ErrorReport(BaseModel):
    """Error output for usage, parse and precondition errors."""

    error: str
    code: str
    detail: str | None = None
