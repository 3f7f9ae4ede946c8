"""Check results and reports."""

from __future__ import annotations

from collections.abc import Iterable
from enum import StrEnum

from pydantic import BaseModel, Field, model_validator

from para_sasakian_verifier.core.exceptions import UsageError
from para_sasakian_verifier.models.tensor import Index, Tensor, format_rational


class CheckStatus(StrEnum):
    PASS = "PASS"
    FAIL = "FAIL"


class Witness(BaseModel):
    """Counterexample attached to a failed check. Indices are 1-based."""

    index: tuple[int, ...] = Field(default=(), description="Frame index tuple, 1-based")
    expected: str | None = Field(default=None, description="Expected exact value")
    actual: str | None = Field(default=None, description="Value found")
    detail: str | None = None


class CheckResult(BaseModel):
    """A single named check."""

    id: str
    status: CheckStatus
    witness: Witness | None = None

    @model_validator(mode="after")
    def _witness_matches_status(self) -> CheckResult:
        if self.status is CheckStatus.FAIL and self.witness is None:
            raise ValueError(f"failed check {self.id} needs a witness")
        if self.status is CheckStatus.PASS and self.witness is not None:
            raise ValueError(f"passing check {self.id} cannot carry a witness")
        return self

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    @classmethod
    def ok(cls, check_id: str) -> CheckResult:
        return cls(id=check_id, status=CheckStatus.PASS)

    @classmethod
    def fail(cls, check_id: str, witness: Witness) -> CheckResult:
        return cls(id=check_id, status=CheckStatus.FAIL, witness=witness)

    @classmethod
    def from_condition(cls, check_id: str, holds: bool, witness: Witness) -> CheckResult:
        return cls.ok(check_id) if holds else cls.fail(check_id, witness)


class CheckReport(BaseModel):
    """Ordered list of checks, in declaration order."""

    name: str
    results: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [result for result in self.results if not result.passed]

    def add(self, result: CheckResult) -> None:
        self.results.append(result)

    def extend(self, results: Iterable[CheckResult]) -> None:
        self.results.extend(results)

    def get(self, check_id: str) -> CheckResult:
        for result in self.results:
            if result.id == check_id:
                return result
        raise KeyError(check_id)

    def summary(self) -> str:
        passed = sum(1 for result in self.results if result.passed)
        return f"{self.name}: {passed}/{len(self.results)} passed"


def one_based(index: Index) -> tuple[int, ...]:
    return tuple(i + 1 for i in index)


def first_mismatch(expected: Tensor, actual: Tensor) -> Witness | None:
    """Witness for the lexicographically first differing entry, if any."""
    for (index, want), got in zip(expected.items(), actual.entries, strict=True):
        if want != got:
            return Witness(
                index=one_based(index),
                expected=format_rational(want),
                actual=format_rational(got),
            )
    return None


def check_equal(check_id: str, expected: Tensor, actual: Tensor, detail: str | None = None) -> CheckResult:
    """PASS iff the two tensors agree entry for entry."""
    if expected.dim != actual.dim or expected.valence != actual.valence:
        raise UsageError(f"{check_id}: compared tensors differ in shape")
    witness = first_mismatch(expected, actual)
    if witness is None:
        return CheckResult.ok(check_id)
    if detail is not None:
        witness = witness.model_copy(update={"detail": detail})
    return CheckResult.fail(check_id, witness)


def check_zero(check_id: str, defect: Tensor, detail: str | None = None) -> CheckResult:
    """PASS iff the defect tensor vanishes identically."""
    return check_equal(check_id, Tensor.zeros(defect.dim, defect.valence), defect, detail)
