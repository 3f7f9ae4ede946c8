"""Parsed manifest: frame, optional structure, coefficient source and reference values."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from para_sasakian_verifier.core.exceptions import UsageError
from para_sasakian_verifier.models.geometry import (
    COEFFICIENT_COUNT,
    FrameSpec,
    ParacontactSpec,
)
from para_sasakian_verifier.models.tensor import Rational

# Sparse frame vector: 1-based frame index -> coefficient. Zero entries are omitted.
FrameVector = Mapping[int, Rational]


@dataclass(frozen=True)
class TParamsSource:
    """Coefficients as written in ``[tparams]``: a preset name, explicit a0..a7, or both for free families."""

    preset: str | None = None
    coefficients: Mapping[str, Rational] = field(default_factory=dict)

    def __post_init__(self) -> None:
        allowed = {f"a{i}" for i in range(COEFFICIENT_COUNT)}
        unknown = set(self.coefficients) - allowed
        if unknown:
            raise UsageError(f"unknown coefficient keys: {', '.join(sorted(unknown))}")
        if self.preset is None and set(self.coefficients) != allowed:
            missing = sorted(allowed - set(self.coefficients))
            raise UsageError(f"explicit coefficients need all of a0..a7, missing {', '.join(missing)}")
        if self.preset is not None and not set(self.coefficients) <= {"a0", "a1"}:
            raise UsageError("a preset accepts only a0 and a1 as free parameters")


@dataclass(frozen=True)
class ReferenceTable:
    """Published values to compare against derived ones; indices are 1-based."""

    notes: tuple[str, ...] = ()
    scalar: Rational | None = None
    ricci: Mapping[tuple[int, int], Rational] = field(default_factory=dict)
    connection: Mapping[tuple[int, int], FrameVector] = field(default_factory=dict)
    curvature: Mapping[tuple[int, int, int], FrameVector] = field(default_factory=dict)


@dataclass(frozen=True)
class Manifest:
    frame: FrameSpec
    pc: ParacontactSpec | None = None
    tparams: TParamsSource | None = None
    name: str | None = None
    epsilon: Rational | None = None
    comments: tuple[str, ...] = ()
    reference: ReferenceTable | None = None

    def __post_init__(self) -> None:
        if self.pc is not None:
            if self.pc.dim != self.frame.m:
                raise UsageError("structure and frame differ in dimension")
            if self.epsilon is not None and self.epsilon != self.pc.eps:
                raise UsageError("manifold epsilon differs from the structure's epsilon")

    @property
    def dim(self) -> int:
        return self.frame.m
