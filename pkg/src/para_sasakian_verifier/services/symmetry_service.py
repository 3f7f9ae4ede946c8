"""phi-T-symmetry, eta-parallel Ricci tensor and the coefficient classifier.

A manifold is globally phi-T-symmetric when phi^2((nabla_W T)(X, Y)Z) = 0 for
all W, X, Y, Z and locally phi-T-symmetric when this holds for horizontal
W, X, Y, Z. Defects are stored as [w, i, j, k, l]: the e_l component of
phi^2((nabla_{e_w} T)(e_i, e_j)e_k).
"""

import asyncio
import logging
import random
from dataclasses import dataclass
from enum import StrEnum
from itertools import product

from para_sasakian_verifier.core.exceptions import DimensionError, PreconditionError
from para_sasakian_verifier.models.geometry import (
    COEFFICIENT_COUNT,
    FrameSpec,
    GeometryCache,
    ParacontactSpec,
    TParams,
)
from para_sasakian_verifier.models.reports import (
    CheckReport,
    CheckResult,
    Witness,
    check_equal,
    check_zero,
    first_mismatch,
    one_based,
)
from para_sasakian_verifier.models.tensor import (
    DOWN,
    ZERO,
    Index,
    Rational,
    Tensor,
    format_rational,
)
from para_sasakian_verifier.services.curvature_service import covariant_derivative, einstein_test
from para_sasakian_verifier.services.paracontact_service import (
    horizontal_indices,
    phi_square_apply,
    require_eps_ps,
)
from para_sasakian_verifier.services.t_curvature_service import (
    PRESET_NAMES,
    nabla_t,
    preset,
    random_tparams,
    t_tensor,
)

logger = logging.getLogger(__name__)


class SymmetryMode(StrEnum):
    LOCAL = "local"
    GLOBAL = "global"


class TheoremVerdict(StrEnum):
    EINSTEIN_CLASS = "EINSTEIN_CLASS"
    CONSTANT_R_CLASS = "CONSTANT_R_CLASS"
    NO_VERDICT = "NO_VERDICT"


@dataclass(frozen=True)
class SymmetryVerdict:
    """Outcome of one phi-T-symmetry check.

    ``witness`` is the 1-based (w, i, j, k, l) of the first entry of largest
    magnitude among the entries the mode quantifies over.
    """

    mode: SymmetryMode
    params: TParams
    defect_max_entry: Rational
    witness: tuple[int, ...] | None = None

    @property
    def passed(self) -> bool:
        return self.defect_max_entry == 0


@dataclass(frozen=True)
class TheoremConditions:
    """Coefficient conditions deciding which conclusion a phi-T-symmetric manifold admits."""

    c1: Rational
    c2: Rational
    c3: Rational
    c4: Rational
    c5: Rational
    verdict: TheoremVerdict
    thm41_applicable: bool


def symmetry_defect(spec: FrameSpec, pc: ParacontactSpec, geom: GeometryCache, params: TParams) -> Tensor:
    """phi^2 applied to nabla T, entry [w, i, j, k, l]."""
    derivative = nabla_t(t_tensor(params, geom, spec.g), geom.conn)
    # derivative is [w, l, i, j, k]; move l last
    return phi_square_apply(derivative, pc).permute((0, 2, 3, 4, 1))


def _max_entry(defect: Tensor, frame_slots: tuple[int, ...] | None) -> tuple[Rational, tuple[int, ...] | None]:
    """Largest |entry| and its 1-based index, restricting (w, i, j, k) to ``frame_slots`` when given."""
    largest: Rational = ZERO
    witness: Index | None = None
    for index, value in defect.items():
        if frame_slots is not None and any(i not in frame_slots for i in index[:4]):
            continue
        if abs(value) > largest:
            largest, witness = abs(value), index
    return largest, None if witness is None else one_based(witness)


def phi_t_symmetry_check(
    spec: FrameSpec,
    pc: ParacontactSpec,
    geom: GeometryCache,
    params: TParams,
    mode: SymmetryMode,
) -> SymmetryVerdict:
    """Decide local or global phi-T-symmetry for one coefficient vector.

    Raises:
        PreconditionError: the structure is not (eps)-para Sasakian
        AdaptedFrameError: LOCAL mode on a frame not adapted to xi
    """
    require_eps_ps(spec, pc, geom)
    horizontal = horizontal_indices(spec, pc) if mode is SymmetryMode.LOCAL else None
    largest, witness = _max_entry(symmetry_defect(spec, pc, geom, params), horizontal)
    verdict = SymmetryVerdict(mode=mode, params=params, defect_max_entry=largest, witness=witness)
    logger.debug("%s phi-T-symmetry of %s: max defect %s", mode.value, params.label, largest)
    return verdict


def verdict_result(verdict: SymmetryVerdict) -> CheckResult:
    """A symmetry verdict as a report entry."""
    check_id = f"{verdict.mode.value}-phi-t-symmetric:{verdict.params.label}"
    return CheckResult.from_condition(
        check_id,
        verdict.passed,
        Witness(
            index=verdict.witness or (),
            expected="0",
            actual=format_rational(verdict.defect_max_entry),
            detail="max |phi^2 (nabla_W T)(X,Y)Z|",
        ),
    )


def eta_parallel_ricci_check(spec: FrameSpec, pc: ParacontactSpec, geom: GeometryCache) -> CheckReport:
    """(nabla_X S)(phi Y, phi Z) = 0 for all frame vectors, and its consequence for r.

    Raises:
        PreconditionError: the structure is not (eps)-para Sasakian
    """
    require_eps_ps(spec, pc, geom)
    report = CheckReport(name="eta-parallel")
    phi, m = pc.phi, spec.m
    nabla_s = covariant_derivative(geom.ricci, geom.conn)

    def component(wij: Index) -> Rational:
        w, i, j = wij
        return sum(
            (nabla_s[w, a, b] * phi[a, i] * phi[b, j] for a, b in product(range(m), repeat=2)),
            start=ZERO,
        )

    parallel = check_zero(
        "eta-parallel-ricci",
        Tensor.from_function(m, (DOWN, DOWN, DOWN), component),
        "(nabla_X S)(phi Y, phi Z)",
    )
    report.add(parallel)
    if parallel.passed:
        report.add(
            check_zero(
                "eta-parallel-constant-scalar",
                covariant_derivative(Tensor.scalar(m, geom.scalar), geom.conn),
                "nabla r",
            )
        )

    logger.info(report.summary())
    return report


def theorem_conditions(params: TParams, m: int) -> TheoremConditions:
    """Classify a coefficient vector by the conditions on a0..a7.

    Raises:
        DimensionError: m < 3
    """
    if m < 3:
        raise DimensionError(f"theorem conditions need dimension at least 3, got {m}")
    a = params.coefficients
    c1 = a[0] + (m - 1) * a[1] + a[2] + a[6]
    c2 = a[4] + (m - 1) * a[7]
    c3 = a[0] + a[1] + a[4] + 2 * a[7]
    c4 = a[0] - a[2] - a[5] + 2 * a[7]
    c5 = a[3] + a[6]
    if c1 != 0:
        verdict = TheoremVerdict.EINSTEIN_CLASS
    elif c2 != 0:
        verdict = TheoremVerdict.CONSTANT_R_CLASS
    else:
        verdict = TheoremVerdict.NO_VERDICT
    return TheoremConditions(
        c1=c1,
        c2=c2,
        c3=c3,
        c4=c4,
        c5=c5,
        verdict=verdict,
        thm41_applicable=any(c != 0 for c in (c3, c4, c5)),
    )


def cross_validate_theorems(
    spec: FrameSpec, pc: ParacontactSpec, geom: GeometryCache, params: TParams
) -> CheckReport:
    """Consistency between the computed verdicts and what the theorems predict.

    Checks: local symmetry whenever the conditions apply (r is constant on
    every homogeneous frame), the Einstein reduction of the global defect to
    a0 times the Riemann defect, and eta-parallel Ricci implying local symmetry.

    Raises:
        DimensionError: the manifold is not 3-dimensional
        PreconditionError: the structure is not (eps)-para Sasakian
    """
    if spec.m != 3:
        raise DimensionError(f"theorem cross-validation needs m = 3, got {spec.m}")
    require_eps_ps(spec, pc, geom)
    report = CheckReport(name="theorems")
    label = params.label
    local = phi_t_symmetry_check(spec, pc, geom, params, SymmetryMode.LOCAL)

    forced_id = f"constant-scalar-forces-local:{label}"
    if theorem_conditions(params, spec.m).thm41_applicable:
        report.add(verdict_result(local).model_copy(update={"id": forced_id}))
    else:
        report.add(CheckResult.ok(forced_id))

    if einstein_test(geom.ricci, spec.g) is not None:
        riemann_defect = symmetry_defect(spec, pc, geom, preset("riemann", spec.m))
        report.add(
            check_equal(
                f"einstein-reduction:{label}",
                riemann_defect.scale(params.coefficients[0]),
                symmetry_defect(spec, pc, geom, params),
                "global defect = a0 x riemann defect",
            )
        )
    else:
        report.add(CheckResult.ok(f"einstein-reduction:{label}"))

    implied_id = f"eta-parallel-implies-local:{label}"
    if eta_parallel_ricci_check(spec, pc, geom).get("eta-parallel-ricci").passed:
        report.add(verdict_result(local).model_copy(update={"id": implied_id}))
    else:
        report.add(CheckResult.ok(implied_id))

    logger.info(report.summary())
    return report


def einstein_reduction_check(
    spec: FrameSpec, pc: ParacontactSpec, geom: GeometryCache, samples: int, seed: int
) -> CheckReport:
    """Global defects of seeded random vectors against the Riemann and basis defects.

    On an Einstein manifold every defect reduces to a0 times the Riemann
    defect; independently the defect is linear in the coefficients.

    Raises:
        PreconditionError: not (eps)-para Sasakian, or not Einstein
    """
    require_eps_ps(spec, pc, geom)
    if einstein_test(geom.ricci, spec.g) is None:
        raise PreconditionError("Einstein reduction needs S = lambda g")
    report = CheckReport(name="einstein-reduction")
    m = spec.m
    riemann_defect = symmetry_defect(spec, pc, geom, preset("riemann", m))
    basis_defects = [symmetry_defect(spec, pc, geom, TParams.basis(i)) for i in range(COEFFICIENT_COUNT)]

    rng = random.Random(seed)
    reduction = CheckResult.ok("einstein-reduction")
    linearity = CheckResult.ok("defect-linearity")
    for sample in range(samples):
        params = random_tparams(rng, m)
        defect = symmetry_defect(spec, pc, geom, params)
        detail = f"sample {sample + 1}: {params.label}"
        if reduction.passed:
            witness = first_mismatch(riemann_defect.scale(params.coefficients[0]), defect)
            if witness is not None:
                reduction = CheckResult.fail("einstein-reduction", witness.model_copy(update={"detail": detail}))
        if linearity.passed:
            combined = Tensor.zeros(m, defect.valence)
            for coefficient, basis_defect in zip(params.coefficients, basis_defects, strict=True):
                combined = combined + basis_defect.scale(coefficient)
            witness = first_mismatch(combined, defect)
            if witness is not None:
                linearity = CheckResult.fail("defect-linearity", witness.model_copy(update={"detail": detail}))
    report.extend([reduction, linearity])

    logger.info("%s (%d random vectors, seed %d)", report.summary(), samples, seed)
    return report


async def sweep_presets(
    spec: FrameSpec,
    pc: ParacontactSpec,
    geom: GeometryCache,
    mode: SymmetryMode,
    concurrent: bool = True,
) -> list[SymmetryVerdict]:
    """phi-T-symmetry verdicts for every preset at the manifold dimension, in catalog order."""
    params = [preset(name, spec.m) for name in PRESET_NAMES]
    if not concurrent:
        return [phi_t_symmetry_check(spec, pc, geom, p, mode) for p in params]

    tasks = [asyncio.to_thread(phi_t_symmetry_check, spec, pc, geom, p, mode) for p in params]
    verdicts = await asyncio.gather(*tasks)
    logger.debug("Swept %d presets (%s)", len(verdicts), mode.value)
    return list(verdicts)
