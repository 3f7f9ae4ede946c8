"""Verification driver: runs the check groups for one manifest in a fixed order."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from para_sasakian_verifier.config import Settings
from para_sasakian_verifier.core.exceptions import UsageError
from para_sasakian_verifier.integrations.manifest.writer import format_combination
from para_sasakian_verifier.models.geometry import GeometryCache, TParams
from para_sasakian_verifier.models.manifest import Manifest, ReferenceTable
from para_sasakian_verifier.models.reports import CheckReport
from para_sasakian_verifier.models.schemas import ReferenceComparison
from para_sasakian_verifier.models.tensor import Rational, format_rational
from para_sasakian_verifier.services.connection_service import connection_suite
from para_sasakian_verifier.services.curvature_service import (
    build_geometry,
    curvature_symmetry_suite,
    einstein_test,
)
from para_sasakian_verifier.services.frame_service import validate_frame
from para_sasakian_verifier.services.paracontact_service import (
    dim3_formula_suite,
    identity_suite,
    structure_consequence_suite,
    validate_eps_ps,
    validate_paracontact,
)
from para_sasakian_verifier.services.symmetry_service import (
    SymmetryMode,
    SymmetryVerdict,
    TheoremConditions,
    cross_validate_theorems,
    einstein_reduction_check,
    eta_parallel_ricci_check,
    phi_t_symmetry_check,
    sweep_presets,
    theorem_conditions,
    verdict_result,
)
from para_sasakian_verifier.services.t_curvature_service import (
    PRESET_NAMES,
    closed_form_equivalence_check,
    preset,
    resolve_tparams,
    t_curvature_suite,
)

logger = logging.getLogger(__name__)

CHECK_GROUPS: tuple[str, ...] = (
    "frame",
    "connection",
    "curvature",
    "paracontact",
    "identities",
    "consequences",
    "dim3",
    "tcurvature",
    "symmetry",
    "eta-parallel",
    "theorems",
)

# Groups that need a valid (eps)-para Sasakian structure.
STRUCTURE_GROUPS = ("identities", "consequences", "dim3", "symmetry", "eta-parallel", "theorems")


@dataclass
class VerificationOutcome:
    """Everything ``verify`` found for one manifest, in execution order."""

    manifest: Manifest
    geometry: GeometryCache | None = None
    reports: list[tuple[str, CheckReport]] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)
    verdicts: list[SymmetryVerdict] = field(default_factory=list)
    conditions: list[tuple[str, TheoremConditions]] = field(default_factory=list)
    comparisons: list[ReferenceComparison] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.passed for _, report in self.reports)

    @property
    def discrepancies(self) -> list[ReferenceComparison]:
        return [c for c in self.comparisons if not c.agrees]


def parse_check_groups(text: str | None) -> tuple[str, ...]:
    """Comma list of group names, returned in execution order.

    Raises:
        UsageError: an unknown group name
    """
    if text is None:
        return CHECK_GROUPS
    names = {name.strip() for name in text.split(",") if name.strip()}
    unknown = sorted(names - set(CHECK_GROUPS))
    if unknown:
        raise UsageError(
            f"unknown check group(s): {', '.join(unknown)}; choose from {', '.join(CHECK_GROUPS)}"
        )
    if not names:
        raise UsageError("no check groups selected")
    return tuple(group for group in CHECK_GROUPS if group in names)


def _vector(values: Sequence[Rational]) -> str:
    return format_combination({k + 1: v for k, v in enumerate(values)}) or "0"


def compare_reference(reference: ReferenceTable, geom: GeometryCache) -> list[ReferenceComparison]:
    """Published values against derived ones, in a fixed quantity and index order."""
    m = geom.dim
    comparisons: list[ReferenceComparison] = []

    def add(quantity: str, index: tuple[int, ...], published: str, derived: str) -> None:
        comparisons.append(
            ReferenceComparison(
                quantity=quantity,
                index=list(index),
                reference=published,
                derived=derived,
                agrees=published == derived,
            )
        )

    if reference.scalar is not None:
        add("scalar", (), format_rational(reference.scalar), format_rational(geom.scalar))
    for (i, j), value in sorted(reference.ricci.items()):
        add("ricci", (i, j), format_rational(value), format_rational(geom.ricci[i - 1, j - 1]))
    for (i, j), vector in sorted(reference.connection.items()):
        published = _vector([vector.get(k + 1, Rational(0)) for k in range(m)])
        derived = _vector([geom.conn.gamma[k, i - 1, j - 1] for k in range(m)])
        add("connection", (i, j), published, derived)
    for (i, j, k), vector in sorted(reference.curvature.items()):
        published = _vector([vector.get(l + 1, Rational(0)) for l in range(m)])
        derived = _vector([geom.riemann[l, i - 1, j - 1, k - 1] for l in range(m)])
        add("curvature", (i, j, k), published, derived)
    return comparisons


class VerificationService:
    """Runs the selected check groups against a manifest.

    Gating: a frame failure stops derivation; a paracontact or (eps)-para
    Sasakian failure skips every group that needs the structure. Skipped
    groups never count as failures.
    """

    def __init__(self, settings: Settings):
        self.settings = settings

    def coefficient_vectors(self, manifest: Manifest, params: TParams | None) -> list[TParams]:
        """Vectors to judge: the given ones, the manifest's, or every preset."""
        if params is not None:
            return [params]
        if manifest.tparams is not None:
            return [resolve_tparams(manifest.tparams, manifest.dim)]
        return [preset(name, manifest.dim) for name in PRESET_NAMES]

    async def verify(
        self,
        manifest: Manifest,
        params: TParams | None = None,
        modes: Sequence[SymmetryMode] = (SymmetryMode.LOCAL, SymmetryMode.GLOBAL),
        groups: Sequence[str] = CHECK_GROUPS,
    ) -> VerificationOutcome:
        """Verify one manifest.

        Raises:
            AppError: usage, dimension or precondition errors outside the gating rules
        """
        outcome = VerificationOutcome(manifest=manifest)
        selected = [g for g in CHECK_GROUPS if g in groups]
        spec, pc, m = manifest.frame, manifest.pc, manifest.dim

        def run(group: str, report: CheckReport) -> None:
            outcome.reports.append((group, report))

        def skip(names: Sequence[str], reason: str) -> None:
            outcome.skipped.extend((group, reason) for group in names if group in selected)

        frame = validate_frame(spec)
        if "frame" in selected or not frame.passed:
            run("frame", frame)
        if not frame.passed:
            skip(CHECK_GROUPS[1:], "frame validation failed")
            return outcome

        geom = build_geometry(spec)
        outcome.geometry = geom
        if "connection" in selected:
            run("connection", connection_suite(spec, geom.conn))
        if "curvature" in selected:
            run("curvature", curvature_symmetry_suite(geom, spec))
        if manifest.reference is not None:
            outcome.comparisons = compare_reference(manifest.reference, geom)
            logger.info(
                "Reference comparison: %d values, %d disagree",
                len(outcome.comparisons),
                len(outcome.discrepancies),
            )

        if pc is None:
            skip(("paracontact", "identities", "consequences", "dim3"), "no paracontact structure")
            self._run_tcurvature(outcome, selected, params, structure_ok=False)
            skip(("symmetry", "eta-parallel", "theorems"), "no paracontact structure")
            return outcome

        structure = [validate_paracontact(spec, pc)]
        if structure[0].passed:
            structure.append(validate_eps_ps(spec, pc, geom))
            reason = "structure is not (eps)-para Sasakian"
        else:
            reason = "paracontact axioms failed"
        structure_ok = all(report.passed for report in structure)
        if "paracontact" in selected or (not structure_ok and any(g in selected for g in STRUCTURE_GROUPS)):
            for report in structure:
                run("paracontact", report)

        if not structure_ok:
            skip(("identities", "consequences", "dim3"), reason)
            self._run_tcurvature(outcome, selected, params, structure_ok=False)
            skip(("symmetry", "eta-parallel", "theorems"), reason)
            return outcome

        if "identities" in selected:
            run("identities", identity_suite(spec, pc, geom))
        if "consequences" in selected:
            run("consequences", structure_consequence_suite(spec, pc, geom))
        if m != 3:
            skip(("dim3",), "dimension is not 3")
        elif "dim3" in selected:
            run("dim3", dim3_formula_suite(spec, pc, geom))

        if not self._run_tcurvature(outcome, selected, params, structure_ok=True):
            skip(("symmetry", "eta-parallel", "theorems"), "presets need dimension at least 3")
            return outcome

        vectors = self.coefficient_vectors(manifest, params)
        if "symmetry" in selected:
            symmetry = CheckReport(name="symmetry")
            for mode in modes:
                if len(vectors) == 1:
                    verdicts = [phi_t_symmetry_check(spec, pc, geom, vectors[0], mode)]
                else:
                    verdicts = await sweep_presets(spec, pc, geom, mode, self.settings.concurrent_sweep)
                outcome.verdicts.extend(verdicts)
                symmetry.extend(verdict_result(v) for v in verdicts)
            run("symmetry", symmetry)

        if "eta-parallel" in selected:
            run("eta-parallel", eta_parallel_ricci_check(spec, pc, geom))

        if "theorems" in selected:
            outcome.conditions = [(v.label, theorem_conditions(v, m)) for v in vectors]
            if m == 3:
                theorems = CheckReport(name="theorems")
                for vector in vectors:
                    theorems.extend(cross_validate_theorems(spec, pc, geom, vector).results)
                run("theorems", theorems)
            if einstein_test(geom.ricci, spec.g) is not None:
                run(
                    "theorems",
                    einstein_reduction_check(
                        spec, pc, geom, self.settings.einstein_sample_count, self.settings.random_seed
                    ),
                )

        logger.info(
            "Verified %s: %d reports, %d groups skipped, %s",
            manifest.name or "<unnamed>",
            len(outcome.reports),
            len(outcome.skipped),
            "PASS" if outcome.passed else "FAIL",
        )
        return outcome

    def _run_tcurvature(
        self,
        outcome: VerificationOutcome,
        selected: Sequence[str],
        params: TParams | None,
        structure_ok: bool,
    ) -> bool:
        """The T-curvature group; False when the dimension admits no presets."""
        manifest, geom = outcome.manifest, outcome.geometry
        if geom is None:
            raise UsageError("T-curvature checks need a derived geometry")
        if manifest.dim < 3:
            if "tcurvature" in selected:
                outcome.skipped.append(("tcurvature", "presets need dimension at least 3"))
            return False
        if "tcurvature" not in selected:
            return True

        vectors = self.coefficient_vectors(manifest, params)
        outcome.reports.append(("tcurvature", t_curvature_suite(geom, vectors[0] if len(vectors) == 1 else None)))
        if structure_ok and manifest.pc is not None and manifest.dim == 3:
            outcome.reports.append(
                (
                    "tcurvature",
                    closed_form_equivalence_check(
                        manifest.frame,
                        manifest.pc,
                        geom,
                        self.settings.random_param_count,
                        self.settings.random_seed,
                    ),
                )
            )
        return True
