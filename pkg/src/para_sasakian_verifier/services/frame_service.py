"""Frame validation and metric inversion."""

import logging

from para_sasakian_verifier.models.geometry import FrameSpec
from para_sasakian_verifier.models.reports import (
    CheckReport,
    CheckResult,
    Witness,
    check_equal,
    check_zero,
)
from para_sasakian_verifier.models.tensor import (
    DOWN,
    UP,
    ZERO,
    Index,
    Rational,
    Tensor,
    format_rational,
    require_metric,
)

logger = logging.getLogger(__name__)


def metric_inverse(g: Tensor) -> Tensor:
    """Exact inverse of a symmetric nondegenerate (down, down) metric.

    Raises:
        InvalidMetricError: g is asymmetric or singular
    """
    require_metric(g, DOWN)
    return Tensor.from_matrix(g.to_matrix().inv(), (UP, UP))


def jacobi_defect(spec: FrameSpec) -> Tensor:
    """Cyclic sum [[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j].

    Stored argument-first: entry [i, j, k, l] is the e_l component.
    """
    c, m = spec.c, spec.m

    def component(ijkl: Index) -> Rational:
        i, j, k, l = ijkl
        return sum(
            (c[p, i, j] * c[l, p, k] + c[p, j, k] * c[l, p, i] + c[p, k, i] * c[l, p, j]
             for p in range(m)),
            start=ZERO,
        )

    return Tensor.from_function(m, (DOWN, DOWN, DOWN, UP), component)


def validate_frame(spec: FrameSpec) -> CheckReport:
    """Structural checks on a frame: metric symmetry and nondegeneracy,
    bracket antisymmetry and the Jacobi identity.

    Failures are report entries, never exceptions.
    """
    report = CheckReport(name="frame")
    g, c, m = spec.g, spec.c, spec.m

    report.add(check_equal("metric-symmetric", g.permute((1, 0)), g))

    determinant = g.to_matrix().det()
    report.add(
        CheckResult.from_condition(
            "metric-nondegenerate",
            determinant != 0,
            Witness(expected="nonzero", actual=format_rational(determinant), detail="det(g)"),
        )
    )

    # entry [i, j, k] = c^k_ij + c^k_ji
    antisymmetry = Tensor.from_function(
        m, (DOWN, DOWN, UP), lambda ijk: c[ijk[2], ijk[0], ijk[1]] + c[ijk[2], ijk[1], ijk[0]]
    )
    report.add(check_zero("bracket-antisymmetric", antisymmetry, "[e_i,e_j] + [e_j,e_i]"))
    report.add(check_zero("jacobi", jacobi_defect(spec), "cyclic sum of [[e_i,e_j],e_k]"))

    logger.info(report.summary())
    return report
