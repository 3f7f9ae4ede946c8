"""Levi-Civita connection of a homogeneous frame.

With a frame-constant metric the derivative terms of the Koszul formula
vanish and it reduces to

    2 g(nabla_X Y, Z) = -g(X, [Y, Z]) - g(Y, [X, Z]) + g(Z, [X, Y]).
"""

import logging
from itertools import product

from sympy import Matrix, Rational

from para_sasakian_verifier.core.exceptions import PreconditionError, UsageError
from para_sasakian_verifier.models.geometry import Connection, FrameSpec
from para_sasakian_verifier.models.reports import CheckReport, check_zero
from para_sasakian_verifier.models.tensor import DOWN, UP, ZERO, Index, Tensor
from para_sasakian_verifier.services.frame_service import validate_frame

logger = logging.getLogger(__name__)

HALF = Rational(1, 2)


def _koszul_rhs(spec: FrameSpec, i: int, j: int, k: int) -> Rational:
    """2 g(nabla_{e_i} e_j, e_k) from the bracket terms alone."""
    c, g, m = spec.c, spec.g, spec.m
    total = ZERO
    for l in range(m):
        total += -c[l, j, k] * g[i, l] - c[l, i, k] * g[j, l] + c[l, i, j] * g[l, k]
    return total


def koszul_connection(spec: FrameSpec) -> Connection:
    """Solve the Koszul system for Gamma^k_ij, one linear system per (i, j).

    Raises:
        PreconditionError: the frame fails validation (report attached)
    """
    report = validate_frame(spec)
    if not report.passed:
        raise PreconditionError("frame failed validation; no connection derived", report)

    m = spec.m
    metric = spec.g.to_matrix()
    solved: dict[Index, Rational] = {}
    for i, j in product(range(m), repeat=2):
        rhs = Matrix([HALF * _koszul_rhs(spec, i, j, k) for k in range(m)])
        solution, _ = metric.gauss_jordan_solve(rhs)
        for l in range(m):
            solved[(l, i, j)] = solution[l]

    logger.debug("Derived Levi-Civita connection for dim %d", m)
    return Connection(Tensor.from_function(m, (UP, DOWN, DOWN), lambda lij: solved[lij]))


def _check_shapes(spec: FrameSpec, conn: Connection) -> None:
    if conn.dim != spec.m:
        raise UsageError(f"connection has dim {conn.dim}, frame has dim {spec.m}")


def torsion_defect(spec: FrameSpec, conn: Connection) -> Tensor:
    """T^k_ij = Gamma^k_ij - Gamma^k_ji - c^k_ij, stored as [k, i, j]."""
    _check_shapes(spec, conn)
    gamma, c = conn.gamma, spec.c
    return Tensor.from_function(
        spec.m,
        (UP, DOWN, DOWN),
        lambda kij: gamma[kij] - gamma[kij[0], kij[2], kij[1]] - c[kij],
    )


def metricity_defect(spec: FrameSpec, conn: Connection) -> Tensor:
    """M_kij = sum_l (Gamma^l_ki g_lj + Gamma^l_kj g_il); zero iff nabla g = 0."""
    _check_shapes(spec, conn)
    gamma, g, m = conn.gamma, spec.g, spec.m

    def component(kij: Index) -> Rational:
        k, i, j = kij
        return sum(
            (gamma[l, k, i] * g[l, j] + gamma[l, k, j] * g[i, l] for l in range(m)),
            start=ZERO,
        )

    return Tensor.from_function(m, (DOWN, DOWN, DOWN), component)


def connection_suite(spec: FrameSpec, conn: Connection) -> CheckReport:
    report = CheckReport(name="connection")
    report.add(check_zero("torsion-free", torsion_defect(spec, conn), "T^k_ij"))
    report.add(check_zero("metric-compatible", metricity_defect(spec, conn), "(nabla_k g)_ij"))
    logger.info(report.summary())
    return report
