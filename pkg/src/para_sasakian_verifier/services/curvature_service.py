"""Curvature of a homogeneous frame: R, S, Q, r and covariant derivatives.

Sign convention: R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
All frame components are constant, so covariant derivatives reduce to the
connection-action terms and the directional-derivative terms vanish.
"""

import logging
from itertools import product

from para_sasakian_verifier.core.exceptions import UsageError
from para_sasakian_verifier.models.geometry import Connection, FrameSpec, GeometryCache
from para_sasakian_verifier.models.reports import CheckReport, check_equal, check_zero
from para_sasakian_verifier.models.tensor import (
    DOWN,
    UP,
    ZERO,
    Index,
    Rational,
    Tensor,
    contract,
    lower_index,
    raise_index,
)
from para_sasakian_verifier.services.connection_service import koszul_connection
from para_sasakian_verifier.services.frame_service import metric_inverse

logger = logging.getLogger(__name__)

RIEMANN_VALENCE = (UP, DOWN, DOWN, DOWN)


def riemann(spec: FrameSpec, conn: Connection) -> Tensor:
    """R^l_ijk = sum_p (Gamma^p_jk Gamma^l_ip - Gamma^p_ik Gamma^l_jp - c^p_ij Gamma^l_pk)."""
    gamma, c, m = conn.gamma, spec.c, spec.m

    def component(lijk: Index) -> Rational:
        l, i, j, k = lijk
        total = ZERO
        for p in range(m):
            total += (
                gamma[p, j, k] * gamma[l, i, p]
                - gamma[p, i, k] * gamma[l, j, p]
                - c[p, i, j] * gamma[l, p, k]
            )
        return total

    return Tensor.from_function(m, RIEMANN_VALENCE, component)


def ricci(riemann_tensor: Tensor) -> Tensor:
    """S_jk = sum_i R^i_ijk."""
    if riemann_tensor.valence != RIEMANN_VALENCE:
        raise UsageError("ricci needs a curvature tensor of valence (up, down, down, down)")
    return contract(riemann_tensor, 0, 1)


def scalar(ricci_tensor: Tensor, g_inv: Tensor) -> Rational:
    """r = sum_jk g^jk S_jk."""
    if ricci_tensor.dim != g_inv.dim:
        raise UsageError("ricci tensor and inverse metric differ in dimension")
    return sum(
        (g_inv[j, k] * ricci_tensor[j, k] for j, k in product(range(ricci_tensor.dim), repeat=2)),
        start=ZERO,
    )


def ricci_operator(ricci_tensor: Tensor, g_inv: Tensor) -> Tensor:
    """Q^i_j = sum_k g^ik S_kj, so that g(QX, Y) = S(X, Y)."""
    return raise_index(ricci_tensor, 0, g_inv)


def lowered_riemann(riemann_tensor: Tensor, g: Tensor) -> Tensor:
    """R(e_i, e_j, e_k, e_l) = g(R(e_i, e_j)e_k, e_l), stored as [i, j, k, l]."""
    return lower_index(riemann_tensor, 0, g).permute((1, 2, 3, 0))


def covariant_derivative(t: Tensor, conn: Connection) -> Tensor:
    """nabla t with the derivative direction as a new leading down slot.

    Entry [w, ...]: for each up slot add +Gamma^a_wp t^..p.., for each down
    slot add -Gamma^p_wb t_..p..
    """
    if t.dim != conn.dim:
        raise UsageError(f"tensor has dim {t.dim}, connection has dim {conn.dim}")
    gamma, m = conn.gamma, t.dim

    def component(index: Index) -> Rational:
        w, rest = index[0], list(index[1:])
        total = ZERO
        for slot, kind in enumerate(t.valence):
            a = rest[slot]
            source = list(rest)
            for p in range(m):
                source[slot] = p
                if kind is UP:
                    total += gamma[a, w, p] * t[tuple(source)]
                else:
                    total -= gamma[p, w, a] * t[tuple(source)]
        return total

    return Tensor.from_function(m, (DOWN, *t.valence), component)


def _proportionality(target: Tensor, basis: Tensor) -> Rational | None:
    """The c with target = c * basis exactly, or None."""
    factor: Rational | None = None
    for index, value in basis.items():
        if value != 0:
            factor = target[index] / value
            break
    if factor is None:
        return ZERO if target.is_zero() else None
    return factor if target == basis.scale(factor) else None


def constant_curvature_tensor(g: Tensor) -> Tensor:
    """G(X, Y, Z, W) = g(Y, Z)g(X, W) - g(X, Z)g(Y, W), stored as [i, j, k, l]."""
    return Tensor.from_function(
        g.dim,
        (DOWN, DOWN, DOWN, DOWN),
        lambda ijkl: g[ijkl[1], ijkl[2]] * g[ijkl[0], ijkl[3]]
        - g[ijkl[0], ijkl[2]] * g[ijkl[1], ijkl[3]],
    )


def constant_curvature_test(riemann_low: Tensor, g: Tensor) -> Rational | None:
    """The c with R(X,Y,Z,W) = c(g(Y,Z)g(X,W) - g(X,Z)g(Y,W)), if one exists."""
    return _proportionality(riemann_low, constant_curvature_tensor(g))


def einstein_test(ricci_tensor: Tensor, g: Tensor) -> Rational | None:
    """The lambda with S = lambda g, if one exists."""
    return _proportionality(ricci_tensor, g)


def build_geometry(spec: FrameSpec) -> GeometryCache:
    """Derive the full connection and curvature data of a valid frame.

    Raises:
        PreconditionError: the frame fails validation
    """
    conn = koszul_connection(spec)
    g_inv = metric_inverse(spec.g)
    curvature = riemann(spec, conn)
    ricci_tensor = ricci(curvature)
    geometry = GeometryCache(
        g=spec.g,
        g_inv=g_inv,
        conn=conn,
        riemann=curvature,
        riemann_low=lowered_riemann(curvature, spec.g),
        ricci=ricci_tensor,
        ricci_op=ricci_operator(ricci_tensor, g_inv),
        scalar=scalar(ricci_tensor, g_inv),
    )
    logger.debug("Derived curvature for dim %d: r = %s", spec.m, geometry.scalar)
    return geometry


def curvature_symmetry_suite(geom: GeometryCache, spec: FrameSpec) -> CheckReport:
    """Levi-Civita curvature symmetries, checked entrywise."""
    if geom.dim != spec.m:
        raise UsageError("geometry and frame differ in dimension")
    report = CheckReport(name="curvature")
    r_up, r_low = geom.riemann, geom.riemann_low

    report.add(check_zero("riemann-antisymmetric-xy", r_up + r_up.permute((0, 2, 1, 3))))
    report.add(check_zero("riemann-antisymmetric-zw", r_low + r_low.permute((0, 1, 3, 2))))
    report.add(check_equal("riemann-pair-symmetry", r_low, r_low.permute((2, 3, 0, 1))))
    report.add(
        check_zero(
            "first-bianchi",
            r_up + r_up.permute((0, 2, 3, 1)) + r_up.permute((0, 3, 1, 2)),
            "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y",
        )
    )
    report.add(check_equal("ricci-symmetric", geom.ricci, geom.ricci.permute((1, 0))))

    logger.info(report.summary())
    return report
