"""The (phi, xi, eta, eps) structure: axioms, the (eps)-para Sasakian condition and its identities.

Index conventions: phi[j, i] = phi^j_i with phi(e_i) = sum_j phi^j_i e_j,
xi[l] = xi^l, eta[i] = eta(e_i). Every check compares two tensors entrywise,
so a failed check carries the first differing frame index tuple.
"""

import logging
from collections.abc import Iterable
from itertools import product

from para_sasakian_verifier.core.exceptions import (
    AdaptedFrameError,
    DimensionError,
    PreconditionError,
    UsageError,
)
from para_sasakian_verifier.models.geometry import FrameSpec, GeometryCache, ParacontactSpec
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
    act_on_slot,
    format_rational,
    kronecker,
)
from para_sasakian_verifier.services.curvature_service import (
    RIEMANN_VALENCE,
    constant_curvature_test,
    covariant_derivative,
)

logger = logging.getLogger(__name__)


def _check_dims(spec: FrameSpec, pc: ParacontactSpec) -> None:
    if pc.dim != spec.m:
        raise DimensionError(f"structure has dimension {pc.dim}, frame has dimension {spec.m}")


def _sum(terms: Iterable[Rational]) -> Rational:
    return sum(terms, start=ZERO)


def phi_squared(pc: ParacontactSpec) -> Tensor:
    """(phi^2)^l_i = sum_p phi^l_p phi^p_i."""
    phi, m = pc.phi, pc.dim
    return Tensor.from_function(
        m, (UP, DOWN), lambda li: _sum(phi[li[0], p] * phi[p, li[1]] for p in range(m))
    )


def phi_square_apply(t: Tensor, pc: ParacontactSpec) -> Tensor:
    """Apply phi^2 to the single up slot of ``t``.

    Raises:
        UsageError: t does not have exactly one up slot
    """
    up_slots = [slot for slot, kind in enumerate(t.valence) if kind is UP]
    if len(up_slots) != 1:
        raise UsageError(f"phi^2 applies to tensors with one up slot, got {len(up_slots)}")
    if t.dim != pc.dim:
        raise DimensionError("tensor and structure differ in dimension")
    return act_on_slot(t, up_slots[0], phi_squared(pc), UP)


def horizontal_indices(spec: FrameSpec, pc: ParacontactSpec) -> tuple[int, ...]:
    """0-based frame indices orthogonal to xi in an adapted frame.

    The frame is adapted when xi is a frame vector e_a and eta(e_i) = 0 for
    every other i.

    Raises:
        AdaptedFrameError: the frame is not adapted to xi
    """
    _check_dims(spec, pc)
    support = [i for i in range(pc.dim) if pc.xi[i] != 0]
    if len(support) != 1 or pc.xi[support[0]] != 1:
        raise AdaptedFrameError(
            "xi must coincide with a single frame vector; got components "
            + " ".join(format_rational(v) for v in pc.xi.entries)
        )
    (a,) = support
    for i in range(pc.dim):
        if i != a and pc.eta[i] != 0:
            raise AdaptedFrameError(f"eta(e_{i + 1}) = {format_rational(pc.eta[i])}, expected 0 off xi")
    return tuple(i for i in range(pc.dim) if i != a)


def validate_paracontact(spec: FrameSpec, pc: ParacontactSpec) -> CheckReport:
    """Almost paracontact metric axioms, one check each."""
    _check_dims(spec, pc)
    report = CheckReport(name="paracontact")
    phi, xi, eta, eps, g, m = pc.phi, pc.xi, pc.eta, pc.eps, spec.g, spec.m

    report.add(
        check_equal(
            "phi-squared",
            Tensor.from_function(m, (UP, DOWN), lambda li: kronecker(li[0], li[1]) - eta[li[1]] * xi[li[0]]),
            phi_squared(pc),
            "phi^2 = I - eta (x) xi",
        )
    )
    report.add(
        check_equal(
            "eta-of-xi",
            Tensor.scalar(m, 1),
            Tensor.scalar(m, _sum(eta[p] * xi[p] for p in range(m))),
            "eta(xi) = 1",
        )
    )
    report.add(
        check_zero(
            "phi-xi",
            Tensor.from_function(m, (UP,), lambda l: _sum(phi[l[0], p] * xi[p] for p in range(m))),
            "phi xi",
        )
    )
    report.add(
        check_zero(
            "eta-phi",
            Tensor.from_function(m, (DOWN,), lambda i: _sum(eta[p] * phi[p, i[0]] for p in range(m))),
            "eta o phi",
        )
    )

    def g_phi_phi(ij: Index) -> Rational:
        i, j = ij
        return _sum(phi[a, i] * phi[b, j] * g[a, b] for a, b in product(range(m), repeat=2))

    report.add(
        check_equal(
            "metric-phi-compatible",
            Tensor.from_function(m, (DOWN, DOWN), lambda ij: g[ij] - eps * eta[ij[0]] * eta[ij[1]]),
            Tensor.from_function(m, (DOWN, DOWN), g_phi_phi),
            "g(phi X, phi Y) = g(X, Y) - eps eta(X) eta(Y)",
        )
    )
    report.add(
        check_equal(
            "phi-symmetric",
            Tensor.from_function(m, (DOWN, DOWN), lambda ij: _sum(phi[a, ij[0]] * g[a, ij[1]] for a in range(m))),
            Tensor.from_function(m, (DOWN, DOWN), lambda ij: _sum(g[ij[0], a] * phi[a, ij[1]] for a in range(m))),
            "g(X, phi Y) = g(phi X, Y)",
        )
    )
    report.add(
        check_equal(
            "metric-xi",
            eta.scale(eps),
            Tensor.from_function(m, (DOWN,), lambda i: _sum(g[i[0], a] * xi[a] for a in range(m))),
            "g(X, xi) = eps eta(X)",
        )
    )
    report.add(
        check_equal(
            "xi-norm",
            Tensor.scalar(m, eps),
            Tensor.scalar(m, _sum(g[a, b] * xi[a] * xi[b] for a, b in product(range(m), repeat=2))),
            "g(xi, xi) = eps",
        )
    )

    logger.info(report.summary())
    return report


def validate_eps_ps(spec: FrameSpec, pc: ParacontactSpec, geom: GeometryCache) -> CheckReport:
    """The (eps)-para Sasakian condition and nabla xi = eps phi.

    Raises:
        PreconditionError: the paracontact axioms fail (report attached)
    """
    axioms = validate_paracontact(spec, pc)
    if not axioms.passed:
        raise PreconditionError("paracontact axioms failed; (eps)-para Sasakian check refused", axioms)

    report = CheckReport(name="eps-para-sasakian")
    phi, xi, eta, eps, g, m = pc.phi, pc.xi, pc.eta, pc.eps, spec.g, spec.m
    phi2 = phi_squared(pc)

    # entry [i, l, j] = component l of (nabla_{e_i} phi) e_j
    nabla_phi = covariant_derivative(phi, geom.conn)

    def defining_rhs(ilj: Index) -> Rational:
        i, l, j = ilj
        g_phi_phi = _sum(phi[a, i] * phi[b, j] * g[a, b] for a, b in product(range(m), repeat=2))
        return -g_phi_phi * xi[l] - eps * eta[j] * phi2[l, i]

    report.add(
        check_equal(
            "eps-para-sasakian",
            Tensor.from_function(m, nabla_phi.valence, defining_rhs),
            nabla_phi,
            "(nabla_X phi)Y = -g(phi X, phi Y) xi - eps eta(Y) phi^2 X",
        )
    )
    report.add(_nabla_xi_check(pc, geom))

    logger.info(report.summary())
    return report


def _nabla_xi_check(pc: ParacontactSpec, geom: GeometryCache) -> CheckResult:
    # entry [w, l] = component l of nabla_{e_w} xi
    return check_equal(
        "nabla-xi",
        pc.phi.permute((1, 0)).scale(pc.eps),
        covariant_derivative(pc.xi, geom.conn),
        "nabla_X xi = eps phi X",
    )


def require_eps_ps(spec: FrameSpec, pc: ParacontactSpec, geom: GeometryCache) -> None:
    """Refuse unless the structure is (eps)-para Sasakian.

    Raises:
        PreconditionError: axioms or the defining condition fail
    """
    report = validate_eps_ps(spec, pc, geom)
    if not report.passed:
        raise PreconditionError("structure is not (eps)-para Sasakian", report)


def identity_suite(spec: FrameSpec, pc: ParacontactSpec, geom: GeometryCache) -> CheckReport:
    """Curvature identities every (eps)-para Sasakian manifold satisfies.

    Raises:
        PreconditionError: the structure is not (eps)-para Sasakian
    """
    require_eps_ps(spec, pc, geom)
    report = CheckReport(name="identities")
    phi, xi, eta, eps, g, m = pc.phi, pc.xi, pc.eta, pc.eps, spec.g, spec.m
    R, R_low, S, Q = geom.riemann, geom.riemann_low, geom.ricci, geom.ricci_op
    n = m - 1
    frame = range(m)

    # R(e_i, e_j)xi, entry [i, j, l]
    report.add(
        check_equal(
            "curvature-xi",
            Tensor.from_function(
                m, (DOWN, DOWN, UP),
                lambda ijl: eta[ijl[0]] * kronecker(ijl[2], ijl[1]) - eta[ijl[1]] * kronecker(ijl[2], ijl[0]),
            ),
            Tensor.from_function(
                m, (DOWN, DOWN, UP), lambda ijl: _sum(R[ijl[2], ijl[0], ijl[1], p] * xi[p] for p in frame)
            ),
            "R(X, Y)xi = eta(X)Y - eta(Y)X",
        )
    )
    # R(xi, e_i)e_j, entry [i, j, l]
    report.add(
        check_equal(
            "curvature-xi-first",
            Tensor.from_function(
                m, (DOWN, DOWN, UP),
                lambda ijl: eta[ijl[1]] * kronecker(ijl[2], ijl[0]) - eps * g[ijl[0], ijl[1]] * xi[ijl[2]],
            ),
            Tensor.from_function(
                m, (DOWN, DOWN, UP), lambda ijl: _sum(xi[p] * R[ijl[2], p, ijl[0], ijl[1]] for p in frame)
            ),
            "R(xi, X)Y = eta(Y)X - eps g(X, Y)xi",
        )
    )
    # R(xi, e_i)xi, entry [i, l]
    report.add(
        check_equal(
            "curvature-xi-x-xi",
            Tensor.from_function(m, (DOWN, UP), lambda il: kronecker(il[1], il[0]) - eta[il[0]] * xi[il[1]]),
            Tensor.from_function(
                m, (DOWN, UP),
                lambda il: _sum(xi[p] * xi[q] * R[il[1], p, il[0], q] for p, q in product(frame, repeat=2)),
            ),
            "R(xi, X)xi = X - eta(X)xi",
        )
    )
    report.add(
        check_equal(
            "curvature-lowered-xi",
            Tensor.from_function(
                m, (DOWN, DOWN, DOWN),
                lambda ijk: eta[ijk[1]] * g[ijk[0], ijk[2]] - eta[ijk[0]] * g[ijk[1], ijk[2]],
            ),
            Tensor.from_function(
                m, (DOWN, DOWN, DOWN), lambda ijk: _sum(R_low[ijk[0], ijk[1], ijk[2], p] * xi[p] for p in frame)
            ),
            "R(X, Y, Z, xi) = eta(Y)g(X, Z) - eta(X)g(Y, Z)",
        )
    )
    report.add(
        check_equal(
            "eta-of-curvature",
            Tensor.from_function(
                m, (DOWN, DOWN, DOWN),
                lambda ijk: eps * (eta[ijk[1]] * g[ijk[0], ijk[2]] - eta[ijk[0]] * g[ijk[1], ijk[2]]),
            ),
            Tensor.from_function(
                m, (DOWN, DOWN, DOWN), lambda ijk: _sum(eta[l] * R[l, ijk[0], ijk[1], ijk[2]] for l in frame)
            ),
            "eta(R(X, Y)Z) = eps (eta(Y)g(X, Z) - eta(X)g(Y, Z))",
        )
    )
    report.add(
        check_equal(
            "ricci-xi",
            eta.scale(-n),
            Tensor.from_function(m, (DOWN,), lambda i: _sum(S[i[0], p] * xi[p] for p in frame)),
            "S(X, xi) = -(m-1) eta(X)",
        )
    )
    report.add(
        check_equal(
            "ricci-operator-xi",
            xi.scale(-eps * n),
            Tensor.from_function(m, (UP,), lambda l: _sum(Q[l[0], p] * xi[p] for p in frame)),
            "Q xi = -eps (m-1) xi",
        )
    )
    report.add(
        check_equal(
            "ricci-xi-xi",
            Tensor.scalar(m, -n),
            Tensor.scalar(m, _sum(S[p, q] * xi[p] * xi[q] for p, q in product(frame, repeat=2))),
            "S(xi, xi) = -(m-1)",
        )
    )
    report.add(
        check_equal(
            "ricci-phi-phi",
            Tensor.from_function(m, (DOWN, DOWN), lambda ij: S[ij] + n * eta[ij[0]] * eta[ij[1]]),
            Tensor.from_function(
                m, (DOWN, DOWN),
                lambda ij: _sum(phi[a, ij[0]] * phi[b, ij[1]] * S[a, b] for a, b in product(frame, repeat=2)),
            ),
            "S(phi X, phi Y) = S(X, Y) + (m-1) eta(X) eta(Y)",
        )
    )
    report.add(_nabla_xi_check(pc, geom))

    logger.info(report.summary())
    return report


def structure_consequence_suite(spec: FrameSpec, pc: ParacontactSpec, geom: GeometryCache) -> CheckReport:
    """Derived consequences of the (eps)-para Sasakian condition.

    Raises:
        PreconditionError: the structure is not (eps)-para Sasakian
    """
    require_eps_ps(spec, pc, geom)
    report = CheckReport(name="consequences")
    phi, xi, eps, g, m = pc.phi, pc.xi, pc.eps, spec.g, spec.m
    S = geom.ricci
    n = m - 1
    frame = range(m)
    phi2 = phi_squared(pc)

    report.add(check_equal("phi4-equals-phi2", phi2, act_on_slot(phi2, 0, phi2, UP), "phi^4 = phi^2"))

    # entry [w, j] = (nabla_{e_w} eta)(e_j)
    report.add(
        check_equal(
            "nabla-eta",
            Tensor.from_function(m, (DOWN, DOWN), lambda wj: _sum(g[wj[1], a] * phi[a, wj[0]] for a in frame)),
            covariant_derivative(pc.eta, geom.conn),
            "(nabla_X eta)(Y) = g(Y, phi X)",
        )
    )

    nabla_s = covariant_derivative(S, geom.conn)

    def ricci_xi_rhs(wj: Index) -> Rational:
        w, j = wj
        return _sum((-n * g[j, a] - eps * S[j, a]) * phi[a, w] for a in frame)

    report.add(
        check_equal(
            "nabla-ricci-xi",
            Tensor.from_function(m, (DOWN, DOWN), ricci_xi_rhs),
            Tensor.from_function(m, (DOWN, DOWN), lambda wj: _sum(nabla_s[wj[0], wj[1], p] * xi[p] for p in frame)),
            "(nabla_W S)(Y, xi) = -(m-1) g(Y, phi W) - eps S(Y, phi W)",
        )
    )
    report.add(
        check_zero(
            "nabla-ricci-xi-xi",
            Tensor.from_function(
                m, (DOWN,),
                lambda w: _sum(nabla_s[w[0], p, q] * xi[p] * xi[q] for p, q in product(frame, repeat=2)),
            ),
            "(nabla_W S)(xi, xi)",
        )
    )

    logger.info(report.summary())
    return report


def dim3_formula_suite(spec: FrameSpec, pc: ParacontactSpec, geom: GeometryCache) -> CheckReport:
    """Closed forms of Q, S and R in dimension 3, and the constant-curvature criterion r = -6 eps.

    Raises:
        DimensionError: the manifold is not 3-dimensional
        PreconditionError: the structure is not (eps)-para Sasakian
    """
    if spec.m != 3:
        raise DimensionError(f"dimension-3 formulas need m = 3, got {spec.m}")
    require_eps_ps(spec, pc, geom)
    report = CheckReport(name="dim3")
    xi, eta, eps, g = pc.xi, pc.eta, pc.eps, spec.g
    S, Q, r = geom.ricci, geom.ricci_op, geom.scalar
    alpha, beta, gamma = r / 2 + eps, eps * r / 2 + 3, r / 2 + 3 * eps

    def decomposition(lijk: Index) -> Rational:
        l, i, j, k = lijk
        d_li, d_lj = kronecker(l, i), kronecker(l, j)
        return (
            g[j, k] * Q[l, i]
            - g[i, k] * Q[l, j]
            + S[j, k] * d_li
            - S[i, k] * d_lj
            - r / 2 * (g[j, k] * d_li - g[i, k] * d_lj)
        )

    def closed_curvature(lijk: Index) -> Rational:
        l, i, j, k = lijk
        d_li, d_lj = kronecker(l, i), kronecker(l, j)
        return (
            (r / 2 + 2 * eps) * (g[j, k] * d_li - g[i, k] * d_lj)
            - gamma * (g[j, k] * eta[i] - g[i, k] * eta[j]) * xi[l]
            - beta * (eta[j] * eta[k] * d_li - eta[i] * eta[k] * d_lj)
        )

    report.add(
        check_equal(
            "dim3-decomposition",
            Tensor.from_function(3, RIEMANN_VALENCE, decomposition),
            geom.riemann,
            "R = g(Y,Z)QX - g(X,Z)QY + S(Y,Z)X - S(X,Z)Y - (r/2)(g(Y,Z)X - g(X,Z)Y)",
        )
    )
    report.add(
        check_equal(
            "dim3-ricci-operator",
            Tensor.from_function(3, (UP, DOWN), lambda li: alpha * kronecker(li[0], li[1]) - gamma * eta[li[1]] * xi[li[0]]),
            Q,
            "QX = (r/2 + eps)X - (r/2 + 3 eps) eta(X) xi",
        )
    )
    report.add(
        check_equal(
            "dim3-ricci",
            Tensor.from_function(3, (DOWN, DOWN), lambda ij: alpha * g[ij] - beta * eta[ij[0]] * eta[ij[1]]),
            S,
            "S(X, Y) = (r/2 + eps) g(X, Y) - (eps r/2 + 3) eta(X) eta(Y)",
        )
    )
    report.add(
        check_equal(
            "dim3-curvature",
            Tensor.from_function(3, RIEMANN_VALENCE, closed_curvature),
            geom.riemann,
            "closed form of R(X, Y)Z in terms of g, eta, xi and r",
        )
    )

    constant = constant_curvature_test(geom.riemann_low, g)
    critical = r == -6 * eps
    report.add(
        CheckResult.from_condition(
            "constant-curvature-criterion",
            (constant is not None) == critical,
            Witness(
                expected=f"constant curvature iff r = {format_rational(-6 * eps)}",
                actual=(
                    f"r = {format_rational(r)}, constant curvature "
                    + ("absent" if constant is None else format_rational(constant))
                ),
            ),
        )
    )

    logger.info(report.summary())
    return report
