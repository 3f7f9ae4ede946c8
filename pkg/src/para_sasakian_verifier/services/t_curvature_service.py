"""The eight-coefficient T-curvature family and its named presets.

    T(X,Y)Z = a0 R(X,Y)Z + a1 S(Y,Z)X + a2 S(X,Z)Y + a3 S(X,Y)Z
              + a4 g(Y,Z)QX + a5 g(X,Z)QY + a6 g(X,Y)QZ
              + a7 r (g(Y,Z)X - g(X,Z)Y)

Components follow the curvature convention: T[l, i, j, k] = T^l_ijk with
T(e_i, e_j)e_k = sum_l T^l_ijk e_l.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable

from para_sasakian_verifier.core.exceptions import DimensionError, UnknownPresetError, UsageError
from para_sasakian_verifier.models.geometry import (
    COEFFICIENT_COUNT,
    Connection,
    FrameSpec,
    GeometryCache,
    ParacontactSpec,
    TParams,
)
from para_sasakian_verifier.models.manifest import TParamsSource
from para_sasakian_verifier.models.reports import (
    CheckReport,
    CheckResult,
    check_equal,
    check_zero,
    first_mismatch,
)
from para_sasakian_verifier.models.tensor import (
    ZERO,
    Index,
    Rational,
    RationalLike,
    Tensor,
    kronecker,
    linear_combination,
    to_rational,
)
from para_sasakian_verifier.services.curvature_service import RIEMANN_VALENCE, covariant_derivative
from para_sasakian_verifier.services.frame_service import metric_inverse
from para_sasakian_verifier.services.paracontact_service import require_eps_ps

logger = logging.getLogger(__name__)

PresetBuilder = Callable[[int, Rational, Rational], dict[int, Rational]]


def _k(m: int) -> Rational:
    return Rational(1, m - 1)


def _quasiconformal(m: int, a0: Rational, a1: Rational) -> dict[int, Rational]:
    return {
        0: a0,
        1: a1,
        2: -a1,
        4: a1,
        5: -a1,
        7: -Rational(1, m) * (a0 / (m - 1) + 2 * a1),
    }


def _conformal(m: int, a0: Rational, a1: Rational) -> dict[int, Rational]:
    d = Rational(1, m - 2)
    return {0: a0, 1: -d, 2: d, 4: -d, 5: d, 7: Rational(1, (m - 1) * (m - 2))}


def _conharmonic(m: int, a0: Rational, a1: Rational) -> dict[int, Rational]:
    d = Rational(1, m - 2)
    return {0: a0, 1: -d, 2: d, 4: -d, 5: d}


def _pseudoprojective(m: int, a0: Rational, a1: Rational) -> dict[int, Rational]:
    return {0: a0, 1: a1, 2: -a1, 7: -Rational(1, m) * (a0 / (m - 1) + a1)}


def _m_projective(m: int, a0: Rational, a1: Rational) -> dict[int, Rational]:
    h = Rational(1, 2 * (m - 1))
    return {0: a0, 1: -h, 2: h, 4: -h, 5: h}


def _pair(first: int, first_sign: int, second: int, second_sign: int) -> PresetBuilder:
    """Presets of the form R + s1 k (slot term) + s2 k (slot term), k = 1/(m-1)."""

    def build(m: int, a0: Rational, a1: Rational) -> dict[int, Rational]:
        return {0: a0, first: first_sign * _k(m), second: second_sign * _k(m)}

    return build


# Catalog order is the report and sweep order.
_PRESETS: dict[str, PresetBuilder] = {
    "riemann": lambda m, a0, a1: {0: a0},
    "quasiconformal": _quasiconformal,
    "conformal": _conformal,
    "conharmonic": _conharmonic,
    "concircular": lambda m, a0, a1: {0: a0, 7: -Rational(1, m * (m - 1))},
    "pseudoprojective": _pseudoprojective,
    "projective": _pair(1, -1, 2, 1),
    "m-projective": _m_projective,
    "w0": _pair(1, -1, 5, 1),
    "w0star": _pair(1, 1, 5, -1),
    "w1": _pair(1, 1, 2, -1),
    "w1star": _pair(1, -1, 2, 1),
    "w2": _pair(4, -1, 5, 1),
    "w3": _pair(2, -1, 4, 1),
    "w4": _pair(5, 1, 6, -1),
    "w5": _pair(2, -1, 5, 1),
    "w6": _pair(1, -1, 6, 1),
    "w7": _pair(1, -1, 4, 1),
    "w8": _pair(1, -1, 3, 1),
    "w9": _pair(3, 1, 4, -1),
}

PRESET_NAMES: tuple[str, ...] = tuple(_PRESETS)
FREE_FAMILIES = frozenset({"quasiconformal", "pseudoprojective"})

# Presets with a1 = -a2, a4 = -a5, a3 = a6 = 0, so T(X,Y) = -T(Y,X).
ANTISYMMETRIC_PRESETS = ("quasiconformal", "conformal", "conharmonic", "concircular", "pseudoprojective")


def default_free_parameters(name: str, m: int) -> tuple[Rational, Rational]:
    """Default (a0, a1) of a free family."""
    if name == "pseudoprojective":
        return Rational(1), -_k(m)
    return Rational(1), Rational(1)


def preset(
    name: str, m: int, a0: RationalLike | None = None, a1: RationalLike | None = None
) -> TParams:
    """Coefficient vector of a named preset at dimension m.

    Only the free families accept ``a0`` and ``a1``; the remaining presets
    have a0 = 1.

    Raises:
        UnknownPresetError: name not in the catalog
        DimensionError: m < 3, where some denominators vanish
        UsageError: free parameters given to a fixed preset
    """
    builder = _PRESETS.get(name)
    if builder is None:
        raise UnknownPresetError(name)
    if m < 3:
        raise DimensionError(f"preset {name} needs dimension at least 3, got {m}")

    free: tuple[Rational, ...] = ()
    if name in FREE_FAMILIES:
        default_a0, default_a1 = default_free_parameters(name, m)
        first = default_a0 if a0 is None else to_rational(a0)
        second = default_a1 if a1 is None else to_rational(a1)
        free = (first, second)
    else:
        if a0 is not None or a1 is not None:
            raise UsageError(f"preset {name} takes no free parameters")
        first, second = Rational(1), Rational(1)

    values = builder(m, first, second)
    coefficients = tuple(values.get(position, ZERO) for position in range(COEFFICIENT_COUNT))
    return TParams(coefficients, preset_name=name, dim=m, free=free)


def verify_provenance(params: TParams, m: int) -> None:
    """Re-check a preset-tagged vector against the manifold dimension.

    Raises:
        DimensionError: the vector was built for another dimension
        UsageError: the coefficients no longer match the named preset
    """
    params.check_dimension(m)
    if params.preset_name is None:
        return
    free = params.free or (None, None)
    regenerated = preset(params.preset_name, m, *free)
    if regenerated.coefficients != params.coefficients:
        raise UsageError(f"coefficients do not match preset {params.preset_name} at dimension {m}")


def random_tparams(rng: random.Random, m: int) -> TParams:
    """Eight rationals p/q with p in [-9, 9] and q in [1, 9], bound to dimension m."""
    return TParams(
        tuple(Rational(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(COEFFICIENT_COUNT)),
        dim=m,
    )


def t_tensor(params: TParams, geom: GeometryCache, g: Tensor) -> Tensor:
    """Frame components of the T-curvature tensor, valence (up, down, down, down)."""
    if g.dim != geom.dim:
        raise UsageError("metric and geometry differ in dimension")
    verify_provenance(params, geom.dim)
    a = params.coefficients
    R, S, Q, r = geom.riemann, geom.ricci, geom.ricci_op, geom.scalar

    def component(lijk: Index) -> Rational:
        l, i, j, k = lijk
        d_li, d_lj, d_lk = kronecker(l, i), kronecker(l, j), kronecker(l, k)
        return (
            a[0] * R[l, i, j, k]
            + a[1] * S[j, k] * d_li
            + a[2] * S[i, k] * d_lj
            + a[3] * S[i, j] * d_lk
            + a[4] * g[j, k] * Q[l, i]
            + a[5] * g[i, k] * Q[l, j]
            + a[6] * g[i, j] * Q[l, k]
            + a[7] * r * (g[j, k] * d_li - g[i, k] * d_lj)
        )

    return Tensor.from_function(geom.dim, RIEMANN_VALENCE, component)


def t_tensor_3d_closed_form(
    params: TParams, r: RationalLike, eps: RationalLike, g: Tensor, eta: Tensor
) -> Tensor:
    """T on a 3-dimensional (eps)-para Sasakian manifold from g, eta and r alone.

    Raises:
        DimensionError: g is not 3-dimensional
    """
    if g.dim != 3 or eta.dim != 3:
        raise DimensionError(f"closed form holds in dimension 3 only, got {g.dim}")
    verify_provenance(params, 3)
    a = params.coefficients
    r, eps = to_rational(r), to_rational(eps)
    g_inv = metric_inverse(g)
    xi = [eps * sum((g_inv[l, p] * eta[p] for p in range(3)), start=ZERO) for l in range(3)]

    alpha = r / 2 + eps
    beta = eps * r / 2 + 3
    gamma = r / 2 + 3 * eps
    x_coefficient = alpha * (a[0] + a[1] + a[4]) + a[7] * r + eps * a[0]
    y_coefficient = alpha * (a[0] - a[2] - a[5]) + a[7] * r + eps * a[0]

    def component(lijk: Index) -> Rational:
        l, i, j, k = lijk
        d_li, d_lj, d_lk = kronecker(l, i), kronecker(l, j), kronecker(l, k)
        return (
            x_coefficient * g[j, k] * d_li
            - y_coefficient * g[i, k] * d_lj
            + alpha * (a[3] + a[6]) * g[i, j] * d_lk
            - beta * a[3] * eta[i] * eta[j] * d_lk
            - beta * (a[0] + a[1]) * eta[j] * eta[k] * d_li
            + beta * (a[0] - a[2]) * eta[i] * eta[k] * d_lj
            + gamma * (a[0] - a[5]) * g[i, k] * eta[j] * xi[l]
            - gamma * a[6] * g[i, j] * eta[k] * xi[l]
            - gamma * (a[0] + a[4]) * g[j, k] * eta[i] * xi[l]
        )

    return Tensor.from_function(3, RIEMANN_VALENCE, component)


def nabla_t(t: Tensor, conn: Connection) -> Tensor:
    """(nabla_W T)(X, Y)Z, entry [w, l, i, j, k]."""
    return covariant_derivative(t, conn)


def t_curvature_suite(geom: GeometryCache, params: TParams | None = None) -> CheckReport:
    """Structural checks of the family on one geometry.

    Runs the Riemann reduction, the antisymmetric presets and, in dimension
    3, the vanishing of the conformal tensor. With ``params`` also checks
    linearity in the coefficients.
    """
    m = geom.dim
    report = CheckReport(name="tcurvature")
    report.add(check_equal("t-riemann-reduction", geom.riemann, t_tensor(preset("riemann", m), geom, geom.g)))

    for name in ANTISYMMETRIC_PRESETS:
        t = t_tensor(preset(name, m), geom, geom.g)
        report.add(check_zero(f"t-antisymmetric:{name}", t + t.permute((0, 2, 1, 3)), "T(X,Y) + T(Y,X)"))

    if m == 3:
        report.add(
            check_zero(
                "conformal-vanishes-dim3",
                t_tensor(preset("conformal", 3), geom, geom.g),
                "conformal curvature tensor",
            )
        )

    if params is not None:
        combined = linear_combination(
            [(a, t_tensor(TParams.basis(position), geom, geom.g)) for position, a in enumerate(params.coefficients)]
        )
        report.add(check_equal(f"t-linear:{params.label}", combined, t_tensor(params, geom, geom.g)))

    logger.info(report.summary())
    return report


def closed_form_equivalence_check(
    spec: FrameSpec,
    pc: ParacontactSpec,
    geom: GeometryCache,
    samples: int,
    seed: int,
) -> CheckReport:
    """Direct T against the 3-dimensional closed form, every preset plus seeded random vectors.

    Raises:
        DimensionError: manifold is not 3-dimensional
        PreconditionError: the structure is not (eps)-para Sasakian
    """
    if spec.m != 3:
        raise DimensionError(f"closed form holds in dimension 3 only, got {spec.m}")
    require_eps_ps(spec, pc, geom)

    report = CheckReport(name="closed-form")

    def closed(params: TParams) -> Tensor:
        return t_tensor_3d_closed_form(params, geom.scalar, pc.eps, spec.g, pc.eta)

    for name in PRESET_NAMES:
        params = preset(name, 3)
        report.add(check_equal(f"closed-form:{name}", t_tensor(params, geom, spec.g), closed(params)))

    rng = random.Random(seed)
    result = CheckResult.ok("closed-form:random")
    for sample in range(samples):
        params = random_tparams(rng, 3)
        witness = first_mismatch(t_tensor(params, geom, spec.g), closed(params))
        if witness is not None:
            detail = f"sample {sample + 1}: {params.label}"
            result = CheckResult.fail("closed-form:random", witness.model_copy(update={"detail": detail}))
            break
    report.add(result)

    logger.info("%s (%d random vectors, seed %d)", report.summary(), samples, seed)
    return report


def resolve_tparams(source: TParamsSource, m: int) -> TParams:
    """Coefficient vector of a ``[tparams]`` section at dimension m."""
    if source.preset is not None:
        return preset(source.preset, m, source.coefficients.get("a0"), source.coefficients.get("a1"))
    return TParams(tuple(source.coefficients[f"a{i}"] for i in range(COEFFICIENT_COUNT)), dim=m)
