"""Frame, structure and derived-geometry data types."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from para_sasakian_verifier.core.exceptions import DimensionError, UsageError
from para_sasakian_verifier.models.tensor import (
    DOWN,
    UP,
    ZERO,
    Rational,
    RationalLike,
    Tensor,
    to_rational,
)

BracketTable = Mapping[tuple[int, int], Mapping[int, RationalLike]]


@dataclass(frozen=True)
class FrameSpec:
    """A homogeneous frame: constant structure constants and constant metric.

    ``c[k, i, j] = c^k_ij`` with [e_i, e_j] = sum_k c^k_ij e_k, and
    ``g[i, j] = g(e_i, e_j)``. Antisymmetry of ``c`` and nondegeneracy of
    ``g`` are checked by ``validate_frame``, not presupposed.
    """

    m: int
    c: Tensor
    g: Tensor

    def __post_init__(self) -> None:
        if self.m < 2:
            raise UsageError(f"frame dimension must be at least 2, got {self.m}")
        if self.c.dim != self.m or self.c.valence != (UP, DOWN, DOWN):
            raise UsageError("structure constants must be an (up, down, down) tensor of dim m")
        if self.g.dim != self.m or self.g.valence != (DOWN, DOWN):
            raise UsageError("frame metric must be a (down, down) tensor of dim m")

    @classmethod
    def from_brackets(
        cls, metric_rows: Sequence[Sequence[RationalLike]], brackets: BracketTable
    ) -> FrameSpec:
        """Build a frame from 1-based bracket data ``{(i, j): {k: coeff}}``.

        Each listed pair (i, j) fixes [e_i, e_j] and, by antisymmetry,
        [e_j, e_i]; omitted pairs are zero.
        """
        m = len(metric_rows)
        values: dict[tuple[int, int, int], Rational] = {}
        for (i, j), combination in brackets.items():
            for k, coefficient in combination.items():
                for index in (i, j, k):
                    if not 1 <= index <= m:
                        raise UsageError(f"bracket index {index} out of range 1..{m}")
                value = to_rational(coefficient)
                values[(k - 1, i - 1, j - 1)] = value
                values[(k - 1, j - 1, i - 1)] = -value
        c = Tensor.from_function(m, (UP, DOWN, DOWN), lambda kij: values.get(kij, ZERO))
        return cls(m, c, Tensor.from_rows(metric_rows, (DOWN, DOWN)))


@dataclass(frozen=True)
class ParacontactSpec:
    """The (phi, xi, eta, eps) structure under verification.

    ``phi[j, i] = phi^j_i`` with phi(e_i) = sum_j phi^j_i e_j. Validity of
    the paracontact axioms is the subject of ``validate_paracontact``.
    """

    phi: Tensor
    xi: Tensor
    eta: Tensor
    eps: Rational

    def __post_init__(self) -> None:
        m = self.phi.dim
        if self.phi.valence != (UP, DOWN):
            raise UsageError("phi must be an (up, down) tensor")
        if self.xi.valence != (UP,) or self.eta.valence != (DOWN,):
            raise UsageError("xi must be a vector and eta a covector")
        if self.xi.dim != m or self.eta.dim != m:
            raise DimensionError("phi, xi and eta must share one dimension")
        eps = to_rational(self.eps)
        if eps**2 != 1:
            raise UsageError(f"epsilon must be +1 or -1, got {eps}")
        object.__setattr__(self, "eps", eps)

    @classmethod
    def from_rows(
        cls,
        phi_rows: Sequence[Sequence[RationalLike]],
        xi: Sequence[RationalLike],
        eta: Sequence[RationalLike],
        eps: RationalLike,
    ) -> ParacontactSpec:
        """Row ``i`` of ``phi_rows`` lists the frame coefficients of phi(e_i)."""
        m = len(phi_rows)
        if any(len(row) != m for row in phi_rows):
            raise UsageError("phi rows must form a square table")
        phi = Tensor.from_function(m, (UP, DOWN), lambda ji: to_rational(phi_rows[ji[1]][ji[0]]))
        return cls(phi, Tensor.vector(xi, UP), Tensor.vector(eta, DOWN), to_rational(eps))

    @property
    def dim(self) -> int:
        return self.phi.dim

    def phi_rows(self) -> list[list[Rational]]:
        """Inverse of ``from_rows``: row i holds the coefficients of phi(e_i)."""
        return [[self.phi[j, i] for j in range(self.dim)] for i in range(self.dim)]


@dataclass(frozen=True)
class Connection:
    """Connection coefficients: ``gamma[k, i, j] = Gamma^k_ij``, nabla_{e_i} e_j = sum_k Gamma^k_ij e_k."""

    gamma: Tensor

    def __post_init__(self) -> None:
        if self.gamma.valence != (UP, DOWN, DOWN):
            raise UsageError("connection coefficients must be an (up, down, down) tensor")

    @property
    def dim(self) -> int:
        return self.gamma.dim


@dataclass(frozen=True)
class GeometryCache:
    """Connection and curvature data derived from a single FrameSpec.

    ``riemann_low[i, j, k, l] = R(e_i, e_j, e_k, e_l) = g(R(e_i, e_j)e_k, e_l)``.
    """

    g: Tensor
    g_inv: Tensor
    conn: Connection
    riemann: Tensor
    riemann_low: Tensor
    ricci: Tensor
    ricci_op: Tensor
    scalar: Rational

    @property
    def dim(self) -> int:
        return self.g.dim


COEFFICIENT_COUNT = 8


@dataclass(frozen=True)
class TParams:
    """Coefficients a0..a7 of the T-curvature family.

    ``preset_name`` and ``dim`` record provenance when the vector came from
    the preset catalog; the dimension is re-checked against every manifold
    the vector is applied to.
    """

    coefficients: tuple[Rational, ...]
    preset_name: str | None = None
    dim: int | None = None
    free: tuple[Rational, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.coefficients) != COEFFICIENT_COUNT:
            raise UsageError(
                f"T-curvature needs exactly {COEFFICIENT_COUNT} coefficients, "
                f"got {len(self.coefficients)}"
            )
        object.__setattr__(
            self, "coefficients", tuple(to_rational(a) for a in self.coefficients)
        )
        object.__setattr__(self, "free", tuple(to_rational(a) for a in self.free))

    @classmethod
    def explicit(cls, values: Sequence[RationalLike]) -> TParams:
        return cls(tuple(to_rational(v) for v in values))

    @classmethod
    def basis(cls, position: int) -> TParams:
        """Unit vector selecting the single coefficient ``a_position``."""
        if not 0 <= position < COEFFICIENT_COUNT:
            raise UsageError(f"coefficient position {position} out of range")
        return cls(tuple(to_rational(1 if i == position else 0) for i in range(COEFFICIENT_COUNT)))

    @property
    def label(self) -> str:
        if self.preset_name:
            return self.preset_name
        return "(" + ", ".join(str(a) for a in self.coefficients) + ")"

    def check_dimension(self, m: int) -> None:
        """Refuse coefficients bound to a different dimension.

        Raises:
            DimensionError: provenance dimension differs from ``m``
        """
        if self.dim is not None and self.dim != m:
            raise DimensionError(
                f"coefficients of {self.label} were built for dimension {self.dim}, "
                f"manifold has dimension {m}"
            )
