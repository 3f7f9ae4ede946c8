"""Exact rational scalars and valence-typed dense tensors.

Every tensor over dimension m with k slots stores m**k sympy Rationals in
row-major order: entry ``t[i_0, ..., i_{k-1}]`` is the component carrying
index ``i_a`` in slot ``a``. Slot order is significant and every operation
below preserves it.

Curvature convention, fixed here once: the Riemann tensor has valence
(UP, DOWN, DOWN, DOWN) and ``R[l, i, j, k] = R^l_{ijk}`` with
R(e_i, e_j)e_k = sum_l R^l_{ijk} e_l.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from enum import StrEnum
from itertools import product
from math import gcd
from typing import Any, TypeAlias

from sympy import Matrix, Rational as _SympyRational, S

from para_sasakian_verifier.core.exceptions import InvalidMetricError, UsageError

Rational: TypeAlias = _SympyRational
RationalLike: TypeAlias = _SympyRational | int | str

ZERO: Rational = S.Zero
ONE: Rational = S.One

_RATIONAL_TEXT = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


def parse_rational(text: str) -> Rational:
    """Parse the shared rational grammar: ``-?digits(/digits)?``.

    Raises:
        ValueError: text does not match the grammar or has a zero denominator
    """
    text = text.strip()
    if not _RATIONAL_TEXT.match(text):
        raise ValueError(f"not a rational: {text!r}")
    numerator, _, denominator = text.partition("/")
    q = int(denominator) if denominator else 1
    if q == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Rational(int(numerator), q)


def format_rational(value: RationalLike) -> str:
    """Canonical text form, e.g. ``-3/2``, ``7``, ``0``."""
    return str(to_rational(value))


def to_rational(value: RationalLike) -> Rational:
    """Coerce an int, rational text or Rational to a canonical Rational.

    Floats are refused: every value in the engine is exact.
    """
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool) or not isinstance(value, (int, _SympyRational)):
        raise TypeError(f"expected an exact rational, got {type(value).__name__}")
    return Rational(value)


def is_canonical(value: Rational) -> bool:
    """Check the reduced-fraction invariant by re-canonicalizing."""
    p, q = int(value.p), int(value.q)
    return q > 0 and gcd(abs(p), q) == 1 and Rational(p, q) == value


class Slot(StrEnum):
    """Index position of a tensor slot."""

    UP = "up"
    DOWN = "down"


Valence: TypeAlias = tuple[Slot, ...]
Index: TypeAlias = tuple[int, ...]

UP = Slot.UP
DOWN = Slot.DOWN


@dataclass(frozen=True)
class Tensor:
    """Dense tensor of exact rationals with a declared slot pattern."""

    dim: int
    valence: Valence
    entries: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise UsageError(f"dimension must be positive, got {self.dim}")
        valence = tuple(Slot(s) for s in self.valence)
        expected = self.dim ** len(valence)
        if len(self.entries) != expected:
            raise UsageError(
                f"tensor of dim {self.dim} and rank {len(valence)} needs "
                f"{expected} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "valence", valence)
        object.__setattr__(self, "entries", tuple(to_rational(e) for e in self.entries))

    # Construction

    @classmethod
    def from_function(
        cls, dim: int, valence: Sequence[Slot], component: Callable[[Index], Any]
    ) -> Tensor:
        """Build a tensor by evaluating ``component`` at every index tuple."""
        return cls(
            dim,
            tuple(valence),
            tuple(component(index) for index in product(range(dim), repeat=len(valence))),
        )

    @classmethod
    def zeros(cls, dim: int, valence: Sequence[Slot]) -> Tensor:
        return cls(dim, tuple(valence), (ZERO,) * dim ** len(valence))

    @classmethod
    def scalar(cls, dim: int, value: RationalLike) -> Tensor:
        """Rank-0 tensor."""
        return cls(dim, (), (to_rational(value),))

    @classmethod
    def identity(cls, dim: int) -> Tensor:
        """The (UP, DOWN) identity endomorphism."""
        return cls.from_function(dim, (UP, DOWN), lambda ij: ONE if ij[0] == ij[1] else ZERO)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], valence: Sequence[Slot]) -> Tensor:
        """Rank-2 tensor from a square table, ``rows[a][b]`` at index (a, b)."""
        dim = len(rows)
        if any(len(row) != dim for row in rows):
            raise UsageError("rank-2 tensor rows must form a square table")
        return cls(dim, tuple(valence), tuple(to_rational(v) for row in rows for v in row))

    @classmethod
    def vector(cls, values: Sequence[RationalLike], slot: Slot = UP) -> Tensor:
        return cls(len(values), (slot,), tuple(to_rational(v) for v in values))

    @classmethod
    def from_matrix(cls, matrix: Matrix, valence: Sequence[Slot]) -> Tensor:
        rows = [[matrix[a, b] for b in range(matrix.cols)] for a in range(matrix.rows)]
        return cls.from_rows(rows, valence)

    # Access

    @property
    def rank(self) -> int:
        return len(self.valence)

    @property
    def value(self) -> Rational:
        """The single entry of a rank-0 tensor."""
        if self.rank != 0:
            raise UsageError(f"tensor of rank {self.rank} is not a scalar")
        return self.entries[0]

    def _offset(self, index: Index) -> int:
        if len(index) != self.rank:
            raise UsageError(f"index {index} has wrong arity for rank {self.rank}")
        offset = 0
        for i in index:
            if not 0 <= i < self.dim:
                raise UsageError(f"index {index} out of range for dim {self.dim}")
            offset = offset * self.dim + i
        return offset

    def __getitem__(self, index: Index | int) -> Rational:
        if isinstance(index, int):
            index = (index,)
        return self.entries[self._offset(index)]

    def indices(self) -> Iterator[Index]:
        return product(range(self.dim), repeat=self.rank)

    def items(self) -> Iterator[tuple[Index, Rational]]:
        return zip(self.indices(), self.entries, strict=True)

    def nonzero_items(self) -> list[tuple[Index, Rational]]:
        return [(index, value) for index, value in self.items() if value != 0]

    def is_zero(self) -> bool:
        return all(value == 0 for value in self.entries)

    def to_matrix(self) -> Matrix:
        if self.rank != 2:
            raise UsageError(f"only rank-2 tensors convert to matrices, got rank {self.rank}")
        return Matrix(self.dim, self.dim, list(self.entries))

    def to_nested(self) -> Any:
        """Nested lists of canonical rational strings (rank 0 gives a string)."""

        def build(prefix: Index) -> Any:
            if len(prefix) == self.rank:
                return format_rational(self[prefix])
            return [build(prefix + (i,)) for i in range(self.dim)]

        return build(())

    # Linear structure

    def _check_compatible(self, other: Tensor) -> None:
        if self.dim != other.dim or self.valence != other.valence:
            raise UsageError(
                f"incompatible tensors: dim {self.dim} {self.valence} vs "
                f"dim {other.dim} {other.valence}"
            )

    def __add__(self, other: Tensor) -> Tensor:
        self._check_compatible(other)
        return Tensor(
            self.dim, self.valence, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: Tensor) -> Tensor:
        self._check_compatible(other)
        return Tensor(
            self.dim, self.valence, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> Tensor:
        return Tensor(self.dim, self.valence, tuple(-a for a in self.entries))

    def scale(self, factor: RationalLike) -> Tensor:
        c = to_rational(factor)
        return Tensor(self.dim, self.valence, tuple(c * a for a in self.entries))

    def __rmul__(self, factor: RationalLike) -> Tensor:
        return self.scale(factor)

    def permute(self, order: Sequence[int]) -> Tensor:
        """Reorder slots: slot ``a`` of the result is slot ``order[a]`` of self."""
        if sorted(order) != list(range(self.rank)):
            raise UsageError(f"{list(order)} is not a permutation of {self.rank} slots")

        def component(index: Index) -> Rational:
            source = [0] * self.rank
            for a, i in zip(order, index):
                source[a] = i
            return self[tuple(source)]

        return Tensor.from_function(self.dim, [self.valence[a] for a in order], component)


def linear_combination(terms: Sequence[tuple[RationalLike, Tensor]]) -> Tensor:
    """Exact sum of ``c * t`` over the given terms (at least one)."""
    if not terms:
        raise UsageError("linear combination needs at least one term")
    result = terms[0][1].scale(terms[0][0])
    for coefficient, tensor in terms[1:]:
        result = result + tensor.scale(coefficient)
    return result


def _check_slot(t: Tensor, slot: int, kind: Slot) -> None:
    if not 0 <= slot < t.rank:
        raise UsageError(f"slot {slot} out of range for rank {t.rank}")
    if t.valence[slot] is not kind:
        raise UsageError(f"slot {slot} is {t.valence[slot].value}, expected {kind.value}")


def contract(t: Tensor, up_slot: int, down_slot: int) -> Tensor:
    """Sum an UP slot against a DOWN slot; both slots are removed.

    Raises:
        UsageError: slot kinds do not match or a slot is out of range
    """
    _check_slot(t, up_slot, UP)
    _check_slot(t, down_slot, DOWN)
    remaining = [a for a in range(t.rank) if a not in (up_slot, down_slot)]

    def component(index: Index) -> Rational:
        full = [0] * t.rank
        for a, i in zip(remaining, index):
            full[a] = i
        total = ZERO
        for p in range(t.dim):
            full[up_slot] = full[down_slot] = p
            total += t[tuple(full)]
        return total

    return Tensor.from_function(t.dim, [t.valence[a] for a in remaining], component)


def act_on_slot(t: Tensor, slot: int, matrix: Tensor, result_kind: Slot) -> Tensor:
    """Replace slot ``slot`` by ``sum_p matrix[l, p] * t[..., p, ...]``."""
    if matrix.rank != 2 or matrix.dim != t.dim:
        raise UsageError("slot action needs a rank-2 tensor of matching dimension")
    if not 0 <= slot < t.rank:
        raise UsageError(f"slot {slot} out of range for rank {t.rank}")
    valence = list(t.valence)
    valence[slot] = result_kind

    def component(index: Index) -> Rational:
        source = list(index)
        total = ZERO
        for p in range(t.dim):
            source[slot] = p
            total += matrix[index[slot], p] * t[tuple(source)]
        return total

    return Tensor.from_function(t.dim, valence, component)


def require_metric(g: Tensor, kind: Slot) -> None:
    """Require a symmetric nondegenerate rank-2 tensor with both slots of ``kind``.

    Raises:
        InvalidMetricError: wrong valence, asymmetric or singular
    """
    if g.valence != (kind, kind):
        raise InvalidMetricError(f"metric must have valence ({kind.value}, {kind.value})")
    for a, b in product(range(g.dim), repeat=2):
        if g[a, b] != g[b, a]:
            raise InvalidMetricError(f"metric is not symmetric at ({a + 1}, {b + 1})")
    if g.to_matrix().det() == 0:
        raise InvalidMetricError("metric is singular")


def lower_index(t: Tensor, up_slot: int, g: Tensor) -> Tensor:
    """Lower an UP slot with the metric; the slot keeps its position."""
    _check_slot(t, up_slot, UP)
    require_metric(g, DOWN)
    return act_on_slot(t, up_slot, g, DOWN)


def raise_index(t: Tensor, down_slot: int, g_inv: Tensor) -> Tensor:
    """Raise a DOWN slot with the inverse metric; the slot keeps its position."""
    _check_slot(t, down_slot, DOWN)
    require_metric(g_inv, UP)
    return act_on_slot(t, down_slot, g_inv, UP)


def kronecker(a: int, b: int) -> Rational:
    return ONE if a == b else ZERO
