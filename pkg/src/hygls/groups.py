"""Finite abelian groups, their characters, and dual pairs of Haar measures.

A group is the direct product of cyclic factors Z_{n_1} x ... x Z_{n_k};
elements are residue tuples, with a bijective flat index in [0, N).  The dual
group is isomorphic with the same factors, so dual elements reuse the same
representation.  A measure pair (alpha on X, beta on Y) is normalized
reciprocally: x_atom * y_atom * N = 1, which is exactly what makes Fourier
inversion an identity.

Everything here is immutable after construction and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

import numpy as np

Element = Tuple[int, ...]

DEFAULT_MAX_ORDER = 2**20


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct product of cyclic groups, elements indexed in row-major order."""

    factors: Tuple[int, ...]
    order: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "_roots", None)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def element(self, index: int) -> Element:
        """Residue tuple of the element with the given flat index."""
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} out of range [0, {self.order})")
        residues = []
        for n in reversed(self.factors):
            index, r = divmod(index, n)
            residues.append(r)
        return tuple(reversed(residues))

    def index(self, element: Sequence[int]) -> int:
        """Flat index of a residue tuple (inverse of :meth:`element`)."""
        self._check_element(element)
        idx = 0
        for r, n in zip(element, self.factors):
            idx = idx * n + r
        return idx

    def elements(self) -> Iterator[Element]:
        return (self.element(i) for i in range(self.order))

    def negate(self, element: Sequence[int]) -> Element:
        """Componentwise additive inverse, (n_j - x_j) mod n_j."""
        self._check_element(element)
        return tuple((n - r) % n for r, n in zip(element, self.factors))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Element:
        self._check_element(a)
        self._check_element(b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def character(self, gamma: Sequence[int], x: Sequence[int]) -> complex:
        """Value gamma(x) = exp(2*pi*i * sum_j gamma_j x_j / n_j).

        Computed from a cached table of order-N roots of unity; the common
        denominator N makes one table serve every factor.
        """
        self._check_element(gamma)
        self._check_element(x)
        phase = 0
        for g, r, n in zip(gamma, x, self.factors):
            phase += g * r * (self.order // n)
        return complex(self.roots[phase % self.order])

    @property
    def roots(self) -> np.ndarray:
        """Table of the N-th roots of unity, exp(2*pi*i*k/N)."""
        if self._roots is None:  # type: ignore[attr-defined]
            k = np.arange(self.order)
            object.__setattr__(
                self, "_roots", np.exp(2j * np.pi * k / self.order)
            )
        return self._roots  # type: ignore[attr-defined]

    def residue_matrix(self) -> np.ndarray:
        """(N, rank) int array: row i is the residue tuple of element i."""
        grids = np.indices(self.factors).reshape(self.rank, self.order)
        return grids.T.copy()

    def _check_element(self, element: Sequence[int]) -> None:
        if len(element) != self.rank:
            raise ValueError(
                f"element {tuple(element)} has rank {len(element)}, expected {self.rank}"
            )
        for r, n in zip(element, self.factors):
            if not 0 <= r < n:
                raise ValueError(f"residue {r} out of range [0, {n})")

    def __repr__(self) -> str:
        return f"FiniteAbelianGroup({'x'.join(str(n) for n in self.factors)})"


def make_group(factors: Sequence[int], max_order: int = DEFAULT_MAX_ORDER) -> FiniteAbelianGroup:
    """Build the product of cyclic groups Z_{n_1} x ... x Z_{n_k}.

    Raises ValueError for an empty factor list, a factor below 2, or a total
    order beyond ``max_order``.
    """
    factors = tuple(int(n) for n in factors)
    if not factors:
        raise ValueError("factor list is empty")
    order = 1
    for j, n in enumerate(factors):
        if n < 2:
            raise ValueError(f"factor {n} at position {j} is below 2")
        order *= n
        if order > max_order:
            raise ValueError(
                f"factor {n} at position {j} pushes the order to {order}, "
                f"beyond the configured maximum {max_order}"
            )
    return FiniteAbelianGroup(factors=factors, order=order)


@dataclass(frozen=True)
class MeasuredDualPair:
    """Reciprocally normalized Haar measures on a group and its dual.

    alpha puts mass ``x_atom = A/N`` on each point of X (total A); beta puts
    ``y_atom = 1/A`` on each point of Y (total B = N/A).  The defining
    invariant is x_atom * y_atom * N = 1.
    """

    group: FiniteAbelianGroup
    A: float
    x_atom: float
    y_atom: float
    B: float

    def __post_init__(self) -> None:
        n = self.group.order
        if abs(self.x_atom * self.y_atom * n - 1.0) > 1e-14:
            raise ValueError("measure pair violates x_atom * y_atom * N = 1")

    def atom(self, side: str) -> float:
        if side == "X":
            return self.x_atom
        if side == "Y":
            return self.y_atom
        raise ValueError(f"side must be 'X' or 'Y', got {side!r}")

    def total_mass(self, side: str) -> float:
        return self.A if side == "X" else self.B


def make_measure_pair(group: FiniteAbelianGroup, A: float) -> MeasuredDualPair:
    """Measure pair with total alpha-mass A (A=1: probability; A=N: counting)."""
    A = float(A)
    if not math.isfinite(A) or A <= 0.0:
        raise ValueError(f"total mass A must be positive and finite, got {A}")
    n = group.order
    return MeasuredDualPair(group=group, A=A, x_atom=A / n, y_atom=1.0 / A, B=n / A)
