"""Fourier transform against a reciprocally normalized measure pair.

Two routes are kept side by side: a naive character-sum transform, which is a
direct transcription of the defining integral and serves as the permanent
correctness oracle, and a fast path built on multidimensional FFTs over the
factor tuple.  Both apply the same atom weighting:

    forward:  fhat(gamma) = x_atom * sum_x f(x) * conj(gamma(x))
    inverse:  f(x)        = y_atom * sum_gamma g(gamma) * gamma(x)

All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .groups import MeasuredDualPair

_NAIVE_CHUNK = 512


@dataclass(frozen=True)
class GroupFunction:
    """Complex-valued function on X or on the dual side Y, stored by index."""

    pair: MeasuredDualPair
    side: str
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.side not in ("X", "Y"):
            raise ValueError(f"side must be 'X' or 'Y', got {self.side!r}")
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.pair.group.order,):
            raise ValueError(
                f"values have shape {values.shape}, expected ({self.pair.group.order},)"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("values contain NaN or Inf")
        object.__setattr__(self, "values", values)

    @property
    def atom(self) -> float:
        return self.pair.atom(self.side)

    def scaled(self, c: complex) -> "GroupFunction":
        return GroupFunction(self.pair, self.side, c * self.values)

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        if other.pair != self.pair or other.side != self.side:
            raise ValueError("cannot add functions on different measured sides")
        return GroupFunction(self.pair, self.side, self.values + other.values)


def constant_function(pair: MeasuredDualPair, value: complex = 1.0, side: str = "X") -> GroupFunction:
    return GroupFunction(pair, side, np.full(pair.group.order, value, dtype=np.complex128))


def indicator(pair: MeasuredDualPair, index: int = 0, side: str = "X") -> GroupFunction:
    values = np.zeros(pair.group.order, dtype=np.complex128)
    values[index] = 1.0
    return GroupFunction(pair, side, values)


def point_mass(pair: MeasuredDualPair, side: str = "X") -> GroupFunction:
    """N * indicator{0}: unit alpha-mass concentrated at the identity (A=1)."""
    return indicator(pair, 0, side).scaled(pair.group.order)


def chirp_function(pair: MeasuredDualPair, side: str = "X") -> GroupFunction:
    """Unimodular quadratic chirp whose transform has constant modulus.

    Per cyclic factor of size n the phase is pi*x^2/n for even n (well defined
    on Z_n) and 2*pi*x^2/n for odd n; in both cases the factor DFT has modulus
    sqrt(n) at every frequency, so |fhat| = x_atom * sqrt(N) everywhere.
    """
    group = pair.group
    residues = group.residue_matrix()
    phase = np.zeros(group.order)
    for j, n in enumerate(group.factors):
        x = residues[:, j].astype(float)
        if n % 2 == 0:
            phase += np.pi * x * x / n
        else:
            phase += 2.0 * np.pi * x * x / n
    return GroupFunction(pair, side, np.exp(1j * phase))


def random_function(pair: MeasuredDualPair, rng: np.random.Generator, side: str = "X") -> GroupFunction:
    n = pair.group.order
    values = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return GroupFunction(pair, side, values)


def _naive_sum(pair: MeasuredDualPair, values: np.ndarray, sign: int) -> np.ndarray:
    """sum_x values[x] * exp(sign * 2*pi*i * phase(out, x) / N), chunked by rows."""
    group = pair.group
    n = group.order
    residues = group.residue_matrix().astype(np.int64)
    weights = np.array([n // f for f in group.factors], dtype=np.int64)
    roots = group.roots
    out = np.empty(n, dtype=np.complex128)
    scaled = residues * weights  # (N, k)
    for start in range(0, n, _NAIVE_CHUNK):
        rows = scaled[start : start + _NAIVE_CHUNK]
        phase = (rows @ residues.T) % n
        kernel = roots[phase] if sign > 0 else np.conj(roots[phase])
        out[start : start + rows.shape[0]] = kernel @ values
    return out


def fourier_forward(f: GroupFunction) -> GroupFunction:
    """Naive character-sum transform of a function on X; output lives on Y."""
    if f.side != "X":
        raise ValueError("fourier_forward expects a function on side X")
    out = f.pair.x_atom * _naive_sum(f.pair, f.values, sign=-1)
    return GroupFunction(f.pair, "Y", out)


def fourier_inverse(g: GroupFunction) -> GroupFunction:
    """Naive inverse transform of a function on Y; output lives on X."""
    if g.side != "Y":
        raise ValueError("fourier_inverse expects a function on side Y")
    out = g.pair.y_atom * _naive_sum(g.pair, g.values, sign=+1)
    return GroupFunction(g.pair, "X", out)


def fourier_fast(f: GroupFunction) -> GroupFunction:
    """FFT route: forward from X, inverse from Y.  Agrees with the naive path.

    Uses per-axis mixed-radix FFTs over the factor tuple (numpy's pocketfft,
    which handles arbitrary axis lengths), with the same atom weighting as the
    naive transforms.
    """
    group = f.pair.group
    cube = f.values.reshape(group.factors)
    if f.side == "X":
        out = f.pair.x_atom * np.fft.fftn(cube).ravel()
        return GroupFunction(f.pair, "Y", out)
    out = (f.pair.y_atom * group.order) * np.fft.ifftn(cube).ravel()
    return GroupFunction(f.pair, "X", out)


def roundtrip_error(f: GroupFunction, fast: bool = True) -> float:
    """max |inverse(forward(f)) - f|, the inversion-identity defect."""
    if fast:
        back = fourier_fast(fourier_fast(f))
    else:
        back = fourier_inverse(fourier_forward(f))
    return float(np.max(np.abs(back.values - f.values)))
