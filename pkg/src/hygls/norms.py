"""Weighted L_p norms against the atom of a function's side, and exponent helpers.

Exponents are plain floats; math.inf is an admitted value.  p in (0, 1) is
supported as a quasi-norm (same formula, no triangle inequality claimed).
Accumulation uses compensated summation (math.fsum) and values are rescaled by
their maximum modulus first, so large exponents neither overflow nor lose the
leading digits.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .fourier import GroupFunction


def _lp_from_abs(abs_values: np.ndarray, atom: float, p: float) -> float:
    m = float(abs_values.max()) if abs_values.size else 0.0
    if m == 0.0:
        return 0.0
    if math.isinf(p):
        return m
    scaled = abs_values / m
    total = math.fsum((scaled**p).tolist())
    return m * (atom * total) ** (1.0 / p)


def lp_norm(f: GroupFunction, p: float) -> float:
    """(sum atom * |f|^p)^(1/p); max modulus for p = inf.  Requires p > 0."""
    p = float(p)
    if math.isnan(p) or p <= 0.0:
        raise ValueError(f"exponent p must be positive, got {p}")
    return _lp_from_abs(np.abs(f.values), f.atom, p)


def lp_norm_grid(f: GroupFunction, ps: Sequence[float]) -> np.ndarray:
    """lp_norm at each exponent of a grid, sharing the rescaled moduli.

    Same operation sequence as lp_norm, so grid values match scalar calls.
    """
    abs_values = np.abs(f.values)
    atom = f.atom
    m = float(abs_values.max()) if abs_values.size else 0.0
    out = np.empty(len(ps))
    if m == 0.0:
        out.fill(0.0)
        return out
    scaled = abs_values / m
    for i, p in enumerate(ps):
        p = float(p)
        if math.isinf(p):
            out[i] = m
        else:
            total = math.fsum((scaled**p).tolist())
            out[i] = m * (atom * total) ** (1.0 / p)
    return out


def conjugate_exponent(p: float) -> float:
    """p' = p/(p-1) with the limit conventions 1 -> inf and inf -> 1."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"conjugate exponent undefined for p = {p}")
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def t_of_q(q: float) -> float:
    """min(q', 2) for q >= 2: the low end of the compact-case admissible range."""
    q = float(q)
    if math.isnan(q) or q < 2.0:
        raise ValueError(f"t(q) requires q >= 2, got {q}")
    return min(conjugate_exponent(q), 2.0)


def s_of_p(p: float) -> float:
    """max(p', 2) for 1 <= p <= 2: the discrete-case truncation exponent."""
    p = float(p)
    if math.isnan(p) or not 1.0 <= p <= 2.0:
        raise ValueError(f"s(p) requires 1 <= p <= 2, got {p}")
    return max(conjugate_exponent(p), 2.0)
