"""Grand Lebesgue Space machinery: weight class, norms, fundamental functions,
and the exponential tail bound.

A weight psi lives on a support that is either a half-open interval [p_lo, b)
with b in (p_lo, inf], or a closed singleton {p0} (the degenerate case in which
the GLS norm collapses to a single Lebesgue norm).  Each weight carries its own
sample grid so that every numerical supremum is reproducible; suprema are grid
maxima optionally sharpened by golden-section refinement around the best local
maxima, which evaluates the true function and therefore can never overshoot.

Infinite upper ends are compactified (equivalent to the substitution
u = 1/p on (0, 1]) by capping the grid at P_CAP; a supremum that is only
approached at the open end is then reproduced to ~|ln delta|/P_CAP relative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from .fourier import GroupFunction
from .norms import lp_norm, lp_norm_grid
from .records import CheckRecord, make_record

P_CAP = float(2**24)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class DegenerateWeightError(ValueError):
    """Weight leaves the admissible class: not bounded away from zero."""


def _golden_max(fn: Callable[[float], float], a: float, b: float, iters: int = 60) -> float:
    """Maximum value of fn on [a, b] by golden-section search (unimodal local use)."""
    if b <= a:
        return fn(a)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    best = max(fn(a), fn(b), fc, fd)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
        best = max(best, fc, fd)
        if b - a <= 1e-12 * max(1.0, abs(a)):
            break
    return best


def _refined_max(
    fn: Callable[[float], float],
    xs: np.ndarray,
    ys: np.ndarray,
    n_local: int = 3,
) -> float:
    """Grid max sharpened by golden-section around the top local maxima."""
    finite = np.where(np.isfinite(ys), ys, -np.inf)
    best = float(np.max(finite))
    if len(xs) == 1 or not np.isfinite(best):
        return best
    is_local = np.ones(len(xs), dtype=bool)
    is_local[1:] &= finite[1:] >= finite[:-1]
    is_local[:-1] &= finite[:-1] >= finite[1:]
    candidates = np.nonzero(is_local)[0]
    order = np.argsort(finite[candidates])[::-1]
    for idx in candidates[order][:n_local]:
        lo = xs[max(idx - 1, 0)]
        hi = xs[min(idx + 1, len(xs) - 1)]
        best = max(best, _golden_max(fn, float(lo), float(hi)))
    return best


def _support_grid(p_lo: float, b: float, n_grid: int) -> np.ndarray:
    hi = P_CAP if math.isinf(b) else b - 1e-9 * (b - p_lo)
    if n_grid < 2 or hi <= p_lo:
        return np.array([p_lo])
    return np.geomspace(p_lo, hi, n_grid)


class PsiFunction:
    """Member of the admissible weight class: positive, bounded below, on its support."""

    def __init__(
        self,
        fn: Callable[[float], float],
        p_lo: float = 1.0,
        b: float = math.inf,
        n_grid: int = 512,
        label: str = "psi",
        grid: "np.ndarray | None" = None,
    ) -> None:
        p_lo = float(p_lo)
        b = float(b)
        if math.isnan(p_lo) or p_lo < 1.0:
            raise ValueError(f"support must start at p_lo >= 1, got {p_lo}")
        if math.isnan(b) or b < p_lo:
            raise ValueError(f"support upper end {b} below lower end {p_lo}")
        self.fn = fn
        self.p_lo = p_lo
        self.b = b
        self.label = label
        if grid is not None:
            self.grid = np.sort(np.asarray(grid, dtype=float))
            if self.grid.size == 0 or self.grid[0] < p_lo:
                raise ValueError("explicit grid must be non-empty and start within the support")
        elif self.is_singleton:
            self.grid = np.array([p_lo])
        else:
            self.grid = _support_grid(p_lo, b, n_grid)
        self.grid_values = np.array([float(fn(p)) for p in self.grid])
        finite = self.grid_values[np.isfinite(self.grid_values)]
        if np.any(np.isnan(self.grid_values)) or finite.size == 0 or np.min(finite) <= 0.0:
            raise DegenerateWeightError(
                f"weight {label!r} is not bounded away from zero on its grid"
            )
        self.continuity_flags = self._continuity_flags()

    @property
    def is_singleton(self) -> bool:
        return self.b == self.p_lo

    def eval(self, p: float) -> float:
        p = float(p)
        if self.is_singleton:
            if p != self.p_lo:
                raise ValueError(f"singleton weight defined only at p = {self.p_lo}")
            return float(self.fn(p))
        if not (self.p_lo <= p <= max(self.grid[-1], self.b if math.isfinite(self.b) else P_CAP)):
            raise ValueError(f"exponent {p} outside the support [{self.p_lo}, {self.b})")
        return float(self.fn(p))

    def _continuity_flags(self) -> List[int]:
        # Heuristic jump detector; recorded, never fatal.
        flags: List[int] = []
        g, v = self.grid, self.grid_values
        for i in range(len(g) - 1):
            if not (np.isfinite(v[i]) and np.isfinite(v[i + 1])):
                continue
            rel_step = (g[i + 1] - g[i]) / g[i]
            rel_jump = abs(v[i + 1] - v[i]) / max(v[i], 1e-300)
            if rel_jump > 10.0 * max(rel_step, 1e-6):
                flags.append(i)
        return flags

    def __repr__(self) -> str:
        if self.is_singleton:
            return f"PsiFunction({self.label!r}, support={{{self.p_lo}}})"
        return f"PsiFunction({self.label!r}, support=[{self.p_lo}, {self.b}))"


def psi_constant(value: float = 1.0, p_lo: float = 1.0, b: float = math.inf, n_grid: int = 512) -> PsiFunction:
    if value <= 0:
        raise DegenerateWeightError("constant weight must be positive")
    return PsiFunction(lambda p: value, p_lo, b, n_grid, label=f"const:{value:g}")


def psi_power(exponent: float, p_lo: float = 1.0, b: float = math.inf, n_grid: int = 512) -> PsiFunction:
    return PsiFunction(lambda p: p**exponent, p_lo, b, n_grid, label=f"power:{exponent:g}")


def psi_exp(p_lo: float = 1.0, b: float = math.inf, n_grid: int = 512) -> PsiFunction:
    def fn(p: float) -> float:
        return math.exp(p) if p < 709.0 else math.inf

    return PsiFunction(fn, p_lo, b, n_grid, label="exp")


def psi_singleton(p0: float, value: float = 1.0) -> PsiFunction:
    if value <= 0:
        raise DegenerateWeightError("singleton weight must be positive")
    return PsiFunction(lambda p: value, p0, p0, 1, label=f"singleton:{p0:g}")


def natural_function(
    family: Sequence[GroupFunction],
    p_lo: float = 1.0,
    b: float = math.inf,
    n_grid: int = 512,
) -> PsiFunction:
    """Pointwise sup of the family's L_p norms; normalizes the family to unit GLS norm."""
    family = list(family)
    if not family:
        raise ValueError("natural function needs a non-empty family")

    def fn(p: float) -> float:
        return max(lp_norm(g, p) for g in family)

    try:
        return PsiFunction(fn, p_lo, b, n_grid, label="natural")
    except DegenerateWeightError as exc:
        raise DegenerateWeightError(
            "natural function of an all-zero family is degenerate"
        ) from exc


def gls_norm(f: GroupFunction, psi: PsiFunction, refine: bool = True) -> float:
    """sup over the support of |f|_p / psi(p).

    The singleton case reuses the lp_norm computation path verbatim, so the
    degenerate GLS norm is bit-for-bit a Lebesgue norm.
    """
    if psi.is_singleton:
        return lp_norm(f, psi.p_lo) / psi.eval(psi.p_lo)
    with np.errstate(invalid="ignore"):
        ratios = lp_norm_grid(f, psi.grid) / psi.grid_values
    ratios = np.where(np.isnan(ratios), 0.0, ratios)
    if not refine:
        return float(np.max(ratios))
    return _refined_max(lambda p: lp_norm(f, p) / psi.eval(p), psi.grid, ratios)


def _delta_pow(delta: float, p: float) -> float:
    return math.exp(math.log(delta) / p)


def fundamental_function(psi: PsiFunction, delta: float, refine: bool = True) -> float:
    """sup over the support of delta^(1/p) / psi(p); nondecreasing in delta."""
    delta = float(delta)
    if math.isnan(delta) or delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if psi.is_singleton:
        return _delta_pow(delta, psi.p_lo) / psi.eval(psi.p_lo)
    with np.errstate(over="ignore"):
        ys = np.exp(np.log(delta) / psi.grid) / psi.grid_values
    if not refine:
        return float(np.max(np.where(np.isfinite(ys), ys, -np.inf)))
    return _refined_max(lambda p: _delta_pow(delta, p) / psi.eval(p), psi.grid, ys)


def truncated_fundamental(
    psi: PsiFunction,
    delta: float,
    span: Tuple[float, float],
    refine: bool = True,
) -> float:
    """sup of delta^(1/p)/psi(p) over the intersection of the support with [s1, s2].

    Covers both truncation flavors: [s, b) for s1=s, s2=inf (low truncated) and
    [p_lo, s] for s1=0/1, s2=s (upper truncated).  Equals fundamental_function
    when the span covers the support.  Raises on an empty intersection.
    """
    delta = float(delta)
    if math.isnan(delta) or delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    s1, s2 = float(span[0]), float(span[1])
    if s2 < s1:
        raise ValueError(f"span [{s1}, {s2}] is empty")
    if psi.is_singleton:
        if s1 <= psi.p_lo <= s2:
            return _delta_pow(delta, psi.p_lo) / psi.eval(psi.p_lo)
        raise ValueError(f"span [{s1}, {s2}] misses the singleton support {{{psi.p_lo}}}")
    lo = max(s1, psi.p_lo)
    hi = min(s2, float(psi.grid[-1]))
    if lo > hi:
        raise ValueError(f"span [{s1}, {s2}] does not intersect the support [{psi.p_lo}, {psi.b})")
    inside = (psi.grid >= lo) & (psi.grid <= hi)
    points = np.unique(np.concatenate([psi.grid[inside], [lo, hi]]))
    with np.errstate(over="ignore"):
        ys = np.array([_delta_pow(delta, p) / psi.eval(p) for p in points])
    if not refine:
        return float(np.max(np.where(np.isfinite(ys), ys, -np.inf)))
    return _refined_max(lambda p: _delta_pow(delta, p) / psi.eval(p), points, ys)


class TailModel:
    """Tail functional of a weight: v(p) = p*ln psi(p) and its convex conjugate.

    v* is a supremum of increasing affine functions of u, hence convex and
    nondecreasing; computing it on a grid only lowers it, which keeps the bound
    exp(-v*) a valid upper estimate for the tail.
    """

    def __init__(self, psi: PsiFunction) -> None:
        self.psi = psi
        with np.errstate(invalid="ignore"):
            self._grid_v = psi.grid * np.log(psi.grid_values)

    def v(self, p: float) -> float:
        return float(p) * math.log(self.psi.eval(p))

    def v_star(self, u: float, refine: bool = True) -> float:
        """Legendre transform sup_p (p*u - v(p)) over the support grid."""
        u = float(u)
        terms = self.psi.grid * u - self._grid_v
        terms = np.where(np.isnan(terms), -np.inf, terms)
        if not refine or self.psi.is_singleton:
            return float(np.max(terms))

        def fn(p: float) -> float:
            value = self.psi.eval(p)
            return p * u - p * math.log(value) if math.isfinite(value) else -math.inf

        return _refined_max(fn, self.psi.grid, terms)


def tail_bound(tm: TailModel, norm: float, y: float) -> float:
    """exp(-v*(ln(y/norm))), asserted for y >= e * norm; clipped into (0, 1]."""
    norm = float(norm)
    y = float(y)
    if norm <= 0.0 or not math.isfinite(norm):
        raise ValueError(f"norm must be positive and finite, got {norm}")
    if y < math.e * norm * (1.0 - 1e-12):
        raise ValueError(f"tail bound asserted only for y >= e*norm = {math.e * norm}, got {y}")
    return min(1.0, math.exp(-tm.v_star(math.log(y / norm))))


def tail_check(
    f: GroupFunction,
    psi: PsiFunction,
    n_y: int = 12,
    tol: float = 1e-12,
) -> List[CheckRecord]:
    """Exact tail measure vs the exponential bound on a probability group.

    Requires the probability normalization A = 1; the measure of {|f| > y} is
    then computed exactly as x_atom * #{|f| > y}.
    """
    if abs(f.pair.total_mass(f.side) - 1.0) > 1e-12:
        raise ValueError("tail_check requires the probability normalization (total mass 1)")
    norm = gls_norm(f, psi)
    if norm <= 0.0:
        raise ValueError("tail_check requires a nonzero function")
    tm = TailModel(psi)
    abs_values = np.abs(f.values)
    peak = float(abs_values.max())
    y_lo = math.e * norm
    y_hi = max(peak, y_lo) * (1.0 + 1e-7)
    ys = np.geomspace(y_lo, y_hi, n_y)
    atom = f.atom
    records = []
    for y in ys:
        measure = atom * int(np.count_nonzero(abs_values > y))
        bound = tail_bound(tm, norm, float(y))
        records.append(
            make_record(
                "tail",
                measure,
                bound,
                tol,
                relative=False,
                y=float(y),
                gls_norm=norm,
                group=list(f.pair.group.factors),
            )
        )
    return records
