"""Transform-norm bounds between Grand Lebesgue Spaces, with verifiable chains.

Compact-normalization chain (weight psi on the input function f):
for every q >= 2 whose admissible range [t(q), b) meets psi's support,

    |fhat|_q <= A^(1-1/q) * ||f||_Gpsi / PHI_low[t(q)](A),

where PHI_low[s](delta) is the truncated fundamental sup over p >= s.  Given a
factorization PHI_low[t(q)](A) = theta(q)/nu(q), taking the sup over q yields

    ||fhat||_Gnu <= A * phi[Gtheta](1/A) * ||f||_Gpsi.

Discrete-normalization chain ("as-derived" mode; weight psi again on f, whose
useful support is p <= 2): for every q whose range [1, t(q)] meets the support,

    |fhat|_q <= B^(1/q-1) * ||f||_Gpsi / PHI_up[t(q)](1/B),

with PHI_up the upper-truncated sup over p <= t(q); a factorization
PHI_up[t(q)](1/B) = tau(q)/kappa(q) gives

    ||fhat||_Gkappa <= B^(-1) * phi[Gtau](B) * ||f||_Gpsi.

The default verifiers check these exactly true inequalities.  A second
bookkeeping convention for the discrete chain (mode "as-written": weight on
the transform, per-p records over [1, 2], final constant B^(-1)*phi[Gtau](1/B))
is kept behind the mode flag for comparison; its records assert more than is
true and may legitimately fail.

Numerical discipline: the truncated sups reuse the weight's own grid through
prefix/suffix maxima, and the left-hand GLS sups are evaluated grid-locked on
the factorization's grid, so every record asserts a finite inequality that is
true up to float round-off; refinement is used only where it can loosen a
record (the homogenizing norm and the bound's fundamental function).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .fourier import GroupFunction, fourier_fast
from .gls import P_CAP, PsiFunction, fundamental_function, gls_norm
from .groups import MeasuredDualPair
from .norms import conjugate_exponent, lp_norm, s_of_p
from .records import CheckRecord, make_record
from .hy import in_domain_Q, in_domain_Q_hat


class FactorizationError(ValueError):
    """Factorization components leave the admissible class or miss the target."""


def _t_ext(q: float) -> float:
    """min(q', 2), extended to all q >= 1 (equals 2 for q <= 2)."""
    return min(conjugate_exponent(q), 2.0)


class _TruncatedSups:
    """Prefix/suffix maxima of delta^(1/p)/psi(p) on psi's own grid.

    Restricting the sup to the weight's grid keeps every downstream record an
    exactly true finite inequality whenever the homogenizing GLS norm is
    computed over (at least) the same grid.
    """

    def __init__(self, psi: PsiFunction, delta: float) -> None:
        self.grid = psi.grid
        with np.errstate(over="ignore"):
            w = np.exp(np.log(delta) / psi.grid) / psi.grid_values
        w = np.where(np.isfinite(w), w, -np.inf)
        self.suffix = np.maximum.accumulate(w[::-1])[::-1]
        self.prefix = np.maximum.accumulate(w)

    def from_low(self, s: float) -> Optional[float]:
        """sup over grid points p >= s, or None if the range is empty."""
        idx = int(np.searchsorted(self.grid, s - 1e-12, side="left"))
        if idx >= len(self.grid):
            return None
        value = float(self.suffix[idx])
        return value if value > 0.0 and math.isfinite(value) else None

    def up_to(self, s: float) -> Optional[float]:
        """sup over grid points p <= s, or None if the range is empty."""
        idx = int(np.searchsorted(self.grid, s + 1e-12, side="right")) - 1
        if idx < 0:
            return None
        value = float(self.prefix[idx])
        return value if value > 0.0 and math.isfinite(value) else None

    def first_at_least(self, s: float) -> float:
        idx = int(np.searchsorted(self.grid, s - 1e-12, side="left"))
        return float(self.grid[idx])

    def last_at_most(self, s: float) -> float:
        idx = int(np.searchsorted(self.grid, s + 1e-12, side="right")) - 1
        return float(self.grid[idx])


@dataclass(frozen=True)
class Factorization:
    """Representation of a truncated fundamental function as theta/nu.

    ``theta`` and ``nu`` are admissible weights on the exponent domain covered
    by ``grid``; ``target`` maps an exponent to the truncated fundamental value
    it must factorize; ``residual`` is the worst relative identity error seen
    on the grid.  In the discrete case theta plays tau and nu plays kappa.
    """

    case: str
    mode: str
    theta: PsiFunction
    nu: PsiFunction
    psi: PsiFunction
    pair: MeasuredDualPair
    grid: np.ndarray
    domain: Tuple[float, float]
    target: Callable[[float], Optional[float]] = field(repr=False)
    residual: float = 0.0


def _candidate_grid(lo: float, hi: float, n_grid: int, extras: Sequence[float]) -> np.ndarray:
    cap = min(hi, P_CAP)
    base = np.geomspace(lo, cap, n_grid)
    extra = [e for e in extras if lo <= e <= cap]
    return np.unique(np.concatenate([base, extra]))


def _build(
    psi: PsiFunction,
    pair: MeasuredDualPair,
    case: str,
    mode: str,
    target: Callable[[float], Optional[float]],
    candidates: np.ndarray,
    domain: Tuple[float, float],
    theta_fn: Callable[[float], float],
    label: str,
) -> Factorization:
    kept = [e for e in candidates if target(e) is not None]
    if not kept:
        raise FactorizationError(
            f"no admissible exponents: the weight's support never meets the {case} ranges"
        )
    grid = np.array(kept)

    def nu_fn(e: float) -> float:
        value = target(e)
        if value is None:
            raise ValueError(f"exponent {e} outside the factorization domain")
        return theta_fn(e) / value

    theta = PsiFunction(theta_fn, grid[0], domain[1], grid=grid, label=f"theta[{label}]")
    try:
        nu = PsiFunction(nu_fn, grid[0], domain[1], grid=grid, label=f"nu[{label}]")
    except Exception as exc:
        raise FactorizationError(f"nu component is inadmissible: {exc}") from exc
    fact = Factorization(
        case=case, mode=mode, theta=theta, nu=nu, psi=psi, pair=pair,
        grid=grid, domain=domain, target=target,
    )
    residual = factorization_residual(fact)
    object.__setattr__(fact, "residual", residual)
    return fact


def factorization_residual(fact: Factorization) -> float:
    """Worst relative error of theta/nu against the target on the grid."""
    worst = 0.0
    for e in fact.grid:
        t = fact.target(float(e))
        if t is None:
            continue
        ratio = fact.theta.eval(float(e)) / fact.nu.eval(float(e))
        worst = max(worst, abs(ratio - t) / abs(t))
    return worst


def factorize_trivial(
    psi: PsiFunction,
    pair: MeasuredDualPair,
    case: str,
    mode: str = "as-derived",
    n_grid: int = 256,
    d: float = math.inf,
) -> Factorization:
    """Canonical factorization with theta == 1 and nu = 1/target.

    compact:  target(q) = truncated fundamental of psi over [t(q), b) at A.
    discrete (as-derived):  target(q) = truncated fundamental over [1, t(q)] at 1/B.
    discrete (as-written):  target(p) = truncated fundamental over [s(p), b) at 1/B
    for p in [1, 2], the alternative bookkeeping of the comparison mode.
    """
    if case not in ("compact", "discrete"):
        raise ValueError(f"case must be 'compact' or 'discrete', got {case!r}")
    if mode not in ("as-derived", "as-written"):
        raise ValueError(f"mode must be 'as-derived' or 'as-written', got {mode!r}")
    one = lambda e: 1.0

    if case == "compact":
        sups = _TruncatedSups(psi, pair.A)
        target = lambda q: sups.from_low(_t_ext(q)) if q >= 2.0 else None
        candidates = _candidate_grid(2.0, d, n_grid, extras=[2.0])
        return _build(psi, pair, case, "as-derived", target, candidates, (2.0, d), one, "compact")

    if mode == "as-derived":
        sups = _TruncatedSups(psi, 1.0 / pair.B)
        target = lambda q: sups.up_to(_t_ext(q)) if q >= 1.0 else None
        extras = [1.0, 2.0]
        if psi.is_singleton and psi.p_lo > 1.0:
            extras.append(conjugate_exponent(psi.p_lo))
        candidates = _candidate_grid(1.0, d, n_grid, extras=extras)
        return _build(psi, pair, case, mode, target, candidates, (1.0, d), one, "discrete")

    # as-written: factor over the X-side exponent p in [1, 2].
    sups = _TruncatedSups(psi, 1.0 / pair.B)
    target = lambda p: sups.from_low(s_of_p(p)) if 1.0 <= p <= 2.0 else None
    candidates = np.unique(np.concatenate([np.geomspace(1.0, 2.0, n_grid), [1.0, 2.0]]))
    return _build(psi, pair, case, mode, target, candidates, (1.0, 2.0), one, "discrete-literal")


def factorization_from_components(
    theta: PsiFunction,
    nu: PsiFunction,
    psi: PsiFunction,
    pair: MeasuredDualPair,
    case: str,
    mode: str = "as-derived",
    tol: float = 1e-8,
) -> Factorization:
    """Validate a user-supplied (theta, nu) pair against the factorization identity."""
    trivial = factorize_trivial(psi, pair, case, mode=mode)
    grid = theta.grid
    fact = Factorization(
        case=case, mode=mode, theta=theta, nu=nu, psi=psi, pair=pair,
        grid=grid, domain=(float(grid[0]), theta.b), target=trivial.target,
    )
    residual = factorization_residual(fact)
    if residual > tol:
        raise FactorizationError(
            f"factorization identity violated: residual {residual:.3e} exceeds {tol:.1e}"
        )
    object.__setattr__(fact, "residual", residual)
    return fact


def theorem21_bound(fact: Factorization, pair: MeasuredDualPair) -> float:
    """A * phi[Gtheta](1/A): the compact-case transform-norm constant."""
    if fact.case != "compact":
        raise ValueError("theorem21_bound needs a compact-case factorization")
    A = pair.A
    return A * fundamental_function(fact.theta, 1.0 / A)


def theorem22_bound(fact: Factorization, pair: MeasuredDualPair) -> float:
    """B^(-1) * phi[Gtau](B): the discrete-case constant (as-derived mode).

    The as-written mode returns the literal chain's B^(-1) * phi[Gtau](1/B).
    """
    if fact.case != "discrete":
        raise ValueError("theorem22_bound needs a discrete-case factorization")
    B = pair.B
    delta = B if fact.mode == "as-derived" else 1.0 / B
    return (1.0 / B) * fundamental_function(fact.theta, delta)


def _record_subset(grid: np.ndarray, n_records: int) -> np.ndarray:
    if len(grid) <= n_records:
        return grid
    idx = np.unique(np.linspace(0, len(grid) - 1, n_records).astype(int))
    return grid[idx]


def verify_theorem21(
    f: GroupFunction,
    psi: PsiFunction,
    fact: Factorization,
    pair: MeasuredDualPair,
    tol: float = 1e-8,
    record_qs: Optional[Sequence[float]] = None,
    n_records: int = 33,
) -> List[CheckRecord]:
    """Per-q steps and the final GLS bound for the compact-normalization chain."""
    if f.side != "X":
        raise ValueError("verify_theorem21 expects a function on side X")
    if fact.case != "compact":
        raise ValueError("verify_theorem21 needs a compact-case factorization")
    if fact.pair != pair or f.pair != pair:
        raise ValueError("factorization, function and measure pair disagree")
    A = pair.A
    norm_f = gls_norm(f, psi)
    fhat = fourier_fast(f)
    sups = _TruncatedSups(psi, A)
    qs = np.asarray(record_qs, dtype=float) if record_qs is not None else _record_subset(fact.grid, n_records)
    records: List[CheckRecord] = []
    for q in qs:
        q = float(q)
        phi = fact.target(q)
        if phi is None:
            continue
        p_eff = sups.first_at_least(_t_ext(q))
        if not in_domain_Q(p_eff, q):
            continue
        lhs = lp_norm(fhat, q)
        rhs = A ** (1.0 - 1.0 / q) * norm_f / phi
        records.append(
            make_record(
                "theorem21_step", lhs, rhs, tol,
                q=q, A=A, gls_norm=norm_f, phi=phi,
                group=list(pair.group.factors),
            )
        )
    bound = theorem21_bound(fact, pair)
    lhs = gls_norm(fhat, fact.nu, refine=False)
    records.append(
        make_record(
            "theorem21_final", lhs, bound * norm_f, tol,
            A=A, bound=bound, gls_norm=norm_f, residual=fact.residual,
            group=list(pair.group.factors),
        )
    )
    return records


def verify_theorem22(
    f: GroupFunction,
    psi: PsiFunction,
    fact: Factorization,
    pair: MeasuredDualPair,
    tol: float = 1e-8,
    record_qs: Optional[Sequence[float]] = None,
    n_records: int = 33,
) -> List[CheckRecord]:
    """Discrete-normalization chain records.

    as-derived: psi weights f; per-q steps |fhat|_q <= B^(1/q-1)||f||/PHI_up and
    the final ||fhat||_Gkappa <= B^(-1) phi[Gtau](B) ||f||_Gpsi.

    as-written: psi weights fhat; the literal per-p chain and final bound are
    emitted unchanged, so records may fail by design.
    """
    if f.side != "X":
        raise ValueError("verify_theorem22 expects a function on side X")
    if fact.case != "discrete":
        raise ValueError("verify_theorem22 needs a discrete-case factorization")
    if fact.pair != pair or f.pair != pair:
        raise ValueError("factorization, function and measure pair disagree")
    B = pair.B
    fhat = fourier_fast(f)
    records: List[CheckRecord] = []

    if fact.mode == "as-derived":
        norm_f = gls_norm(f, psi)
        sups = _TruncatedSups(psi, 1.0 / B)
        qs = np.asarray(record_qs, dtype=float) if record_qs is not None else _record_subset(fact.grid, n_records)
        for q in qs:
            q = float(q)
            phi = fact.target(q)
            if phi is None:
                continue
            p_eff = sups.last_at_most(_t_ext(q))
            if not in_domain_Q_hat(p_eff, q):
                continue
            lhs = lp_norm(fhat, q)
            rhs = B ** (1.0 / q - 1.0) * norm_f / phi
            records.append(
                make_record(
                    "theorem22_step", lhs, rhs, tol,
                    q=q, B=B, gls_norm=norm_f, phi=phi,
                    group=list(pair.group.factors),
                )
            )
        bound = theorem22_bound(fact, pair)
        lhs = gls_norm(fhat, fact.nu, refine=False)
        records.append(
            make_record(
                "theorem22_final", lhs, bound * norm_f, tol,
                B=B, bound=bound, gls_norm=norm_f, residual=fact.residual,
                group=list(pair.group.factors),
            )
        )
        return records

    # as-written: the literal chain, with psi weighting the transform.
    norm_fhat = gls_norm(fhat, psi)
    ps = np.asarray(record_qs, dtype=float) if record_qs is not None else _record_subset(fact.grid, n_records)
    for p in ps:
        p = float(p)
        phi = fact.target(p)
        if phi is None:
            continue
        lhs = lp_norm(f, p)
        rhs = B * B ** (1.0 / p) * norm_fhat / phi
        records.append(
            make_record(
                "theorem22_step_as_written", lhs, rhs, tol,
                p=p, B=B, gls_norm=norm_fhat, phi=phi,
                group=list(pair.group.factors),
            )
        )
    bound = theorem22_bound(fact, pair)
    lhs = gls_norm(f, fact.nu, refine=False)
    records.append(
        make_record(
            "theorem22_final_as_written", lhs, bound * norm_fhat, tol,
            B=B, bound=bound, gls_norm=norm_fhat, residual=fact.residual,
            group=list(pair.group.factors),
        )
    )
    return records
