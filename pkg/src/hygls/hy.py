"""Sharp transform-norm constants, their exponent domains, and verifiers.

The forward inequality |fhat|_q <= A^(1-1/p-1/q) |f|_p holds exactly on
Q = {1/p + 1/q <= 1, q >= 2} and the constant is attained by constants.
On the complementary domain Q^ = {1/p + 1/q >= 1, p <= 2} the sharp constant
is B^(1/p+1/q-1), attained by the indicator of a point.  Outside both domains
the operator norm is unbounded in the group order; `unboundedness_scan`
exhibits the growth along a family of groups with closed-form witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .fourier import (
    GroupFunction,
    chirp_function,
    constant_function,
    fourier_fast,
    indicator,
    point_mass,
)
from .groups import FiniteAbelianGroup, MeasuredDualPair, make_measure_pair
from .norms import conjugate_exponent, lp_norm
from .records import CheckRecord, make_record

_DOMAIN_EPS = 1e-12


def _check_exponent(p: float, name: str = "exponent") -> float:
    p = float(p)
    if math.isnan(p) or p <= 0.0:
        raise ValueError(f"{name} must be positive, got {p}")
    return p


def _inv(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


def in_domain_Q(p: float, q: float) -> bool:
    """Membership in Q: 1/p + 1/q <= 1 and q >= 2 (boundary included)."""
    p = _check_exponent(p, "p")
    q = _check_exponent(q, "q")
    return _inv(p) + _inv(q) <= 1.0 + _DOMAIN_EPS and q >= 2.0 - _DOMAIN_EPS


def in_domain_Q_hat(p: float, q: float) -> bool:
    """Membership in the conjugate domain: 1/p + 1/q >= 1 and p <= 2."""
    p = _check_exponent(p, "p")
    q = _check_exponent(q, "q")
    return _inv(p) + _inv(q) >= 1.0 - _DOMAIN_EPS and p <= 2.0 + _DOMAIN_EPS


def classify_pair(p: float, q: float) -> str:
    in_q = in_domain_Q(p, q)
    in_hat = in_domain_Q_hat(p, q)
    if in_q and in_hat:
        return "both"
    if in_q:
        return "in_Q"
    if in_hat:
        return "in_Q_hat"
    return "neither"


def k_const(p: float, q: float, A: float) -> float:
    """A^(1 - 1/p - 1/q) on Q; +inf outside."""
    A = float(A)
    if not (A > 0.0 and math.isfinite(A)):
        raise ValueError(f"total mass A must be positive and finite, got {A}")
    if not in_domain_Q(p, q):
        return math.inf
    return A ** (1.0 - _inv(p) - _inv(q))


def k_hat_const(q: float, p: float, B: float) -> float:
    """B^(1/p + 1/q - 1) on the conjugate domain; +inf outside."""
    B = float(B)
    if not (B > 0.0 and math.isfinite(B)):
        raise ValueError(f"total mass B must be positive and finite, got {B}")
    if not in_domain_Q_hat(p, q):
        return math.inf
    return B ** (_inv(p) + _inv(q) - 1.0)


def verify_hy(f: GroupFunction, p: float, q: float, tol: float = 1e-9) -> CheckRecord:
    """Record for |fhat|_q <= K(p,q) |f|_p; requires (p,q) in Q."""
    if f.side != "X":
        raise ValueError("verify_hy expects a function on side X")
    if not in_domain_Q(p, q):
        raise ValueError(f"(p, q) = ({p}, {q}) is outside Q; no bounded-norm claim to check")
    A = f.pair.A
    fhat = fourier_fast(f)
    lhs = lp_norm(fhat, q)
    rhs = k_const(p, q, A) * lp_norm(f, p)
    return make_record(
        "hy", lhs, rhs, tol, p=p, q=q, A=A, group=list(f.pair.group.factors)
    )


def verify_hy_conjugate(f: GroupFunction, p: float, q: float, tol: float = 1e-9) -> CheckRecord:
    """Record for |fhat|_q <= K^(q,p) |f|_p on the conjugate domain.

    The constant is B^(1/p+1/q-1) and the indicator of a point attains it for
    every normalization.
    """
    if f.side != "X":
        raise ValueError("verify_hy_conjugate expects a function on side X")
    if not in_domain_Q_hat(p, q):
        raise ValueError(f"(p, q) = ({p}, {q}) is outside the conjugate domain")
    B = f.pair.B
    fhat = fourier_fast(f)
    lhs = lp_norm(fhat, q)
    rhs = k_hat_const(q, p, B) * lp_norm(f, p)
    return make_record(
        "hy_conjugate", lhs, rhs, tol, p=p, q=q, B=B, group=list(f.pair.group.factors)
    )


@dataclass(frozen=True)
class OpnormResult:
    estimate: float
    witness: GroupFunction
    converged: bool
    iterations: int
    start: str


def _ratio(f: GroupFunction, p: float, q: float) -> float:
    denom = lp_norm(f, p)
    if denom == 0.0:
        return 0.0
    return lp_norm(fourier_fast(f), q) / denom


def _dual_power(values: np.ndarray, t: float, eps: float) -> np.ndarray:
    # values * (|values|^2 + eps^2)^((t-2)/2): smoothed |v|^(t-1) * phase(v)
    mag2 = values.real**2 + values.imag**2 + eps * eps
    return values * mag2 ** ((t - 2.0) / 2.0)


def _subgroup_indicators(pair: MeasuredDualPair) -> List[GroupFunction]:
    group = pair.group
    out = []
    residues = group.residue_matrix()
    for j, n in enumerate(group.factors):
        for d in range(2, n):
            if n % d == 0:
                values = (residues[:, j] % d == 0).astype(np.complex128)
                out.append(GroupFunction(pair, "X", values))
    return out


def opnorm_search(
    pair: MeasuredDualPair,
    p: float,
    q: float,
    max_iters: int = 120,
    n_random: int = 4,
    seed: int = 7,
    rel_tol: float = 1e-12,
) -> OpnormResult:
    """Estimate sup over f != 0 of |fhat|_q / |f|_p, with the attaining witness.

    Multi-start ascent: the witness catalog (constant, indicator of 0, subgroup
    indicators) is evaluated first so known extremals are never missed, then
    epsilon-smoothed dual-map ascent runs from the catalog's best and from
    seeded random starts.  Every candidate is scored by its genuine unsmoothed
    ratio, so the estimate never exceeds the true supremum.
    """
    p = _check_exponent(p, "p")
    q = _check_exponent(q, "q")
    if not in_domain_Q(p, q):
        raise ValueError(
            f"(p, q) = ({p}, {q}) is outside Q; the supremum is unbounded, use unboundedness_scan"
        )
    rng = np.random.default_rng(seed)
    catalog: List[Tuple[str, GroupFunction]] = [
        ("constant", constant_function(pair)),
        ("indicator", indicator(pair, 0)),
    ]
    catalog += [(f"subgroup_{i}", g) for i, g in enumerate(_subgroup_indicators(pair))]
    best = max(catalog, key=lambda item: _ratio(item[1], p, q))
    best_name, best_ratio = best[0], _ratio(best[1], p, q)
    best_f = best[1]

    p_dual = conjugate_exponent(max(p, 1.0)) if p >= 1.0 else math.inf
    starts: List[Tuple[str, GroupFunction]] = [("ascent_from_" + best_name, best_f)]
    for i in range(n_random):
        values = rng.standard_normal(pair.group.order) + 1j * rng.standard_normal(pair.group.order)
        starts.append((f"random_{i}", GroupFunction(pair, "X", values)))

    converged = True
    total_iters = 0
    for name, f0 in starts:
        f = f0
        prev = _ratio(f, p, q)
        scale = max(float(np.max(np.abs(f.values))), 1.0)
        eps = 1e-8 * scale
        ok = False
        for it in range(max_iters):
            total_iters += 1
            g = fourier_fast(f)
            u = GroupFunction(pair, "Y", _dual_power(g.values, q, eps))
            h = fourier_fast(u)  # inverse transform back to X
            new_values = _dual_power(h.values, p_dual, eps)
            norm = lp_norm(GroupFunction(pair, "X", new_values), p)
            if norm == 0.0:
                break
            f = GroupFunction(pair, "X", new_values / norm)
            current = _ratio(f, p, q)
            if current > best_ratio:
                best_ratio, best_f, best_name = current, f, name
            if abs(current - prev) <= rel_tol * max(current, 1e-300):
                ok = True
                break
            prev = current
        converged = converged and ok
    witness = best_f.scaled(1.0 / lp_norm(best_f, p)) if lp_norm(best_f, p) > 0 else best_f
    return OpnormResult(
        estimate=best_ratio,
        witness=witness,
        converged=converged,
        iterations=total_iters,
        start=best_name,
    )


def scan_witness_ratio(group: FiniteAbelianGroup, p: float, q: float, A: float) -> float:
    """Ratio |fhat|_q/|f|_p of the region-appropriate closed-form witness.

    Point mass N*indicator{0} grows like N^(1/p+1/q-1); the quadratic chirp
    grows like N^(1/q-1/2).  The better of the two certifies growth everywhere
    outside Q and equals the point-mass value inside (where it stays bounded).
    """
    pair = make_measure_pair(group, A)
    ratios = [_ratio(point_mass(pair), p, q)]
    if _inv(q) > 0.5 + _DOMAIN_EPS:  # q < 2 region: point mass alone does not grow
        ratios.append(_ratio(chirp_function(pair), p, q))
    return max(ratios)


def unboundedness_scan(
    p: float,
    q: float,
    group_family: Sequence[FiniteAbelianGroup],
    A: float,
) -> List[Tuple[int, float]]:
    """Witness ratios along a growing group family for (p, q) outside Q.

    The ratios grow without bound in the group order: the point-mass branch has
    exponent 1/p+1/q-1 > 0 when the harmonic sum exceeds 1, and the chirp
    branch has exponent 1/q-1/2 > 0 when q < 2.
    """
    p = _check_exponent(p, "p")
    q = _check_exponent(q, "q")
    if in_domain_Q(p, q):
        raise ValueError(f"(p, q) = ({p}, {q}) lies in Q, where the ratio is bounded")
    if not group_family:
        raise ValueError("group family is empty")
    return [(g.order, scan_witness_ratio(g, p, q, A)) for g in group_family]
