"""Verification suites, config handling, reports, and CSV scan writers.

A suite run is deterministic: every trial draws from a PRNG stream derived
from (seed, suite, combo, trial), so results are independent of execution
order and identical across runs with the same config and seed.  Reports are
JSON with sorted keys; CSVs use '.' decimals and 17 significant digits so
doubles round-trip exactly.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .fourier import GroupFunction, fourier_fast, fourier_forward, random_function
from .gls import PsiFunction, natural_function, psi_constant, psi_exp, psi_power, psi_singleton, tail_check, truncated_fundamental
from .groups import make_group, make_measure_pair
from .hy import in_domain_Q, in_domain_Q_hat, k_const, scan_witness_ratio, verify_hy, verify_hy_conjugate
from .norms import lp_norm
from .records import CheckRecord, _jsonable, make_record
from .theorems import factorize_trivial, verify_theorem21, verify_theorem22

SCHEMA_VERSION = 1

DEFAULT_TOLERANCES = {
    "inversion": 1e-10,
    "fft": 1e-9,
    "plancherel": 1e-10,
    "hy": 1e-9,
    "hy_conjugate": 1e-9,
    "theorem21": 1e-8,
    "theorem22": 1e-8,
    "tail": 1e-12,
}

ALL_SUITES = ("inversion", "hy", "hy_conjugate", "theorem21", "theorem22", "tail")

DEFAULT_HY_PAIRS = [[2.0, 2.0], [2.0, 4.0], [2.5, 3.0], [4.0, 8.0], [3.0, 6.0]]
DEFAULT_CONJ_PAIRS = [[1.0, 1.5], [1.25, 2.0], [1.5, 2.5], [1.5, 3.0], [2.0, 2.0]]


class ConfigError(ValueError):
    """Malformed or inconsistent suite configuration."""


@dataclass
class SuiteConfig:
    seed: int = 20240101
    trials: int = 3
    groups: List[List[int]] = field(default_factory=lambda: [[8], [8, 3]])
    A_values: List[float] = field(default_factory=lambda: [0.5, 1.0, 4.0])
    B_values: List[float] = field(default_factory=lambda: [1.0, 4.0, 0.5])
    exponent_grid: List[List[float]] = field(default_factory=lambda: [list(x) for x in DEFAULT_HY_PAIRS])
    conjugate_exponent_grid: List[List[float]] = field(
        default_factory=lambda: [list(x) for x in DEFAULT_CONJ_PAIRS]
    )
    psi_specs: List[str] = field(default_factory=lambda: ["one", "power:1", "power:0.5", "natural"])
    mode: str = "as-derived"
    suites: List[str] = field(default_factory=lambda: list(ALL_SUITES))
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    theorem_grid: int = 160
    pool_size: int = 3
    report_path: str = "hygls_report.json"

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "SuiteConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
        cfg = cls()
        known = set(cfg.__dataclass_fields__)
        for key, value in raw.items():
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError(f"trials must be an integer >= 1, got {self.trials!r}")
        if not isinstance(self.seed, int):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        if self.mode not in ("as-derived", "as-written"):
            raise ConfigError(f"mode must be 'as-derived' or 'as-written', got {self.mode!r}")
        if not self.groups:
            raise ConfigError("groups must be a non-empty list of factor lists")
        for factors in self.groups:
            try:
                make_group(factors)
            except ValueError as exc:
                raise ConfigError(f"bad group {factors!r}: {exc}") from exc
        for a in self.A_values:
            if not (isinstance(a, (int, float)) and a > 0 and math.isfinite(a)):
                raise ConfigError(f"A_values entries must be positive finite, got {a!r}")
        for b in self.B_values:
            if not (isinstance(b, (int, float)) and b > 0 and math.isfinite(b)):
                raise ConfigError(f"B_values entries must be positive finite, got {b!r}")
        tol = dict(DEFAULT_TOLERANCES)
        tol.update(self.tolerances or {})
        for name, value in tol.items():
            # zero is admitted deliberately: it forces float-level failures
            if not (isinstance(value, (int, float)) and value >= 0):
                raise ConfigError(f"tolerance {name!r} must be nonnegative, got {value!r}")
        self.tolerances = tol
        for name in self.suites:
            if name not in ALL_SUITES:
                raise ConfigError(f"unknown suite {name!r}; known: {', '.join(ALL_SUITES)}")
        for pair_list, label in ((self.exponent_grid, "exponent_grid"),
                                 (self.conjugate_exponent_grid, "conjugate_exponent_grid")):
            for pair in pair_list:
                if len(pair) != 2 or not all(isinstance(v, (int, float)) and v > 0 for v in pair):
                    raise ConfigError(f"{label} entries must be positive pairs, got {pair!r}")
        if not isinstance(self.theorem_grid, int) or self.theorem_grid < 8:
            raise ConfigError("theorem_grid must be an integer >= 8")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "groups": self.groups,
            "A_values": self.A_values,
            "B_values": self.B_values,
            "exponent_grid": self.exponent_grid,
            "conjugate_exponent_grid": self.conjugate_exponent_grid,
            "psi_specs": self.psi_specs,
            "mode": self.mode,
            "suites": self.suites,
            "tolerances": self.tolerances,
            "theorem_grid": self.theorem_grid,
            "pool_size": self.pool_size,
            "report_path": self.report_path,
        }


def load_config(path: str) -> SuiteConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
    return SuiteConfig.from_dict(raw)


def parse_psi_spec(
    spec: str,
    p_lo: float = 1.0,
    b: float = math.inf,
    n_grid: int = 512,
    pool: Optional[Sequence[GroupFunction]] = None,
) -> PsiFunction:
    """Weight constructors by name: one, const:c, power:a, sqrt, linear, exp,
    singleton:p0, natural; an optional @lo,hi suffix overrides the support."""
    spec = spec.strip()
    if "@" in spec:
        base, _, support = spec.partition("@")
        parts = support.split(",")
        if len(parts) != 2:
            raise ConfigError(f"bad support suffix in psi spec {spec!r}")
        p_lo = float(parts[0])
        b = math.inf if parts[1].strip() in ("inf", "Infinity") else float(parts[1])
        spec = base
    name, _, arg = spec.partition(":")
    name = name.strip()
    try:
        if name == "one":
            return psi_constant(1.0, p_lo, b, n_grid)
        if name == "const":
            return psi_constant(float(arg), p_lo, b, n_grid)
        if name == "power":
            return psi_power(float(arg), p_lo, b, n_grid)
        if name == "sqrt":
            return psi_power(0.5, p_lo, b, n_grid)
        if name == "linear":
            return psi_power(1.0, p_lo, b, n_grid)
        if name == "exp":
            return psi_exp(p_lo, b, n_grid)
        if name == "singleton":
            return psi_singleton(float(arg))
        if name == "natural":
            if pool is None:
                raise ConfigError("psi spec 'natural' needs a function pool (suite context only)")
            return natural_function(pool, p_lo, b, n_grid)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad psi spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown psi spec {spec!r}")


@dataclass
class Report:
    config: Dict[str, Any]
    records: List[CheckRecord]
    wall_time_s: float

    @property
    def summary(self) -> Dict[str, Dict[str, int]]:
        out: Dict[str, Dict[str, int]] = {}
        for record in self.records:
            slot = out.setdefault(record.name, {"pass": 0, "fail": 0})
            slot["pass" if record.passed else "fail"] += 1
        return out

    @property
    def failures(self) -> int:
        return sum(not r.passed for r in self.records)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "tool_version": __version__,
            "config": {k: _jsonable(v) for k, v in self.config.items()},
            "summary": self.summary,
            "counts": {"pass": len(self.records) - self.failures, "fail": self.failures},
            "records": [r.to_dict() for r in self.records],
            "wall_time_s": self.wall_time_s,
        }

    def to_json(self, include_wall_time: bool = True) -> str:
        data = self.to_dict()
        if not include_wall_time:
            data.pop("wall_time_s")
        return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _rng(config: SuiteConfig, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((config.seed,) + key))


def _suite_inversion(config: SuiteConfig) -> List[CheckRecord]:
    records = []
    tol_inv = config.tolerances["inversion"]
    tol_fft = config.tolerances["fft"]
    tol_pl = config.tolerances["plancherel"]
    for gi, factors in enumerate(config.groups):
        group = make_group(factors)
        for ai, A in enumerate(config.A_values):
            pair = make_measure_pair(group, A)
            worst_inv = worst_fft = worst_pl = 0.0
            for trial in range(config.trials):
                f = random_function(pair, _rng(config, 0, gi, ai, trial))
                scale = float(np.max(np.abs(f.values)))
                back = fourier_fast(fourier_fast(f))
                worst_inv = max(worst_inv, float(np.max(np.abs(back.values - f.values))) / scale)
                naive = fourier_forward(f)
                fast = fourier_fast(f)
                ref = float(np.max(np.abs(naive.values)))
                worst_fft = max(worst_fft, float(np.max(np.abs(naive.values - fast.values))) / max(ref, 1e-300))
                n2 = lp_norm(f, 2)
                worst_pl = max(worst_pl, abs(n2 - lp_norm(fast, 2)) / max(n2, 1e-300))
            # lhs = worst observed error, rhs = the configured tolerance itself
            common = dict(group=list(factors), A=A, trials=config.trials)
            records.append(make_record("inversion", worst_inv, tol_inv, 0.0, relative=False, **common))
            records.append(make_record("fft", worst_fft, tol_fft, 0.0, relative=False, **common))
            records.append(make_record("plancherel", worst_pl, tol_pl, 0.0, relative=False, **common))
    return records


def _suite_hy(config: SuiteConfig) -> List[CheckRecord]:
    records = []
    tol = config.tolerances["hy"]
    for gi, factors in enumerate(config.groups):
        group = make_group(factors)
        for ai, A in enumerate(config.A_values):
            pair = make_measure_pair(group, A)
            for pi, (p, q) in enumerate(config.exponent_grid):
                if not in_domain_Q(p, q):
                    continue
                for trial in range(config.trials):
                    f = random_function(pair, _rng(config, 1, gi, ai, pi, trial))
                    records.append(verify_hy(f, p, q, tol=tol))
    return records


def _suite_hy_conjugate(config: SuiteConfig) -> List[CheckRecord]:
    records = []
    tol = config.tolerances["hy_conjugate"]
    for gi, factors in enumerate(config.groups):
        group = make_group(factors)
        pair = make_measure_pair(group, float(group.order))  # discrete normalization
        for pi, (p, q) in enumerate(config.conjugate_exponent_grid):
            if not in_domain_Q_hat(p, q):
                continue
            for trial in range(config.trials):
                f = random_function(pair, _rng(config, 2, gi, pi, trial))
                records.append(verify_hy_conjugate(f, p, q, tol=tol))
    return records


def _theorem_psis(
    config: SuiteConfig,
    pool: List[GroupFunction],
    p_lo: float,
    b: float,
) -> List[Tuple[str, PsiFunction]]:
    out = []
    for spec in config.psi_specs:
        psi = parse_psi_spec(spec, p_lo=p_lo, b=b, n_grid=config.theorem_grid, pool=pool)
        out.append((spec, psi))
    return out


def _suite_theorem21(config: SuiteConfig) -> List[CheckRecord]:
    records = []
    tol = config.tolerances["theorem21"]
    for gi, factors in enumerate(config.groups):
        group = make_group(factors)
        for ai, A in enumerate(config.A_values):
            pair = make_measure_pair(group, A)
            pool_rng = _rng(config, 3, gi, ai, 10_000)
            pool = [random_function(pair, pool_rng) for _ in range(config.pool_size)]
            for si, (spec, psi) in enumerate(_theorem_psis(config, pool, 1.0, math.inf)):
                fact = factorize_trivial(psi, pair, "compact", n_grid=config.theorem_grid)
                for trial in range(config.trials):
                    f = random_function(pair, _rng(config, 3, gi, ai, si, trial))
                    records.extend(verify_theorem21(f, psi, fact, pair, tol=tol, n_records=17))
    return records


def _suite_theorem22(config: SuiteConfig) -> List[CheckRecord]:
    records = []
    tol = config.tolerances["theorem22"]
    as_written = config.mode == "as-written"
    # as-derived weights live on the input side, as-written on the transform side
    psi_lo, psi_b = (2.0, math.inf) if as_written else (1.0, 2.0)
    for gi, factors in enumerate(config.groups):
        group = make_group(factors)
        for bi, B in enumerate(config.B_values):
            pair = make_measure_pair(group, group.order / B)
            pool_rng = _rng(config, 4, gi, bi, 10_000)
            pool = [random_function(pair, pool_rng) for _ in range(config.pool_size)]
            if as_written:
                pool = [fourier_fast(g) for g in pool]
            for si, (spec, psi) in enumerate(_theorem_psis(config, pool, psi_lo, psi_b)):
                fact = factorize_trivial(psi, pair, "discrete", mode=config.mode, n_grid=config.theorem_grid)
                for trial in range(config.trials):
                    f = random_function(pair, _rng(config, 4, gi, bi, si, trial))
                    records.extend(verify_theorem22(f, psi, fact, pair, tol=tol, n_records=17))
    return records


def _suite_tail(config: SuiteConfig) -> List[CheckRecord]:
    records = []
    tol = config.tolerances["tail"]
    for gi, factors in enumerate(config.groups):
        group = make_group(factors)
        pair = make_measure_pair(group, 1.0)
        for trial in range(config.trials):
            f = random_function(pair, _rng(config, 5, gi, trial))
            for psi in (natural_function([f], n_grid=config.theorem_grid),
                        psi_exp(n_grid=config.theorem_grid)):
                records.extend(tail_check(f, psi, tol=tol))
    return records


_SUITE_RUNNERS = {
    "inversion": _suite_inversion,
    "hy": _suite_hy,
    "hy_conjugate": _suite_hy_conjugate,
    "theorem21": _suite_theorem21,
    "theorem22": _suite_theorem22,
    "tail": _suite_tail,
}


def run_suite(config: SuiteConfig) -> Report:
    """Run every enabled suite; each trial's PRNG stream is derived from
    (seed, suite, combo, trial) so parallel or reordered execution could not
    change the results."""
    start = time.perf_counter()
    records: List[CheckRecord] = []
    for name in config.suites:
        records.extend(_SUITE_RUNNERS[name](config))
    wall = time.perf_counter() - start
    return Report(config=config.to_dict(), records=records, wall_time_s=wall)


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def scan_ratio(
    p: float,
    q: float,
    A: float,
    n_min: int,
    n_max: int,
    out_path: str,
) -> List[Tuple[int, float, float]]:
    """Write the witness-ratio scan over cyclic groups Z_N, N in [n_min, n_max].

    CSV columns: N,p,q,A,ratio,K_or_inf; rows sorted by N.  Returns the rows.
    """
    if n_max < n_min or n_min < 2:
        raise ValueError(f"need 2 <= Nmin <= Nmax, got [{n_min}, {n_max}]")
    rows = []
    for n in range(n_min, n_max + 1):
        group = make_group([n])
        ratio = scan_witness_ratio(group, p, q, A)
        rows.append((n, ratio, k_const(p, q, A)))
    lines = ["N,p,q,A,ratio,K_or_inf"]
    for n, ratio, k in rows:
        lines.append(f"{n},{_fmt(p)},{_fmt(q)},{_fmt(A)},{_fmt(ratio)},{_fmt(k)}")
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return rows


def fundamental_table(
    psi_spec: str,
    deltas: Sequence[float],
    out_path: str,
    span: Optional[Tuple[float, float]] = None,
    n_grid: int = 512,
) -> List[Tuple[float, float]]:
    """Tabulate the (truncated) fundamental function over a delta grid.

    CSV columns: delta,s1,s2,phi; rows sorted by delta, phi nondecreasing.
    """
    if not deltas:
        raise ValueError("delta grid is empty")
    psi = parse_psi_spec(psi_spec, n_grid=n_grid)
    s1, s2 = span if span is not None else (psi.p_lo, psi.b)
    rows = []
    for delta in sorted(float(d) for d in deltas):
        phi = truncated_fundamental(psi, delta, (s1, s2))
        rows.append((delta, phi))
    lines = ["delta,s1,s2,phi"]
    for delta, phi in rows:
        lines.append(f"{_fmt(delta)},{_fmt(s1)},{_fmt(s2)},{_fmt(phi)}")
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return rows
