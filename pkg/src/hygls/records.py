"""Verified-inequality records shared by every checking suite."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass(frozen=True)
class CheckRecord:
    """One verified inequality instance: lhs <= rhs within a tolerance.

    ``slack = rhs - lhs``; the record passes iff slack >= -tolerance, where the
    tolerance (absolute, possibly derived from a relative one) is stored in
    params for auditability.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    params: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "slack": _jsonable(self.slack),
            "pass": self.passed,
            "params": {k: _jsonable(v) for k, v in sorted(self.params.items())},
        }


def _jsonable(v: Any) -> Any:
    """JSON-safe value: infinities become strings, numpy scalars plain floats."""
    if hasattr(v, "item") and not isinstance(v, (dict, list, tuple)):
        v = v.item()
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def make_record(
    name: str,
    lhs: float,
    rhs: float,
    tol: float,
    relative: bool = True,
    **params: Any,
) -> CheckRecord:
    """Build a record for the claim lhs <= rhs at the given tolerance."""
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs
    scale = max(abs(lhs), abs(rhs)) if relative else 1.0
    tol_abs = tol * scale if relative else tol
    passed = slack >= -tol_abs
    params = dict(params)
    params["tolerance"] = tol_abs
    params["tolerance_kind"] = "relative" if relative else "absolute"
    return CheckRecord(name=name, lhs=lhs, rhs=rhs, slack=slack, passed=passed, params=params)
