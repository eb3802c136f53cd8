"""Figure rendering for scan/fundamental CSVs and suite reports.

Rendering is opt-in (--plot); figures are written next to the delimited
output with the same basename.  Uses the Agg backend, never a display.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def figure_path_for(out_path: str) -> str:
    return str(Path(out_path).with_suffix(".png"))


def render_scan(
    rows: Sequence[Tuple[int, float, float]],
    p: float,
    q: float,
    A: float,
    png_path: str,
) -> None:
    """log-log witness ratio vs group order, with the sharp constant if finite."""
    ns = [r[0] for r in rows]
    ratios = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.loglog(ns, ratios, marker="o", ms=3, lw=1, label="witness ratio")
    k = rows[0][2]
    if math.isfinite(k):
        ax.axhline(k, color="tab:red", lw=1, ls="--", label=f"sharp constant {k:.6g}")
    ax.set_xlabel("group order N")
    ax.set_ylabel(r"$|\hat f|_q / |f|_p$")
    ax.set_title(f"transform-norm ratio scan, p={p:g}, q={q:g}, A={A:g}")
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


def render_fundamental(
    rows: Sequence[Tuple[float, float]],
    psi_spec: str,
    span: Tuple[float, float],
    png_path: str,
) -> None:
    deltas = [r[0] for r in rows]
    phis = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.loglog(deltas, phis, marker="o", ms=3, lw=1)
    ax.set_xlabel(r"$\delta$")
    ax.set_ylabel(r"$\varphi(\delta)$")
    hi = "inf" if math.isinf(span[1]) else f"{span[1]:g}"
    ax.set_title(f"fundamental function of {psi_spec} on [{span[0]:g}, {hi}]")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


def render_report(report: Dict[str, Any], png_path: str) -> None:
    """Per-check pass/fail bars and the distribution of relative slacks."""
    summary: Dict[str, Dict[str, int]] = report.get("summary", {})
    names = sorted(summary)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10.0, 4.0))
    passes = [summary[n]["pass"] for n in names]
    fails = [summary[n]["fail"] for n in names]
    ys = range(len(names))
    ax1.barh(ys, passes, color="tab:green", label="pass")
    ax1.barh(ys, fails, left=passes, color="tab:red", label="fail")
    ax1.set_yticks(list(ys), names, fontsize=8)
    ax1.set_xlabel("records")
    ax1.set_title("pass/fail by check")
    ax1.legend(fontsize=8)

    slacks: List[float] = []
    for rec in report.get("records", []):
        lhs, rhs = rec.get("lhs"), rec.get("rhs")
        if isinstance(lhs, (int, float)) and isinstance(rhs, (int, float)):
            scale = max(abs(lhs), abs(rhs), 1e-300)
            slacks.append((rhs - lhs) / scale)
    if slacks:
        ax2.hist(slacks, bins=40, color="tab:blue", alpha=0.8)
    ax2.set_xlabel("relative slack (rhs - lhs) / scale")
    ax2.set_title("slack distribution")
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
