"""Delimited output, JSON verdict files and report figures.

Writers here are deterministic: no timestamps, no environment echo, fixed
float formatting, CRLF row endings in the CSV files.  Rerunning the same
configuration must reproduce every CSV and JSON byte for byte.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .analysis import NormSeries, Verdict  # noqa: E402

__all__ = [
    "write_norms_csv", "write_table_csv", "write_sweep_csv", "write_ghat_csv",
    "write_verdicts_json", "write_manifest_json", "fig_norm_decay",
    "fig_field_overlay", "format_verdict_line",
]

_FLOAT_FMT = "%.12e"
_PNG_META = {"Software": "relaxwave"}


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _FLOAT_FMT % float(value)
    return str(value)


def write_table_csv(path, columns: dict[str, np.ndarray]) -> None:
    """Column-oriented CSV with CRLF endings and fixed scientific formatting."""
    names = list(columns)
    arrays = [np.asarray(columns[n]) for n in names]
    n_rows = len(arrays[0])
    if any(len(a) != n_rows for a in arrays):
        raise ValueError("all columns must have the same length")
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(names)
        for i in range(n_rows):
            writer.writerow([_fmt(a[i]) for a in arrays])


def write_norms_csv(path, series: NormSeries) -> None:
    write_table_csv(path, {"t": series.times, "l1": series.l1,
                           "l2": series.l2, "linf": series.linf})


def write_sweep_csv(path, rows: list[dict]) -> None:
    names = ["gamma", "exponent_l1", "exponent_l2", "exponent_linf", "log_flag"]
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(names)
        for row in rows:
            writer.writerow([_fmt(row[n]) for n in names])


def write_ghat_csv(path, xi: np.ndarray, values: np.ndarray) -> None:
    write_table_csv(path, {"xi": xi, "re": np.real(values), "im": np.imag(values)})


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def write_verdicts_json(path, verdicts: list[Verdict]) -> None:
    payload = {"verdicts": [_jsonable(dataclasses.asdict(v)) for v in verdicts],
               "all_passed": all(v.passed for v in verdicts)}
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                          encoding="ascii")


def write_manifest_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n",
                          encoding="ascii")


def format_verdict_line(v: Verdict) -> str:
    """One human-readable line per check for the terminal."""
    parts = [f"{v.status.upper():<12}", f"{v.claim_id:<16}"]
    nums = ", ".join(f"{k}={val:.4g}" if isinstance(val, float) else f"{k}={val}"
                     for k, val in list(v.measured.items())[:3])
    parts.append(nums if nums else v.notes)
    if v.target:
        parts.append(f"[target {v.target}]")
    return "  ".join(p for p in parts if p)


def fig_norm_decay(path, curves: dict[str, tuple[np.ndarray, np.ndarray]],
                   guides: list[tuple[float, str]] | None = None,
                   title: str = "norm decay") -> None:
    """Log-log decay plot with optional power-law guide lines."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    t_anchor = None
    v_anchor = None
    for label, (t, v) in curves.items():
        pos = (v > 0) & (t > 0)
        ax.loglog(t[pos], v[pos], marker="o", markersize=3, lw=1.1, label=label)
        if t_anchor is None and np.any(pos):
            t_anchor, v_anchor = t[pos], v[pos]
    if guides and t_anchor is not None:
        for slope, label in guides:
            ref = v_anchor[-1] * (t_anchor / t_anchor[-1]) ** slope
            ax.loglog(t_anchor, ref, "--", lw=0.9, color="gray", label=label)
    ax.set_xlabel("t")
    ax.set_ylabel("norm")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.25)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130, metadata=_PNG_META)
    plt.close(fig)


def fig_field_overlay(path, x: np.ndarray, curves: dict[str, np.ndarray],
                      title: str = "fields", xlim: tuple[float, float] | None = None) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for label, y in curves.items():
        ax.plot(x, y, lw=1.1, label=label)
    if xlim is not None:
        ax.set_xlim(*xlim)
    ax.set_xlabel("x")
    ax.set_title(title)
    ax.grid(True, alpha=0.25)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130, metadata=_PNG_META)
    plt.close(fig)
