"""Figure rendering from result tables.

Three kinds: ``ber`` (log-BER waterfall per series), ``snr_vs_rate``
(the SNR each series needs for a target BER, against its data rate),
and ``papr`` (CCDF per series, log probability axis).  Rendering is a
pure function of the CSV content: no timestamps are embedded, so
re-running on the same inputs produces identical image bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .reader import BER_REQUIRED, PAPR_REQUIRED, group_key, read_rows

__all__ = ["PlotSpec", "render"]

KINDS = ("ber", "snr_vs_rate", "papr")
DEFAULT_GROUPS = ("format", "m", "components")


@dataclass
class PlotSpec:
    """What to draw: inputs, kind, series grouping, output path."""

    inputs: list
    kind: str
    out: str
    group_by: tuple = DEFAULT_GROUPS
    target_ber: float = 1e-4  # snr_vs_rate only
    title: str | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"plot kind must be one of {KINDS}, got {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


def _groups(rows, keys):
    out: dict[str, list] = {}
    for row in rows:
        out.setdefault(group_key(row, keys), []).append(row)
    return out


def _interp_crossing(rows, target):
    """Log-linear SNR interpolation at the target BER; censored rows and
    zero-BER rows are ignored (same rule the tables were built with)."""
    usable = sorted(
        (r for r in rows if not r["censored"] and r["ber"] > 0),
        key=lambda r: r["snr_db"],
    )
    for lo, hi in zip(usable, usable[1:]):
        if lo["ber"] >= target >= hi["ber"]:
            la, lt, lb = (math.log10(v) for v in (lo["ber"], target, hi["ber"]))
            frac = (la - lt) / (la - lb)
            return lo["snr_db"] + frac * (hi["snr_db"] - lo["snr_db"])
    return None


def _render_ber(ax, groups):
    points = 0
    for label, rows in sorted(groups.items()):
        rows = sorted(rows, key=lambda r: r["snr_db"])
        xs = [r["snr_db"] for r in rows]
        ys = [r["ber"] for r in rows]
        line = ax.semilogy(
            [x for x, y in zip(xs, ys) if y > 0],
            [y for y in ys if y > 0],
            "-",
            marker="",
            label=label,
        )[0]
        color = line.get_color()
        solid = [(x, y) for x, y, r in zip(xs, ys, rows) if y > 0 and not r["censored"]]
        open_ = [(x, y) for x, y, r in zip(xs, ys, rows) if y > 0 and r["censored"]]
        if solid:
            ax.semilogy(*zip(*solid), "o", color=color)
        if open_:  # censored points: open markers
            ax.semilogy(*zip(*open_), "o", color=color, markerfacecolor="none")
        points += len(rows)
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("BER")
    ax.grid(True, which="both", alpha=0.3)
    return points


def _render_snr_vs_rate(ax, groups, target):
    points = 0
    for label, rows in sorted(groups.items()):
        snr = _interp_crossing(rows, target)
        if snr is None:
            continue
        rate = rows[0].get("rate_bps_hz")
        if rate in (None, ""):
            continue
        ax.plot(float(rate), snr, "o", label=label)
        points += 1
    ax.set_xlabel("rate (bits/s/Hz)")
    ax.set_ylabel(f"SNR at BER {target:g} (dB)")
    ax.grid(True, alpha=0.3)
    return points


def _render_papr(ax, groups):
    points = 0
    for label, rows in sorted(groups.items()):
        rows = sorted(rows, key=lambda r: r["papr_db"])
        xs = [r["papr_db"] for r in rows if r["exceed_prob"] > 0]
        ys = [r["exceed_prob"] for r in rows if r["exceed_prob"] > 0]
        ax.semilogy(xs, ys, "-", label=label)
        points += len(xs)
    ax.set_xlabel("PAPR threshold (dB)")
    ax.set_ylabel("P(PAPR > threshold)")
    ax.grid(True, which="both", alpha=0.3)
    return points


def render(spec: PlotSpec) -> dict:
    """Render the figure; returns a summary (series/points/path)."""
    required = PAPR_REQUIRED if spec.kind == "papr" else BER_REQUIRED
    rows = read_rows(spec.inputs, required)
    groups = _groups(rows, spec.group_by)

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    if spec.kind == "ber":
        points = _render_ber(ax, groups)
    elif spec.kind == "snr_vs_rate":
        points = _render_snr_vs_rate(ax, groups, spec.target_ber)
    else:
        points = _render_papr(ax, groups)
    if groups and points:
        ax.legend(fontsize=8)
    ax.set_title(spec.title or spec.kind)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=120, metadata=_stable_metadata(spec.out))
    plt.close(fig)
    return {"series": len(groups), "points": points, "out": spec.out}


def _stable_metadata(out: str):
    """Keep image bytes reproducible: no dates or host details."""
    if str(out).lower().endswith(".png"):
        return {"Software": "ofdmplot"}
    if str(out).lower().endswith(".svg"):
        return {"Date": None, "Creator": "ofdmplot"}
    return None
