"""BER accounting, PAPR statistics, spectral efficiency, and data rates.

Data rates are computed by counting data-bearing constellation symbols
per emitted sample; that counting reproduces the reference rate table
used by the cross-format comparison.  Closed-form expressions are kept
alongside as labelled cross-checks: they agree exactly for the single-
and multi-component clipped formats, but the published closed forms for
the two-frame and super-frame formats disagree with the reference table
(counting is authoritative, see ``closed_form_rate``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RateSpec",
    "count_ber",
    "spectral_efficiency_see",
    "data_rate",
    "closed_form_rate",
    "papr_db",
    "papr_ccdf",
    "papr_quantile_db",
    "TABLE_I",
    "rate_table",
]


def count_ber(tx_bits, rx_bits):
    """Hamming errors over total bits: returns (errors, total, ber)."""
    tx = np.asarray(tx_bits).ravel()
    rx = np.asarray(rx_bits).ravel()
    if tx.shape != rx.shape:
        raise ValueError(f"bit streams differ in length: {tx.size} vs {rx.size}")
    errors = int(np.count_nonzero(tx != rx))
    total = int(tx.size)
    return errors, total, (errors / total if total else 0.0)


def component_sizes(n: int, r: int) -> list[int]:
    """Active-subcarrier counts n/2^(p+1) for components p = 1..r."""
    pmax = int(np.log2(n // 2))
    if not 1 <= r <= pmax:
        raise ValueError(f"component count {r} outside 1..{pmax} for n={n}")
    return [n // 2 ** (p + 1) for p in range(1, r + 1)]


def spectral_efficiency_see(n: int, r: int) -> float:
    """Occupied fraction of the n/2 - 1 usable subcarriers, in percent."""
    return 100.0 * sum(component_sizes(n, r)) / (n / 2)


@dataclass(frozen=True)
class RateSpec:
    """What a format transmits: frame length, orders, structure."""

    format: str
    n: int = 64
    n_cp: int = 0
    orders: tuple = (16,)  # one entry per stream/component where they differ
    components: int = 1  # r for multi-component, depth for super-frame format

    def __post_init__(self):
        if self.n < 8 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two >= 8, got {self.n}")
        if self.n_cp < 0:
            raise ValueError("n_cp must be >= 0")
        for m in self.orders:
            if m < 2 or m & (m - 1):
                raise ValueError(f"modulation order {m} is not a power of two")


def _bits(orders, counts):
    orders = list(orders)
    if len(orders) == 1:
        orders = orders * len(counts)
    if len(orders) != len(counts):
        raise ValueError(f"{len(orders)} orders for {len(counts)} streams")
    return sum(c * int(np.log2(m)) for c, m in zip(counts, orders))


def data_rate(spec: RateSpec) -> float:
    """bits/s/Hz by symbol counting: payload bits per emitted sample."""
    n, ncp = spec.n, spec.n_cp
    fmt = spec.format.lower()
    if fmt == "dco":
        bits, frames = _bits(spec.orders, [n // 2 - 1]), 1
    elif fmt == "aco":
        bits, frames = _bits(spec.orders, [n // 4]), 1
    elif fmt == "see":
        bits, frames = _bits(spec.orders, component_sizes(n, spec.components)), 1
    elif fmt == "haco":
        bits, frames = _bits(spec.orders, [n // 4, n // 4 - 1]), 1
    elif fmt == "asco":
        bits, frames = _bits(spec.orders, [n // 4, n // 4, n // 4 - 1]), 2
    elif fmt == "eu":
        depth = spec.components
        counts = [2 ** (depth - d) * (n // 2 - 1) for d in range(1, depth + 1)]
        bits, frames = _bits(spec.orders, counts), 2 ** depth
    else:
        raise ValueError(f"unknown format {spec.format!r}")
    return bits / (frames * (n + ncp))


def closed_form_rate(spec: RateSpec) -> float | None:
    """Published closed-form rate (per unit bandwidth), for cross-checks.

    Exact for DCO/ACO/SEE/HACO.  The published ASCO and depth-stacked
    forms evaluate below the counted rates (e.g. ASCO 0.53 vs 1.47 at
    n=64, 16-QAM); they are reported as-is, not silently corrected.
    Returns None for mixed-order multi-component configurations, which
    the closed form does not cover.
    """
    n, ncp = spec.n, spec.n_cp
    if len(set(spec.orders)) != 1:
        return None
    log2m = int(np.log2(spec.orders[0]))
    fmt = spec.format.lower()
    if fmt == "dco":
        return (n / 2 - 1) / (n + ncp) * log2m
    if fmt == "aco":
        return (n / 4) / (n + ncp) * log2m
    if fmt == "see":
        return sum(component_sizes(n, spec.components)) / (n + ncp) * log2m
    if fmt == "haco":
        return (n / 2 - 1) / (n + ncp) * log2m
    if fmt == "asco":
        return (n / 2 - (n / 4 - 1)) / (2 * (n + ncp)) * log2m
    if fmt == "eu":
        depth = spec.components
        rep_sum = sum(1.0 / 2 ** (d - 1) for d in range(1, depth + 1))
        return (n / 4 - 1) / (n + ncp) * rep_sum * log2m
    raise ValueError(f"unknown format {spec.format!r}")


def papr_db(frames: np.ndarray) -> np.ndarray:
    """Per-frame peak-to-average power ratio in dB; frames are (..., n)."""
    frames = np.asarray(frames, dtype=float)
    power = frames**2
    mean = power.mean(axis=-1)
    peak = power.max(axis=-1)
    if np.any(mean == 0):
        raise ValueError("PAPR undefined for all-zero frames")
    return 10.0 * np.log10(peak / mean)


def papr_ccdf(frames: np.ndarray, thresholds_db: np.ndarray | None = None):
    """Empirical complementary CDF of per-frame PAPR.

    Returns a list of (papr_db, exceed_probability) pairs; thresholds
    default to the sorted observed values.
    """
    frames = np.asarray(frames)
    if frames.size == 0:
        raise ValueError("papr_ccdf needs at least one frame")
    values = papr_db(frames if frames.ndim > 1 else frames[np.newaxis, :])
    if thresholds_db is None:
        thresholds_db = np.unique(values)
    thresholds_db = np.asarray(thresholds_db, dtype=float)
    exceed = [(float(t), float(np.mean(values > t))) for t in thresholds_db]
    return exceed


def papr_quantile_db(frames: np.ndarray, exceed_probability: float = 1e-3) -> float:
    """PAPR threshold whose CCDF equals ``exceed_probability``."""
    values = papr_db(np.asarray(frames))
    return float(np.quantile(values, 1.0 - exceed_probability))


# Reference cross-format table at n=64, n_cp=0: per format, the
# (orders, rate bits/s/Hz) pairs for the low / medium / high tiers.
# None marks combinations infeasible inside the source's linear regime.
TABLE_I = {
    "aco": [((64,), 1.50), ((128,), 1.75), None],
    "haco": [((8, 8), 1.45), ((16, 16), 1.94), None],
    "see-2": [((16,), 1.50), ((32,), 1.88), ((64,), 2.25)],
    "see-3": [((8,), 1.31), ((16,), 1.75), ((32,), 2.18)],
    "see-3-mix": [((8, 16, 16), 1.50), ((16, 32, 32), 1.94), ((32, 64, 64), 2.38)],
    "asco": [((16,), 1.47), ((32,), 1.84), ((64,), 2.20)],
    "eu": [((16,), 1.45), ((32,), 1.82), ((64,), 2.18)],
}

TIERS = ("low", "medium", "high")


def _table_spec(name: str, orders, n: int) -> RateSpec:
    if name.startswith("see"):
        r = 3 if "3" in name else 2
        return RateSpec("see", n=n, orders=tuple(orders), components=r)
    if name == "eu":
        return RateSpec("eu", n=n, orders=tuple(orders), components=2)
    return RateSpec(name, n=n, orders=tuple(orders))


def rate_table(n: int = 64):
    """Counted rates for every reference-table cell, keyed (format, tier)."""
    out = {}
    for name, tiers in TABLE_I.items():
        for tier, cell in zip(TIERS, tiers):
            if cell is None:
                out[(name, tier)] = None
                continue
            orders, published = cell
            counted = data_rate(_table_spec(name, orders, n))
            out[(name, tier)] = {
                "orders": orders,
                "published": published,
                "counted": counted,
            }
    return out
