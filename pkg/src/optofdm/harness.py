"""Seeded Monte Carlo experiments: BER sweeps, crossings, PAPR tables.

Reproducibility contract: a (config, seed) pair fully determines every
output byte of the results CSV.  Each trial draws its payload bits and
noise from a substream keyed on (seed, point index, trial index), trials
are scheduled in fixed-size chunks whose composition never depends on
the worker count, and aggregation is associative, so 1 worker and 8
workers produce identical tables.

The stop rule runs each SNR point until it has ``min_errors`` bit
errors or ``max_bits`` bits; points that hit the bit cap first are
flagged censored and excluded from crossing interpolation.
"""

from __future__ import annotations

import dataclasses
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import (
    add_awgn,
    clip_dynamic_range,
    clip_receiver_negatives,
    dbm_to_watts,
    substream,
)
from .formats import FORMATS, build_runner
from .metrics import papr_db
from .modulators import normalize_power

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "run_ber_sweep",
    "find_snr_at_ber",
    "find_crossing",
    "run_papr_experiment",
    "write_rows_csv",
    "write_manifest",
    "emit_golden_vector",
    "BER_COLUMNS",
    "PAPR_COLUMNS",
]

BER_COLUMNS = (
    "format", "n", "m", "components", "snr_db", "bits", "errors", "ber",
    "rate_bps_hz", "papr_p999_db", "seed", "censored",
)
PAPR_COLUMNS = ("format", "n", "m", "components", "frames", "papr_db", "exceed_prob", "seed")


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


def orders_label(orders) -> str:
    """Human-readable modulation orders: "16", or "8/16/16" when mixed."""
    orders = [str(m) for m in orders]
    return orders[0] if len(set(orders)) == 1 else "/".join(orders)


@dataclass
class ExperimentConfig:
    """Everything one experiment needs; mirrored by the config-file keys."""

    format: str = "see"
    n: int = 64
    orders: tuple = (16,)
    components: int = 2  # r for see, depth for eu; informational otherwise
    allocation: str = "SEE_b"
    scales: tuple | None = None
    receiver: str = "hard"
    snr_start: float = 10.0
    snr_stop: float = 45.0
    snr_step: float = 1.0
    noise_dbm: float = -15.0
    ceiling: float = 1.0
    receiver_clip: bool = True
    min_errors: int = 200
    max_bits: int = 10_000_000
    seed: int = 1
    workers: int = 1
    blocks_per_trial: int = 128
    trials_per_chunk: int = 8
    dco_bias: float = 2.0
    eu_scaling: str = "half"
    frames: int = 20_000  # PAPR experiment frame count
    out: str | None = None

    def validate(self) -> "ExperimentConfig":
        if self.format.lower() not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.n < 8 or self.n & (self.n - 1):
            raise ConfigError(f"n must be a power of two >= 8, got {self.n}")
        for m in self.orders:
            if m < 2 or m & (m - 1):
                raise ConfigError(f"modulation order {m} is not a power of two")
        if self.snr_step <= 0:
            raise ConfigError("snr_step must be > 0")
        if self.min_errors < 100:
            raise ConfigError("min_errors must be >= 100 for publishable points")
        if self.max_bits < 1:
            raise ConfigError("max_bits must be >= 1")
        if self.receiver not in ("hard", "soft", "reconstruction"):
            raise ConfigError(f"unknown receiver {self.receiver!r}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.blocks_per_trial < 1 or self.trials_per_chunk < 1:
            raise ConfigError("blocks_per_trial and trials_per_chunk must be >= 1")
        if self.eu_scaling not in ("sqrt", "half"):
            raise ConfigError(f"unknown eu_scaling {self.eu_scaling!r}")
        try:
            self.runner()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return self

    def runner(self):
        return build_runner(
            self.format, self.n, self.orders, self.components, self.allocation,
            self.scales, self.receiver, self.dco_bias, self.eu_scaling,
        )

    def key(self) -> tuple:
        """Hashable identity used to cache runners inside worker processes."""
        items = dataclasses.asdict(self)
        items["orders"] = tuple(items["orders"])
        if items["scales"] is not None:
            items["scales"] = tuple(items["scales"])
        return tuple(sorted(items.items()))


_RUNNERS: dict = {}


def _cached_runner(key: tuple):
    if key not in _RUNNERS:
        cfg = ExperimentConfig(**dict(key))
        _RUNNERS[key] = (cfg, cfg.runner())
    return _RUNNERS[key]


def _run_trial(args):
    """One trial: bits -> waveform -> channel -> bits. Pure in (key, ids)."""
    key, point_idx, trial_idx, snr_db = args
    cfg, runner = _cached_runner(key)
    rng = substream(cfg.seed, point_idx, trial_idx)
    bits = runner.draw_bits(rng, cfg.blocks_per_trial)
    wave = runner.transmit(bits)
    if np.isneginf(cfg.noise_dbm):
        signal_dbm = 0.0  # noise disabled: any sub-ceiling reference power
    else:
        signal_dbm = cfg.noise_dbm + snr_db
    wave = normalize_power(wave, dbm_to_watts(signal_dbm))
    # PAPR over each transmission block (one frame, a frame pair, or a
    # super-frame): the dynamic-range constraint applies to the whole
    # emitted signal, not to length-n slices of it.
    papr = papr_db(wave.frames.reshape(wave.num_blocks, -1))
    wave = clip_dynamic_range(wave, cfg.ceiling)
    noise_w = 0.0 if np.isneginf(cfg.noise_dbm) else dbm_to_watts(cfg.noise_dbm)
    received = add_awgn(wave.frames, noise_w, rng)
    received = clip_receiver_negatives(received, cfg.receiver_clip)
    decoded = runner.demodulate(received, wave.scale)
    errors = int(np.count_nonzero(decoded != bits))
    return errors, bits.size, papr


class _Executor:
    """Serial or process-pool execution of trial chunks, order-preserving."""

    def __init__(self, workers: int):
        self.pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None

    def map(self, tasks):
        if self.pool is None:
            return [_run_trial(t) for t in tasks]
        return list(self.pool.map(_run_trial, tasks))

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()


def _run_point(cfg, key, executor, point_idx: int, snr_db: float) -> dict:
    errors = bits = 0
    papr_chunks = []
    trial = 0
    while errors < cfg.min_errors and bits < cfg.max_bits:
        tasks = [(key, point_idx, trial + j, snr_db) for j in range(cfg.trials_per_chunk)]
        trial += cfg.trials_per_chunk
        for e, b, papr in executor.map(tasks):
            errors += e
            bits += b
            papr_chunks.append(papr)
    papr_all = np.concatenate(papr_chunks)
    runner = cfg.runner()
    return {
        "format": cfg.format.lower(),
        "n": cfg.n,
        "m": orders_label(runner.orders),
        "components": runner.components,
        "snr_db": snr_db,
        "bits": bits,
        "errors": errors,
        "ber": errors / bits,
        "rate_bps_hz": runner.rate,
        "papr_p999_db": float(np.quantile(papr_all, 0.999)),
        "seed": cfg.seed,
        "censored": int(errors < cfg.min_errors),
    }


def run_ber_sweep(cfg: ExperimentConfig) -> list[dict]:
    """BER at every SNR grid point; deterministic under (config, seed)."""
    cfg.validate()
    key = cfg.key()
    snrs = np.arange(cfg.snr_start, cfg.snr_stop + cfg.snr_step / 2, cfg.snr_step)
    executor = _Executor(cfg.workers)
    try:
        rows = [
            _run_point(cfg, key, executor, idx, float(snr))
            for idx, snr in enumerate(snrs)
        ]
    finally:
        executor.close()
    return rows


def find_snr_at_ber(rows: list[dict], target: float = 1e-4):
    """Log-linear interpolation of the SNR where BER crosses ``target``.

    Censored rows are ignored.  Returns None when the table does not
    bracket the target (the curve never reaches it in the usable range).
    """
    usable = sorted(
        (r for r in rows if not r.get("censored") and r["ber"] > 0),
        key=lambda r: r["snr_db"],
    )
    for lo, hi in zip(usable, usable[1:]):
        if lo["ber"] >= target >= hi["ber"]:
            la, lt, lb = np.log10(lo["ber"]), np.log10(target), np.log10(hi["ber"])
            frac = (la - lt) / (la - lb)
            return lo["snr_db"] + frac * (hi["snr_db"] - lo["snr_db"])
    return None


def find_crossing(cfg: ExperimentConfig, target: float = 1e-4, start_snr: float | None = None):
    """Adaptive walk up the SNR axis until ``target`` is bracketed.

    Runs points on the config's SNR grid starting near ``start_snr``
    (default: the grid start), stepping up while BER stays above target
    and down if the first point is already below it.  Returns
    (crossing_snr or None, rows).  Deterministic: the walk depends only
    on deterministic point results.
    """
    cfg.validate()
    key = cfg.key()
    step = cfg.snr_step
    snr0 = cfg.snr_start if start_snr is None else start_snr
    executor = _Executor(cfg.workers)
    rows: dict[float, dict] = {}

    def point(snr: float) -> dict:
        snr = round(snr, 6)
        if snr not in rows:
            idx = int(round((snr - cfg.snr_start) / step))
            rows[snr] = _run_point(cfg, key, executor, idx, snr)
        return rows[snr]

    try:
        snr = snr0
        r = point(snr)
        while r["ber"] < target and snr - step >= cfg.snr_start:
            snr -= step
            r = point(snr)
        while snr + step <= cfg.snr_stop:
            nxt = point(snr + step)
            snr += step
            if not nxt.get("censored") and nxt["ber"] < target:
                break
            if nxt.get("censored"):
                break
    finally:
        executor.close()
    ordered = [rows[s] for s in sorted(rows)]
    return find_snr_at_ber(ordered, target), ordered


def run_papr_experiment(cfg: ExperimentConfig, thresholds_db: np.ndarray | None = None):
    """Per-block PAPR CCDF over >= 10^4 transmission blocks (no channel).

    A block is the format's transmission unit: one frame for the
    single-frame formats, the frame pair for the two-frame format, the
    2^depth super-frame for the depth-stacked one.
    """
    cfg.validate()
    if cfg.frames < 10_000:
        raise ConfigError("papr experiments need at least 10^4 frames")
    runner = cfg.runner()
    blocks_per_trial = max(1, cfg.blocks_per_trial)
    papr_chunks = []
    total = 0
    trial = 0
    while total < cfg.frames:
        rng = substream(cfg.seed, trial)
        bits = runner.draw_bits(rng, blocks_per_trial)
        wave = runner.transmit(bits)
        papr_chunks.append(papr_db(wave.frames.reshape(wave.num_blocks, -1)))
        total += blocks_per_trial
        trial += 1
    papr_all = np.concatenate(papr_chunks)[: cfg.frames]
    if thresholds_db is None:
        thresholds_db = np.arange(4.0, 18.0 + 1e-9, 0.1)
    rows = [
        {
            "format": cfg.format.lower(),
            "n": cfg.n,
            "m": orders_label(runner.orders),
            "components": runner.components,
            "frames": int(papr_all.size),
            "papr_db": float(t),
            "exceed_prob": float(np.mean(papr_all > t)),
            "seed": cfg.seed,
        }
        for t in thresholds_db
    ]
    return rows, papr_all


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def write_rows_csv(path, rows: list[dict], columns=BER_COLUMNS) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[c]) for c in columns) + "\n")


def write_manifest(path, cfg: ExperimentConfig, wall_time_s: float, extra: dict | None = None) -> None:
    from . import __version__

    payload = {
        "config": dataclasses.asdict(cfg),
        "seed": cfg.seed,
        "version": __version__,
        "wall_time_s": wall_time_s,
    }
    if extra:
        payload.update(extra)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, default=str)
        fh.write("\n")


def emit_golden_vector(path, cfg: ExperimentConfig) -> None:
    """One deterministic waveform per file: header `format N M seed`,
    then one normalized sample per line at 15 significant digits."""
    cfg.validate()
    runner = cfg.runner()
    rng = substream(cfg.seed)
    bits = runner.draw_bits(rng, 1)
    wave = normalize_power(runner.transmit(bits), 1.0)
    m_label = orders_label(runner.orders)
    with open(path, "w") as fh:
        fh.write(f"{cfg.format.lower()} {cfg.n} {m_label} {cfg.seed}\n")
        for sample in wave.frames.ravel():
            fh.write(format(float(sample), ".15g") + "\n")


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - t0
