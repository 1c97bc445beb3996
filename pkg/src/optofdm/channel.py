"""Transmitter dynamic-range clipping, AWGN, and receiver-side clipping.

dBm values are relative electrical powers (1 mW reference); amplitudes
are in sqrt(W), so a signal at P dBm has mean squared sample
10^((P-30)/10).  The default dynamic ceiling of 1.0 therefore models a
source that saturates at 30 dBm instantaneous power: harmless at low
transmit power, dominant near the top of the sweep.

Noise is drawn from counter-based substreams keyed on (master seed,
context indices), so Monte Carlo results never depend on how trials are
scheduled across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modulators import TxWaveform

__all__ = [
    "ChannelConfig",
    "dbm_to_watts",
    "clip_dynamic_range",
    "add_awgn",
    "clip_receiver_negatives",
    "substream",
]


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


@dataclass
class ChannelConfig:
    """Noise power, dynamic-range ceiling and receiver-clip switch."""

    signal_power_dbm: float
    noise_power_dbm: float = -15.0
    dynamic_ceiling: float = 1.0
    receiver_clip: bool = True
    seed: int = 0

    @property
    def snr_db(self) -> float:
        return self.signal_power_dbm - self.noise_power_dbm

    @property
    def signal_power_w(self) -> float:
        return dbm_to_watts(self.signal_power_dbm)

    @property
    def noise_power_w(self) -> float:
        if self.noise_power_dbm == -np.inf:
            return 0.0
        return dbm_to_watts(self.noise_power_dbm)


def substream(master_seed: int, *indices: int) -> np.random.Generator:
    """Deterministic per-(context) generator, independent of scheduling."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), *map(int, indices)]))


def clip_dynamic_range(w: TxWaveform, ceiling: float) -> TxWaveform:
    """Hard-limit samples at ``ceiling``; record the clipping-noise power.

    The waveform is expected to be normalized to its target average
    power already, so the ceiling is an absolute amplitude.
    """
    if ceiling <= 0:
        raise ValueError(f"dynamic ceiling must be positive, got {ceiling}")
    clipped = np.minimum(w.frames, ceiling)
    residual = w.frames - clipped
    meta = dict(w.meta)
    meta["ceiling"] = ceiling
    meta["ceiling_clip_fraction"] = float(np.mean(w.frames > ceiling))
    meta["ceiling_clip_noise_power"] = float(np.mean(residual**2))
    return TxWaveform(
        format=w.format,
        n=w.n,
        frames=clipped,
        block_size=w.block_size,
        payload_bits=w.payload_bits,
        per_component_symbols=w.per_component_symbols,
        component_scales=w.component_scales,
        scale=w.scale,
        meta=meta,
    )


def add_awgn(samples: np.ndarray, noise_power: float, rng: np.random.Generator) -> np.ndarray:
    """Add independent Gaussian noise of variance ``noise_power`` per sample."""
    if noise_power < 0:
        raise ValueError("noise power must be non-negative")
    samples = np.asarray(samples, dtype=float)
    if noise_power == 0.0:
        return samples.copy()
    return samples + rng.normal(0.0, np.sqrt(noise_power), samples.shape)


def clip_receiver_negatives(samples: np.ndarray, enabled: bool = True) -> np.ndarray:
    """Zero out negative received samples (the transmit signal is unipolar)."""
    samples = np.asarray(samples, dtype=float)
    if not enabled:
        return samples.copy()
    return np.maximum(samples, 0.0)
