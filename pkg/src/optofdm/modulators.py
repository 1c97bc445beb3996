"""Unipolar transmit waveform builders.

Six formats share the same skeleton: map constellation symbols onto a
Hermitian spectrum, inverse-transform, make the frame unipolar, sum
components.  Zero-clipping a component whose bipolar signal is
antisymmetric halves its own subcarriers exactly and deposits
distortion only on later components' index sets, which is what makes
the multi-component formats decodable.

Symbol arguments accept a leading batch axis: shape (count,) builds a
single block, (blocks, count) builds a stack of independent blocks.
Waveform frames are always returned as a 2-D array (frames, n).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constellation import Constellation
from .fourier import active_subcarriers, hermitian_embed, time_samples

__all__ = [
    "ComponentSpec",
    "TxWaveform",
    "allocation_scales",
    "modulate_aco",
    "modulate_dco",
    "modulate_see",
    "modulate_haco",
    "modulate_asco",
    "modulate_eu",
    "normalize_power",
]


@dataclass(frozen=True)
class ComponentSpec:
    """Per-component descriptor: index p, constellation, relative scale."""

    p: int
    constellation: Constellation
    amplitude_scale: float = 1.0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"component index must be >= 1, got {self.p}")
        if self.amplitude_scale <= 0:
            raise ValueError("amplitude_scale must be positive")


@dataclass
class TxWaveform:
    """Transmit waveform: stacked unipolar frames plus oracle metadata."""

    format: str
    n: int
    frames: np.ndarray = field(repr=False)  # (num_frames, n)
    block_size: int = 1  # frames per modulation block
    payload_bits: np.ndarray | None = field(default=None, repr=False)
    per_component_symbols: dict = field(default_factory=dict, repr=False)
    component_scales: dict = field(default_factory=dict)
    scale: float = 1.0  # amplitude gain applied by normalize_power
    meta: dict = field(default_factory=dict)

    @property
    def num_blocks(self) -> int:
        return self.frames.shape[0] // self.block_size

    def blocks(self) -> np.ndarray:
        """Frames reshaped to (blocks, block_size, n)."""
        return self.frames.reshape(self.num_blocks, self.block_size, self.n)


def _as_blocks(symbols, count: int, what: str) -> np.ndarray:
    s = np.asarray(symbols, dtype=complex)
    if s.ndim == 1:
        s = s[np.newaxis, :]
    if s.ndim != 2 or s.shape[-1] != count:
        raise ValueError(f"{what}: expected {count} symbols per block, got shape {s.shape}")
    return s


def allocation_scales(preset: str, r: int) -> list[float]:
    """Energy-allocation presets for multi-component waveforms.

    ``SEE_b`` keeps every component at the same per-subcarrier amplitude
    (components then run at the same per-symbol SNR); ``SEE_a`` doubles
    and ``SEE_c`` halves the second component's amplitude before the
    joint power normalisation.
    """
    key = preset.lower()
    scales = [1.0] * r
    if key == "see_b":
        pass
    elif key == "see_a":
        if r >= 2:
            scales[1] = 2.0
    elif key == "see_c":
        if r >= 2:
            scales[1] = 0.5
    else:
        raise ValueError(f"unknown allocation preset {preset!r}")
    return scales


def component_time(symbols: np.ndarray, n: int, p: int, scale: float = 1.0) -> np.ndarray:
    """Bipolar (pre-clip) time signal of component p, shape (blocks, n)."""
    idx = active_subcarriers(n, p)
    sym = _as_blocks(symbols, len(idx), f"component {p}")
    return time_samples(hermitian_embed(scale * sym, idx, n), n)


def modulate_aco(symbols, n: int, scale: float = 1.0, bits=None) -> TxWaveform:
    """Odd-subcarrier waveform, zero-clipped (single-component case).

    The unclipped signal satisfies x(m + n/2) = -x(m), so clipping costs
    exactly a factor 1/2 on the data subcarriers and no information.
    """
    x = component_time(symbols, n, 1, scale)
    return TxWaveform(
        format="aco",
        n=n,
        frames=np.maximum(x, 0.0),
        payload_bits=bits,
        per_component_symbols={1: _as_blocks(symbols, n // 4, "aco")},
        component_scales={1: scale},
    )


def modulate_dco(symbols, n: int, bias_factor: float = 2.0, bits=None) -> TxWaveform:
    """All-subcarrier waveform with a DC bias, residual negatives clipped.

    The bias is ``bias_factor`` times the per-frame standard deviation of
    the bipolar signal; the residual clipping distortion is accepted as
    noise (it lands on every subcarrier).
    """
    idx = np.arange(1, n // 2)
    sym = _as_blocks(symbols, len(idx), "dco")
    x = time_samples(hermitian_embed(sym, idx, n), n)
    bias = bias_factor * x.std(axis=-1, keepdims=True)
    biased = x + bias
    frames = np.maximum(biased, 0.0)
    return TxWaveform(
        format="dco",
        n=n,
        frames=frames,
        payload_bits=bits,
        per_component_symbols={1: sym},
        component_scales={1: 1.0},
        meta={
            "bias_factor": bias_factor,
            "clip_fraction": float(np.mean(biased < 0.0)),
        },
    )


def modulate_see(
    components: list[ComponentSpec],
    symbols_by_component: dict,
    n: int,
    generation: str = "frequency",
    bits=None,
) -> TxWaveform:
    """Sum of clipped components on disjoint index sets 2^(p-1)*(2k+1).

    ``generation="frequency"`` builds every component with the length-n
    transform; ``"time"`` builds component p as an n/2^(p-1)-point
    odd-subcarrier frame, clips, tiles it 2^(p-1) times and scales by
    1/2^(p-1), which lands on the identical waveform.  Summation happens
    strictly after clipping.
    """
    if generation not in ("frequency", "time"):
        raise ValueError(f"unknown generation path {generation!r}")
    pmax = int(np.log2(n // 2))
    seen = set()
    for spec in components:
        if spec.p in seen:
            raise ValueError(f"duplicate component index {spec.p}")
        if spec.p > pmax:
            raise ValueError(f"component {spec.p} exceeds log2(n/2) = {pmax}")
        seen.add(spec.p)

    frames = None
    per_symbols = {}
    scales = {}
    for spec in components:
        count = n // 2 ** (spec.p + 1)
        sym = _as_blocks(symbols_by_component[spec.p], count, f"component {spec.p}")
        if generation == "frequency":
            clipped = np.maximum(component_time(sym, n, spec.p, spec.amplitude_scale), 0.0)
        else:
            reps = 2 ** (spec.p - 1)
            n_short = n // reps
            idx_short = active_subcarriers(n_short, 1)
            x_short = time_samples(
                hermitian_embed(spec.amplitude_scale * sym, idx_short, n_short), n_short
            )
            clipped = np.tile(np.maximum(x_short, 0.0), (1, reps)) / reps
        frames = clipped if frames is None else frames + clipped
        per_symbols[spec.p] = sym
        scales[spec.p] = spec.amplitude_scale
    if frames is None:
        raise ValueError("no components given")
    return TxWaveform(
        format="see",
        n=n,
        frames=frames,
        payload_bits=bits,
        per_component_symbols=per_symbols,
        component_scales=scales,
        meta={"generation": generation},
    )


def haco_pam_subcarriers(n: int) -> np.ndarray:
    """Even non-DC, non-Nyquist subcarriers 2, 4, ..., n/2-2."""
    return 2 * np.arange(1, n // 4)


# Default PAM amplitude relative to the QAM stream.  One-dimensional PAM
# is intrinsically several dB weaker per symbol than QAM of equal order
# and amplitude, so the stock transmitter gives it a modest boost; the
# PAM stream remains the limiting one, but the overall curve then tracks
# the equal-rate odd-subcarrier baseline it is normally compared with.
HACO_PAM_SCALE = float(np.sqrt(1.5))


def modulate_haco(
    qam_symbols,
    pam_symbols,
    n: int,
    qam_scale: float = 1.0,
    pam_scale: float = HACO_PAM_SCALE,
    bits=None,
) -> TxWaveform:
    """Odd-subcarrier QAM component plus an even-subcarrier PAM component.

    PAM values ride on the imaginary parts of the even subcarriers; the
    within-half antisymmetry of that component means its clipping
    distortion stays on the real parts of even subcarriers, clear of
    both payloads.
    """
    pam = np.asarray(pam_symbols)
    if np.iscomplexobj(pam) and np.any(pam.imag != 0):
        raise ValueError("PAM symbols must be real-valued")
    pam = _as_blocks(pam.real, n // 4 - 1, "haco pam")
    qam = _as_blocks(qam_symbols, n // 4, "haco qam")

    c1 = np.maximum(component_time(qam, n, 1, qam_scale), 0.0)
    x2 = time_samples(hermitian_embed(1j * pam_scale * pam, haco_pam_subcarriers(n), n), n)
    frames = c1 + np.maximum(x2, 0.0)
    return TxWaveform(
        format="haco",
        n=n,
        frames=frames,
        payload_bits=bits,
        per_component_symbols={"qam": qam, "pam": pam},
        component_scales={"qam": qam_scale, "pam": pam_scale},
    )


def modulate_asco(sym1, sym2, sym3, n: int, scale: float = 1.0, bits=None) -> TxWaveform:
    """Two-frame waveform: two clipped odd-subcarrier signals carry the
    zero-clipped halves of a shared even-subcarrier signal.

    Frame 1 adds the positive part of the even-subcarrier signal, frame
    2 its polarity-flipped negative part, so x3 = frame1-part - frame2-part
    is recoverable exactly once the odd components are subtracted.
    """
    s1 = _as_blocks(sym1, n // 4, "asco stream 1")
    s2 = _as_blocks(sym2, n // 4, "asco stream 2")
    s3 = _as_blocks(sym3, n // 4 - 1, "asco stream 3")
    if not (s1.shape[0] == s2.shape[0] == s3.shape[0]):
        raise ValueError("asco streams disagree on block count")

    c1 = np.maximum(component_time(s1, n, 1, scale), 0.0)
    c2 = np.maximum(component_time(s2, n, 1, scale), 0.0)
    x3 = time_samples(hermitian_embed(scale * s3, haco_pam_subcarriers(n), n), n)
    frame1 = c1 + np.maximum(x3, 0.0)
    frame2 = c2 + np.maximum(-x3, 0.0)
    frames = np.stack([frame1, frame2], axis=1).reshape(-1, n)
    return TxWaveform(
        format="asco",
        n=n,
        frames=frames,
        block_size=2,
        payload_bits=bits,
        per_component_symbols={1: s1, 2: s2, 3: s3},
        component_scales={1: scale, 2: scale, 3: scale},
    )


def eu_stream_counts(depth: int) -> list[int]:
    """Distinct carrier signals per depth inside a 2^depth-frame block."""
    return [2 ** (depth - d) for d in range(1, depth + 1)]


def modulate_eu(
    streams: list,
    depth: int,
    n: int,
    scale: float = 1.0,
    repetition_scaling: str = "half",
    bits=None,
) -> TxWaveform:
    """Depth-stacked unipolar waveform over a 2^depth-frame super-frame.

    Each carrier signal modulates all subcarriers, splits into a
    positive-part frame and a flipped-negative-part frame, and depth d
    repeats each part 2^(d-1) times.  The default halves the amplitude
    per doubling of repetitions (scale 1/2^(d-1)); the alternative
    ``repetition_scaling="sqrt"`` uses 1/sqrt(2^(d-1)), which makes each
    depth carry equal per-symbol energy.  Frames pack left to right,
    depth-d signal i occupying frames [i*2^d, (i+1)*2^d).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if len(streams) != depth:
        raise ValueError(
            f"got {len(streams)} streams for depth {depth}; streams beyond the "
            "configured maximum depth are not allowed"
        )
    if repetition_scaling not in ("sqrt", "half"):
        raise ValueError(f"unknown repetition_scaling {repetition_scaling!r}")

    idx = np.arange(1, n // 2)
    counts = eu_stream_counts(depth)
    blocks = None
    per_symbols = {}
    for d, want in zip(range(1, depth + 1), counts):
        s = np.asarray(streams[d - 1], dtype=complex)
        if s.ndim == 2:
            s = s[np.newaxis]
        if s.ndim != 3 or s.shape[1] != want or s.shape[2] != len(idx):
            raise ValueError(
                f"depth-{d} stream must have shape (blocks, {want}, {len(idx)}), got {s.shape}"
            )
        if blocks is None:
            blocks = s.shape[0]
            frames = np.zeros((blocks, 2 ** depth, n))
        elif s.shape[0] != blocks:
            raise ValueError("eu streams disagree on block count")
        reps = 2 ** (d - 1)
        amp = scale / (np.sqrt(reps) if repetition_scaling == "sqrt" else reps)
        for i in range(want):
            x = time_samples(hermitian_embed(s[:, i, :], idx, n), n)
            pos = np.maximum(x, 0.0) * amp
            neg = np.maximum(-x, 0.0) * amp
            lo = i * 2 * reps
            frames[:, lo : lo + reps, :] += pos[:, np.newaxis, :]
            frames[:, lo + reps : lo + 2 * reps, :] += neg[:, np.newaxis, :]
        per_symbols[d] = s
    return TxWaveform(
        format="eu",
        n=n,
        frames=frames.reshape(-1, n),
        block_size=2 ** depth,
        payload_bits=bits,
        per_component_symbols=per_symbols,
        component_scales={d: scale for d in range(1, depth + 1)},
        meta={"depth": depth, "repetition_scaling": repetition_scaling},
    )


def normalize_power(w: TxWaveform, target_power: float) -> TxWaveform:
    """Scale the waveform so mean squared sample equals ``target_power``.

    Electrical power convention (mean of squared samples).  The applied
    gain accumulates in ``w.scale`` so receivers can undo it; the
    operation is idempotent for a fixed target.
    """
    power = float(np.mean(w.frames**2))
    if power == 0.0:
        raise ValueError("cannot normalize an all-zero waveform")
    gain = float(np.sqrt(target_power / power))
    return TxWaveform(
        format=w.format,
        n=w.n,
        frames=w.frames * gain,
        block_size=w.block_size,
        payload_bits=w.payload_bits,
        per_component_symbols=w.per_component_symbols,
        component_scales=w.component_scales,
        scale=w.scale * gain,
        meta=dict(w.meta),
    )
