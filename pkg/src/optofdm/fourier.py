"""Hermitian-symmetric spectra and the repo-wide DFT convention.

Convention fixed once for the whole package: the inverse transform
carries the 1/N factor and the forward transform carries none, i.e.
exactly ``numpy.fft.ifft`` / ``numpy.fft.fft``.  All waveform builders
and receivers rely on this pairing.

``active_subcarriers(n, p)`` returns the index set 2^(p-1)*(2k+1) used
by the p-th clipped component; for p = 1..log2(n/2) these sets are
pairwise disjoint and tile {1, ..., n/2 - 1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SpectrumError",
    "SpectrumFrame",
    "SampleFrame",
    "active_subcarriers",
    "hermitian_embed",
    "transform_to_time",
    "transform_to_freq",
]

HERMITIAN_TOL = 1e-12


class SpectrumError(ValueError):
    """Raised when a spectrum violates the Hermitian contract."""


def active_subcarriers(n: int, p: int) -> np.ndarray:
    """Data-bearing subcarrier indices of component p: 2^(p-1)*(2k+1).

    Valid for 1 <= p <= log2(n/2); the set has exactly n / 2^(p+1)
    members, all below n/2.
    """
    n = int(n)
    if n < 4 or n & (n - 1):
        raise ValueError(f"frame length must be a power of two >= 4, got {n}")
    pmax = int(np.log2(n // 2))
    if not 1 <= p <= pmax:
        raise ValueError(f"component index {p} outside 1..{pmax} for n={n}")
    k = np.arange(n // 2 ** (p + 1))
    return 2 ** (p - 1) * (2 * k + 1)


def hermitian_embed(symbols: np.ndarray, indices: np.ndarray, n: int) -> np.ndarray:
    """Place symbols on ``indices`` and conjugate mirrors on ``n - indices``.

    ``symbols`` may carry leading batch axes: (..., len(indices)) ->
    (..., n).  DC and Nyquist bins stay zero.
    """
    symbols = np.asarray(symbols, dtype=complex)
    indices = np.asarray(indices)
    if symbols.shape[-1] != len(indices):
        raise ValueError(
            f"{symbols.shape[-1]} symbols for {len(indices)} subcarriers"
        )
    if np.any(indices < 1) or np.any(indices >= n // 2):
        raise ValueError("subcarrier indices must lie in 1..n/2-1")
    values = np.zeros(symbols.shape[:-1] + (n,), dtype=complex)
    values[..., indices] = symbols
    values[..., n - indices] = np.conj(symbols)
    return values


def _check_hermitian(values: np.ndarray, n: int) -> None:
    scale = max(float(np.max(np.abs(values))), 1.0)
    flat = values.reshape(-1, n)
    for name, bin_idx in (("DC", 0), ("Nyquist", n // 2)):
        err = np.abs(flat[:, bin_idx])
        if np.any(err > HERMITIAN_TOL * scale):
            raise SpectrumError(f"{name} bin {bin_idx} must be zero")
    k = np.arange(1, n // 2)
    delta = np.abs(flat[:, n - k] - np.conj(flat[:, k]))
    if np.any(delta > HERMITIAN_TOL * scale):
        worst = int(k[np.argmax(np.max(delta, axis=0))])
        raise SpectrumError(
            f"values[{n - worst}] != conj(values[{worst}]): "
            "spectrum is not Hermitian-symmetric"
        )


@dataclass
class SpectrumFrame:
    """Length-n complex spectrum with Hermitian structure metadata."""

    n: int
    values: np.ndarray = field(repr=False)
    active_set: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape[-1] != self.n:
            raise ValueError(
                f"values last axis {self.values.shape[-1]} != n={self.n}"
            )
        if self.active_set is None:
            flat = np.abs(self.values.reshape(-1, self.n)).max(axis=0)
            half = flat[1 : self.n // 2]
            self.active_set = 1 + np.nonzero(half > 0)[0]
        self.active_set = np.asarray(self.active_set)

    def validate(self) -> None:
        """Check Hermitian symmetry and that inactive bins are silent."""
        _check_hermitian(self.values, self.n)
        mask = np.ones(self.n, dtype=bool)
        mask[self.active_set] = False
        mask[(self.n - self.active_set) % self.n] = False
        mask[0] = mask[self.n // 2] = False
        leak = np.abs(self.values[..., mask])
        scale = max(float(np.max(np.abs(self.values))), 1.0)
        if leak.size and np.any(leak > HERMITIAN_TOL * scale):
            bad = np.nonzero(mask)[0][int(np.argmax(leak.reshape(-1, leak.shape[-1]).max(axis=0)))]
            raise SpectrumError(f"inactive subcarrier {bad} carries energy")


@dataclass
class SampleFrame:
    """Real time-domain samples; ``unipolar`` asserts min >= 0."""

    samples: np.ndarray = field(repr=False)
    unipolar: bool = False

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.unipolar and self.samples.size and self.samples.min() < 0:
            raise ValueError("frame marked unipolar but has negative samples")

    @property
    def n_total(self) -> int:
        return self.samples.shape[-1]


def time_samples(spectrum_values: np.ndarray, n: int) -> np.ndarray:
    """Raw inverse transform to real samples (no contract checks)."""
    x = np.fft.ifft(spectrum_values, axis=-1)
    return x.real


def transform_to_time(spectrum: SpectrumFrame) -> SampleFrame:
    """Inverse transform a Hermitian spectrum to real samples.

    Raises :class:`SpectrumError` (naming the offending index pair) when
    the input violates Hermitian symmetry.  The imaginary residue of the
    underlying complex transform is checked against 1e-10 relative.
    """
    _check_hermitian(spectrum.values, spectrum.n)
    x = np.fft.ifft(spectrum.values, axis=-1)
    norm = float(np.linalg.norm(x))
    if norm > 0 and float(np.abs(x.imag).max()) > 1e-10 * norm:
        raise SpectrumError("inverse transform left an imaginary residue")
    return SampleFrame(samples=x.real)


def transform_to_freq(frame: SampleFrame | np.ndarray, n: int) -> SpectrumFrame:
    """Forward transform (no 1/N factor); exact inverse of the above."""
    samples = frame.samples if isinstance(frame, SampleFrame) else np.asarray(frame)
    if samples.shape[-1] != n:
        raise ValueError(f"frame length {samples.shape[-1]} != configured n={n}")
    values = np.fft.fft(samples, axis=-1)
    return SpectrumFrame(n=n, values=values, active_set=np.arange(1, n // 2))
