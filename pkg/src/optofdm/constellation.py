"""Gray-mapped QAM/PAM constellations with unit average energy.

Square orders (4, 16, 64) use the usual square grid; non-square orders
(8, 32, 128) use rectangular grids so that a perfect per-axis Gray
labelling exists (every nearest-neighbour pair differs in exactly one
bit).  PAM constellations are real-valued; the HACO mapper places them
on the imaginary axis of its even subcarriers.

Bit words are MSB-first.  For QAM the first ceil(m/2) bits select the
in-phase level and the remaining bits the quadrature level.  Bit word 0
maps to the top-right corner point, e.g. 4-QAM ``00`` -> (1+1j)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Constellation",
    "make_constellation",
    "map_bits",
    "hard_decide",
    "write_fixture",
    "load_fixture",
]


def gray_to_index(codes: np.ndarray) -> np.ndarray:
    """Map binary-reflected Gray codewords to their integer rank."""
    rank = np.asarray(codes).copy()
    shift = 1
    while np.any(rank >> shift):
        rank ^= rank >> shift
        shift *= 2
    return rank


def _axis_levels(word: np.ndarray, nlevels: int) -> np.ndarray:
    """Amplitude for a Gray codeword on one axis.

    Rank 0 is the highest level +(L-1); each unit step in rank moves one
    level down, so adjacent levels differ in exactly one word bit.
    """
    rank = gray_to_index(word)
    return (nlevels - 1) - 2.0 * rank


@dataclass(frozen=True)
class Constellation:
    """Unit-energy constellation with Gray bit labels.

    ``points[label]`` is the point whose bit word (MSB first) has integer
    value ``label``; ordering the array by label keeps tie-breaking in
    :func:`hard_decide` deterministic (lowest label wins).
    """

    scheme: str  # "qam" or "pam"
    order: int
    points: np.ndarray = field(repr=False)

    @property
    def bits_per_symbol(self) -> int:
        return int(np.log2(self.order))

    def __post_init__(self):
        if self.scheme not in ("qam", "pam"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.order < 2 or self.order & (self.order - 1):
            raise ValueError(f"order must be a power of two, got {self.order}")
        if len(self.points) != self.order:
            raise ValueError("points/order mismatch")


def make_constellation(scheme: str, order: int) -> Constellation:
    """Build a Gray-labelled constellation normalised to mean power 1."""
    m = int(np.log2(order))
    if 2 ** m != order or m < 1:
        raise ValueError(f"order must be a power of two >= 2, got {order}")
    labels = np.arange(order)
    if scheme == "pam":
        amps = _axis_levels(labels, order)
        points = amps.astype(complex)
    elif scheme == "qam":
        if m < 2:
            raise ValueError("QAM needs at least 4 points")
        mi = (m + 1) // 2
        mq = m - mi
        li, lq = 2 ** mi, 2 ** mq
        wi = labels >> mq
        wq = labels & (lq - 1)
        points = _axis_levels(wi, li) + 1j * _axis_levels(wq, lq)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    energy = np.mean(np.abs(points) ** 2)
    return Constellation(scheme, order, points / np.sqrt(energy))


def map_bits(bits: np.ndarray, c: Constellation) -> np.ndarray:
    """Map a 0/1 vector to Gray-labelled symbols, MSB first per word.

    Raises ValueError when the bit count is not divisible by
    log2(order).  Leading-axis shapes are preserved: (..., k*m) bits map
    to (..., k) symbols.
    """
    bits = np.asarray(bits)
    m = c.bits_per_symbol
    if bits.shape[-1] % m:
        raise ValueError(
            f"bit count {bits.shape[-1]} not divisible by {m} (order {c.order})"
        )
    words = bits.reshape(bits.shape[:-1] + (-1, m))
    weights = 1 << np.arange(m - 1, -1, -1)
    labels = words @ weights
    return c.points[labels]


def hard_decide(symbols: np.ndarray, c: Constellation):
    """Nearest-point decision; ties broken toward the lowest bit label.

    Returns ``(points, bits)``.  PAM decisions use the real part only.
    Output bits have shape (..., k*m) for (..., k) input symbols.
    """
    symbols = np.asarray(symbols, dtype=complex)
    ref = c.points[np.newaxis, :]
    flat = symbols.reshape(-1, 1)
    if c.scheme == "pam":
        d2 = (flat.real - ref.real) ** 2
    else:
        d2 = np.abs(flat - ref) ** 2
    labels = np.argmin(d2, axis=1)  # first minimum = lowest label on ties
    points = c.points[labels].reshape(symbols.shape)
    m = c.bits_per_symbol
    shifts = np.arange(m - 1, -1, -1)
    bits = ((labels[:, None] >> shifts) & 1).astype(np.int8)
    if symbols.ndim == 0:
        bits = bits.reshape(m)
    else:
        bits = bits.reshape(symbols.shape[:-1] + (symbols.shape[-1] * m,))
    return points, bits


def labels_of(points: np.ndarray, c: Constellation) -> np.ndarray:
    """Bit-label integers of exact constellation points."""
    flat = np.asarray(points, dtype=complex).reshape(-1, 1)
    d2 = np.abs(flat - c.points[np.newaxis, :]) ** 2
    return np.argmin(d2, axis=1).reshape(np.shape(points))


def write_fixture(path, c: Constellation) -> None:
    """Write the fixture file: one ``bits re im`` line per point."""
    m = c.bits_per_symbol
    with open(path, "w") as fh:
        for label, point in enumerate(c.points):
            word = format(label, f"0{m}b")
            fh.write(f"{word} {point.real:.15g} {point.imag:.15g}\n")


def load_fixture(path) -> dict[str, complex]:
    """Read a fixture file back into a {bitword: point} dict."""
    table = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            word, re_s, im_s = line.split()
            table[word] = complex(float(re_s), float(im_s))
    return table
