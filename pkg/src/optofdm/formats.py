"""Format registry: payload layout, modulation, and demodulation glue.

A :class:`FormatRunner` owns everything the Monte Carlo loop needs for
one configured format: how many payload bits a modulation block holds,
how to turn a bit block into a transmit waveform, and how to demodulate
received frames back to bits in the identical layout.

Bit layout conventions (all MSB-first within a symbol):
  aco/dco   one stream, symbol order = subcarrier order
  see       component-major (p = 1..r), then symbol order
  haco      QAM stream first, then the PAM stream
  asco      stream 1, stream 2, then the shared even-subcarrier stream
  eu        depth-major (d = 1..D), then signal order, then symbols
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constellation import Constellation, make_constellation, map_bits
from .modulators import (
    ComponentSpec,
    TxWaveform,
    allocation_scales,
    modulate_aco,
    modulate_asco,
    modulate_dco,
    modulate_eu,
    modulate_haco,
    modulate_see,
)
from .metrics import RateSpec, component_sizes, data_rate
from .receivers import (
    receive_aco,
    receive_asco,
    receive_dco,
    receive_eu,
    receive_haco,
    receive_see,
)

__all__ = ["FormatRunner", "build_runner", "FORMATS"]

FORMATS = ("aco", "dco", "see", "haco", "asco", "eu")


@dataclass
class FormatRunner:
    """One configured format, ready to transmit and receive blocks."""

    name: str
    n: int
    orders: tuple
    components: int = 1
    scales: tuple = (1.0,)
    receiver: str = "hard"
    dco_bias: float = 2.0
    eu_scaling: str = "half"
    constellations: list = field(default_factory=list, repr=False)
    stream_symbols: list = field(default_factory=list)  # symbols per stream
    frames_per_block: int = 1

    @property
    def bits_per_block(self) -> int:
        return sum(
            count * c.bits_per_symbol
            for count, c in zip(self.stream_symbols, self.constellations)
        )

    def rate_spec(self) -> RateSpec:
        return RateSpec(self.name, n=self.n, orders=self.orders, components=self.components)

    @property
    def rate(self) -> float:
        return data_rate(self.rate_spec())

    def _split_and_map(self, bits: np.ndarray) -> list[np.ndarray]:
        """Cut a (blocks, bits_per_block) array into per-stream symbols."""
        out, start = [], 0
        for count, c in zip(self.stream_symbols, self.constellations):
            width = count * c.bits_per_symbol
            out.append(map_bits(bits[:, start : start + width], c))
            start += width
        return out

    def draw_bits(self, rng: np.random.Generator, blocks: int) -> np.ndarray:
        return rng.integers(0, 2, size=(blocks, self.bits_per_block), dtype=np.int8)

    def transmit(self, bits: np.ndarray) -> TxWaveform:
        streams = self._split_and_map(bits)
        n = self.n
        if self.name == "aco":
            return modulate_aco(streams[0], n, bits=bits)
        if self.name == "dco":
            return modulate_dco(streams[0], n, bias_factor=self.dco_bias, bits=bits)
        if self.name == "see":
            specs = [
                ComponentSpec(p, c, s)
                for p, c, s in zip(range(1, self.components + 1), self.constellations, self.scales)
            ]
            symbols = {spec.p: stream for spec, stream in zip(specs, streams)}
            return modulate_see(specs, symbols, n, bits=bits)
        if self.name == "haco":
            return modulate_haco(
                streams[0], streams[1].real, n,
                qam_scale=self.scales[0], pam_scale=self.scales[1], bits=bits,
            )
        if self.name == "asco":
            return modulate_asco(streams[0], streams[1], streams[2], n, bits=bits)
        if self.name == "eu":
            depth = self.components
            blocks = bits.shape[0]
            width = self.n // 2 - 1
            eu_streams = [
                s.reshape(blocks, 2 ** (depth - d), width)
                for d, s in zip(range(1, depth + 1), streams)
            ]
            return modulate_eu(
                eu_streams, depth, n, repetition_scaling=self.eu_scaling, bits=bits
            )
        raise ValueError(f"unknown format {self.name!r}")

    def demodulate(self, frames: np.ndarray, gain: float) -> np.ndarray:
        n = self.n
        blocks = frames.shape[0] // self.frames_per_block
        if self.name == "aco":
            return receive_aco(frames, n, self.constellations[0], gain).decoded_bits
        if self.name == "dco":
            return receive_dco(frames, n, self.constellations[0], gain).decoded_bits
        if self.name == "see":
            specs = [
                ComponentSpec(p, c, s)
                for p, c, s in zip(range(1, self.components + 1), self.constellations, self.scales)
            ]
            return receive_see(frames, specs, n, self.receiver, gain).decoded_bits
        if self.name == "haco":
            return receive_haco(
                frames, n, self.constellations[0], self.constellations[1], gain,
                qam_scale=self.scales[0], pam_scale=self.scales[1],
            ).decoded_bits
        if self.name == "asco":
            stacked = frames.reshape(blocks, 2, n)
            return receive_asco(stacked, n, self.constellations[0], gain).decoded_bits
        if self.name == "eu":
            stacked = frames.reshape(blocks, self.frames_per_block, n)
            return receive_eu(
                stacked,
                self.components,
                n,
                self.constellations[0],
                gain,
                repetition_scaling=self.eu_scaling,
            ).decoded_bits
        raise ValueError(f"unknown format {self.name!r}")


def build_runner(
    name: str,
    n: int = 64,
    orders=(16,),
    components: int = 2,
    allocation: str = "SEE_b",
    scales=None,
    receiver: str = "hard",
    dco_bias: float = 2.0,
    eu_scaling: str = "half",
) -> FormatRunner:
    """Resolve a configuration into a ready FormatRunner."""
    name = name.lower()
    if name not in FORMATS:
        raise ValueError(f"unknown format {name!r}; expected one of {FORMATS}")
    orders = tuple(int(m) for m in (orders if np.iterable(orders) else (orders,)))

    def consts(schemes_orders):
        return [make_constellation(s, m) for s, m in schemes_orders]

    if name == "aco":
        runner = FormatRunner(
            name, n, orders, components=1,
            constellations=consts([("qam", orders[0])]),
            stream_symbols=[n // 4],
        )
    elif name == "dco":
        runner = FormatRunner(
            name, n, orders, components=1, dco_bias=dco_bias,
            constellations=consts([("qam", orders[0])]),
            stream_symbols=[n // 2 - 1],
        )
    elif name == "see":
        r = components
        per_comp = list(orders) if len(orders) > 1 else [orders[0]] * r
        if len(per_comp) != r:
            raise ValueError(f"{len(per_comp)} orders for {r} components")
        comp_scales = tuple(scales) if scales else tuple(allocation_scales(allocation, r))
        if len(comp_scales) != r:
            raise ValueError(f"{len(comp_scales)} scales for {r} components")
        runner = FormatRunner(
            name, n, tuple(per_comp), components=r, scales=comp_scales, receiver=receiver,
            constellations=consts([("qam", m) for m in per_comp]),
            stream_symbols=component_sizes(n, r),
        )
    elif name == "haco":
        mq = orders[0]
        mp = orders[1] if len(orders) > 1 else orders[0]
        from .modulators import HACO_PAM_SCALE

        stream_scales = tuple(scales) if scales else (1.0, HACO_PAM_SCALE)
        if len(stream_scales) != 2:
            raise ValueError("haco takes exactly two stream scales (qam, pam)")
        runner = FormatRunner(
            name, n, (mq, mp), components=2, scales=stream_scales,
            constellations=consts([("qam", mq), ("pam", mp)]),
            stream_symbols=[n // 4, n // 4 - 1],
        )
    elif name == "asco":
        runner = FormatRunner(
            name, n, orders, components=3,
            constellations=consts([("qam", orders[0])] * 3),
            stream_symbols=[n // 4, n // 4, n // 4 - 1],
            frames_per_block=2,
        )
    else:  # eu
        depth = components
        runner = FormatRunner(
            name, n, orders, components=depth, eu_scaling=eu_scaling,
            constellations=consts([("qam", orders[0])] * depth),
            stream_symbols=[2 ** (depth - d) * (n // 2 - 1) for d in range(1, depth + 1)],
            frames_per_block=2 ** depth,
        )
    return runner
