"""The three multi-component receivers, step by step on one noisy frame.

Shows the reconstruction pre-conditioning chain (half-period subtraction,
polarity flip, re-add) next to hard- and soft-decision successive
interference cancellation, and why hard decisions win.
"""

import numpy as np

from optofdm import (
    ComponentSpec,
    add_awgn,
    clip_receiver_negatives,
    make_constellation,
    map_bits,
    modulate_see,
    normalize_power,
    receive_see,
    substream,
)
from optofdm.constellation import hard_decide

rng = np.random.default_rng(7)
n = 64
c16 = make_constellation("qam", 16)
specs = [ComponentSpec(1, c16), ComponentSpec(2, c16)]
symbols = {p: map_bits(rng.integers(0, 2, 4 * (n // 2 ** (p + 1))), c16) for p in (1, 2)}
tx_bits = np.concatenate([hard_decide(symbols[p], c16)[1] for p in (1, 2)])

wave = normalize_power(modulate_see(specs, symbols, n), 1.0)
noisy = add_awgn(wave.frames, 10 ** (-2.1), substream(5))
received = clip_receiver_negatives(noisy)

print(f"two-component frame at ~21 dB per-sample SNR, {tx_bits.size} payload bits\n")

for mode in ("reconstruction", "soft", "hard"):
    rep = receive_see(received, specs, n, mode, gain=wave.scale)
    errs = int(np.count_nonzero(rep.decoded_bits[0] != tx_bits))
    per_comp = [
        int(np.count_nonzero(b[0] != hard_decide(symbols[p], c16)[1]))
        for p, b in zip((1, 2), rep.per_component_bits)
    ]
    evm = [
        float(np.sqrt(np.mean(np.abs(est[0] - symbols[p]) ** 2)))
        for p, est in zip((1, 2), rep.per_component_symbol_estimates)
    ]
    print(f"{mode:>15}: {errs} bit errors (per component {per_comp}), "
          f"symbol EVM {evm[0]:.3f} / {evm[1]:.3f}")

print(
    "\nreconstruction rebuilds the bipolar first component before a single FFT\n"
    "(noise power roughly doubles); soft subtraction re-injects noisy estimates\n"
    "into the cancellation; hard subtraction rebuilds from firm decisions and\n"
    "only pays when a decision is wrong - about 1.5 dB ahead at BER 1e-4."
)
