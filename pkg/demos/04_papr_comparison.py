"""Peak-to-average power across formats and energy allocations.

PAPR is measured per transmission block (one frame, a frame pair, or a
2^depth super-frame) on the unipolar waveform before the channel; the
table reports the 99.9th percentile, i.e. the 1e-3 CCDF exceedance
point that matters for a source with a hard dynamic-range ceiling.
"""

import numpy as np

from optofdm.harness import ExperimentConfig, run_papr_experiment
from optofdm.metrics import papr_quantile_db

CONFIGS = [
    ("SEE-2 equal allocation", dict(format="see", orders=(16,), components=2, allocation="SEE_b")),
    ("SEE-2 heavy 2nd comp.", dict(format="see", orders=(16,), components=2, allocation="SEE_a")),
    ("SEE-2 light 2nd comp.", dict(format="see", orders=(16,), components=2, allocation="SEE_c")),
    ("ACO baseline", dict(format="aco", orders=(64,), components=1)),
    ("ASCO (two frames)", dict(format="asco", orders=(16,), components=3)),
    ("eU (depth-2 super-frame)", dict(format="eu", orders=(16,), components=2)),
    ("DCO bias 2.0", dict(format="dco", orders=(16,), components=1, dco_bias=2.0)),
    ("DCO bias 6.0 (huge)", dict(format="dco", orders=(16,), components=1, dco_bias=6.0)),
]

print(f"{'configuration':<28} {'p50':>6} {'p99':>6} {'p99.9':>7}   (dB)")
for label, kw in CONFIGS:
    cfg = ExperimentConfig(frames=20_000, seed=13, **kw)
    _, samples = run_papr_experiment(cfg)
    p50, p99, p999 = (float(np.quantile(samples, q)) for q in (0.5, 0.99, 0.999))
    print(f"{label:<28} {p50:6.2f} {p99:6.2f} {p999:7.2f}")

print(
    "\nsummed clipped components raise average power without stacking peaks,\n"
    "so the multi-component single-frame format sits lowest; a large DC bias\n"
    "collapses PAPR entirely, at the cost of the energy the bias burns."
)
