"""Unipolar optical OFDM simulation library.

Modulators, receivers, channel model, metrics, and a seeded Monte Carlo
harness for intensity-modulated direct-detection OFDM formats built
from zero-clipped components.
"""

__version__ = "0.1.0"

from .constellation import Constellation, hard_decide, make_constellation, map_bits
from .fourier import (
    SampleFrame,
    SpectrumFrame,
    active_subcarriers,
    hermitian_embed,
    transform_to_freq,
    transform_to_time,
)
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
    normalize_power,
)
from .channel import (
    ChannelConfig,
    add_awgn,
    clip_dynamic_range,
    clip_receiver_negatives,
    dbm_to_watts,
    substream,
)
from .receivers import (
    RxReport,
    receive_aco,
    receive_asco,
    receive_dco,
    receive_eu,
    receive_haco,
    receive_see,
)
from .metrics import (
    RateSpec,
    count_ber,
    data_rate,
    papr_ccdf,
    papr_db,
    spectral_efficiency_see,
)
