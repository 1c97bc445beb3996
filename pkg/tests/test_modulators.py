"""Waveform builders: clipping algebra, path equivalence, unipolarity."""

import numpy as np
import pytest
from scipy.stats import norm

from optofdm.constellation import make_constellation, map_bits
from optofdm.fourier import active_subcarriers, hermitian_embed, time_samples
from optofdm.modulators import (
    ComponentSpec,
    allocation_scales,
    component_time,
    haco_pam_subcarriers,
    modulate_aco,
    modulate_asco,
    modulate_dco,
    modulate_eu,
    modulate_haco,
    modulate_see,
    normalize_power,
)

C16 = make_constellation("qam", 16)


def rand_syms(rng, shape):
    bits = rng.integers(0, 2, shape[:-1] + (shape[-1] * 4,))
    return map_bits(bits, C16)


def see_specs(r, scales=None):
    scales = scales or [1.0] * r
    return [ComponentSpec(p, C16, s) for p, s in zip(range(1, r + 1), scales)]


def see_symbols(rng, n, r, blocks=1):
    return {p: rand_syms(rng, (blocks, n // 2 ** (p + 1))) for p in range(1, r + 1)}


# ---------------------------------------------------------------- aco


def test_aco_zero_symbols_zero_waveform():
    w = modulate_aco(np.zeros(16, dtype=complex), 64)
    np.testing.assert_array_equal(w.frames, np.zeros((1, 64)))


def test_aco_clipping_halves_own_subcarriers():
    rng = np.random.default_rng(0)
    syms = rand_syms(rng, (4, 16))
    w = modulate_aco(syms, 64)
    got = np.fft.fft(w.frames, axis=-1)[:, active_subcarriers(64, 1)]
    np.testing.assert_allclose(got, 0.5 * syms, atol=1e-9)


def test_aco_unclipped_antisymmetry_sample_exact():
    rng = np.random.default_rng(1)
    x = component_time(rand_syms(rng, (1, 16)), 64, 1)[0]
    np.testing.assert_allclose(x[32:], -x[:32], atol=1e-15)


def test_aco_wrong_symbol_count():
    with pytest.raises(ValueError, match="expected 16 symbols"):
        modulate_aco(np.zeros(10, dtype=complex), 64)


# ---------------------------------------------------------------- dco


def test_dco_zero_symbols_constant_frame():
    w = modulate_dco(np.zeros(31, dtype=complex), 64, bias_factor=2.0)
    assert np.ptp(w.frames) == 0.0


def test_dco_zero_bias_is_half_wave_clipping():
    rng = np.random.default_rng(2)
    syms = rand_syms(rng, (1, 31))
    w = modulate_dco(syms, 64, bias_factor=0.0)
    x = time_samples(hermitian_embed(syms, np.arange(1, 32), 64), 64)
    np.testing.assert_allclose(w.frames, np.maximum(x, 0.0), atol=1e-15)


def test_dco_clip_fraction_matches_gaussian_tail():
    rng = np.random.default_rng(3)
    total = 0.0
    frames = 0
    for _ in range(5):
        w = modulate_dco(rand_syms(rng, (20_000, 31)), 64, bias_factor=2.0)
        total += w.meta["clip_fraction"] * 20_000
        frames += 20_000
    assert total / frames == pytest.approx(norm.cdf(-2.0), abs=0.005)


# ---------------------------------------------------------------- see


def test_single_component_equals_aco():
    rng = np.random.default_rng(4)
    syms = rand_syms(rng, (3, 16))
    w_see = modulate_see(see_specs(1), {1: syms}, 64)
    w_aco = modulate_aco(syms, 64)
    np.testing.assert_allclose(w_see.frames, w_aco.frames, atol=1e-15)


@pytest.mark.parametrize("n", [16, 32, 64])
@pytest.mark.parametrize("r", [2, 3])
def test_frequency_and_time_paths_agree(n, r):
    rng = np.random.default_rng(n + r)
    syms = see_symbols(rng, n, r, blocks=50)
    specs = see_specs(r, scales=[1.0, 1.4, 0.7][:r])
    wf = modulate_see(specs, syms, n, "frequency")
    wt = modulate_see(specs, syms, n, "time")
    assert np.abs(wf.frames - wt.frames).max() < 1e-9


def test_three_component_unclipped_sum_fills_low_band():
    rng = np.random.default_rng(5)
    n = 16
    total = sum(component_time(rand_syms(rng, (1, n // 2 ** (p + 1))), n, p) for p in (1, 2, 3))
    spectrum = np.fft.fft(total, axis=-1)[0]
    nonzero = np.nonzero(np.abs(spectrum[: n // 2]) > 1e-9)[0]
    np.testing.assert_array_equal(nonzero, np.arange(1, 8))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_component_shift_symmetries(p):
    rng = np.random.default_rng(6 + p)
    n = 64
    x = component_time(rand_syms(rng, (1, n // 2 ** (p + 1))), n, p)[0]
    half = n // 2**p
    np.testing.assert_allclose(np.roll(x, -half), -x, atol=1e-12)
    if p > 1:
        np.testing.assert_allclose(np.roll(x, -2 * half), x, atol=1e-12)


def test_clipped_component_spills_only_onto_later_sets():
    rng = np.random.default_rng(7)
    n = 64
    for p in (1, 2, 3):
        clipped = np.maximum(component_time(rand_syms(rng, (8, n // 2 ** (p + 1))), n, p), 0)
        spectrum = np.fft.fft(clipped, axis=-1)
        norm_ = np.linalg.norm(clipped, axis=-1).max()
        for q in range(1, p):
            leak = np.abs(spectrum[:, active_subcarriers(n, q)]).max()
            assert leak < 1e-9 * norm_


def test_see_duplicate_component_rejected():
    specs = [ComponentSpec(1, C16), ComponentSpec(1, C16)]
    with pytest.raises(ValueError, match="duplicate"):
        modulate_see(specs, {1: np.zeros(16, dtype=complex)}, 64)


def test_see_component_out_of_range_rejected():
    with pytest.raises(ValueError, match="exceeds"):
        modulate_see([ComponentSpec(6, C16)], {6: np.zeros(1, dtype=complex)}, 64)


# ---------------------------------------------------------------- haco


def test_haco_zero_pam_is_pure_aco():
    rng = np.random.default_rng(8)
    qs = rand_syms(rng, (1, 16))
    w = modulate_haco(qs, np.zeros(15), 64, qam_scale=1.0, pam_scale=1.0)
    np.testing.assert_allclose(w.frames, modulate_aco(qs, 64).frames, atol=1e-15)


def test_haco_pam_component_antisymmetric_within_half():
    rng = np.random.default_rng(9)
    n = 64
    pam = map_bits(rng.integers(0, 2, 15 * 3), make_constellation("pam", 8)).real
    x2 = time_samples(hermitian_embed(1j * pam, haco_pam_subcarriers(n), n), n)
    half = x2[: n // 2]
    np.testing.assert_allclose(half[(n // 2 - np.arange(n // 2)) % (n // 2)], -half, atol=1e-12)
    np.testing.assert_allclose(x2[n // 2 :], half, atol=1e-12)


def test_haco_pam_clipping_clear_of_odd_and_imag_even_bins():
    rng = np.random.default_rng(10)
    n = 64
    pam = map_bits(rng.integers(0, 2, (20, 15 * 3)), make_constellation("pam", 8)).real
    x2 = time_samples(hermitian_embed(1j * pam, haco_pam_subcarriers(n), n), n)
    distortion = np.fft.fft(np.maximum(x2, 0) - 0.5 * x2, axis=-1)
    norm_ = np.linalg.norm(x2, axis=-1).max()
    assert np.abs(distortion[:, active_subcarriers(n, 1)]).max() < 1e-9 * norm_
    assert np.abs(distortion[:, haco_pam_subcarriers(n)].imag).max() < 1e-9 * norm_


def test_haco_rejects_complex_pam():
    with pytest.raises(ValueError, match="real"):
        modulate_haco(np.zeros(16, dtype=complex), np.full(15, 1j), 64)


# ---------------------------------------------------------------- asco


def test_asco_zero_shared_stream_gives_two_aco_frames():
    rng = np.random.default_rng(11)
    s1, s2 = rand_syms(rng, (1, 16)), rand_syms(rng, (1, 16))
    w = modulate_asco(s1, s2, np.zeros((1, 15), dtype=complex), 64)
    np.testing.assert_allclose(w.frames[0], modulate_aco(s1, 64).frames[0], atol=1e-15)
    np.testing.assert_allclose(w.frames[1], modulate_aco(s2, 64).frames[0], atol=1e-15)


def test_asco_shared_stream_recoverable_from_frame_difference():
    rng = np.random.default_rng(12)
    n = 64
    s1, s2 = rand_syms(rng, (1, 16)), rand_syms(rng, (1, 16))
    s3 = rand_syms(rng, (1, 15))
    w = modulate_asco(s1, s2, s3, n)
    c1 = np.maximum(component_time(s1, n, 1), 0)
    c2 = np.maximum(component_time(s2, n, 1), 0)
    x3 = time_samples(hermitian_embed(s3, haco_pam_subcarriers(n), n), n)
    recovered = (w.frames[0] - c1[0]) - (w.frames[1] - c2[0])
    np.testing.assert_allclose(recovered, x3[0], atol=1e-12)


def test_asco_frames_unipolar_and_counted():
    rng = np.random.default_rng(13)
    w = modulate_asco(rand_syms(rng, (5, 16)), rand_syms(rng, (5, 16)), rand_syms(rng, (5, 15)), 64)
    assert w.frames.shape == (10, 64)
    assert w.block_size == 2
    assert w.frames.min() >= 0


def test_asco_count_mismatch():
    with pytest.raises(ValueError):
        modulate_asco(np.zeros(16, dtype=complex), np.zeros(16, dtype=complex),
                      np.zeros(10, dtype=complex), 64)


# ---------------------------------------------------------------- eu


def u_ofdm_signal(syms, n):
    return time_samples(hermitian_embed(syms, np.arange(1, n // 2), n), n)


def test_eu_depth1_is_plain_split_pair():
    rng = np.random.default_rng(14)
    n = 64
    syms = rand_syms(rng, (1, 1, 31))
    w = modulate_eu([syms], 1, n)
    x = u_ofdm_signal(syms[0, 0], n)
    np.testing.assert_allclose(w.frames[1] - w.frames[0], -x, atol=1e-15)


@pytest.mark.parametrize("scaling,amp", [("half", 0.5), ("sqrt", 1 / np.sqrt(2))])
def test_eu_depth2_repetition_and_amplitude(scaling, amp):
    rng = np.random.default_rng(15)
    n = 64
    d2 = rand_syms(rng, (1, 1, 31))
    streams = [np.zeros((1, 2, 31), dtype=complex), d2]
    w = modulate_eu(streams, 2, n, repetition_scaling=scaling)
    x = u_ofdm_signal(d2[0, 0], n)
    np.testing.assert_allclose(w.frames[0], w.frames[1], atol=1e-15)  # repeated twice
    np.testing.assert_allclose(w.frames[0], amp * np.maximum(x, 0), atol=1e-12)
    np.testing.assert_allclose(w.frames[2], amp * np.maximum(-x, 0), atol=1e-12)


def test_eu_zero_input_zero_superframe():
    streams = [np.zeros((1, 2, 31), dtype=complex), np.zeros((1, 1, 31), dtype=complex)]
    w = modulate_eu(streams, 2, 64)
    np.testing.assert_array_equal(w.frames, np.zeros((4, 64)))


def test_eu_stream_shape_errors():
    with pytest.raises(ValueError, match="streams"):
        modulate_eu([np.zeros((1, 1, 31), dtype=complex)], 2, 64)
    with pytest.raises(ValueError, match="shape"):
        modulate_eu([np.zeros((1, 3, 31), dtype=complex)], 1, 64)


# ------------------------------------------------------- normalization


def test_normalize_constant_frame():
    w = modulate_aco(np.zeros(16, dtype=complex), 64)
    w.frames = np.full((1, 64), 2.0)
    out = normalize_power(w, 1.0)
    np.testing.assert_allclose(out.frames, np.ones((1, 64)))
    assert out.scale == pytest.approx(0.5)


def test_normalize_idempotent_and_exact():
    rng = np.random.default_rng(16)
    w = modulate_see(see_specs(2), see_symbols(rng, 64, 2, 40), 64)
    once = normalize_power(w, 0.25)
    twice = normalize_power(once, 0.25)
    assert np.mean(once.frames**2) == pytest.approx(0.25, rel=1e-6)
    np.testing.assert_allclose(once.frames, twice.frames, rtol=1e-12)


def test_normalize_rejects_zero_waveform():
    w = modulate_aco(np.zeros(16, dtype=complex), 64)
    with pytest.raises(ValueError, match="zero"):
        normalize_power(w, 1.0)


def test_equal_amplitude_calibration_power_split():
    # with equal per-subcarrier amplitudes the post-clip component powers
    # sit in the ratio of the subcarrier counts (2:1 for r=2), and the
    # per-symbol energies are identical by construction
    rng = np.random.default_rng(17)
    n, blocks = 64, 10_000
    syms = see_symbols(rng, n, 2, blocks)
    p = [
        float(np.mean(np.maximum(component_time(syms[k], n, k), 0) ** 2))
        for k in (1, 2)
    ]
    assert p[0] / p[1] == pytest.approx(2.0, rel=0.02)


def test_allocation_presets():
    assert allocation_scales("SEE_b", 2) == [1.0, 1.0]
    assert allocation_scales("SEE_a", 2) == [1.0, 2.0]
    assert allocation_scales("SEE_c", 3) == [1.0, 0.5, 1.0]
    with pytest.raises(ValueError):
        allocation_scales("SEE_x", 2)


def test_all_formats_emit_unipolar_waveforms():
    rng = np.random.default_rng(18)
    n = 64
    waves = [
        modulate_aco(rand_syms(rng, (4, 16)), n),
        modulate_dco(rand_syms(rng, (4, 31)), n),
        modulate_see(see_specs(3), see_symbols(rng, n, 3, 4), n),
        modulate_haco(rand_syms(rng, (4, 16)), rand_syms(rng, (4, 15)).real, n),
        modulate_asco(rand_syms(rng, (4, 16)), rand_syms(rng, (4, 16)), rand_syms(rng, (4, 15)), n),
        modulate_eu([rand_syms(rng, (4, 2, 31)), rand_syms(rng, (4, 1, 31))], 2, n),
    ]
    for w in waves:
        assert w.frames.min() >= 0.0, w.format
