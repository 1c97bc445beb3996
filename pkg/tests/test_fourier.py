"""Transform pair contracts against a brute-force DFT oracle."""

import numpy as np
import pytest

from optofdm.fourier import (
    SampleFrame,
    SpectrumError,
    SpectrumFrame,
    active_subcarriers,
    hermitian_embed,
    transform_to_freq,
    transform_to_time,
)


def dft_oracle(x):
    """O(N^2) forward DFT, no normalization (the fixed convention)."""
    n = len(x)
    k = np.arange(n)
    return np.array([np.sum(x * np.exp(-2j * np.pi * kk * k / n)) for kk in k])


def idft_oracle(values):
    """O(N^2) inverse DFT carrying the 1/N factor."""
    n = len(values)
    k = np.arange(n)
    return np.array([np.sum(values * np.exp(2j * np.pi * kk * k / n)) / n for kk in k])


def random_hermitian(n, rng, active=None):
    if active is None:
        active = np.arange(1, n // 2)
    syms = rng.normal(size=len(active)) + 1j * rng.normal(size=len(active))
    return SpectrumFrame(n=n, values=hermitian_embed(syms, active, n), active_set=active)


def test_all_zero_spectrum_gives_all_zero_samples():
    spec = SpectrumFrame(n=8, values=np.zeros(8, dtype=complex), active_set=np.array([], dtype=int))
    frame = transform_to_time(spec)
    np.testing.assert_array_equal(frame.samples, np.zeros(8))


def test_single_tone_analytic_case():
    spec = SpectrumFrame(n=4, values=np.array([0, 1, 0, 1], dtype=complex))
    frame = transform_to_time(spec)
    np.testing.assert_allclose(frame.samples, [0.5, 0.0, -0.5, 0.0], atol=1e-15)


def test_round_trip_matches_brute_force_oracle():
    rng = np.random.default_rng(42)
    spec = random_hermitian(64, rng)
    frame = transform_to_time(spec)
    np.testing.assert_allclose(frame.samples, idft_oracle(spec.values).real, atol=1e-12)
    back = transform_to_freq(frame, 64)
    np.testing.assert_allclose(back.values, spec.values, atol=1e-9)
    np.testing.assert_allclose(back.values, dft_oracle(frame.samples), atol=1e-9)


def test_forward_trivial_cases():
    const = transform_to_freq(SampleFrame(samples=np.full(16, 2.5)), 16)
    assert abs(const.values[0] - 40.0) < 1e-12
    assert np.abs(const.values[1:]).max() < 1e-12

    impulse = np.zeros(16)
    impulse[0] = 1.0
    flat = transform_to_freq(SampleFrame(samples=impulse), 16)
    np.testing.assert_allclose(flat.values, np.ones(16), atol=1e-13)


def test_forward_random_matches_oracle():
    rng = np.random.default_rng(3)
    x = rng.normal(size=64)
    got = transform_to_freq(SampleFrame(samples=x), 64)
    np.testing.assert_allclose(got.values, dft_oracle(x), atol=1e-9)


def test_non_hermitian_raises_naming_pair():
    values = np.zeros(8, dtype=complex)
    values[1] = 1 + 1j
    values[7] = 1 + 1j  # should be the conjugate
    with pytest.raises(SpectrumError, match=r"values\[7\] != conj\(values\[1\]\)"):
        transform_to_time(SpectrumFrame(n=8, values=values))


def test_nonzero_dc_or_nyquist_rejected():
    values = np.zeros(8, dtype=complex)
    values[0] = 1.0
    with pytest.raises(SpectrumError, match="DC"):
        transform_to_time(SpectrumFrame(n=8, values=values))
    values = np.zeros(8, dtype=complex)
    values[4] = 1.0
    with pytest.raises(SpectrumError, match="Nyquist"):
        transform_to_time(SpectrumFrame(n=8, values=values))


def test_length_mismatch_rejected():
    with pytest.raises(ValueError, match="!= configured"):
        transform_to_freq(SampleFrame(samples=np.zeros(32)), 64)


def test_active_subcarrier_reference_sets():
    np.testing.assert_array_equal(active_subcarriers(16, 1), [1, 3, 5, 7])
    np.testing.assert_array_equal(active_subcarriers(16, 2), [2, 6])
    np.testing.assert_array_equal(active_subcarriers(16, 3), [4])


@pytest.mark.parametrize("n", [16, 32, 64, 128])
def test_active_sets_are_disjoint_and_tile_the_half_band(n):
    pmax = int(np.log2(n // 2))
    union = []
    for p in range(1, pmax + 1):
        idx = active_subcarriers(n, p)
        assert len(idx) == n // 2 ** (p + 1)
        union.extend(idx.tolist())
    assert sorted(union) == list(range(1, n // 2))


def test_active_subcarriers_range_errors():
    with pytest.raises(ValueError):
        active_subcarriers(16, 0)
    with pytest.raises(ValueError):
        active_subcarriers(16, 4)
    with pytest.raises(ValueError):
        active_subcarriers(12, 1)


def test_hermitian_embed_batched():
    rng = np.random.default_rng(1)
    syms = rng.normal(size=(5, 4)) + 1j * rng.normal(size=(5, 4))
    values = hermitian_embed(syms, active_subcarriers(16, 1), 16)
    assert values.shape == (5, 16)
    for row, s in zip(values, syms):
        SpectrumFrame(n=16, values=row).validate()
        np.testing.assert_allclose(row[[1, 3, 5, 7]], s)


def test_spectrum_frame_validates_inactive_leakage():
    values = hermitian_embed(np.array([1.0 + 0j]), np.array([2]), 16)
    frame = SpectrumFrame(n=16, values=values, active_set=np.array([3]))
    with pytest.raises(SpectrumError, match="inactive subcarrier"):
        frame.validate()


def test_unipolar_flag_enforced():
    with pytest.raises(ValueError, match="unipolar"):
        SampleFrame(samples=np.array([1.0, -0.5]), unipolar=True)
