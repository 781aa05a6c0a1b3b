"""Metrics tests: power floor, eye Q with frozen oracles, BER mapping."""

import math

import numpy as np
import pytest

from fsolink.errors import InsufficientDataError
from fsolink.metrics import (
    Q_CAP,
    EyeStats,
    count_errors,
    estimate_q,
    measure_power_dbm,
    q_to_ber,
)
from fsolink.signals import BitSequence, OpticalField, SampledSignal


def two_level_signal(bits, sps, high=1.0, low=0.0):
    return SampledSignal(np.repeat(np.where(np.asarray(bits) == 1, high, low), sps), 1e9)


def test_measure_power_dbm_points():
    n = 256
    one_mw = OpticalField(np.full(n, math.sqrt(1e-3), dtype=np.complex128), 1e9)
    assert measure_power_dbm(one_mw) == pytest.approx(0.0, abs=1e-12)
    two_mw = OpticalField(np.full(n, math.sqrt(2e-3), dtype=np.complex128), 1e9)
    assert measure_power_dbm(two_mw) == pytest.approx(10.0 * math.log10(2.0), abs=1e-9)
    # 20 dB of loss moves the reading by exactly -20
    attenuated = OpticalField(one_mw.envelope * math.sqrt(1e-2), 1e9)
    assert measure_power_dbm(attenuated) == pytest.approx(-20.0, abs=1e-9)


def test_measure_power_dbm_floor():
    dark = OpticalField(np.zeros(64, dtype=np.complex128), 1e9)
    assert measure_power_dbm(dark) == -200.0
    # nonzero but below the floor still clamps
    faint = OpticalField(np.full(64, 1e-13 + 0j), 1e9)
    assert measure_power_dbm(faint) == -200.0


def test_estimate_q_noiseless_two_level():
    bits = [1, 0, 1, 1, 0, 0, 1, 0, 1, 0]
    q, stats = estimate_q(two_level_signal(bits, 16), BitSequence(bits), 16)
    assert q == Q_CAP
    assert stats.mu1 == 1.0 and stats.mu0 == 0.0
    assert stats.threshold == 0.5  # midpoint fallback for zero sigma
    assert 3 <= stats.phase < 13  # inside the guard window


def test_estimate_q_synthetic_gaussian():
    # marks ~ N(1, 0.1), spaces ~ N(0, 0.1), 1e4 each -> q = 5.0 +/- 0.15
    rng = np.random.default_rng(12345)
    n = 10_000
    bits = np.concatenate([np.ones(n, dtype=int), np.zeros(n, dtype=int)])
    rng.shuffle(bits)
    levels = np.where(bits == 1, 1.0, 0.0) + 0.1 * rng.standard_normal(2 * n)
    q, stats = estimate_q(SampledSignal(levels, 1e9), BitSequence(bits), 1)
    assert q == pytest.approx(5.0, abs=0.15)
    assert stats.phase == 0
    assert 0.3 < stats.threshold < 0.7


def test_estimate_q_closed_eye_is_zero():
    rng = np.random.default_rng(99)
    n = 10_000
    bits = np.concatenate([np.ones(n, dtype=int), np.zeros(n, dtype=int)])
    rng.shuffle(bits)
    levels = 0.5 + 0.1 * rng.standard_normal(2 * n)  # identical rails
    q, _ = estimate_q(SampledSignal(levels, 1e9), BitSequence(bits), 1)
    assert q <= 0.1


def test_estimate_q_inverted_eye_is_zero():
    bits = [1, 0] * 8
    q, _ = estimate_q(two_level_signal(bits, 8, high=0.0, low=1.0), BitSequence(bits), 8)
    assert q == 0.0


def test_estimate_q_affine_invariance():
    rng = np.random.default_rng(4)
    bits = rng.integers(0, 2, size=512)
    while bits.sum() < 4 or (len(bits) - bits.sum()) < 4:
        bits = rng.integers(0, 2, size=512)
    base = np.repeat(bits.astype(float), 16) + 0.05 * rng.standard_normal(512 * 16)
    sig = SampledSignal(base, 1e9)
    q0, s0 = estimate_q(sig, BitSequence(bits), 16)
    q1, s1 = estimate_q(SampledSignal(3.5 * base + 2.0, 1e9), BitSequence(bits), 16)
    assert q1 == pytest.approx(q0, rel=1e-12)
    assert s1.phase == s0.phase
    assert s1.threshold == pytest.approx(3.5 * s0.threshold + 2.0, rel=1e-9)


def test_estimate_q_insufficient_data():
    bits = [1, 1, 1, 0, 0, 0, 1, 1]  # only 3 spaces
    with pytest.raises(InsufficientDataError):
        estimate_q(two_level_signal(bits, 8), BitSequence(bits), 8)


def test_estimate_q_length_mismatch():
    bits = [1, 0, 1, 1, 0, 0, 1, 0]
    with pytest.raises(ValueError):
        estimate_q(SampledSignal(np.zeros(63), 1e9), BitSequence(bits), 8)


def test_estimate_q_best_phase_beats_transitions():
    # triangular transitions make guard-band phases worse than slot center
    bits = np.array([1, 0] * 32)
    sps = 32
    ideal = np.repeat(bits.astype(float), sps)
    ramp = np.convolve(ideal, np.ones(9) / 9.0, mode="same")  # smeared edges
    rng = np.random.default_rng(8)
    noisy = ramp + 0.01 * rng.standard_normal(len(ramp))
    q, stats = estimate_q(SampledSignal(noisy, 1e9), BitSequence(bits), sps)
    center_dist = abs(stats.phase - sps // 2)
    assert center_dist <= 10  # optimum sits away from the edges
    assert q > 10.0


def test_q_to_ber_oracle_values():
    # mpmath quadrature oracles, 40 digits, frozen
    assert q_to_ber(6.0) == pytest.approx(9.8658764503769814e-10, rel=1e-10)
    assert q_to_ber(6.52) == pytest.approx(3.5153695739517338e-11, rel=1e-10)
    assert q_to_ber(6.23) == pytest.approx(2.3321758738675173e-10, rel=1e-10)
    assert q_to_ber(2.0) == pytest.approx(0.022750131948179207, rel=1e-12)
    assert q_to_ber(5.0) == pytest.approx(2.8665157187919391e-7, rel=1e-12)
    assert q_to_ber(0.0) == 0.5


def test_q_to_ber_reference_points():
    assert q_to_ber(6.52) == pytest.approx(3.48e-11, rel=0.15)
    ratio = q_to_ber(6.23) / 2.72e-10
    assert 0.5 < ratio < 2.0


def test_q_to_ber_monotone_and_limits():
    # stay below q ~ 37 where erfc underflows to zero and ties appear
    qs = np.linspace(0.0, 35.0, 351)
    bers = [q_to_ber(float(q)) for q in qs]
    assert all(b > a for a, b in zip(bers[1:], bers))  # strictly decreasing
    assert q_to_ber(float("inf")) == 0.0
    assert q_to_ber(Q_CAP) == 0.0  # underflows to exact zero
    with pytest.raises(ValueError):
        q_to_ber(-0.5)
    with pytest.raises(ValueError):
        q_to_ber(float("nan"))


def test_q_to_ber_range():
    for q in (0.0, 0.3, 1.0, 2.5, 7.0):
        assert 0.0 <= q_to_ber(q) <= 0.5


def test_monte_carlo_fidelity_at_countable_ber():
    # q ~ 2.8 gives BER ~ 2.6e-3: counting must agree with q_to_ber within x3
    rng = np.random.default_rng(2024)
    n = 10_000
    bits = np.concatenate([np.ones(n, dtype=int), np.zeros(n, dtype=int)])
    rng.shuffle(bits)
    levels = np.where(bits == 1, 1.0, 0.0) + 0.18 * rng.standard_normal(2 * n)
    sig = SampledSignal(levels, 1e9)
    q, stats = estimate_q(sig, BitSequence(bits), 1)
    predicted = q_to_ber(q)
    assert predicted >= 1e-3
    errors = count_errors(sig, BitSequence(bits), 1, stats.phase, stats.threshold)
    measured = errors / (2 * n)
    assert predicted / 3.0 <= measured <= predicted * 3.0


def test_count_errors_noiseless_zero():
    bits = [1, 0, 1, 1, 0, 0, 1, 0]
    sig = two_level_signal(bits, 8)
    assert count_errors(sig, BitSequence(bits), 8, 4, 0.5) == 0
    # flipping the threshold above the mark level fails every mark
    assert count_errors(sig, BitSequence(bits), 8, 4, 1.5) == 4


def test_count_errors_validation():
    bits = BitSequence([1, 0, 1, 0])
    sig = SampledSignal(np.zeros(32), 1e9)
    with pytest.raises(ValueError):
        count_errors(sig, bits, 8, 8, 0.5)
    with pytest.raises(ValueError):
        count_errors(SampledSignal(np.zeros(31), 1e9), bits, 8, 0, 0.5)


def test_eyestats_q_and_threshold_consistency():
    s = EyeStats(mu1=2.0, mu0=1.0, sigma1=0.1, sigma0=0.3, phase=5)
    assert s.q == pytest.approx(1.0 / 0.4, rel=1e-15)
    # threshold sits sigma-weighted toward the quieter rail
    assert s.threshold == pytest.approx((0.3 * 2.0 + 0.1 * 1.0) / 0.4, rel=1e-15)
    with pytest.raises(ValueError):
        EyeStats(mu1=1.0, mu0=0.0, sigma1=-0.1, sigma0=0.1, phase=0)
