"""Transmitter tests: LFSR sequence/period, duobinary precoding, line codes."""

import math

import numpy as np
import pytest

from fsolink.errors import DegenerateSignalError, InvalidFormatError, InvalidSeedError
from fsolink.signals import BitSequence, dbm_to_watts
from fsolink.transmitter import (
    LFSR_TAPS,
    ModulationFormat,
    TxParams,
    edfa_amplify,
    line_code,
    precode_modified_duobinary,
    prbs_generate,
    synthesize_field,
    transmit,
)


def lfsr_reference(order: int, taps: tuple, seed: int, n: int) -> list:
    """Independent bit-list LFSR used as the oracle for the kernel."""
    reg = [(seed >> k) & 1 for k in range(order)]  # reg[k] is stage k+1
    out = []
    for _ in range(n):
        out.append(reg[order - 1])
        fb = 0
        for tap in taps:
            fb ^= reg[tap - 1]
        reg = [fb] + reg[:-1]
    return out


def test_prbs7_all_ones_first_bits():
    # hand trace: all-ones register emits seven 1s then a 0
    bits = prbs_generate(7, None, 8)
    assert bits.bits.tolist() == [1, 1, 1, 1, 1, 1, 1, 0]


def test_prbs7_matches_reference_oracle():
    got = prbs_generate(7, 93, 300).bits.tolist()
    assert got == lfsr_reference(7, LFSR_TAPS[7], 93, 300)


@pytest.mark.parametrize("order", [3, 4, 5, 6, 7, 8, 9, 10, 11])
def test_prbs_period_is_maximal(order):
    period = (1 << order) - 1
    bits = prbs_generate(order, None, 2 * period).bits
    assert np.array_equal(bits[:period], bits[period:])
    # no proper divisor of the period is itself a period of the whole run
    for cand in range(1, period):
        if period % cand == 0 and np.array_equal(bits[: 2 * period - cand], bits[cand:]):
            pytest.fail(f"period {cand} < {period}")


def test_prbs_balance_order7():
    bits = prbs_generate(7, None, 127).bits
    assert int(bits.sum()) == 64  # 2^(order-1) ones per period


def test_prbs_zero_seed_rejected():
    with pytest.raises(InvalidSeedError):
        prbs_generate(7, 0, 10)
    with pytest.raises(InvalidSeedError):
        prbs_generate(7, 1 << 7, 10)  # reduces to zero in-register


def test_prbs_seed_masked_to_width():
    full = prbs_generate(7, 127, 50).bits
    wrapped = prbs_generate(7, 127 | (1 << 9), 50).bits
    assert np.array_equal(full, wrapped)


def test_prbs_bad_order():
    with pytest.raises(ValueError):
        prbs_generate(2, None, 10)
    with pytest.raises(ValueError):
        prbs_generate(32, None, 10)


def test_precoder_trace():
    # p[k] = b[k] xor p[k-2]: [1,0,1,1] -> [1,0,0,1]
    p = precode_modified_duobinary(BitSequence([1, 0, 1, 1]))
    assert p.bits.tolist() == [1, 0, 0, 1]


def test_modb_levels_trace():
    # c[k] = p[k] - p[k-2]: [1,0,1,1] -> [1,0,-1,1]
    amps = line_code(ModulationFormat.MODB, BitSequence([1, 0, 1, 1]), 8, TxParams())
    per_bit = amps.reshape(4, 8)
    assert np.array_equal(per_bit, np.repeat([[1.0], [0.0], [-1.0], [1.0]], 8, axis=1))


def test_modb_magnitude_recovers_bits_exhaustive():
    # square-law invariant |c[k]| == b[k] over every 10-bit pattern
    params = TxParams()
    for word in range(1, 1 << 10):
        bits = [(word >> k) & 1 for k in range(10)]
        amps = line_code(ModulationFormat.MODB, BitSequence(bits), 8, params)
        recovered = np.abs(amps.reshape(10, 8)[:, 0]).astype(int)
        assert recovered.tolist() == bits


def test_mdrz_magnitude_recovers_bits():
    params = TxParams()
    rng = np.random.default_rng(7)
    for _ in range(50):
        bits = rng.integers(0, 2, size=32)
        amps = line_code(ModulationFormat.MDRZ, BitSequence(bits), 16, params)
        n_on = int(round(params.rz_duty * 16))
        eye = amps.reshape(32, 16)
        assert np.array_equal(np.abs(eye[:, 0]).astype(int), bits)
        assert np.all(eye[:, n_on:] == 0.0)


def test_nrz_holds_full_slot():
    amps = line_code(ModulationFormat.NRZ, BitSequence([1, 0, 1]), 8, TxParams())
    assert np.array_equal(amps, np.repeat([1.0, 0.0, 1.0], 8))


def test_rz_duty_gating():
    amps = line_code(ModulationFormat.RZ, BitSequence([1, 1]), 64, TxParams())
    eye = amps.reshape(2, 64)
    assert np.all(eye[:, :32] == 1.0)
    assert np.all(eye[:, 32:] == 0.0)


def test_csrz_alternating_sign_and_duty():
    amps = line_code(ModulationFormat.CSRZ, BitSequence([1, 1, 1, 1]), 64, TxParams())
    eye = amps.reshape(4, 64)
    n_on = int(round(0.66 * 64))  # 42
    assert np.array_equal(eye[0, :n_on], np.ones(n_on))
    assert np.array_equal(eye[1, :n_on], -np.ones(n_on))
    assert np.all(eye[:, n_on:] == 0.0)


def test_csrz_carrier_suppression():
    # equal mark count on even and odd slots cancels the mean field
    amps = line_code(ModulationFormat.CSRZ, BitSequence([1] * 64), 64, TxParams())
    assert abs(float(amps.sum())) == 0.0


def test_format_parse():
    assert ModulationFormat.parse(" NRZ ") is ModulationFormat.NRZ
    assert ModulationFormat.parse("mdrz") is ModulationFormat.MDRZ
    with pytest.raises(InvalidFormatError):
        ModulationFormat.parse("qpsk")


def test_synthesize_field_power_exact():
    rng = np.random.default_rng(3)
    amps = rng.choice([-1.0, 0.0, 1.0], size=4096)
    amps[0] = 1.0  # keep the drive nonzero
    for dbm in (-3.0, 0.0, 10.0):
        field = synthesize_field(amps, dbm, 64e10)
        assert field.avg_power_w == pytest.approx(dbm_to_watts(dbm), rel=1e-12)


def test_synthesize_field_preserves_sign():
    field = synthesize_field(np.array([1.0, -1.0, 0.0, 1.0]), 0.0, 1e9)
    env = field.envelope.real
    assert env[0] > 0 and env[1] < 0 and env[2] == 0.0


def test_synthesize_field_all_zero_rejected():
    with pytest.raises(DegenerateSignalError):
        synthesize_field(np.zeros(64), 0.0, 1e9)


def test_edfa_gain_power():
    field = synthesize_field(np.ones(64), 0.0, 1e9)
    out = edfa_amplify(field, 10.0)
    assert out.avg_power_w == pytest.approx(10.0 * field.avg_power_w, rel=1e-12)


def test_transmit_launch_power_all_formats():
    # mean launch power must hit avg_power_dbm + edfa_gain_db for every code
    params = TxParams(avg_power_dbm=10.0, edfa_gain_db=10.0)
    for fmt in ModulationFormat:
        bits, field = transmit(fmt, params)
        assert len(bits) == params.sequence_length
        assert field.avg_power_w == pytest.approx(dbm_to_watts(20.0), rel=1e-12)


def test_transmit_deterministic():
    params = TxParams()
    _, a = transmit(ModulationFormat.CSRZ, params)
    _, b = transmit(ModulationFormat.CSRZ, params)
    assert np.array_equal(a.envelope, b.envelope)


def test_txparams_validation():
    with pytest.raises(ValueError):
        TxParams(bit_rate=0.0)
    with pytest.raises(ValueError):
        TxParams(samples_per_bit=4)
    with pytest.raises(ValueError):
        TxParams(rz_duty=0.0)
    with pytest.raises(InvalidSeedError):
        TxParams(prbs_seed=0)
    with pytest.raises(ValueError):
        TxParams(prbs_order=33)
