"""Optical transmitter: PRBS pattern, line coding, ideal modulator, EDFA.

Five modulation formats are synthesized directly as field amplitudes in
[-1, +1] (ideal external modulation, no chirp):

    NRZ   bit held over the full slot
    RZ    bit gated to the first rz_duty fraction of the slot
    CSRZ  RZ-style pulse with alternating slot sign (pi phase flips),
          duty csrz_duty; for all-ones data the field sums to zero,
          which is the carrier suppression
    MODB  modified-duobinary three-level code c[k] = p[k] - p[k-2] with
          XOR precoding p[k] = b[k] xor p[k-2]; |c[k]| equals the source
          bit, so square-law detection needs no decoder
    MDRZ  the same three-level code gated by the rz_duty carver

The sign of an amplitude encodes optical phase 0/pi and disappears at the
photodiode; only the duty cycles distinguish the formats in the power
domain.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from fsolink import kernels
from fsolink.errors import DegenerateSignalError, InvalidFormatError, InvalidSeedError
from fsolink.signals import BitSequence, OpticalField, db_to_linear, dbm_to_watts


class ModulationFormat(Enum):
    NRZ = "nrz"
    RZ = "rz"
    CSRZ = "csrz"
    MODB = "modb"
    MDRZ = "mdrz"

    @classmethod
    def parse(cls, tag: str) -> "ModulationFormat":
        try:
            return cls(tag.strip().lower())
        except ValueError:
            valid = ", ".join(f.value for f in cls)
            raise InvalidFormatError(f"unknown format {tag!r} (expected one of {valid})") from None


# Maximal-length Fibonacci LFSR taps per register order (XAPP052 table).
LFSR_TAPS = {
    3: (3, 2),
    4: (4, 3),
    5: (5, 3),
    6: (6, 5),
    7: (7, 6),
    8: (8, 6, 5, 4),
    9: (9, 5),
    10: (10, 7),
    11: (11, 9),
    12: (12, 6, 4, 1),
    13: (13, 4, 3, 1),
    14: (14, 5, 3, 1),
    15: (15, 14),
    16: (16, 15, 13, 4),
    17: (17, 14),
    18: (18, 11),
    19: (19, 6, 2, 1),
    20: (20, 17),
    21: (21, 19),
    22: (22, 21),
    23: (23, 18),
    24: (24, 23, 22, 17),
    25: (25, 22),
    26: (26, 6, 2, 1),
    27: (27, 5, 2, 1),
    28: (28, 25),
    29: (29, 27),
    30: (30, 6, 4, 1),
    31: (31, 28),
}


@dataclass(frozen=True)
class TxParams:
    avg_power_dbm: float = 10.0
    bit_rate: float = 10e9
    samples_per_bit: int = 64
    sequence_length: int = 128
    rz_duty: float = 0.5
    csrz_duty: float = 0.66
    edfa_gain_db: float = 10.0
    prbs_order: int = 7
    prbs_seed: int | None = None  # None selects the all-ones state

    def __post_init__(self):
        if not math.isfinite(self.avg_power_dbm):
            raise ValueError("avg_power_dbm must be finite")
        if self.bit_rate <= 0:
            raise ValueError("bit_rate must be positive")
        if self.samples_per_bit < 8:
            raise ValueError("samples_per_bit must be >= 8 for eye resolution")
        if self.sequence_length < 1:
            raise ValueError("sequence_length must be >= 1")
        if not 0 < self.rz_duty <= 1:
            raise ValueError("rz_duty must be in (0, 1]")
        if not 0 < self.csrz_duty <= 1:
            raise ValueError("csrz_duty must be in (0, 1]")
        if self.prbs_order not in LFSR_TAPS:
            raise ValueError(f"prbs_order must be in [3, 31], got {self.prbs_order}")
        if self.prbs_seed == 0:
            raise InvalidSeedError("prbs_seed must be nonzero")

    @property
    def sample_rate(self) -> float:
        return self.bit_rate * self.samples_per_bit


def prbs_generate(order: int, seed: int | None, n: int) -> BitSequence:
    """Generate n bits from a maximal-length Fibonacci LFSR.

    The output bit is the shifted-out top stage; feedback is the XOR of
    the tapped stages (order 7 uses x^7 + x^6 + 1). seed is reduced to
    the register width; None selects the all-ones state. The state
    sequence has period 2^order - 1.
    """
    if order not in LFSR_TAPS:
        raise ValueError(f"unsupported LFSR order {order} (have 3..31)")
    if n < 1:
        raise ValueError("n must be >= 1")
    mask = (1 << order) - 1
    state = mask if seed is None else int(seed) & mask
    if state == 0:
        raise InvalidSeedError("LFSR seed reduces to the all-zero absorbing state")
    taps_mask = 0
    for tap in LFSR_TAPS[order]:
        taps_mask |= 1 << (tap - 1)
    return BitSequence(kernels.lfsr_bits(order, taps_mask, state, n))


def precode_modified_duobinary(bits: BitSequence) -> BitSequence:
    """XOR precoder p[k] = b[k] xor p[k-2], with p[-1] = p[-2] = 0."""
    b = bits.bits
    p = np.zeros(len(b), dtype=np.uint8)
    for k in range(len(b)):
        prev = p[k - 2] if k >= 2 else 0
        p[k] = b[k] ^ prev
    return BitSequence(p)


def _mdb_levels(bits: BitSequence) -> np.ndarray:
    """Three-level symbols c[k] = p[k] - p[k-2] in {-1, 0, +1}."""
    p = precode_modified_duobinary(bits).bits.astype(np.int8)
    c = p.copy().astype(np.float64)
    c[2:] -= p[:-2]
    return c


def _carve(symbols: np.ndarray, sps: int, duty: float) -> np.ndarray:
    n_on = min(max(int(round(duty * sps)), 1), sps)
    pulse = np.zeros(sps)
    pulse[:n_on] = 1.0
    return np.kron(symbols, pulse)


def line_code(
    fmt: ModulationFormat, bits: BitSequence, sps: int, params: "TxParams"
) -> np.ndarray:
    """Per-sample target field amplitude a[n] in [-1, +1] for one format."""
    if len(bits) == 0:
        raise ValueError("bit sequence is empty")
    if sps < 8:
        raise ValueError("samples_per_bit must be >= 8")
    b = bits.bits.astype(np.float64)
    if fmt is ModulationFormat.NRZ:
        return np.repeat(b, sps)
    if fmt is ModulationFormat.RZ:
        return _carve(b, sps, params.rz_duty)
    if fmt is ModulationFormat.CSRZ:
        signs = np.where(np.arange(len(b)) % 2 == 0, 1.0, -1.0)
        return _carve(signs * b, sps, params.csrz_duty)
    if fmt is ModulationFormat.MODB:
        return np.repeat(_mdb_levels(bits), sps)
    if fmt is ModulationFormat.MDRZ:
        return _carve(_mdb_levels(bits), sps, params.rz_duty)
    raise InvalidFormatError(f"unknown format {fmt!r}")


def synthesize_field(
    amplitudes: np.ndarray, avg_power_dbm: float, sample_rate: float
) -> OpticalField:
    """Scale amplitudes to a field whose mean power is exactly the target.

    e[n] = s * a[n] with s > 0 chosen so mean(|e|^2) equals
    dbm_to_watts(avg_power_dbm); amplitude signs carry into the field.
    """
    a = np.asarray(amplitudes, dtype=np.float64)
    mean_sq = float(np.mean(a * a))
    if mean_sq == 0.0:
        raise DegenerateSignalError("cannot normalize an all-zero drive signal")
    scale = math.sqrt(dbm_to_watts(avg_power_dbm) / mean_sq)
    return OpticalField(scale * a, sample_rate)


def edfa_amplify(field: OpticalField, gain_db: float) -> OpticalField:
    """Noiseless flat gain: envelope scaled by sqrt of the linear gain."""
    if not math.isfinite(gain_db):
        raise ValueError("gain_db must be finite")
    return OpticalField(field.envelope * math.sqrt(db_to_linear(gain_db)), field.sample_rate)


def transmit(fmt: ModulationFormat, params: TxParams) -> tuple[BitSequence, OpticalField]:
    """PRBS -> line code -> field synthesis -> EDFA, for one format."""
    bits = prbs_generate(params.prbs_order, params.prbs_seed, params.sequence_length)
    amps = line_code(fmt, bits, params.samples_per_bit, params)
    field = synthesize_field(amps, params.avg_power_dbm, params.sample_rate)
    return bits, edfa_amplify(field, params.edfa_gain_db)
