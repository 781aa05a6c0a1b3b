"""Sampled-signal containers and dB/dBm unit conversions.

All internal power math is carried in watts and linear ratios; dB and dBm
appear only at configuration and reporting boundaries. Containers are
frozen and their arrays marked read-only, so values are safe to share
between threads.
"""

import math
from dataclasses import dataclass

import numpy as np

# Reported received power for an all-zero field (dBm floor).
POWER_FLOOR_DBM = -200.0


def dbm_to_watts(p_dbm: float) -> float:
    """Convert dBm to watts: 10^(p/10) mW."""
    if not math.isfinite(p_dbm):
        raise ValueError(f"power must be finite, got {p_dbm!r}")
    return 10.0 ** (p_dbm / 10.0) * 1e-3


def watts_to_dbm(p_w: float) -> float:
    """Convert watts to dBm. Requires p_w > 0."""
    if not (math.isfinite(p_w) and p_w > 0.0):
        raise ValueError(f"power must be finite and positive, got {p_w!r}")
    return 10.0 * math.log10(p_w / 1e-3)


def db_to_linear(x_db: float) -> float:
    """Convert a dB ratio to a linear power ratio."""
    if not math.isfinite(x_db):
        raise ValueError(f"ratio must be finite, got {x_db!r}")
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a linear power ratio to dB. Requires x > 0."""
    if not (math.isfinite(x) and x > 0.0):
        raise ValueError(f"ratio must be finite and positive, got {x!r}")
    return 10.0 * math.log10(x)


def _frozen_array(obj, field, values, dtype):
    arr = np.asarray(values, dtype=dtype)
    arr.setflags(write=False)
    object.__setattr__(obj, field, arr)
    return arr


@dataclass(frozen=True)
class SampledSignal:
    """Real-valued waveform (photocurrent in amperes, or drive levels)."""

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        if not (math.isfinite(self.sample_rate) and self.sample_rate > 0):
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate!r}")
        arr = _frozen_array(self, "samples", self.samples, np.float64)
        if arr.size and not np.all(np.isfinite(arr)):
            raise ValueError("samples contain non-finite values")


@dataclass(frozen=True)
class OpticalField:
    """Complex baseband envelope in sqrt(W); |e[n]|^2 is instantaneous power."""

    envelope: np.ndarray
    sample_rate: float

    def __post_init__(self):
        if not (math.isfinite(self.sample_rate) and self.sample_rate > 0):
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate!r}")
        env = _frozen_array(self, "envelope", self.envelope, np.complex128)
        if env.size and not np.all(np.isfinite(env)):
            raise ValueError("envelope contains non-finite samples")

    @property
    def power(self) -> np.ndarray:
        """Instantaneous optical power per sample, watts.

        Computed as re^2 + im^2 rather than abs()**2: the latter rounds
        through a square root and is off by 1 ulp for values like 1+1j.
        """
        env = self.envelope
        return env.real**2 + env.imag**2

    @property
    def avg_power_w(self) -> float:
        return float(np.mean(self.power))


@dataclass(frozen=True)
class BitSequence:
    """Transmitted binary pattern; ground truth for eye classification."""

    bits: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.bits)
        if raw.dtype.kind not in "iub" or (raw.size and not np.all((raw == 0) | (raw == 1))):
            raise ValueError("bits must be integers 0 or 1")
        _frozen_array(self, "bits", raw, np.uint8)

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def length(self) -> int:
        return len(self.bits)
