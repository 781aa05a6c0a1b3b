"""Eye statistics, Q-factor estimation, BER mapping, and error counting.

The eye is truth-aided: samples are classified mark/space by the known
transmitted bit rather than by threshold clustering, which keeps the
three-level-field formats unambiguous after square-law detection. For
each candidate sampling phase in the central portion of the bit slot,

    Q(phase) = (mu1 - mu0) / (sigma1 + sigma0)

and the best phase wins. A closed eye (mu1 <= mu0) scores 0; a
degenerate eye (sigma sum below 1e-15 of the opening, e.g. noiseless)
is capped at Q_CAP instead of dividing by ~0. BER is reported from Q
under the Gaussian assumption, since a 128-bit pattern cannot count
errors at 1e-11; direct counting is exposed separately for noiseless
checks.
"""

import math
from dataclasses import dataclass

import numpy as np

from fsolink import kernels
from fsolink.errors import InsufficientDataError
from fsolink.signals import (
    POWER_FLOOR_DBM,
    BitSequence,
    OpticalField,
    SampledSignal,
    watts_to_dbm,
)
from fsolink.transmitter import ModulationFormat

Q_CAP = 1000.0
LINK_FAIL_Q = 2.0  # below this the eye is effectively closed
_DEGENERATE_RATIO = 1e-15
_SQRT2 = math.sqrt(2.0)


def _q_of(mu1: float, mu0: float, sigma1: float, sigma0: float) -> float:
    diff = mu1 - mu0
    if diff <= 0.0:
        return 0.0
    ssum = sigma1 + sigma0
    if ssum < _DEGENERATE_RATIO * diff:
        return Q_CAP
    return diff / ssum


@dataclass(frozen=True)
class EyeStats:
    mu1: float
    mu0: float
    sigma1: float
    sigma0: float
    phase: int  # sampling offset within the bit slot, samples

    def __post_init__(self):
        if self.sigma1 < 0 or self.sigma0 < 0:
            raise ValueError("standard deviations must be >= 0")

    @property
    def q(self) -> float:
        return _q_of(self.mu1, self.mu0, self.sigma1, self.sigma0)

    @property
    def threshold(self) -> float:
        """Decision level (sigma0*mu1 + sigma1*mu0)/(sigma0+sigma1).

        Falls back to the eye midpoint when the sigma sum is degenerate,
        so a noiseless eye still gets a usable threshold.
        """
        ssum = self.sigma1 + self.sigma0
        if ssum == 0.0 or ssum < _DEGENERATE_RATIO * abs(self.mu1 - self.mu0):
            return 0.5 * (self.mu1 + self.mu0)
        return (self.sigma0 * self.mu1 + self.sigma1 * self.mu0) / ssum


@dataclass(frozen=True)
class RunResult:
    """One simulated link: swept coordinates echoed plus measured outputs.

    q_mean/q_std are populated only for multi-trial runs (mean and
    population stddev of Q over the per-trial noise seeds).
    """

    format: ModulationFormat
    bit_rate: float
    range_m: float
    alpha_db_per_km: float
    power_dbm: float
    seed: int
    q_factor: float
    ber: float
    rx_power_dbm: float
    phase: int
    threshold_a: float
    q_mean: float | None = None
    q_std: float | None = None

    def __post_init__(self):
        if self.q_factor < 0:
            raise ValueError("q_factor must be >= 0")
        if not 0.0 <= self.ber <= 0.5:
            raise ValueError("ber must be in [0, 0.5]")
        expected = q_to_ber(self.q_factor)
        tol = 1e-12 * max(expected, self.ber)
        if abs(self.ber - expected) > tol:
            raise ValueError("ber does not match q_to_ber(q_factor)")

    @property
    def link_failed(self) -> bool:
        return self.q_factor < LINK_FAIL_Q

    @property
    def log10_ber(self) -> float:
        return math.log10(self.ber) if self.ber > 0.0 else -math.inf


def measure_power_dbm(field: OpticalField) -> float:
    """Mean optical power in dBm, floored at -200 dBm for dark fields."""
    p = field.avg_power_w
    if p <= 0.0:
        return POWER_FLOOR_DBM
    return max(watts_to_dbm(p), POWER_FLOOR_DBM)


def estimate_q(
    photocurrent: SampledSignal,
    bits: BitSequence,
    sps: int,
    guard: float = 0.2,
) -> tuple[float, EyeStats]:
    """Best-phase Q over the central (1 - 2*guard) portion of the slot."""
    if not 0.0 <= guard < 0.5:
        raise ValueError("guard must be in [0, 0.5)")
    x = photocurrent.samples
    b = bits.bits
    if sps < 1:
        raise ValueError("sps must be >= 1")
    if len(x) != len(b) * sps:
        raise ValueError(f"photocurrent length {len(x)} != {len(b)} bits x {sps} sps")
    n_marks = int(b.sum())
    if n_marks < 4 or len(b) - n_marks < 4:
        raise InsufficientDataError(
            f"need >= 4 marks and >= 4 spaces, got {n_marks}/{len(b) - n_marks}"
        )
    lo = int(round(guard * sps))
    hi = int(round((1.0 - guard) * sps))
    if hi <= lo:
        lo, hi = 0, sps  # guard swallows every phase only for tiny sps
    m1, m0, s1, s0 = kernels.eye_phase_stats(x, b, sps, lo, hi)
    diff = m1 - m0
    ssum = s1 + s0
    qs = np.zeros(len(diff))
    eye_open = diff > 0.0
    degenerate = eye_open & (ssum < _DEGENERATE_RATIO * diff)
    qs[degenerate] = Q_CAP
    normal = eye_open & ~degenerate
    qs[normal] = diff[normal] / ssum[normal]
    best = int(np.argmax(qs))  # first max wins: deterministic tie-break
    stats = EyeStats(
        mu1=float(m1[best]),
        mu0=float(m0[best]),
        sigma1=float(s1[best]),
        sigma0=float(s0[best]),
        phase=lo + best,
    )
    return float(qs[best]), stats


def q_to_ber(q: float) -> float:
    """BER = 0.5 * erfc(q / sqrt(2)) under equal-variance Gaussian rails."""
    if math.isnan(q) or q < 0.0:
        raise ValueError("q must be >= 0")
    if math.isinf(q):
        return 0.0
    return 0.5 * math.erfc(q / _SQRT2)


def count_errors(
    photocurrent: SampledSignal,
    bits: BitSequence,
    sps: int,
    phase: int,
    threshold: float,
) -> int:
    """Hard decisions at one phase against a fixed threshold; error count."""
    x = photocurrent.samples
    b = bits.bits
    if len(x) != len(b) * sps:
        raise ValueError(f"photocurrent length {len(x)} != {len(b)} bits x {sps} sps")
    if not 0 <= phase < sps:
        raise ValueError(f"phase {phase} outside [0, {sps})")
    decided = x[phase::sps] > threshold
    return int(np.count_nonzero(decided != (b == 1)))
