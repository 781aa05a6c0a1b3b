"""Pipeline composition: single links, parameter sweeps, experiment presets.

Each run's noise seed is a stable hash of (master seed, format tag,
swept coordinates, trial index) rather than a draw from a shared RNG, so
a sweep produces the same rows whether it executes serially, in a pool,
or one point at a time.
"""

import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from fsolink.channel import ChannelParams, apply_channel
from fsolink.errors import RunFailedError
from fsolink.kernels import GOLDEN, mix64
from fsolink.metrics import RunResult, count_errors, estimate_q, measure_power_dbm, q_to_ber
from fsolink.receiver import ApdParams, FilterParams, apd_detect, bessel_lowpass
from fsolink.signals import BitSequence, SampledSignal
from fsolink.transmitter import (
    ModulationFormat,
    TxParams,
    edfa_amplify,
    line_code,
    prbs_generate,
    synthesize_field,
)

_MASK64 = (1 << 64) - 1

BIT_RATE_MIN = 1e8
BIT_RATE_MAX = 1e11


class SweepAxis(Enum):
    BIT_RATE = "bit_rate"
    RANGE = "range"
    POWER = "power"
    ALPHA = "alpha"


@dataclass(frozen=True)
class RunSpec:
    format: ModulationFormat = ModulationFormat.NRZ
    tx: TxParams = TxParams()
    channel: ChannelParams = ChannelParams()
    apd: ApdParams = ApdParams()
    filter: FilterParams = FilterParams()
    master_seed: int = 1
    noise_enabled: bool = True

    def __post_init__(self):
        if not BIT_RATE_MIN <= self.tx.bit_rate <= BIT_RATE_MAX:
            raise ValueError(
                f"bit_rate {self.tx.bit_rate:g} outside [{BIT_RATE_MIN:g}, {BIT_RATE_MAX:g}]"
            )
        if not isinstance(self.master_seed, int) or isinstance(self.master_seed, bool):
            raise ValueError("master_seed must be an integer")

    @property
    def cutoff_hz(self) -> float:
        """Explicit filter cutoff, or the 0.75 x bit rate default."""
        if self.filter.cutoff_hz is not None:
            return self.filter.cutoff_hz
        return 0.75 * self.tx.bit_rate


@dataclass(frozen=True)
class SweepSpec:
    base: RunSpec
    axis: SweepAxis
    values: tuple
    formats: tuple = tuple(ModulationFormat)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        fmts = tuple(self.formats)
        object.__setattr__(self, "formats", fmts)
        if len(vals) == 0:
            raise ValueError("values must be nonempty")
        if any(not math.isfinite(v) for v in vals):
            raise ValueError("values must be finite")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("values must be strictly increasing")
        if len(fmts) == 0:
            raise ValueError("formats must be nonempty")
        if len(set(fmts)) != len(fmts):
            raise ValueError("formats must be unique")


def _float_bits(x: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", float(x)))[0]


def derive_run_seed(
    master_seed: int,
    fmt: ModulationFormat,
    bit_rate: float,
    range_m: float,
    alpha_db_per_km: float,
    power_dbm: float,
    trial: int = 0,
) -> int:
    """Stable 64-bit seed from the run coordinates.

    A polynomial absorb over mix64: h = mix64(h * GOLDEN + token). The
    tokens are the format tag bytes and the IEEE-754 bit patterns of the
    swept values, so any coordinate change reseeds the noise while equal
    coordinates collide on purpose.
    """
    h = mix64(master_seed & _MASK64)
    tokens = (
        int.from_bytes(fmt.value.encode("ascii"), "little"),
        _float_bits(bit_rate),
        _float_bits(range_m),
        _float_bits(alpha_db_per_km),
        _float_bits(power_dbm),
        trial & _MASK64,
    )
    for t in tokens:
        h = mix64((h * GOLDEN + t) & _MASK64)
    return h


def _apply_axis(spec: RunSpec, axis: SweepAxis, value: float) -> RunSpec:
    if axis is SweepAxis.BIT_RATE:
        return replace(spec, tx=replace(spec.tx, bit_rate=value))
    if axis is SweepAxis.RANGE:
        return replace(spec, channel=replace(spec.channel, range_m=value))
    if axis is SweepAxis.POWER:
        return replace(spec, tx=replace(spec.tx, avg_power_dbm=value))
    if axis is SweepAxis.ALPHA:
        return replace(spec, channel=replace(spec.channel, attenuation_db_per_km=value))
    raise ValueError(f"unknown sweep axis {axis!r}")


def simulate_waveforms(
    spec: RunSpec, trial: int = 0
) -> tuple[BitSequence, SampledSignal, float, int]:
    """Run the pipeline once; return (bits, filtered current, rx dBm, seed)."""
    tx = spec.tx
    bits = prbs_generate(tx.prbs_order, tx.prbs_seed, tx.sequence_length)
    amps = line_code(spec.format, bits, tx.samples_per_bit, tx)
    field = synthesize_field(amps, tx.avg_power_dbm, tx.sample_rate)
    field = edfa_amplify(field, tx.edfa_gain_db)
    rx_field = apply_channel(field, spec.channel)
    rx_power_dbm = measure_power_dbm(rx_field)
    seed = derive_run_seed(
        spec.master_seed,
        spec.format,
        tx.bit_rate,
        spec.channel.range_m,
        spec.channel.attenuation_db_per_km,
        tx.avg_power_dbm,
        trial,
    )
    current = apd_detect(
        rx_field.power, rx_field.sample_rate, spec.apd, seed, spec.noise_enabled
    )
    filtered = bessel_lowpass(current, spec.cutoff_hz, spec.filter.depth_db)
    return bits, filtered, rx_power_dbm, seed


def run_single(spec: RunSpec, trial: int = 0) -> RunResult:
    """One link end to end; a closed eye is a result, not an error."""
    bits, filtered, rx_power_dbm, seed = simulate_waveforms(spec, trial)
    q, eye = estimate_q(filtered, bits, spec.tx.samples_per_bit)
    return RunResult(
        format=spec.format,
        bit_rate=spec.tx.bit_rate,
        range_m=spec.channel.range_m,
        alpha_db_per_km=spec.channel.attenuation_db_per_km,
        power_dbm=spec.tx.avg_power_dbm,
        seed=seed,
        q_factor=q,
        ber=q_to_ber(q),
        rx_power_dbm=rx_power_dbm,
        phase=eye.phase,
        threshold_a=eye.threshold,
    )


def count_run_errors(spec: RunSpec, trial: int = 0) -> int:
    """Hard-decision error count at the estimated phase and threshold."""
    bits, filtered, _, _ = simulate_waveforms(spec, trial)
    _, eye = estimate_q(filtered, bits, spec.tx.samples_per_bit)
    return count_errors(filtered, bits, spec.tx.samples_per_bit, eye.phase, eye.threshold)


def _run_point(spec: RunSpec, fmt: ModulationFormat, value: float, axis, trials: int):
    try:
        point = _apply_axis(replace(spec, format=fmt), axis, value)
        result = run_single(point, trial=0)
        if trials > 1:
            qs = [result.q_factor]
            qs += [run_single(point, trial=t).q_factor for t in range(1, trials)]
            arr = np.asarray(qs)
            result = replace(result, q_mean=float(arr.mean()), q_std=float(arr.std()))
        return result
    except Exception as exc:
        raise RunFailedError(f"format={fmt.value} value={value:g}: {exc}") from exc


def run_sweep(spec: SweepSpec, trials: int = 1, workers: int = 1) -> list:
    """One RunResult per (format, value), in (format, value) order.

    workers > 1 fans the points out to a thread pool; the row order and
    content are identical to the serial run because every run is pure
    given its derived seed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    points = [(fmt, value) for fmt in spec.formats for value in spec.values]
    if workers == 1:
        return [_run_point(spec.base, f, v, spec.axis, trials) for f, v in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_run_point, spec.base, f, v, spec.axis, trials) for f, v in points
        ]
        return [f.result() for f in futures]


def preset(name: str) -> SweepSpec:
    """The four published experiments: A data rate, B range, C power, D alpha."""
    key = name.strip().upper()
    base = RunSpec()
    if key == "A":
        # 1..10 Gbps over a 2 km path at 10 dB/km
        return SweepSpec(
            base=replace(
                base, channel=replace(base.channel, range_m=2000.0, attenuation_db_per_km=10.0)
            ),
            axis=SweepAxis.BIT_RATE,
            values=tuple(1e9 * g for g in range(1, 11)),
        )
    if key == "B":
        # 1..10 km at 10 dBm launch, 2 dB/km, 3 mrad divergence
        return SweepSpec(
            base=replace(
                base,
                tx=replace(base.tx, avg_power_dbm=10.0),
                channel=replace(
                    base.channel, attenuation_db_per_km=2.0, divergence_rad=3e-3
                ),
            ),
            axis=SweepAxis.RANGE,
            values=tuple(1000.0 * k for k in range(1, 11)),
        )
    if key == "C":
        # -3..5 dBm launch at 10 Gbps, 2 km, 10 dB/km
        return SweepSpec(
            base=replace(
                base,
                tx=replace(base.tx, bit_rate=10e9),
                channel=replace(base.channel, range_m=2000.0, attenuation_db_per_km=10.0),
            ),
            axis=SweepAxis.POWER,
            values=tuple(float(p) for p in range(-3, 6)),
        )
    if key == "D":
        # attenuation 1..10 dB/km at 10 Gbps over 3 km, 10 dBm, 3 mrad
        return SweepSpec(
            base=replace(
                base,
                tx=replace(base.tx, bit_rate=10e9, avg_power_dbm=10.0),
                channel=replace(base.channel, range_m=3000.0, divergence_rad=3e-3),
            ),
            axis=SweepAxis.ALPHA,
            values=(1.0, 2.0, 3.0, 5.0, 7.0, 10.0),
        )
    raise ValueError(f"unknown preset {name!r} (expected A, B, C, or D)")
