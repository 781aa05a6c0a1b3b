"""Line-oriented sweep config: `key = value` pairs, `#` comments.

Axis values are given in presentation units and converted here: bit_rate
in Gbps, range in km, power in dBm, alpha in dB/km. Every key is
optional except axis and values; absent keys fall back to the reference
system defaults baked into the parameter dataclasses.
"""

import math

from fsolink.channel import ChannelParams
from fsolink.errors import ConfigError, FsoLinkError
from fsolink.receiver import ApdParams, FilterParams
from fsolink.runner import RunSpec, SweepAxis, SweepSpec
from fsolink.transmitter import ModulationFormat, TxParams

_AXIS_SCALE = {
    SweepAxis.BIT_RATE: 1e9,  # Gbps -> bps
    SweepAxis.RANGE: 1e3,  # km -> m
    SweepAxis.POWER: 1.0,  # dBm
    SweepAxis.ALPHA: 1.0,  # dB/km
}

_KNOWN_KEYS = frozenset(
    {
        "formats",
        "bitrate_gbps",
        "range_km",
        "power_dbm",
        "alpha_db_per_km",
        "theta_mrad",
        "d_tx_cm",
        "d_rx_cm",
        "edfa_gain_db",
        "apd.gain",
        "apd.responsivity",
        "apd.ionization",
        "apd.dark_na",
        "apd.thermal_psd",
        "filter.cutoff_ghz",
        "filter.depth_db",
        "axis",
        "values",
        "seed",
        "noise",
    }
)

_TRUTHY = {"on", "true", "yes", "1"}
_FALSY = {"off", "false", "no", "0"}


class _Entries:
    """Consumes scanned keys, remembering line numbers for error reports."""

    def __init__(self, text: str):
        self.pairs: dict = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"expected `key = value`, got {line!r}", line=lineno)
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _KNOWN_KEYS:
                raise ConfigError(f"unknown key {key!r}", line=lineno)
            if key in self.pairs:
                raise ConfigError(f"duplicate key {key!r}", line=lineno)
            if not value:
                raise ConfigError(f"empty value for {key!r}", line=lineno)
            self.pairs[key] = (value, lineno)
        self.group_lines: list = []

    def start_group(self):
        """Track lines of explicitly-set keys for the next dataclass build."""
        self.group_lines = []

    def raw(self, key: str):
        value, lineno = self.pairs.pop(key)
        self.group_lines.append(lineno)
        return value, lineno

    def take_float(self, key: str, default: float) -> float:
        if key not in self.pairs:
            return default
        value, lineno = self.raw(key)
        try:
            x = float(value)
        except ValueError:
            raise ConfigError(f"{key}: not a number: {value!r}", line=lineno) from None
        if not math.isfinite(x):
            raise ConfigError(f"{key}: must be finite", line=lineno)
        return x

    def take_int(self, key: str, default: int) -> int:
        if key not in self.pairs:
            return default
        value, lineno = self.raw(key)
        try:
            return int(value, 0)
        except ValueError:
            raise ConfigError(f"{key}: not an integer: {value!r}", line=lineno) from None

    def take_bool(self, key: str, default: bool) -> bool:
        if key not in self.pairs:
            return default
        value, lineno = self.raw(key)
        token = value.lower()
        if token in _TRUTHY:
            return True
        if token in _FALSY:
            return False
        raise ConfigError(f"{key}: expected on/off, got {value!r}", line=lineno)

    def build(self, ctor, **kwargs):
        """Construct a params dataclass, pinning invariant errors to a line."""
        try:
            return ctor(**kwargs)
        except (ValueError, FsoLinkError) as exc:
            line = min(self.group_lines) if self.group_lines else None
            raise ConfigError(str(exc), line=line) from exc


def parse_config(text: str) -> SweepSpec:
    """Validated SweepSpec from config text; errors carry line numbers."""
    entries = _Entries(text)

    if "axis" not in entries.pairs:
        raise ConfigError("missing required key 'axis'")
    axis_value, axis_line = entries.raw("axis")
    try:
        axis = SweepAxis(axis_value.lower())
    except ValueError:
        names = ", ".join(a.value for a in SweepAxis)
        raise ConfigError(
            f"axis: expected one of {names}, got {axis_value!r}", line=axis_line
        ) from None

    if "values" not in entries.pairs:
        raise ConfigError("missing required key 'values'")
    values_str, values_line = entries.raw("values")
    try:
        values = tuple(float(tok) for tok in values_str.split(","))
    except ValueError:
        raise ConfigError(
            f"values: not a number list: {values_str!r}", line=values_line
        ) from None
    if any(not math.isfinite(v) for v in values):
        raise ConfigError("values: must be finite", line=values_line)
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError("values: must be strictly increasing", line=values_line)
    scale = _AXIS_SCALE[axis]
    values = tuple(v * scale for v in values)

    if "formats" in entries.pairs:
        fmt_str, fmt_line = entries.raw("formats")
        try:
            formats = tuple(ModulationFormat.parse(tok) for tok in fmt_str.split(","))
        except FsoLinkError as exc:
            raise ConfigError(f"formats: {exc}", line=fmt_line) from None
        if len(set(formats)) != len(formats):
            raise ConfigError("formats: duplicate entries", line=fmt_line)
    else:
        formats = tuple(ModulationFormat)

    entries.start_group()
    tx = entries.build(
        TxParams,
        avg_power_dbm=entries.take_float("power_dbm", 10.0),
        bit_rate=entries.take_float("bitrate_gbps", 10.0) * 1e9,
        edfa_gain_db=entries.take_float("edfa_gain_db", 10.0),
    )
    entries.start_group()
    channel = entries.build(
        ChannelParams,
        range_m=entries.take_float("range_km", 2.0) * 1e3,
        attenuation_db_per_km=entries.take_float("alpha_db_per_km", 10.0),
        divergence_rad=entries.take_float("theta_mrad", 2.0) * 1e-3,
        tx_aperture_m=entries.take_float("d_tx_cm", 10.0) * 1e-2,
        rx_aperture_m=entries.take_float("d_rx_cm", 150.0) * 1e-2,
    )
    entries.start_group()
    apd = entries.build(
        ApdParams,
        gain=entries.take_float("apd.gain", 2.0),
        responsivity=entries.take_float("apd.responsivity", 1.0),
        ionization_ratio=entries.take_float("apd.ionization", 0.9),
        dark_current_a=entries.take_float("apd.dark_na", 10.0) * 1e-9,
        thermal_psd_a2_hz=entries.take_float("apd.thermal_psd", 1e-22),
    )
    entries.start_group()
    cutoff_ghz = entries.take_float("filter.cutoff_ghz", 0.0)
    filt = entries.build(
        FilterParams,
        cutoff_hz=cutoff_ghz * 1e9 if cutoff_ghz > 0 else None,
        depth_db=entries.take_float("filter.depth_db", 100.0),
    )
    entries.start_group()
    master_seed = entries.take_int("seed", 1)
    noise = entries.take_bool("noise", True)

    base = entries.build(
        RunSpec,
        tx=tx,
        channel=channel,
        apd=apd,
        filter=filt,
        master_seed=master_seed,
        noise_enabled=noise,
    )
    try:
        return SweepSpec(base=base, axis=axis, values=values, formats=formats)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
