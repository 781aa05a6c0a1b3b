"""Deterministic physical-layer simulator for free-space optical links.

Five intensity-modulation line codes (NRZ, RZ, CSRZ, modified duobinary,
modified-duobinary RZ) through a divergence-plus-extinction channel into
an APD receiver with a 4th-order Bessel post-detection filter. Every
run is reproducible from a master seed; sweeps are order-independent.
"""

from fsolink.channel import (
    ChannelParams,
    apply_channel,
    atmospheric_loss_db,
    geometric_loss_db,
    total_loss_db,
)
from fsolink.config import parse_config
from fsolink.csvio import csv_to_rows, emit_csv, emit_eye_csv
from fsolink.errors import (
    ConfigError,
    DegenerateSignalError,
    FsoLinkError,
    InsufficientDataError,
    InvalidCutoffError,
    InvalidFormatError,
    InvalidSeedError,
    InvalidSeriesError,
    RunFailedError,
)
from fsolink.metrics import (
    LINK_FAIL_Q,
    Q_CAP,
    EyeStats,
    RunResult,
    count_errors,
    estimate_q,
    measure_power_dbm,
    q_to_ber,
)
from fsolink.receiver import (
    BESSEL4_W3DB,
    ApdParams,
    FilterParams,
    apd_detect,
    bessel_lowpass,
    excess_noise_factor,
)
from fsolink.runner import (
    RunSpec,
    SweepAxis,
    SweepSpec,
    derive_run_seed,
    preset,
    run_single,
    run_sweep,
)
from fsolink.signals import (
    BitSequence,
    OpticalField,
    SampledSignal,
    db_to_linear,
    dbm_to_watts,
    linear_to_db,
    watts_to_dbm,
)
from fsolink.svgplot import Series, emit_svg_plot
from fsolink.transmitter import (
    ModulationFormat,
    TxParams,
    edfa_amplify,
    line_code,
    precode_modified_duobinary,
    prbs_generate,
    synthesize_field,
    transmit,
)

__version__ = "0.1.0"

__all__ = [
    "ApdParams",
    "BESSEL4_W3DB",
    "BitSequence",
    "ChannelParams",
    "ConfigError",
    "DegenerateSignalError",
    "EyeStats",
    "FilterParams",
    "FsoLinkError",
    "InsufficientDataError",
    "InvalidCutoffError",
    "InvalidFormatError",
    "InvalidSeedError",
    "InvalidSeriesError",
    "LINK_FAIL_Q",
    "ModulationFormat",
    "OpticalField",
    "Q_CAP",
    "RunFailedError",
    "RunResult",
    "RunSpec",
    "SampledSignal",
    "Series",
    "SweepAxis",
    "SweepSpec",
    "TxParams",
    "apd_detect",
    "apply_channel",
    "atmospheric_loss_db",
    "bessel_lowpass",
    "count_errors",
    "csv_to_rows",
    "db_to_linear",
    "dbm_to_watts",
    "derive_run_seed",
    "edfa_amplify",
    "emit_csv",
    "emit_eye_csv",
    "emit_svg_plot",
    "estimate_q",
    "excess_noise_factor",
    "geometric_loss_db",
    "line_code",
    "linear_to_db",
    "measure_power_dbm",
    "parse_config",
    "prbs_generate",
    "precode_modified_duobinary",
    "preset",
    "q_to_ber",
    "run_single",
    "run_sweep",
    "synthesize_field",
    "total_loss_db",
    "transmit",
    "watts_to_dbm",
]
