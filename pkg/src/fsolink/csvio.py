"""CSV serialization for sweep results and eye-diagram dumps.

Floats are written as 17-significant-digit scientific notation so a
parse -> re-emit cycle is byte-identical (every IEEE double survives the
text round trip). ber = 0 appears as the literal `-inf` in the
log10_ber column. The q_mean/q_std pair is appended only for
multi-trial sweeps.
"""

import math

from fsolink.metrics import RunResult
from fsolink.signals import BitSequence, SampledSignal
from fsolink.transmitter import ModulationFormat

BASE_HEADER = (
    "format,bitrate_bps,range_m,alpha_db_per_km,power_dbm,seed,"
    "q_factor,log10_ber,rx_power_dbm,phase,threshold_a,link_failed"
)
TRIAL_HEADER = BASE_HEADER + ",q_mean,q_std"

_FLOAT_COLUMNS = frozenset(
    {
        "bitrate_bps",
        "range_m",
        "alpha_db_per_km",
        "power_dbm",
        "q_factor",
        "log10_ber",
        "rx_power_dbm",
        "threshold_a",
        "q_mean",
        "q_std",
    }
)
_INT_COLUMNS = frozenset({"seed", "phase"})
_BOOL_COLUMNS = frozenset({"link_failed"})


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return f"{x:.16e}"


def results_to_rows(results: list) -> list:
    """RunResults to ordered column dicts ready for text emission."""
    if not results:
        raise ValueError("no results to serialize")
    with_trials = any(r.q_mean is not None for r in results)
    rows = []
    for r in results:
        row = {
            "format": r.format.value,
            "bitrate_bps": r.bit_rate,
            "range_m": r.range_m,
            "alpha_db_per_km": r.alpha_db_per_km,
            "power_dbm": r.power_dbm,
            "seed": r.seed,
            "q_factor": r.q_factor,
            "log10_ber": r.log10_ber,
            "rx_power_dbm": r.rx_power_dbm,
            "phase": r.phase,
            "threshold_a": r.threshold_a,
            "link_failed": r.link_failed,
        }
        if with_trials:
            if r.q_mean is None or r.q_std is None:
                raise ValueError("mixed trial/non-trial results in one table")
            row["q_mean"] = r.q_mean
            row["q_std"] = r.q_std
        rows.append(row)
    return rows


def rows_to_csv(rows: list) -> str:
    """Column dicts to CSV text with LF endings and a trailing newline."""
    if not rows:
        raise ValueError("no rows to serialize")
    header = TRIAL_HEADER if "q_mean" in rows[0] else BASE_HEADER
    columns = header.split(",")
    lines = [header]
    for row in rows:
        if set(row) != set(columns):
            raise ValueError(f"row columns {sorted(row)} do not match header")
        cells = []
        for col in columns:
            v = row[col]
            if col in _FLOAT_COLUMNS:
                cells.append(_fmt(float(v)))
            elif col in _INT_COLUMNS:
                cells.append(str(int(v)))
            elif col in _BOOL_COLUMNS:
                cells.append("true" if v else "false")
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_csv(results: list) -> str:
    """Sweep results straight to CSV text, input order preserved."""
    return rows_to_csv(results_to_rows(results))


def csv_to_rows(text: str) -> list:
    """Parse CSV text back to typed column dicts (round-trip stable)."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("empty CSV input")
    header = lines[0]
    if header not in (BASE_HEADER, TRIAL_HEADER):
        raise ValueError(f"unrecognized CSV header: {header!r}")
    columns = header.split(",")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(columns):
            raise ValueError(f"line {lineno}: expected {len(columns)} cells, got {len(cells)}")
        row = {}
        for col, cell in zip(columns, cells):
            if col in _FLOAT_COLUMNS:
                row[col] = float(cell)
            elif col in _INT_COLUMNS:
                row[col] = int(cell)
            elif col in _BOOL_COLUMNS:
                if cell not in ("true", "false"):
                    raise ValueError(f"line {lineno}: bad boolean {cell!r}")
                row[col] = cell == "true"
            else:
                row[col] = cell
        rows.append(row)
    if not rows:
        raise ValueError("CSV has a header but no rows")
    return rows


def emit_eye_csv(filtered: SampledSignal, bits: BitSequence, sps: int) -> str:
    """Eye-diagram dump: one row per sample, sliced per bit slot."""
    x = filtered.samples
    b = bits.bits
    if len(x) != len(b) * sps:
        raise ValueError(f"waveform length {len(x)} != {len(b)} bits x {sps} sps")
    lines = ["phase_sample,current_a,bit"]
    for k in range(len(b)):
        bit = b[k]
        base = k * sps
        for s in range(sps):
            lines.append(f"{s},{_fmt(float(x[base + s]))},{bit}")
    return "\n".join(lines) + "\n"
