"""Command-line interface: simulate, sweep, eye, plot.

Exit codes: 0 success, 1 bad input (flags or config file), 2 runtime
failure. argparse's default exit of 2 on bad flags is overridden so all
parse problems land on 1.
"""

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

from fsolink.channel import ChannelParams
from fsolink.config import parse_config
from fsolink.csvio import csv_to_rows, emit_csv, emit_eye_csv
from fsolink.errors import ConfigError, FsoLinkError, InvalidSeriesError
from fsolink.receiver import ApdParams, FilterParams
from fsolink.runner import RunSpec, SweepAxis, preset, run_single, run_sweep, simulate_waveforms
from fsolink.svgplot import Series, emit_svg_plot
from fsolink.transmitter import ModulationFormat, TxParams

_AXIS_PRESENTATION = {
    SweepAxis.BIT_RATE: ("Data rate (Gbps)", 1e-9),
    SweepAxis.RANGE: ("Range (km)", 1e-3),
    SweepAxis.POWER: ("Launch power (dBm)", 1.0),
    SweepAxis.ALPHA: ("Attenuation (dB/km)", 1.0),
}

_PLOTTABLE_COLUMNS = (
    "bitrate_bps",
    "range_m",
    "alpha_db_per_km",
    "power_dbm",
    "q_factor",
    "log10_ber",
    "rx_power_dbm",
    "phase",
    "threshold_a",
    "q_mean",
    "q_std",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_flag(text: str) -> int:
    return int(text, 0)


def _add_run_flags(p: argparse.ArgumentParser):
    p.add_argument(
        "--format",
        choices=[f.value for f in ModulationFormat],
        default="nrz",
        help="modulation format (default nrz)",
    )
    p.add_argument("--bitrate-gbps", type=float, default=10.0, help="data rate in Gbps")
    p.add_argument("--power-dbm", type=float, default=10.0, help="launch power in dBm")
    p.add_argument("--range-km", type=float, default=2.0, help="link range in km")
    p.add_argument("--alpha-db-per-km", type=float, default=10.0, help="attenuation")
    p.add_argument("--theta-mrad", type=float, default=2.0, help="beam divergence")
    p.add_argument("--d-tx-cm", type=float, default=10.0, help="transmit aperture")
    p.add_argument("--d-rx-cm", type=float, default=150.0, help="receive aperture")
    p.add_argument("--edfa-gain-db", type=float, default=10.0, help="booster gain")
    p.add_argument("--apd-gain", type=float, default=2.0, help="avalanche gain M")
    p.add_argument("--apd-responsivity", type=float, default=1.0, help="A/W")
    p.add_argument("--apd-ionization", type=float, default=0.9, help="ionization ratio k")
    p.add_argument("--apd-dark-na", type=float, default=10.0, help="dark current in nA")
    p.add_argument("--apd-thermal-psd", type=float, default=1e-22, help="A^2/Hz")
    p.add_argument(
        "--filter-cutoff-ghz",
        type=float,
        default=0.0,
        help="Bessel cutoff in GHz (0 = 0.75 x bit rate)",
    )
    p.add_argument("--filter-depth-db", type=float, default=100.0, help="stopband depth")
    p.add_argument("--seed", type=_int_flag, default=1, help="master noise seed")
    p.add_argument("--no-noise", action="store_true", help="disable receiver noise")


def _spec_from_args(args) -> RunSpec:
    try:
        return RunSpec(
            format=ModulationFormat.parse(args.format),
            tx=TxParams(
                avg_power_dbm=args.power_dbm,
                bit_rate=args.bitrate_gbps * 1e9,
                edfa_gain_db=args.edfa_gain_db,
            ),
            channel=ChannelParams(
                range_m=args.range_km * 1e3,
                attenuation_db_per_km=args.alpha_db_per_km,
                divergence_rad=args.theta_mrad * 1e-3,
                tx_aperture_m=args.d_tx_cm * 1e-2,
                rx_aperture_m=args.d_rx_cm * 1e-2,
            ),
            apd=ApdParams(
                gain=args.apd_gain,
                responsivity=args.apd_responsivity,
                ionization_ratio=args.apd_ionization,
                dark_current_a=args.apd_dark_na * 1e-9,
                thermal_psd_a2_hz=args.apd_thermal_psd,
            ),
            filter=FilterParams(
                cutoff_hz=args.filter_cutoff_ghz * 1e9 if args.filter_cutoff_ghz > 0 else None,
                depth_db=args.filter_depth_db,
            ),
            master_seed=args.seed,
            noise_enabled=not args.no_noise,
        )
    except (ValueError, FsoLinkError) as exc:
        raise ConfigError(str(exc)) from exc


def _write_out(out: str | None, text: str):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_simulate(args) -> int:
    result = run_single(_spec_from_args(args))
    _write_out(args.out, emit_csv([result]))
    return 0


def _sweep_series(spec, results, field) -> list:
    _, scale = _AXIS_PRESENTATION[spec.axis]
    series = []
    for fmt in spec.formats:
        rows = [r for r in results if r.format is fmt]
        xs = tuple(scale * v for v in spec.values)
        ys = tuple(getattr(r, field) for r in rows)
        series.append(Series(fmt.value, xs, ys))
    return series


def _cmd_sweep(args) -> int:
    if args.preset is not None:
        spec = preset(args.preset)
    else:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        spec = parse_config(text)
    if args.seed is not None:
        spec = replace(spec, base=replace(spec.base, master_seed=args.seed))
    results = run_sweep(spec, trials=args.trials, workers=args.workers)

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "results.csv").write_text(emit_csv(results), encoding="utf-8")

    axis_label, _ = _AXIS_PRESENTATION[spec.axis]
    q_field = "q_mean" if args.trials > 1 else "q_factor"
    q_svg = emit_svg_plot(
        _sweep_series(spec, results, q_field), axis_label, "Q factor"
    )
    (outdir / "q_vs_axis.svg").write_text(q_svg, encoding="utf-8")
    p_svg = emit_svg_plot(
        _sweep_series(spec, results, "rx_power_dbm"), axis_label, "Received power (dBm)"
    )
    (outdir / "rxpower_vs_axis.svg").write_text(p_svg, encoding="utf-8")
    print(f"wrote {outdir / 'results.csv'}, q_vs_axis.svg, rxpower_vs_axis.svg")
    return 0


def _cmd_eye(args) -> int:
    spec = _spec_from_args(args)
    bits, filtered, _, _ = simulate_waveforms(spec)
    _write_out(args.out, emit_eye_csv(filtered, bits, spec.tx.samples_per_bit))
    return 0


def _cmd_plot(args) -> int:
    try:
        text = Path(args.infile).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read CSV: {exc}") from exc
    try:
        rows = csv_to_rows(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for axis_col in (args.x, args.y):
        if axis_col not in rows[0]:
            raise ConfigError(f"column {axis_col!r} not present in {args.infile}")
    order = []
    grouped: dict = {}
    for row in rows:
        tag = row["format"]
        if tag not in grouped:
            grouped[tag] = []
            order.append(tag)
        grouped[tag].append(row)
    series = []
    for tag in order:
        # drop non-finite points (log10_ber is -inf wherever BER underflows)
        pts = [
            (r[args.x], r[args.y])
            for r in grouped[tag]
            if math.isfinite(r[args.x]) and math.isfinite(r[args.y])
        ]
        if len(pts) >= 2:
            series.append(Series(tag, [p[0] for p in pts], [p[1] for p in pts]))
    if not series:
        raise InvalidSeriesError(f"no series with 2+ finite ({args.x}, {args.y}) points")
    _write_out(args.out, emit_svg_plot(series, args.x, args.y))
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="fsolink", description="Free-space optical link simulator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_sim = sub.add_parser("simulate", help="run one link and emit a one-row CSV")
    _add_run_flags(p_sim)
    p_sim.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="run a preset or config sweep")
    source = p_sweep.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=["A", "B", "C", "D"], help="published experiment")
    source.add_argument("--config", help="sweep config file")
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.add_argument("--trials", type=int, default=1, help="noise trials per point")
    p_sweep.add_argument("--workers", type=int, default=1, help="parallel workers")
    p_sweep.add_argument("--seed", type=_int_flag, default=None, help="override master seed")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_eye = sub.add_parser("eye", help="dump eye-diagram samples as CSV")
    _add_run_flags(p_eye)
    p_eye.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p_eye.set_defaults(func=_cmd_eye)

    p_plot = sub.add_parser("plot", help="chart columns of a results CSV")
    p_plot.add_argument("--in", dest="infile", required=True, help="results CSV path")
    p_plot.add_argument("--x", required=True, choices=_PLOTTABLE_COLUMNS)
    p_plot.add_argument("--y", required=True, choices=_PLOTTABLE_COLUMNS)
    p_plot.add_argument("--out", default=None, help="output SVG path (default stdout)")
    p_plot.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"fsolink: error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0  # downstream closed the pipe (e.g. head); not our failure
    except (FsoLinkError, OSError, ValueError) as exc:
        print(f"fsolink: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
