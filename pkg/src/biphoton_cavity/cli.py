"""Command-line surface.

Subcommands: state, transmit, entropy, sweep-coupling, sweep-pump,
sweep-detuning, ingest.  Exit codes: 0 success, 1 validation/usage error,
2 I/O error.  Diagnostics go to stderr; data goes to files or stdout.
"""

import argparse
import math
import os
import sys

import numpy as np

from . import dataio
from .config import ConfigError, apply_overrides, load_config
from .pipeline import run_single
from .sweep import (
    DEFAULT_BANDWIDTH_VALUES,
    DEFAULT_COUPLING_SERIES,
    DEFAULT_COUPLING_VALUES,
    DEFAULT_DETUNING_SERIES,
    SweepPlan,
    run_coupling_sweep,
    run_detuning_sweep,
    run_pump_bandwidth_sweep,
)

OUT_DIR_ENV = "BIPHOTON_CAVITY_OUT_DIR"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(lines, out_path):
    if out_path is None:
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        dataio.write_lines(out_path, lines)
        print(f"wrote {out_path}", file=sys.stderr)


def _load(args):
    config = load_config(args.config)
    return apply_overrides(config, args.cavity_override, where="--cavity-override")


def _parse_values(spec: str) -> tuple[float, ...]:
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ConfigError(f"expected start:stop:step, got {spec!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0.0 or stop < start:
            raise ConfigError(f"bad range {spec!r}")
        return tuple(np.round(np.arange(start, stop + step / 2.0, step), 12))
    try:
        return tuple(float(p) for p in spec.split(","))
    except ValueError:
        raise ConfigError(f"expected numbers, got {spec!r}") from None


def _cmd_state(args) -> int:
    config = _load(args)
    run = run_single(config)
    _emit(dataio.render_jsi(run.input_state, config), _resolve_out(args.out))
    return 0


def _cmd_transmit(args) -> int:
    config = _load(args)
    run = run_single(config)
    _emit(dataio.render_jsi(run.output_state, config), _resolve_out(args.out))
    if args.curve_out:
        dataio.export_curve(run.curve, _resolve_out(args.curve_out), config)
        print(f"wrote {_resolve_out(args.curve_out)}", file=sys.stderr)
    return 0


def _cmd_entropy(args) -> int:
    config = _load(args)
    lines = [f"# config.{line}" for line in config.echo_lines()]
    if args.source is not None:
        measured = dataio.ingest_measured_jsi(args.source)
        entropy, flags = dataio.measured_entropy(measured)
        lines.append(f"# source: {args.source}")
        if flags:
            lines.append(f"# flags: {';'.join(flags)}")
    else:
        run = run_single(config)
        entropy = run.input_entropy
    if args.bits:
        lines.append(f"entropy_bits = {entropy / math.log(2.0):.9g}")
    else:
        lines.append(f"entropy_nats = {entropy:.9g}")
    _emit(lines, _resolve_out(args.out))
    return 0


def _sweep_common(args, swept, default_values, series_param, default_series, runner) -> int:
    config = _load(args)
    values = _parse_values(args.values) if args.values else default_values
    series = _parse_values(args.series) if args.series else default_series
    plan = SweepPlan(
        base_config=config,
        swept_parameter=swept,
        values=values,
        series_parameter=series_param if series is not None else None,
        series_values=series if series is not None else (),
    )
    result = runner(plan)
    _emit(dataio.render_sweep(result), _resolve_out(args.out))
    return 0


def _cmd_sweep_coupling(args) -> int:
    return _sweep_common(
        args, "coupling_ratio", DEFAULT_COUPLING_VALUES,
        "cavity_detuning_nm", DEFAULT_DETUNING_SERIES, run_coupling_sweep,
    )


def _cmd_sweep_pump(args) -> int:
    return _sweep_common(
        args, "pump_bandwidth_nm", DEFAULT_BANDWIDTH_VALUES,
        "coupling_ratio", DEFAULT_COUPLING_SERIES, run_pump_bandwidth_sweep,
    )


def _cmd_sweep_detuning(args) -> int:
    # Without --series the base config's coupling ratio is the single series.
    return _sweep_common(
        args, "cavity_detuning_nm", DEFAULT_DETUNING_SERIES,
        "coupling_ratio", None, run_detuning_sweep,
    )


def _cmd_ingest(args) -> int:
    _load(args)  # config is required by the surface; validates even if unused
    measured = dataio.ingest_measured_jsi(args.source)
    entropy, flags = dataio.measured_entropy(measured)
    lines = [
        f"# source: {args.source}",
        f"# grid: {measured.signal_nm.size} x {measured.idler_nm.size}",
        f"# amplitude_columns: {'yes' if measured.amplitude is not None else 'no'}",
    ]
    if flags:
        lines.append(f"# flags: {';'.join(flags)}")
    lines.append(f"entropy_nats = {entropy:.9g}")
    _emit(lines, _resolve_out(args.out))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="biphoton-cavity",
        description="Simulate frequency-entangled photon pairs with one arm "
        "propagated through an optical microcavity.",
        epilog=f"Relative --out paths are prefixed with ${OUT_DIR_ENV} when that "
        "environment variable is set.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="configuration file (key = value lines)")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument(
            "--cavity-override", action="append", default=[], metavar="KEY=VALUE",
            help="override a cavity.* config key (repeatable)",
        )
        p.add_argument("--format", choices=["csv"], default="csv", help="output format")
        p.set_defaults(func=func)
        return p

    add("state", _cmd_state, "export the input-state joint spectrum")
    transmit = add("transmit", _cmd_transmit, "export the cavity-transformed joint spectrum")
    transmit.add_argument("--curve-out", default=None, help="also export the transfer curve here")
    entropy = add("entropy", _cmd_entropy, "print the entanglement entropy")
    entropy.add_argument("--in", dest="source", default=None, metavar="FILE",
                         help="compute from an exported/measured JSI file instead")
    entropy.add_argument("--bits", action="store_true", help="print entropy in bits instead of nats")
    for name, func, help_text in (
        ("sweep-coupling", _cmd_sweep_coupling, "entropy vs coupling strength per detuning"),
        ("sweep-pump", _cmd_sweep_pump, "entropy vs pump bandwidth per coupling"),
        ("sweep-detuning", _cmd_sweep_detuning, "entropy vs cavity detuning"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--values", default=None, help="sweep values: start:stop:step or v1,v2,...")
        p.add_argument("--series", default=None, help="series values: v1,v2,...")
    ingest = add("ingest", _cmd_ingest, "validate a measured JSI file and report its entropy")
    ingest.add_argument("--in", dest="source", required=True, metavar="FILE",
                        help="measured JSI file to ingest")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
