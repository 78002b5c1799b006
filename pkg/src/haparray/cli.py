"""Command-line entry point.

Subcommands:
    simulate <config> [--out DIR] [--seed N] [--experiment NAME]
    validate <config>
    geometry <config> [--out DIR]

The default output directory comes from $HAPARRAY_OUTDIR (falling back to
./haparray_out).  Exit codes: 0 success, 2 config error, 3 numerical
failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from .config_io import ConfigError, check_output_dir, emit_geometry, emit_results, parse_config
from .scenario import EXPERIMENTS, run_pipeline

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _default_outdir() -> str:
    return os.environ.get("HAPARRAY_OUTDIR", "haparray_out")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="haparray",
        description="Antenna-array capacity simulator for stratospheric platforms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario and emit CSV results")
    sim.add_argument("config", help="scenario config file (JSON or TOML)")
    sim.add_argument("--out", default=None, help="output directory")
    sim.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    sim.add_argument(
        "--experiment", choices=EXPERIMENTS, default=None,
        help="override the configured experiment",
    )

    val = sub.add_parser("validate", help="parse and validate a scenario config")
    val.add_argument("config")

    geo = sub.add_parser("geometry", help="dump the element layout as CSV")
    geo.add_argument("config")
    geo.add_argument("--out", default=None, help="output directory")
    geo.add_argument("--gains", action="store_true",
                     help="also dump the user-by-element gain matrix")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = parse_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.command == "validate":
        print(f"ok: {config.experiment} scenario, architectures {config.architecture}")
        return EXIT_OK

    out_dir = getattr(args, "out", None) or _default_outdir()
    try:
        check_output_dir(out_dir)
    except OSError as exc:
        print(f"i/o error: output directory not writable: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.command == "geometry":
        try:
            manifest = emit_geometry(config, out_dir, include_gains=args.gains)
        except OSError as exc:
            print(f"i/o error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"wrote {', '.join(manifest.files)} to {out_dir}")
        return EXIT_OK

    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.experiment is not None:
        overrides["experiment"] = args.experiment
    if overrides:
        try:
            config = replace(config, **overrides)
        except ValueError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG

    try:
        result = run_pipeline(config)
    except (np.linalg.LinAlgError, FloatingPointError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        manifest = emit_results(result, out_dir, config)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO

    for key, value in sorted(result.metadata.items()):
        print(f"{key} = {value:.6g}" if isinstance(value, float) else f"{key} = {value}")
    print(f"wrote {', '.join(sorted(manifest.files))} to {out_dir}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
