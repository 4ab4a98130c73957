"""Command-line front end.

Subcommands: ``eval`` (single operating point), ``sweep`` (one swept variable
with an optional family), ``figure`` (preset sweeps 2-5), and ``validate``
(analytic versus Monte Carlo for every metric).  Exit codes: 0 success,
1 validation failure, 2 config error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import plc_link, relay, vlc_link
from .config import echo_lines, load_config
from .errors import ConfigError, ParameterError, PlcVlcError
from .montecarlo import estimate
from .sweeps import (
    FIGURE_PRESETS,
    SWEEPABLE_VARIABLES,
    SweepSpec,
    report_csv,
    run_sweep,
    run_validation,
    validation_lines,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plcvlc",
        description="Capacity and outage analysis of a power-line / DF-relay / "
        "visible-light link with Monte Carlo cross-validation.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file")
    common.add_argument("--trials", type=int, metavar="N", help="Monte Carlo trials override")
    common.add_argument("--seed", type=int, metavar="N", help="Monte Carlo seed override")
    common.add_argument("--duplex-factor", type=float, metavar="THETA",
                        help="time-sharing factor override, in (0, 1]")
    common.add_argument("--workers", type=int, default=1, metavar="N",
                        help="worker threads for the Monte Carlo engine (default 1)")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("eval", parents=[common], help="evaluate a single operating point")

    sweep = sub.add_parser("sweep", parents=[common], help="sweep one variable")
    sweep.add_argument("--var", required=True, choices=sorted(SWEEPABLE_VARIABLES),
                       help="variable to sweep")
    sweep.add_argument("--from", dest="start", type=float, required=True, metavar="X")
    sweep.add_argument("--to", dest="stop", type=float, required=True, metavar="X")
    sweep.add_argument("--steps", type=int, required=True, metavar="N")
    sweep.add_argument("--family", metavar="KEY=V1,V2,...",
                       help="second variable with a discrete value list")

    figure = sub.add_parser("figure", parents=[common], help="run a preset figure sweep")
    figure.add_argument("number", type=int, choices=sorted(FIGURE_PRESETS),
                        help="figure preset number")

    sub.add_parser("validate", parents=[common],
                   help="compare analytic results against Monte Carlo")
    return parser


def _parse_family(text: str) -> tuple[str, tuple[float, ...]]:
    key, sep, raw_values = text.partition("=")
    key = key.strip()
    if not sep or not raw_values.strip():
        raise ParameterError("--family expects KEY=V1,V2,...")
    try:
        values = tuple(float(v) for v in raw_values.split(","))
    except ValueError as exc:
        raise ParameterError(f"--family values must be numeric: {raw_values!r}") from exc
    return key, values


def _apply_overrides(system, mc, args):
    if args.duplex_factor is not None:
        system = dataclasses.replace(system, duplex_factor=args.duplex_factor)
    overrides = {}
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        mc = dataclasses.replace(mc, **overrides)
    return system, mc


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, newline="\n")


def _run_eval(system, mc, workers: int) -> str:
    threshold = relay.rate_to_snr_threshold(system.rate_threshold_bits, system.duplex_factor)
    cap_plc = plc_link.avg_capacity(system.plc)
    cap_vlc_closed = vlc_link.avg_capacity_closed(system.vlc)
    cap_vlc_quad = vlc_link.avg_capacity_quad(system.vlc)
    mc_cap = estimate("e2e_avg_capacity", system, mc, workers=workers)
    mc_out = estimate("e2e_outage", system, mc, workers=workers)
    lines = ["# plcvlc eval report"]
    lines.extend(echo_lines(system, mc))
    lines.extend(
        [
            f"plc_attenuation_per_m = {plc_link.attenuation_coeff(system.plc)!r}",
            f"plc_snr_scale = {plc_link.snr_scale(system.plc)!r}",
            f"snr_threshold = {threshold!r}",
            f"plc_capacity = {cap_plc!r}",
            f"vlc_capacity_closed = {cap_vlc_closed!r}",
            f"vlc_capacity_quad = {cap_vlc_quad!r}",
            f"e2e_capacity_bound = {system.duplex_factor * min(cap_plc, cap_vlc_closed)!r}",
            f"e2e_capacity_mc = {mc_cap.mean!r}",
            f"e2e_capacity_mc_se = {mc_cap.std_error!r}",
            f"plc_outage = {plc_link.outage(system.plc, threshold)!r}",
            f"vlc_outage = {vlc_link.outage(system.vlc, threshold)!r}",
            f"e2e_outage = {relay.e2e_outage_analytic(system)!r}",
            f"e2e_outage_mc = {mc_out.mean!r}",
            f"e2e_outage_mc_se = {mc_out.std_error!r}",
        ]
    )
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        system, mc = load_config(args.config)
        system, mc = _apply_overrides(system, mc, args)

        if args.command == "eval":
            _write_output(_run_eval(system, mc, args.workers), args.out)
            return 0

        if args.command in ("sweep", "figure"):
            if args.command == "figure":
                spec = FIGURE_PRESETS[args.number]
            else:
                family_variable = None
                family_values: tuple[float, ...] = ()
                if args.family is not None:
                    family_variable, family_values = _parse_family(args.family)
                spec = SweepSpec(
                    variable=args.var,
                    start=args.start,
                    stop=args.stop,
                    steps=args.steps,
                    family_variable=family_variable,
                    family_values=family_values,
                )
            report = run_sweep(spec, system, mc, workers=args.workers)
            _write_output(report_csv(report, system, mc), args.out)
            return 0

        # validate
        rows, ok = run_validation(system, mc, workers=args.workers)
        text = "\n".join(validation_lines(rows)) + "\n"
        _write_output(text, args.out)
        if not ok:
            failing = ", ".join(r.name for r in rows if not r.agrees)
            print(f"validation failed: {failing}", file=sys.stderr)
            return 1
        return 0
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PlcVlcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
