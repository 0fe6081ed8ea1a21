"""Command-line interface: parameter sweeps, figure presets, validation.

Exit codes: 0 on success, 1 on input errors (bad config, bad arguments),
2 when the analytic-vs-Monte-Carlo validation fails.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .config import ConfigError, parse_config, reference_config
from .montecarlo import McConfig
from .sweep import figure_preset, rows_to_csv, run_sweep, validate


def _add_method(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--method",
        choices=("analytic", "mc", "both"),
        default=None,
        help="evaluation method override (default: as configured)",
    )


def _method_tuple(name: str) -> tuple[str, ...]:
    return {
        "analytic": ("analytic",),
        "mc": ("monte-carlo",),
        "both": ("analytic", "monte-carlo"),
    }[name]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linksec",
        description=(
            "Average secrecy capacity of a surface- or relay-assisted link "
            "under an eavesdropping attack."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the sweep configured in a scenario file")
    p_sweep.add_argument("--config", required=True, help="scenario configuration file")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    _add_method(p_sweep)
    p_sweep.add_argument("--workers", type=int, default=None, help="concurrent grid points")

    p_val = sub.add_parser("validate", help="check closed forms against the simulator")
    p_val.add_argument("--config", required=True)
    p_val.add_argument("--samples", type=int, required=True)
    p_val.add_argument("--seed", type=int, required=True)
    p_val.add_argument(
        "--powers",
        default="0,10,20",
        help="comma-separated transmit powers in dB (default 0,10,20)",
    )

    p_fig = sub.add_parser("figure", help="emit a preset study as CSV")
    p_fig.add_argument("--id", type=int, choices=(3, 4, 5, 6), required=True)
    p_fig.add_argument("--out", required=True)
    p_fig.add_argument(
        "--config",
        default=None,
        help="scenario file (default: the built-in reference scenario)",
    )
    _add_method(p_fig)
    p_fig.add_argument("--workers", type=int, default=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            parsed = parse_config(args.config)
            if parsed.sweep is None:
                print("error: the configuration has no sweep section", file=sys.stderr)
                return 1
            spec = parsed.sweep
            if args.method is not None:
                spec = dataclasses.replace(spec, methods=_method_tuple(args.method))
            rows = run_sweep(spec, parsed, workers=args.workers)
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(rows_to_csv(rows))
            print(f"wrote {len(rows)} rows to {args.out}")
            return 0

        if args.command == "validate":
            parsed = parse_config(args.config)
            powers = tuple(float(p) for p in args.powers.split(",") if p.strip())
            cfg = McConfig(samples=args.samples, master_seed=args.seed)
            report = validate(parsed, powers, cfg)
            print(report.to_text())
            return 0 if report.passed else 2

        if args.command == "figure":
            parsed = parse_config(args.config) if args.config else reference_config()
            rows = figure_preset(
                args.id, parsed, method=args.method or "analytic", workers=args.workers
            )
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(rows_to_csv(rows))
            print(f"wrote {len(rows)} rows to {args.out}")
            return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
