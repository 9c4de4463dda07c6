"""Command-line entry point for running capacity sweeps.

Flags override config-file keys. Exit codes: 0 on success, 2 on configuration
errors, 1 on runtime errors.
"""

import argparse
import sys

from .harness import ConfigError, emit_plot, parse_config, run_sweep, \
    write_results


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Ergodic sum capacity sweeps for JT-CoMP VP-NOMA and "
                    "the OMA/NOMA/VP-NOMA baselines.")
    parser.add_argument("--config", metavar="PATH",
                        help="key=value configuration file")
    parser.add_argument("--sweep", choices=["rho", "near-radius", "alpha"],
                        help="swept quantity (default: rho)")
    parser.add_argument("--from", dest="from_value", metavar="F",
                        help="sweep range start")
    parser.add_argument("--to", dest="to_value", metavar="T",
                        help="sweep range end")
    parser.add_argument("--steps", metavar="N", help="number of sweep points")
    parser.add_argument("--schemes", metavar="LIST",
                        help="comma-separated subset of oma,noma,vpnoma,comp-vpnoma")
    parser.add_argument("--trials", metavar="N", help="Monte-Carlo trials per point")
    parser.add_argument("--seed", metavar="S", help="64-bit random seed")
    parser.add_argument("--out", metavar="PATH", default=None,
                        help="output CSV path (default results.csv)")
    parser.add_argument("--plot", metavar="PATH", default=None,
                        help="also write a self-contained SVG chart")
    parser.add_argument("--workers", metavar="N", type=int, default=1,
                        help="worker threads (any count reproduces serial results)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config is not None:
            try:
                with open(args.config, "r", encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config file {args.config}: {exc}")
        else:
            text = ""
        overrides = {"sweep": args.sweep, "from": args.from_value,
                     "to": args.to_value, "steps": args.steps,
                     "schemes": args.schemes, "trials": args.trials,
                     "seed": args.seed}
        cfg = parse_config(text, {k: v for k, v in overrides.items()
                                  if v is not None})
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    try:
        rows = run_sweep(cfg, workers=args.workers)
        out_path = args.out if args.out is not None else cfg.output_path
        write_results(rows, out_path)
        print(f"wrote {len(rows)} rows to {out_path}")
        if args.plot is not None:
            emit_plot(rows, args.plot)
            print(f"wrote plot to {args.plot}")
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entry() -> None:
    raise SystemExit(main())
