#!/usr/bin/env python3
"""
Command-line interface for the stbclab package.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List

PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from stbclab import SimConfig, emit_csv, load_config, measure_complexity, run_sweep, run_verification, sweep_imbalance
from stbclab.common import ConfigError, IoFailure, StbcLabError, UnknownName
from stbclab.exporters import export_csv, export_json

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _load(args: argparse.Namespace) -> SimConfig:
    cfg = load_config(Path(args.config)) if args.config else SimConfig()
    return cfg.with_overrides(
        decoder=getattr(args, "decoder", None),
        workers=getattr(args, "workers", None),
        seed=getattr(args, "seed", None),
    )


def handle_verify(args: argparse.Namespace) -> int:
    summary = run_verification(args.constellation, sampled_pairs=args.sampled_pairs, seed=args.seed)

    print(f"Property checks for the 4x2 code ({args.constellation})")
    for check in summary.checks:
        status = "OK" if check.passed else "FAIL"
        print(f" - {check.name}: {status} | {check.detail}")
    if summary.gain is not None and summary.gain.argmin_pair is not None:
        s, s_hat = summary.gain.argmin_pair
        print(f"     closest pair: {s} vs {s_hat}")

    if args.csv:
        export_csv([check.to_dict() for check in summary.checks], Path(args.csv))
        print(f"\nCheck results written to {args.csv}")
    if args.json:
        export_json(summary.to_dict(), Path(args.json))
        print(f"Full report written to {args.json}")
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def handle_ber(args: argparse.Namespace) -> int:
    cfg = _load(args)
    points = run_sweep(cfg)
    if args.out:
        emit_csv(points, Path(args.out))
        print(f"{len(points)} points written to {args.out}")
    else:
        emit_csv(points, sys.stdout)
    return EXIT_OK


def handle_sweep_imbalance(args: argparse.Namespace) -> int:
    cfg = _load(args)
    rows = sweep_imbalance(cfg, target_ber=args.target_ber)

    print(f"SNR for BER {args.target_ber:g} ({cfg.code}/{rows[0]['decoder'] if rows else cfg.decoder})")
    for row in rows:
        snr = row["snr_at_target_db"]
        loss = row["loss_db"]
        snr_text = "not reached" if snr is None else f"{snr:.2f} dB"
        loss_text = "n/a" if loss is None else f"{loss:+.2f} dB"
        print(f" - imbalance {row['imbalance_db']:g} dB: {snr_text} | loss: {loss_text}")

    if args.out:
        export_csv(rows, Path(args.out))
        print(f"\nRows written to {args.out}")
    return EXIT_OK


def handle_complexity(args: argparse.Namespace) -> int:
    rows = measure_complexity(args.constellations, seed=args.seed)
    for row in rows:
        status = "OK" if row.matches else "MISMATCH"
        print(f" - {row.constellation} {row.decoder}: {row.measured} evals | {row.label} = {row.analytic} | {status}")
    return EXIT_OK if all(row.matches for row in rows) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="4x2 distributed space-time code lab for SFN broadcasting.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr")

    subparsers = parser.add_subparsers(dest="command", required=True)

    verify_parser = subparsers.add_parser("verify", help="Check rate, rank and coding gain of the 4x2 code")
    verify_parser.add_argument("--constellation", default="qpsk", help="qpsk, qam16 or qam64 (default: qpsk)")
    verify_parser.add_argument("--sampled-pairs", type=int, default=100_000, help="Pairs drawn when not exhaustive")
    verify_parser.add_argument("--seed", type=int, default=0, help="Seed for sampled pairs and random draws")
    verify_parser.add_argument("--csv", help="Optional path to write the check results as CSV")
    verify_parser.add_argument("--json", help="Optional path to write the full report as JSON")
    verify_parser.set_defaults(func=handle_verify)

    ber_parser = subparsers.add_parser("ber", help="Monte Carlo BER/SER sweep over SNR and imbalance")
    ber_parser.add_argument("--config", help="JSON config file (defaults are used when omitted)")
    ber_parser.add_argument("--decoder", choices=("ml", "cond-ml", "zf"), help="Override the configured decoder")
    ber_parser.add_argument("--workers", type=int, help="Override the number of worker processes")
    ber_parser.add_argument("--seed", type=int, help="Override the master seed")
    ber_parser.add_argument("--out", help="CSV destination (default: stdout)")
    ber_parser.set_defaults(func=handle_ber)

    sweep_parser = subparsers.add_parser("sweep-imbalance", help="SNR loss at a target BER versus imbalance")
    sweep_parser.add_argument("--config", help="JSON config file (defaults are used when omitted)")
    sweep_parser.add_argument("--target-ber", type=float, default=1e-3, help="Target BER (default: 1e-3)")
    sweep_parser.add_argument("--out", help="Optional CSV destination")
    sweep_parser.set_defaults(func=handle_sweep_imbalance)

    complexity_parser = subparsers.add_parser("complexity", help="Measured versus analytic decoder complexity")
    complexity_parser.add_argument("--constellations", nargs="+", default=["qpsk"], help="Alphabets to measure")
    complexity_parser.add_argument("--seed", type=int, default=0, help="Seed for the random reception")
    complexity_parser.set_defaults(func=handle_complexity)

    return parser


def main(argv: List[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (ConfigError, UnknownName, IoFailure) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StbcLabError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
