"""Command line entry point: ``l1crossed verify | spectrum | selftest``.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or config error,
3 resource limit hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .config import ConfigError, ResourceError, build_system, parse_config, run_scenario
from .crossed import elements_from_literal
from .report import VerificationReport, emit_report, report_json, spectra_csv
from .spectral import DimensionCapExceeded, spectrum_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None


def cmd_verify(args) -> int:
    cfg = parse_config(_read(args.config))
    cfg = cfg.replace(seed=args.seed, samples=args.samples, tol=args.tol)
    out = args.out or cfg.output.get("report")
    csv_out = args.csv or cfg.output.get("csv")
    start = time.perf_counter()
    report = run_scenario(cfg, keep_spectra=csv_out is not None)
    if args.timing:
        report.timing_ms = round((time.perf_counter() - start) * 1000, 3)
    if out:
        emit_report(report, out, csv_out)
    else:
        sys.stdout.write(report_json(report))
        if csv_out:
            Path(csv_out).write_text(spectra_csv(report), encoding="utf-8")
    for result in report.results:
        print(f"{result.status:>12}  {result.check}", file=sys.stderr)
    return report.exit_code


def cmd_spectrum(args) -> int:
    cfg = parse_config(_read(args.config))
    system = build_system(cfg.system)
    try:
        entries = json.loads(_read(args.element))
        x = elements_from_literal(system, entries)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc), args.element) from None
    result = spectrum_report(x, omega_count=cfg.omega_count, n_max=cfg.gelfand_levels)
    report = VerificationReport(cfg.to_dict(with_output=False), [result], cfg.seed)
    if args.out:
        emit_report(report, args.out, args.csv)
    else:
        sys.stdout.write(report_json(report))
        if args.csv:
            Path(args.csv).write_text(spectra_csv(report), encoding="utf-8")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all
    ok = True
    for result in run_all():
        print(result.line())
        ok &= result.passed
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="l1crossed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the checks of a scenario config")
    verify.add_argument("--config", required=True)
    verify.add_argument("--out", help="write the JSON report here instead of stdout")
    verify.add_argument("--csv", help="also dump all computed eigenvalues as CSV")
    verify.add_argument("--seed", type=int)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--tol", type=float)
    verify.add_argument("--timing", action="store_true",
                        help="record wall time in the report (makes reports non-reproducible)")
    verify.set_defaults(func=cmd_verify)

    spectrum = sub.add_parser("spectrum", help="spectrum of one element of a configured system")
    spectrum.add_argument("--config", required=True)
    spectrum.add_argument("--element", required=True, help='JSON list of {"g": ..., "matrix": ...}')
    spectrum.add_argument("--out")
    spectrum.add_argument("--csv")
    spectrum.set_defaults(func=cmd_spectrum)

    selftest = sub.add_parser("selftest", help="run the built-in acceptance suite")
    selftest.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceError, DimensionCapExceeded, MemoryError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
