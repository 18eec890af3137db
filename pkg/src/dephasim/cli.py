"""Command-line entry point.

Subcommands:

    trace  --config <path> --out <path>     run one scenario, write CSV
    figure <preset> --out <dir> [--dump-config]
    verify <suite>  [--csv <path>]          suite in {algebra, kernels, oracle, all}

Exit codes: 0 success, 1 validation error, 2 computation error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bath import QuadratureError
from .scenario import ConfigError, FIGURE_PRESETS, run_figure, run_trace
from .verify import run_suite

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_COMPUTATION = 2
EXIT_VERIFICATION = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dephasim",
        description="Qubit dephasing trajectories for measurement-prepared states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    trace = sub.add_parser("trace", help="run a scenario config and write a CSV")
    trace.add_argument("--config", required=True, help="path to a scenario JSON file")
    trace.add_argument("--out", required=True, help="output CSV path")

    figure = sub.add_parser("figure", help="emit the data files for a figure preset")
    figure.add_argument("preset", help=f"one of: {', '.join(sorted(FIGURE_PRESETS))}")
    figure.add_argument("--out", required=True, help="output directory")
    figure.add_argument(
        "--dump-config",
        action="store_true",
        help="write the embedded scenario files instead of running them",
    )

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=["algebra", "kernels", "oracle", "all"])
    verify.add_argument("--csv", help="also write the per-case report to this path")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "trace":
            run_trace(args.config, args.out)
            print(f"wrote {args.out}")
            return EXIT_OK
        if args.command == "figure":
            written = run_figure(args.preset, args.out, dump_config=args.dump_config)
            for path in written:
                print(f"wrote {path}")
            return EXIT_OK
        if args.command == "verify":
            results = run_suite(args.suite)
            for result in results:
                print(result.line())
            if args.csv:
                lines = ["suite,name,max_error,tolerance,passed"]
                lines += [
                    f"{r.suite},{r.name},{r.max_error:.17g},{r.tolerance:.17g},"
                    f"{int(r.passed)}"
                    for r in results
                ]
                Path(args.csv).write_text("\n".join(lines) + "\n")
            failed = [r for r in results if not r.passed]
            if failed:
                print(f"{len(failed)} of {len(results)} checks failed", file=sys.stderr)
                return EXIT_VERIFICATION
            print(f"all {len(results)} checks passed")
            return EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (QuadratureError, ArithmeticError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
