"""Command line surface: ``list``, ``run <name>``, ``run-all``.

Exit statuses: 0 when every check passes, 1 when a check fails, 2 for usage
errors (unknown scenario, invalid configuration, bad flags).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .report import AggregateReport, Report, render_json, render_text
from .scenarios import (
    RunConfig,
    UnknownScenarioError,
    list_scenarios,
    run_all,
    run_scenario,
)

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paritylab",
        description="Run machine-checked scenarios for parity superselection, "
        "independence tests, and local tomography of composite models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list available scenarios")

    def add_run_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=1e-9, help="check tolerance")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled trials")
        p.add_argument(
            "--format", choices=("text", "json"), default="text", help="report format"
        )
        p.add_argument("--out", type=str, default=None, help="write the report here")

    run_p = sub.add_parser("run", help="run one scenario")
    run_p.add_argument("name", help="scenario name (see `list`)")
    add_run_flags(run_p)

    all_p = sub.add_parser("run-all", help="run every scenario")
    add_run_flags(all_p)

    return parser


def _emit(report: Report | AggregateReport, cfg: RunConfig) -> None:
    text = render_json(report) if cfg.format == "json" else render_text(report)
    if cfg.output_path is not None:
        Path(cfg.output_path).write_text(text, encoding="utf-8")
        print(f"wrote report to {cfg.output_path}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "list":
        for desc in list_scenarios():
            print(f"{desc.name:<44s} [{desc.module}] {desc.description}")
        return EXIT_PASS

    try:
        cfg = RunConfig(
            tolerance=args.tol,
            seed=args.seed,
            format=args.format,
            output_path=args.out,
        )
    except ValueError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "run":
        try:
            report: Report | AggregateReport = run_scenario(args.name, cfg)
        except UnknownScenarioError:
            names = ", ".join(d.name for d in list_scenarios())
            print(
                f"error: unknown scenario {args.name!r}; available: {names}",
                file=sys.stderr,
            )
            return EXIT_USAGE
    else:
        report = run_all(cfg)

    _emit(report, cfg)
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILURE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
