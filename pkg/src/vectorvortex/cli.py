"""Command-line front end: run config files or bundled presets.

Exit codes: 0 success, 1 configuration/usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .fields import GridSpec
from .pipeline import (
    PRESET_NAMES,
    ConfigError,
    PipelineError,
    parse_config,
    preset_description,
    run_pipeline,
    run_preset,
)

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise _UsageError(message)


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="DIR", default=None, help="output directory")
    p.add_argument("--grid-n", metavar="N", type=int, default=None, help="override the grid resolution")
    p.add_argument("--json-report", metavar="PATH", default=None, help="also write the report to PATH")
    p.add_argument(
        "--seedless",
        action="store_true",
        help="reserved; the simulator has no randomness and the flag is rejected",
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="vectorvortex", description="non-separable light-state pipelines")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    run_p = sub.add_parser("run", help="run a pipeline config file")
    run_p.add_argument("config", help="path to a config file")
    _add_common_flags(run_p)
    pre_p = sub.add_parser("preset", help="run a bundled preset")
    pre_p.add_argument("name", help="preset name (see list-presets)")
    _add_common_flags(pre_p)
    sub.add_parser("list-presets", help="list bundled presets")
    return parser


def _cmd_run(args) -> int:
    path = Path(args.config)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        print(f"config error: file not found: {path}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"config error: cannot read {path}: {exc}", file=sys.stderr)
        return 1
    cfg = parse_config(text)
    if args.grid_n is not None:
        try:
            cfg = dataclasses.replace(cfg, grid=GridSpec(args.grid_n, cfg.grid.extent))
        except ValueError as exc:
            raise ConfigError(f"--grid-n: {exc}") from exc
    if args.out is not None:
        cfg = dataclasses.replace(cfg, output_dir=args.out)
    report = run_pipeline(cfg)
    if args.json_report:
        try:
            out = Path(args.json_report)
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(report.to_json(), encoding="ascii")
        except OSError as exc:
            raise PipelineError(f"output: {exc}") from exc
    return 0


def _cmd_preset(args) -> int:
    out_dir = args.out if args.out is not None else "out"
    run_preset(args.name, out_dir=out_dir, grid_n=args.grid_n, json_report=args.json_report)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(parser.format_usage(), file=sys.stderr, end="")
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command is None:
        parser.print_help(sys.stderr)
        return 1
    if getattr(args, "seedless", False):
        print(
            "error: --seedless is reserved; the simulator is fully deterministic and uses no randomness",
            file=sys.stderr,
        )
        return 1
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "preset":
            return _cmd_preset(args)
        for name in PRESET_NAMES:
            print(f"{name:12s}  {preset_description(name)}")
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except PipelineError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
