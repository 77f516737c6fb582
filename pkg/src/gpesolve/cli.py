"""Command-line interface.

Subcommands: run <config>, converge <config> --dts <list>,
list-experiments, describe <experiment>.

Exit codes: 0 success, 2 config error, 3 solver failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from .config import ConfigError, ExperimentConfig, from_dict, parse_config
from .experiments import experiment_config, list_experiments
from .harness import convergence_study, run_experiment
from .integrators import StepFailure

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_IO = 4


def _load(config_arg: str) -> ExperimentConfig:
    """Accept either a path to a YAML config or a canned experiment name."""
    path = Path(config_arg)
    if path.exists():
        return parse_config(path)
    try:
        return from_dict(experiment_config(config_arg))
    except KeyError:
        raise ConfigError(
            f"{config_arg!r} is neither an existing config file nor a known experiment"
        )


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _load(args.config)
    if args.output is not None:
        cfg.output.directory = args.output
    print(yaml.safe_dump({"resolved_config": cfg.to_dict()}, sort_keys=False), end="")
    records = run_experiment(cfg)
    final = records[-1]
    print(
        f"done: {len(records) - 1} steps, final time {final.time:g}, "
        f"mass {final.mass:.12g}, sup rel energy error "
        f"{max(r.rel_energy_error for r in records):.3e}"
    )
    return EXIT_OK


def _cmd_converge(args: argparse.Namespace) -> int:
    cfg = _load(args.config)
    dts = [float(s) for s in args.dts.split(",")]
    rows, sol_slope, energy_slope = convergence_study(cfg, dts)
    print(f"{'dt':>14}  {'solution_error':>16}  {'energy_error':>16}")
    for r in rows:
        status = "FAILED" if r.failed else ""
        print(f"{r.dt:14.6e}  {r.solution_error:16.6e}  {r.energy_error:16.6e}  {status}")
    if sol_slope is not None:
        print(f"solution-error slope: {sol_slope:.3f}")
    if energy_slope is None:
        print("energy: conserved (all errors <= 1e-10; no slope fit)")
    else:
        print(f"energy-error slope: {energy_slope:.3f}")
    return EXIT_OK


def _cmd_list(_: argparse.Namespace) -> int:
    for name, desc in list_experiments():
        print(f"{name:36s} {desc}")
    return EXIT_OK


def _cmd_describe(args: argparse.Namespace) -> int:
    try:
        cfg = experiment_config(args.experiment)
    except KeyError as exc:
        raise ConfigError(str(exc))
    print(yaml.safe_dump(cfg, sort_keys=False), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpesolve",
        description="Energy-preserving pseudo-spectral NLS/GPE solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a config file or canned name")
    p_run.add_argument("config")
    p_run.add_argument("-o", "--output", default=None, help="override output directory")
    p_run.set_defaults(func=_cmd_run)

    p_conv = sub.add_parser("converge", help="time-step refinement study")
    p_conv.add_argument("config")
    p_conv.add_argument("--dts", required=True, help="comma-separated time steps")
    p_conv.set_defaults(func=_cmd_converge)

    p_list = sub.add_parser("list-experiments", help="list canned experiments")
    p_list.set_defaults(func=_cmd_list)

    p_desc = sub.add_parser("describe", help="print a canned experiment config")
    p_desc.add_argument("experiment")
    p_desc.set_defaults(func=_cmd_describe)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StepFailure as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
