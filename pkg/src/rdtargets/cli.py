"""Command-line interface for regret runs, target comparisons, solver calls,
and sample-size bounds.

Exit codes: 0 on success, 2 on any config or input validation error.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .estimation import AlphabetSizes, required_samples
from .harness import (
    ConfigError,
    compare_targets,
    load_config,
    run_experiment,
    with_overrides,
    write_rd_points,
    write_records,
)
from .info_theory import Distribution, ValidationError
from .rd_solver import BAConfig, DistortionMatrix, blahut_arimoto


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdtargets",
        description="Rate-distortion learning targets for multi-armed bandits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a seeded regret experiment")
    run_p.add_argument("--config", required=True, help="flat key=value config file")
    run_p.add_argument("--seed", type=int, default=None, help="override the config seed")
    run_p.add_argument("--out", default=None, help="override the output CSV path")

    rd_p = sub.add_parser(
        "rd-compare", help="compare trade-off targets against satisficing targets"
    )
    rd_p.add_argument("--config", required=True)
    rd_p.add_argument("--betas", type=float, nargs="+", required=True)
    rd_p.add_argument("--epsilons", type=float, nargs="+", required=True)
    rd_p.add_argument("--out", required=True)

    ba_p = sub.add_parser("ba-solve", help="solve one rate-distortion trade-off")
    ba_p.add_argument("--source", required=True, help="CSV with header label,prob")
    ba_p.add_argument(
        "--distortion",
        required=True,
        help="CSV with header label,<target...> matching the source labels",
    )
    ba_p.add_argument("--beta", type=float, required=True)

    bounds_p = sub.add_parser(
        "bounds", help="sample size sufficient for a plug-in rate guarantee"
    )
    bounds_p.add_argument("--epsilon", type=float, required=True)
    bounds_p.add_argument("--delta", type=float, required=True)
    bounds_p.add_argument("--dmin", type=float, required=True)
    bounds_p.add_argument("--nenv", type=int, required=True)
    bounds_p.add_argument("--ntarget", type=int, required=True)

    return parser


def _read_source_csv(path: str) -> Distribution:
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            rows = list(csv.reader(handle))
    except OSError as exc:
        raise ConfigError(f"cannot read source CSV {path}: {exc}") from exc
    if not rows or rows[0] != ["label", "prob"]:
        raise ConfigError(f"{path}: expected header 'label,prob'")
    labels, probs = [], []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ConfigError(f"{path}:{line_no}: expected 'label,prob'")
        labels.append(row[0])
        try:
            probs.append(float(row[1]))
        except ValueError:
            raise ConfigError(f"{path}:{line_no}: bad probability {row[1]!r}") from None
    return Distribution(tuple(labels), np.asarray(probs))


def _read_distortion_csv(path: str, source: Distribution) -> DistortionMatrix:
    try:
        with open(path, "r", encoding="utf-8", newline="") as handle:
            rows = list(csv.reader(handle))
    except OSError as exc:
        raise ConfigError(f"cannot read distortion CSV {path}: {exc}") from exc
    if not rows or not rows[0] or rows[0][0] != "label":
        raise ConfigError(f"{path}: expected header 'label,<target...>'")
    cols = tuple(rows[0][1:])
    if not cols:
        raise ConfigError(f"{path}: needs at least one target column")
    labels, entries = [], []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(cols) + 1:
            raise ConfigError(f"{path}:{line_no}: expected {len(cols) + 1} fields")
        labels.append(row[0])
        try:
            entries.append([float(x) for x in row[1:]])
        except ValueError:
            raise ConfigError(f"{path}:{line_no}: bad distortion value") from None
    if tuple(labels) != source.labels:
        raise ConfigError(
            f"{path}: row labels must match the source labels in order"
        )
    return DistortionMatrix(tuple(labels), cols, np.asarray(entries))


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg = with_overrides(load_config(args.config), args.seed, args.out)
            records = run_experiment(cfg)
            write_records(records, cfg.output_path)
            print(f"wrote {len(records)} records to {cfg.output_path}")
        elif args.command == "rd-compare":
            cfg = load_config(args.config)
            points = compare_targets(
                cfg.spec,
                args.betas,
                args.epsilons,
                cfg.z,
                cfg.master_seed,
                cfg.ba_cfg,
            )
            write_rd_points(points, args.out)
            print(f"wrote {len(points)} points to {args.out}")
        elif args.command == "ba-solve":
            source = _read_source_csv(args.source)
            dist = _read_distortion_csv(args.distortion, source)
            solution = blahut_arimoto(source, dist, args.beta, BAConfig())
            print(
                f"rate_bits={solution.rate!r} distortion={solution.distortion!r} "
                f"iterations={solution.iterations} converged={solution.converged}"
            )
        else:
            z = required_samples(
                args.epsilon,
                args.delta,
                args.dmin,
                AlphabetSizes(args.nenv, args.ntarget),
            )
            print(z)
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
