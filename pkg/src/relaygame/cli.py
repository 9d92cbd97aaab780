"""Command-line front end.

Subcommands
-----------
solve     : solve both extremal equilibria on the configured grid; write the
            four policy surfaces, per-point trace lengths, and solver stats.
verify    : run every applicable structural check against its expected
            verdict; exit 0 only when all verdicts match.
simulate  : Monte Carlo run of one named strategy over the sweep points.
sweep     : Monte Carlo run of every configured strategy over the sweep
            points; one combined CSV.
report    : render PNG figures from a previous solve/sweep of this config.

Exit codes: 0 success (including expected negative verdicts), 1 invalid
config or arguments, 2 runtime failure, 3 a structural check returned a
verdict other than the expected one.

All file contents are deterministic functions of (config, seed); --threads
changes wall time only, never bytes.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from .analysis import (
    PropertyName,
    PropertyReport,
    check_error_cost_submodularity,
    check_monotonicity,
    check_pareto,
    check_submodularity,
    check_symmetry,
    export_policy_surface,
)
from .config import ConfigError, RunConfig, load_config
from .core import CostModel, ErrorVariant
from .simulate import StrategySpec, run_sweep
from .solver import (
    ExtremalEquilibria,
    SolveDirection,
    cournot_solve,
    solve_accelerated,
)
from .tables import read_csv, write_csv

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_VERDICT = 3

SWEEP_COLUMNS = [
    "strategy",
    "avg_snr_db",
    "ber",
    "bits_per_symbol",
    "broadcast_rate",
    "avg_cost1",
    "avg_cost2",
    "symbols",
    "seed",
]


def _active_model(cfg: RunConfig) -> CostModel:
    return cfg.models[cfg.active_model]


def _write(path: str, header: list[str], rows) -> None:
    write_csv(path, header, rows)
    print(f"wrote {path}")


def cmd_solve(cfg: RunConfig, args: argparse.Namespace) -> int:
    model = _active_model(cfg)
    largest, traces_top = cournot_solve(model, cfg.grid, SolveDirection.FROM_TOP)
    smallest, traces_bot = cournot_solve(model, cfg.grid, SolveDirection.FROM_BOTTOM)
    eq = ExtremalEquilibria(largest=largest, smallest=smallest)

    out = cfg.out_dir
    for fname, policy, component in (
        ("surface_largest_user1.csv", eq.largest, 1),
        ("surface_largest_user2.csv", eq.largest, 2),
        ("surface_smallest_user1.csv", eq.smallest, 1),
        ("surface_smallest_user2.csv", eq.smallest, 2),
    ):
        rows = [list(r) for r in export_policy_surface(policy, component)]
        _write(os.path.join(out, fname), ["gamma1", "gamma2", "action"], rows)

    trace_rows = []
    for i1 in range(cfg.grid.n1):
        for i2 in range(cfg.grid.n2):
            point = cfg.grid.point(i1, i2)
            trace_rows.append(
                [
                    point.gamma1,
                    point.gamma2,
                    traces_top[(i1, i2)].converged_at,
                    traces_bot[(i1, i2)].converged_at,
                ]
            )
    _write(
        os.path.join(out, "trace_lengths.csv"),
        ["gamma1", "gamma2", "from_top_iterations", "from_bottom_iterations"],
        trace_rows,
    )

    plain_evals = sum(2 * (len(t.profiles) - 1) for t in traces_top.values())
    plain_evals += sum(2 * (len(t.profiles) - 1) for t in traces_bot.values())
    stats_rows = [["plain", plain_evals, 0, 0]]
    if args.accelerate:
        eq_acc, stats = solve_accelerated(model, cfg.grid)
        if not (eq_acc.largest == eq.largest and eq_acc.smallest == eq.smallest):
            raise RuntimeError("accelerated solve disagrees with the plain solve")
        stats_rows.append(
            [
                "accelerated",
                stats.accelerated_evaluations,
                stats.mirrored_points,
                stats.warm_seeded_points,
            ]
        )
    _write(
        os.path.join(out, "solve_stats.csv"),
        ["method", "best_response_evaluations", "mirrored_points", "warm_seeded_points"],
        stats_rows,
    )

    if args.plot:
        from .report import render_surface_figures

        for path in render_surface_figures(eq, out):
            print(f"wrote {path}")
    return EXIT_OK


def _expected_holds(model: CostModel) -> dict[PropertyName, bool]:
    """Expected verdict per structural check for one cost model.

    The error cost is submodular in (snr, action) only for the POWER_PROXY
    variant, so monotone equilibria are guaranteed there.  For BER_BOUND the
    guarantee is absent and the weight-50 configuration is the documented
    counterexample; it is the one configuration expected to violate
    monotonicity.
    """
    power = model.variant is ErrorVariant.POWER_PROXY
    return {
        PropertyName.SUBMODULARITY: True,
        PropertyName.PARETO_ORDER: True,
        PropertyName.SYMMETRY: True,
        PropertyName.ERROR_COST_SUBMODULARITY: power,
        PropertyName.MONOTONICITY: power or model.weight != 50.0,
    }


def _violation_detail(violation) -> str:
    # one readable cell; commas are the CSV separator so they become semicolons
    return str(violation).replace(",", ";")


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    from .solver import solve_extremal

    model = _active_model(cfg)
    eq = solve_extremal(model, cfg.grid)
    reports: list[PropertyReport] = [
        check_submodularity(model, cfg.grid),
        check_error_cost_submodularity(model, cfg.grid),
        check_pareto(model, eq),
        check_symmetry(eq),
        check_monotonicity(eq),
    ]
    expected = _expected_holds(model)

    all_match = True
    summary_rows = []
    detail_rows = []
    for rep in reports:
        exp = expected[rep.property]
        matches = (not rep.applicable) or (rep.holds == exp)
        all_match = all_match and matches
        summary_rows.append(
            [
                rep.property.value,
                rep.applicable,
                exp,
                rep.holds,
                matches,
                len(rep.violations),
            ]
        )
        for violation in rep.violations:
            detail_rows.append([rep.property.value, _violation_detail(violation)])
        if not rep.applicable:
            verdict = "not applicable"
        elif matches:
            verdict = "as expected"
        else:
            verdict = "UNEXPECTED"
        print(
            f"{rep.property.value}: holds={rep.holds} expected={exp} "
            f"violations={len(rep.violations)} -> {verdict}"
        )

    out = cfg.out_dir
    _write(
        os.path.join(out, "verify.csv"),
        ["property", "applicable", "expected_holds", "observed_holds", "matches", "violation_count"],
        summary_rows,
    )
    _write(os.path.join(out, "violations.csv"), ["property", "detail"], detail_rows)
    return EXIT_OK if all_match else EXIT_VERDICT


def _sweep_rows(cfg: RunConfig, specs: list[StrategySpec], threads: int):
    reports = run_sweep(
        specs,
        cfg.channel,
        cfg.auto_grid_levels,
        list(cfg.sweep_db),
        cfg.symbols,
        cfg.seed,
        threads=threads,
        calibration_samples=cfg.calibration_samples,
    )
    return [
        [
            r.strategy,
            r.avg_snr_db,
            r.ber,
            r.bits_per_symbol,
            r.broadcast_rate,
            r.avg_cost1,
            r.avg_cost2,
            r.symbols,
            cfg.seed,
        ]
        for r in reports
    ]


def cmd_sweep(cfg: RunConfig, args: argparse.Namespace) -> int:
    rows = _sweep_rows(cfg, list(cfg.strategies), args.threads)
    path = os.path.join(cfg.out_dir, "sweep.csv")
    _write(path, SWEEP_COLUMNS, rows)
    if args.plot:
        from .report import render_sweep_figures

        header, text_rows = read_csv(path)
        for fig_path in render_sweep_figures(header, text_rows, cfg.out_dir):
            print(f"wrote {fig_path}")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, args: argparse.Namespace) -> int:
    by_name = {s.name: s for s in cfg.strategies}
    if args.strategy is None:
        if len(cfg.strategies) != 1:
            raise ConfigError(
                "--strategy: required when the config lists more than one strategy"
            )
        spec = cfg.strategies[0]
    elif args.strategy in by_name:
        spec = by_name[args.strategy]
    else:
        known = ", ".join(sorted(by_name))
        raise ConfigError(f"--strategy: {args.strategy!r} is not configured ({known})")
    rows = _sweep_rows(cfg, [spec], args.threads)
    _write(os.path.join(cfg.out_dir, "simulate.csv"), SWEEP_COLUMNS, rows)
    return EXIT_OK


def cmd_report(cfg: RunConfig, args: argparse.Namespace) -> int:
    from .report import render_surface_figures, render_sweep_figures
    from .solver import solve_extremal

    model = _active_model(cfg)
    eq = solve_extremal(model, cfg.grid)
    for path in render_surface_figures(eq, cfg.out_dir):
        print(f"wrote {path}")

    sweep_path = os.path.join(cfg.out_dir, "sweep.csv")
    if os.path.exists(sweep_path):
        header, rows = read_csv(sweep_path)
        for path in render_sweep_figures(header, rows, cfg.out_dir):
            print(f"wrote {path}")
    else:
        print(f"no {sweep_path}; run the sweep command first for the metric figures")
    return EXIT_OK


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", required=True, help="path to the YAML run configuration")
    sub.add_argument("--seed", type=int, default=None, help="override the config seed")
    sub.add_argument("--out", default=None, help="override the config output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaygame",
        description="equilibrium solving, structural checks, and Monte Carlo "
        "benchmarks for adaptive modulation over a two-way relay",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve extremal equilibria, write policy surfaces")
    _add_common(p)
    p.add_argument(
        "--accelerate",
        action="store_true",
        help="also run the structure-exploiting solver and record its stats",
    )
    p.add_argument("--plot", action="store_true", help="render surface PNGs as well")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run structural checks against expected verdicts")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo run of one named strategy")
    _add_common(p)
    p.add_argument("--strategy", default=None, help="configured strategy name to run")
    p.add_argument("--threads", type=int, default=1, help="worker threads (speed only)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="Monte Carlo run of all configured strategies")
    _add_common(p)
    p.add_argument("--threads", type=int, default=1, help="worker threads (speed only)")
    p.add_argument("--plot", action="store_true", help="render metric PNGs as well")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="render PNG figures for this config's outputs")
    _add_common(p)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors; fold usage
        # errors into the validation exit code
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG

    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("--seed: must be >= 0")
            cfg = dataclasses.replace(cfg, seed=args.seed)
        if args.out is not None:
            cfg = dataclasses.replace(cfg, out_dir=args.out)
        threads = getattr(args, "threads", 1)
        if threads < 1:
            raise ConfigError("--threads: must be >= 1")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        return args.func(cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - boundary: report, do not crash
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
