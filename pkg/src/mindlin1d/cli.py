"""Command-line interface.

Subcommands:
    validate       check a parameter set against the admissibility conditions
    exact          print the temporal frequencies of the configured modes and
                   optionally dump sampled exact fields
    simulate       single run (either mode) writing snapshot CSVs
    convergence    grid-refinement study, aligned table + CSV
    inhomogeneous  two-material strain-pulse experiment

Flags mirror the config-file keys; --config loads a file and flags override
it.  Exit codes: 0 success, 1 invalid configuration, 2 numerical blow-up.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import (
    ConfigError,
    RunKind,
    SimConfig,
    parse_config,
    waves_for_benchmark,
)
from .driver import (
    build_exact_solution,
    convergence_study,
    format_convergence_table,
    run_exact_verification,
    run_inhomogeneous,
    snapshot_filename,
    write_convergence_csv,
    write_snapshot,
    write_waterfall_csv,
)
from .exact import eval_solution
from .material import InvalidParameterError, MaterialParams, validate_params
from .riemann import Grid
from .timestepping import BlowUpError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_BLOWUP = 2

_PARAM_FLAGS = ("rho", "i_mu", "gamma", "a_coupling", "b_micro", "c_micro")


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="config file (key = value lines)")
    for name in _PARAM_FLAGS:
        parser.add_argument(f"--{name.replace('_', '-')}", type=float, dest=name)
    parser.add_argument("--grid-n", type=int, dest="grid_n")
    parser.add_argument("--length", type=float)
    parser.add_argument("--t-end", type=float, dest="t_end")
    parser.add_argument("--cfl", type=float)
    parser.add_argument("--bump-height", type=float, dest="bump_height")
    parser.add_argument("--regime", choices=["periodic", "null_inflow", "strain"])
    parser.add_argument(
        "--wave",
        action="append",
        metavar="'FAMILY OMEGA K1 K2 K3 K4'",
        help="exact mode, e.g. 'sincos 2pi 1 1 1 1'; repeatable",
    )
    parser.add_argument(
        "--case",
        choices=["A", "B"],
        help="preset wave set for the standard verification cases",
    )
    parser.add_argument("--snapshot-times", dest="snapshot_times")
    parser.add_argument("--output-dir", dest="output_dir")
    parser.add_argument("--kappa", type=float)
    parser.add_argument("--energy-interval", type=int, dest="energy_interval")
    parser.add_argument(
        "--plot", action="store_true", help="also render figures next to the CSV output"
    )


def _overrides_from_args(args: argparse.Namespace, mode: str | None = None) -> dict:
    keys = (
        *_PARAM_FLAGS,
        "grid_n", "length", "t_end", "cfl", "bump_height", "regime",
        "snapshot_times", "output_dir", "kappa", "energy_interval",
    )
    overrides = {key: getattr(args, key, None) for key in keys}
    overrides = {k: v for k, v in overrides.items() if v is not None}
    waves = list(getattr(args, "wave", None) or [])
    if getattr(args, "case", None):
        waves = waves_for_benchmark(args.case)
    if waves:
        overrides["wave"] = waves
    if mode is not None:
        overrides["mode"] = mode
    if getattr(args, "mode", None):
        overrides["mode"] = args.mode
    return overrides


def _load_config(args: argparse.Namespace, mode: str | None = None) -> SimConfig:
    return parse_config(args.config, _overrides_from_args(args, mode))


def _cmd_validate(args: argparse.Namespace) -> int:
    from .config import DEFAULT_PARAMS, params_from_file

    base = params_from_file(args.config) if args.config is not None else DEFAULT_PARAMS
    flag_values = {name: getattr(args, name) for name in _PARAM_FLAGS}
    params = MaterialParams(**{
        name: flag_values[name] if flag_values[name] is not None else getattr(base, name)
        for name in _PARAM_FLAGS
    })
    violations = validate_params(params)
    if violations:
        print("invalid parameters:")
        for item in violations:
            print(f"  violated: {item}")
        return EXIT_CONFIG
    print("ok")
    return EXIT_OK


def _cmd_exact(args: argparse.Namespace) -> int:
    cfg = _load_config(args, mode="exact")
    sol = build_exact_solution(cfg)
    for mode in sol.modes:
        print(
            f"family={mode.family.value} omega={mode.omega:.17g} "
            f"xi={mode.xi:.17g} eta={mode.eta:.17g}"
        )
    if args.sample_time is not None:
        grid = Grid(cfg.grid_n, cfg.length)
        f = eval_solution(sol, args.sample_time, grid.x)
        out = Path(cfg.output_dir) / f"exact_t{args.sample_time:.6f}.csv"
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w") as fh:
            fh.write("t,x,u,chi,u_t,chi_t,u_x,chi_x\n")
            for j, x in enumerate(grid.x):
                row = (args.sample_time, x, f.u[j], f.chi[j], f.u_t[j], f.chi_t[j], f.u_x[j], f.chi_x[j])
                fh.write(",".join(f"{val:.17g}" for val in row) + "\n")
        print(f"wrote {out}")
    return EXIT_OK


def _write_snapshots(snapshots, cfg: SimConfig, plot: bool) -> None:
    out_dir = Path(cfg.output_dir)
    for snap in snapshots:
        path = write_snapshot(snap, out_dir / snapshot_filename(snap.t))
        print(f"wrote {path}")
    if cfg.kappa != 0.0 and snapshots:
        path = write_waterfall_csv(snapshots, cfg.kappa, out_dir / "waterfall.csv")
        print(f"wrote {path}")
    if plot and snapshots:
        from . import plotting

        for snap in snapshots:
            path = plotting.save_snapshot_figure(
                snap, out_dir / snapshot_filename(snap.t).replace(".csv", ".png")
            )
            print(f"wrote {path}")
        path = plotting.save_waterfall_figure(snapshots, cfg.kappa, out_dir / "waterfall.png")
        print(f"wrote {path}")


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    if cfg.mode is RunKind.EXACT_VERIFY:
        if not cfg.snapshot_times:
            cfg.snapshot_times = [cfg.t_end]
        report, snapshots = run_exact_verification(cfg)
        print(f"N={report.n}  err(u)={report.err_u:.3e}  err(chi)={report.err_chi:.3e}")
        if report.energy_drift is not None:
            print(f"energy drift: {report.energy_drift:.3e}")
    else:
        snapshots = run_inhomogeneous(cfg)
    _write_snapshots(snapshots, cfg, args.plot)
    return EXIT_OK


def _cmd_convergence(args: argparse.Namespace) -> int:
    cfg = _load_config(args, mode="exact")
    n_list = [int(n) for n in args.n_list.replace(",", " ").split()]
    reports = convergence_study(cfg, n_list)
    print(format_convergence_table(reports))
    out_dir = Path(cfg.output_dir)
    path = write_convergence_csv(reports, out_dir / "convergence.csv")
    print(f"wrote {path}")
    if args.plot:
        from . import plotting

        fig_path = plotting.save_convergence_figure(reports, out_dir / "convergence.png")
        print(f"wrote {fig_path}")
    return EXIT_OK


def _cmd_inhomogeneous(args: argparse.Namespace) -> int:
    cfg = _load_config(args, mode="inhomogeneous")
    snapshots = run_inhomogeneous(cfg)
    _write_snapshots(snapshots, cfg, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mindlin1d",
        description="1D microstructured-material wave solver (WENO5 + SSP-RK3)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check material parameters")
    _add_common_flags(p_validate)
    p_validate.set_defaults(func=_cmd_validate)

    p_exact = sub.add_parser("exact", help="temporal frequencies and sampled exact fields")
    _add_common_flags(p_exact)
    p_exact.add_argument("--sample-time", type=float, dest="sample_time")
    p_exact.set_defaults(func=_cmd_exact)

    p_sim = sub.add_parser("simulate", help="single run, snapshots to CSV")
    _add_common_flags(p_sim)
    p_sim.add_argument("--mode", choices=["exact", "inhomogeneous"])
    p_sim.set_defaults(func=_cmd_simulate)

    p_conv = sub.add_parser("convergence", help="grid refinement study")
    _add_common_flags(p_conv)
    p_conv.add_argument(
        "--n-list", dest="n_list", default="128,256,512,1024,2048",
        help="comma-separated grid sizes",
    )
    p_conv.set_defaults(func=_cmd_convergence)

    p_inh = sub.add_parser("inhomogeneous", help="two-material strain-pulse experiment")
    _add_common_flags(p_inh)
    p_inh.set_defaults(func=_cmd_inhomogeneous)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InvalidParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BlowUpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BLOWUP


if __name__ == "__main__":
    sys.exit(main())
