"""Command-line front end.

Subcommands:

    run        execute a single-run config (free / periodic / freeze / reheat)
    sweep      execute a sweep-kind config over a tau grid
    validate   cross-check the two engines and the closed forms against
               each other on randomized configurations
    calibrate  report which angular convention reproduces the reference
               cooling plateau, confirming the shipped default
    figures    emit the canonical figure datasets as CSV bundles

Exit codes: 0 success, 2 config/validation problem (including unwritable
output paths), 3 numeric-health failure during a run.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .analytics import eps_free, eps_measured, eps_quasi_equilibrium
from .core import HZ_AS_RAD, TWO_PI, InconsistentStateError, SystemConfig
from .experiment import FULL, SECTOR, Schedule, run, sweep_tau
from .runspec import (
    ParseError,
    ValidationError,
    emit,
    execute,
    parse_runspec,
)


def _load_spec(args):
    text = Path(args.config).read_text(encoding="utf-8")
    spec = parse_runspec(text)
    if args.engine is not None:
        spec = replace(spec, engine=args.engine)
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
        if spec.gradient is not None:
            spec = replace(spec, gradient=replace(spec.gradient, rng_seed=args.seed))
    if args.out is not None:
        spec = replace(spec, out=args.out)
    if spec.out is None:
        raise ValidationError(["out: no output path (config \"out\" or --out)"])
    return spec


def _cmd_run(args) -> int:
    spec = _load_spec(args)
    if spec.schedule_kind == "sweep":
        raise ValidationError(["schedule.kind: sweep configs go through the sweep subcommand"])
    result = execute(spec, max_workers=args.threads)
    emit(result, spec.out)
    print(f"wrote {spec.out} ({len(result.t)} rows)")
    return 0


def _cmd_sweep(args) -> int:
    spec = _load_spec(args)
    if spec.schedule_kind != "sweep":
        raise ValidationError(["schedule.kind: the sweep subcommand needs a sweep config"])
    result = execute(spec, max_workers=args.threads)
    emit(result, spec.out)
    print(f"wrote {spec.out} ({result.tau.size} tau points)")
    return 0


def _random_cfg(rng, N, coupling):
    return SystemConfig(
        omega_S=float(rng.uniform(50, 800)),
        omega_I=float(rng.uniform(50, 800)),
        J=float(rng.uniform(20, 300)),
        N=N,
        coupling=coupling,
        eps_S0=float(rng.uniform(0, 0.5)),
        eps_I0=float(rng.uniform(0, 0.5)),
    )


def _cmd_validate(args) -> int:
    rng = np.random.default_rng(args.seed if args.seed is not None else 7)
    worst_engines = 0.0
    for N in (1, 2, 3):
        for coupling in ("XX", "RW", "CR"):
            cfg = _random_cfg(rng, N, coupling)
            grid = np.linspace(0.0, 0.02, 9)
            sector = [run(cfg, Schedule.free(float(t)), engine=SECTOR,
                          points_per_segment=1).eps_S[-1] for t in grid]
            full = [run(cfg, Schedule.free(float(t)), engine=FULL,
                        points_per_segment=1).eps_S[-1] for t in grid]
            worst_engines = max(worst_engines, float(np.max(np.abs(np.array(sector) - np.array(full)))))
    print(f"engine cross-check (sector vs full, free evolution): max |d eps_S| = {worst_engines:.3e}")

    worst_free = 0.0
    worst_meas = 0.0
    worst_qe = 0.0
    for N in (1, 2, 3, 4):
        cfg = _random_cfg(rng, N, "RW")
        for t in np.linspace(0.0, 0.03, 7):
            worst_free = max(worst_free, abs(
                eps_free(cfg, float(t))
                - run(cfg, Schedule.free(float(t)), points_per_segment=1).eps_S[-1]))
        tau = float(rng.uniform(2e-4, 2e-3))
        n = int(rng.integers(1, 50))
        traj = run(cfg, Schedule.periodic(tau, n), points_per_segment=1)
        worst_meas = max(worst_meas, abs(eps_measured(cfg, tau, n) - traj.eps_S[-1]))
        long = run(cfg, Schedule.periodic(tau, 3000), points_per_segment=1)
        worst_qe = max(worst_qe, abs(eps_quasi_equilibrium(cfg).rw_any_n - long.eps_S[-1]))
    print(f"closed forms vs engine: free {worst_free:.3e}, measured {worst_meas:.3e}, "
          f"equilibrium {worst_qe:.3e}")

    ok = worst_engines <= 1e-10 and worst_free <= 1e-9 and worst_meas <= 1e-9 and worst_qe <= 1e-6
    print("validate:", "ok" if ok else "MISMATCH")
    return 0 if ok else 3


def _cooling_plateau(convention: str) -> tuple[float, float]:
    """(settle time, final ratio) of the reference exchange-only cooling run."""
    cfg = SystemConfig(omega_S=420.0, omega_I=250.0, J=150.0, N=3, coupling="RW",
                       eps_S0=0.4995, eps_I0=0.498, angular_convention=convention)
    traj = run(cfg, Schedule.periodic(1e-3, 20), points_per_segment=4)
    final = float(traj.pol_ratio[-1])
    settled = np.flatnonzero(traj.pol_ratio >= 0.99 * final)
    return float(traj.t[settled[0]]), final


def _cmd_calibrate(args) -> int:
    print("reference: exchange-only cooling (tau = 1 ms) plateaus near ratio 2.9 by ~8 ms")
    chosen = None
    for conv in (TWO_PI, HZ_AS_RAD):
        t_settle, final = _cooling_plateau(conv)
        print(f"  convention {conv:>10}: final ratio {final:6.3f}, "
              f"settled at {t_settle * 1e3:6.2f} ms")
        if final >= 2.0 and 4e-3 <= t_settle <= 16e-3:
            chosen = conv
    if chosen is None:
        print("calibrate: no convention matches the reference")
        return 3
    print(f"calibrate: {chosen} matches (shipped default: {TWO_PI})")
    return 0


FIG1_SYSTEM = dict(omega_S=420.0, omega_I=250.0, J=150.0, N=3, coupling="XX",
                   eps_S0=0.4995, eps_I0=0.498)
FIG2_SYSTEM = dict(omega_S=3500.0, omega_I=2600.0, J=150.0, N=3, coupling="XX",
                   eps_S0=0.5, eps_I0=0.498)


def canonical_figures(outdir: Path) -> list[Path]:
    """Write the four canonical CSV bundles; returns the paths."""
    from .runspec import emit_csv, emit_sweep_csv

    outdir.mkdir(parents=True, exist_ok=True)
    cfg1 = SystemConfig(**FIG1_SYSTEM)
    cfg2 = SystemConfig(**FIG2_SYSTEM)
    cfg2r = SystemConfig(**{**FIG2_SYSTEM, "omega_S": 3500.0, "omega_I": 3500.0})
    jobs = [
        ("fig1a_free.csv", cfg1, Schedule.free(20e-3)),
        ("fig1a_heating.csv", cfg1, Schedule.periodic(0.2e-3, 100)),
        ("fig1a_cooling.csv", cfg1, Schedule.periodic(1e-3, 20)),
        ("fig1a_freeze.csv", cfg1, Schedule.periodic_then_free(1e-3, 8, 20e-3)),
        ("fig2a_free.csv", cfg2, Schedule.free(40e-3)),
        ("fig2a_tau346.csv", cfg2, Schedule.periodic(0.346e-3, 90)),
        ("fig2a_tau692.csv", cfg2, Schedule.periodic(0.692e-3, 45)),
        ("fig2a_freeze.csv", cfg2, Schedule.periodic_then_free(0.692e-3, 45, 60e-3)),
        ("fig2b_free.csv", cfg2r, Schedule.free(30e-3)),
        ("fig2b_freeze.csv", cfg2r, Schedule.periodic_then_free(1.82e-3, 8, 30e-3)),
    ]
    paths = []
    for name, cfg, schedule in jobs:
        points = 16 if schedule.n_measurements > 20 else 64
        traj = run(cfg, schedule, points_per_segment=points)
        path = outdir / name
        emit_csv(traj, path)
        paths.append(path)
    sweep = sweep_tau(SystemConfig(**FIG1_SYSTEM), 20, np.linspace(0.05e-3, 2.0e-3, 79))
    path = outdir / "fig1b_sweep.csv"
    emit_sweep_csv(sweep, path)
    paths.append(path)
    return paths


def _cmd_figures(args) -> int:
    paths = canonical_figures(Path(args.outdir))
    for p in paths:
        print(f"wrote {p}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="spinsteer", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="JSON run document")
            p.add_argument("--out", default=None, help="output CSV path (overrides config)")
        p.add_argument("--engine", choices=(SECTOR, FULL), default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--threads", type=int, default=None)

    common(sub.add_parser("run", help="execute a single-run config"))
    common(sub.add_parser("sweep", help="execute a tau-sweep config"))
    common(sub.add_parser("validate", help="randomized engine/analytics cross-checks"),
           config=False)
    common(sub.add_parser("calibrate", help="angular-convention calibration report"),
           config=False)
    figs = sub.add_parser("figures", help="emit canonical figure CSV bundles")
    figs.add_argument("--outdir", default="figures")
    common(figs, config=False)

    args = parser.parse_args(argv)
    handler = {"run": _cmd_run, "sweep": _cmd_sweep, "validate": _cmd_validate,
               "calibrate": _cmd_calibrate, "figures": _cmd_figures}[args.command]
    try:
        return handler(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistentStateError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
