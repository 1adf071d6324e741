"""Config-file parsing and bit-exact CSV output.

Config documents are UTF-8 JSON with frequencies in Hz and times in ms.
Parsing is strict: unknown keys are rejected and all validation problems are
reported together, each naming the offending field.  CSV output renders 12
significant digits with LF line endings so identical runs produce identical
bytes.

Schema (defaults in brackets):

    {
      "system":   {"N", "J", "omega_S", "omega_I", "eps_S0" [0], "eps_I0" [0],
                   "coupling" ["XX"], "angular_convention" ["two_pi"]},
      "schedule": {"kind": "free" | "periodic" | "periodic-then-free"
                          | "sweep" | "reheat",
                   "t_stop_ms",              # free, periodic-then-free
                   "tau_ms", "n",            # periodic kinds, sweep (n), reheat (tau)
                   "grid": {"start_ms", "stop_ms", "points"},   # sweep only
                   "n_past_qe"},             # reheat only
      "channel":  {"kind": "ideal" | "s_only" | "gradient",
                   ... gradient fields: "mode", "max_gradient",
                   "sample_length", "tau_m_ms", "gamma_S", "gamma_I",
                   "slices"}                 # [channel ideal]
      "engine":   "sector" | "full"          ["sector"],
      "seed":     integer                    [0],
      "out":      output path                [none]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import ANGULAR_CONVENTIONS, COUPLINGS, TWO_PI, SystemConfig
from .dephasing import GRADIENT_MODES, RANDOM, GradientModel
from .experiment import (
    CHANNELS,
    ENGINES,
    GRADIENT,
    IDEAL,
    SECTOR,
    Schedule,
    SweepResult,
    Trajectory,
    reheating_probe,
    run,
    sweep_tau,
)

TRAJECTORY_HEADER = "t_ms,eps_S,eps_I,pol_S,pol_ratio"
SWEEP_HEADER = "tau_ms,eps_S,eps_I,pol_S,pol_ratio"

SCHEDULE_KINDS = ("free", "periodic", "periodic-then-free", "sweep", "reheat")


class ParseError(ValueError):
    """Malformed document syntax, with line/column position."""

    def __init__(self, message, line, column):
        super().__init__(f"parse error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(ValueError):
    """One or more semantic problems; all of them, not just the first."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid run spec:\n  " + "\n  ".join(self.problems))


@dataclass(frozen=True)
class RunSpec:
    system: SystemConfig
    schedule_kind: str
    tau_ms: float | None = None
    n: int | None = None
    t_stop_ms: float | None = None
    grid_spec: tuple[float, float, int] | None = None  # (start_ms, stop_ms, points)
    n_past_qe: int | None = None
    channel: str = IDEAL
    gradient: GradientModel | None = None
    engine: str = SECTOR
    seed: int = 0
    out: str | None = None


class _Problems:
    def __init__(self):
        self.items = []

    def add(self, path, msg):
        self.items.append(f"{path}: {msg}")

    def raise_if_any(self):
        if self.items:
            raise ValidationError(self.items)


def _reject_unknown(d, allowed, path, problems):
    for key in d:
        if key not in allowed:
            problems.add(f"{path}.{key}" if path else key, "unknown key")


def _number(d, key, path, problems, required=False, default=None, positive=False,
            nonnegative=False):
    if key not in d:
        if required:
            problems.add(f"{path}.{key}", "missing required field")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        problems.add(f"{path}.{key}", f"expected a number, got {v!r}")
        return default
    if positive and not v > 0:
        problems.add(f"{path}.{key}", f"must be > 0, got {v!r}")
        return default
    if nonnegative and v < 0:
        problems.add(f"{path}.{key}", f"must be >= 0, got {v!r}")
        return default
    return float(v)


def _integer(d, key, path, problems, required=False, default=None, minimum=None):
    if key not in d:
        if required:
            problems.add(f"{path}.{key}", "missing required field")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, int):
        problems.add(f"{path}.{key}", f"expected an integer, got {v!r}")
        return default
    if minimum is not None and v < minimum:
        problems.add(f"{path}.{key}", f"must be >= {minimum}, got {v!r}")
        return default
    return v


def _choice(d, key, path, problems, choices, default):
    v = d.get(key, default)
    if v not in choices:
        problems.add(f"{path}.{key}" if path else key,
                     f"must be one of {choices}, got {v!r}")
        return default
    return v


def _parse_system(d, problems) -> SystemConfig | None:
    if not isinstance(d, dict):
        problems.add("system", f"expected an object, got {d!r}")
        return None
    allowed = ("N", "J", "omega_S", "omega_I", "eps_S0", "eps_I0",
               "coupling", "angular_convention")
    _reject_unknown(d, allowed, "system", problems)
    N = _integer(d, "N", "system", problems, required=True, minimum=1)
    J = _number(d, "J", "system", problems, required=True, positive=True)
    omega_S = _number(d, "omega_S", "system", problems, required=True, nonnegative=True)
    omega_I = _number(d, "omega_I", "system", problems, required=True, nonnegative=True)
    eps = {}
    for key in ("eps_S0", "eps_I0"):
        v = _number(d, key, "system", problems, default=0.0)
        if v is not None and not (0.0 <= v <= 1.0):
            problems.add(f"system.{key}", f"must lie in [0, 1], got {v!r}")
            v = 0.0
        eps[key] = v
    coupling = _choice(d, "coupling", "system", problems, COUPLINGS, "XX")
    conv = _choice(d, "angular_convention", "system", problems, ANGULAR_CONVENTIONS, TWO_PI)
    if problems.items:
        return None
    return SystemConfig(omega_S=omega_S, omega_I=omega_I, J=J, N=N, coupling=coupling,
                        eps_S0=eps["eps_S0"], eps_I0=eps["eps_I0"], angular_convention=conv)


_SCHEDULE_FIELDS = {
    "free": {"t_stop_ms"},
    "periodic": {"tau_ms", "n"},
    "periodic-then-free": {"tau_ms", "n", "t_stop_ms"},
    "sweep": {"n", "grid"},
    "reheat": {"tau_ms", "n_past_qe"},
}


def _parse_schedule(d, problems) -> dict:
    out = {"schedule_kind": None, "tau_ms": None, "n": None, "t_stop_ms": None,
           "grid_spec": None, "n_past_qe": None}
    if not isinstance(d, dict):
        problems.add("schedule", f"expected an object, got {d!r}")
        return out
    kind = _choice(d, "kind", "schedule", problems, SCHEDULE_KINDS, None)
    if kind is None:
        return out
    out["schedule_kind"] = kind
    if "t_stop_ms" in d and "grid" in d:
        problems.add("schedule", "t_stop_ms and grid are mutually exclusive")
        return out
    _reject_unknown(d, _SCHEDULE_FIELDS[kind] | {"kind"}, "schedule", problems)
    if kind in ("periodic", "periodic-then-free", "reheat"):
        out["tau_ms"] = _number(d, "tau_ms", "schedule", problems,
                                required=True, positive=True)
    if kind in ("periodic", "periodic-then-free", "sweep"):
        out["n"] = _integer(d, "n", "schedule", problems, required=True, minimum=0)
    if kind in ("free", "periodic-then-free"):
        out["t_stop_ms"] = _number(d, "t_stop_ms", "schedule", problems,
                                   required=True, positive=True)
    if kind == "periodic-then-free" and None not in (out["tau_ms"], out["n"], out["t_stop_ms"]):
        if out["t_stop_ms"] < out["n"] * out["tau_ms"] - 1e-12:
            problems.add("schedule.t_stop_ms",
                         f"ends before the last measurement at n*tau = "
                         f"{out['n'] * out['tau_ms']} ms")
    if kind == "sweep":
        grid = d.get("grid")
        if not isinstance(grid, dict):
            problems.add("schedule.grid", "missing or not an object")
        else:
            _reject_unknown(grid, ("start_ms", "stop_ms", "points"), "schedule.grid", problems)
            start = _number(grid, "start_ms", "schedule.grid", problems,
                            required=True, positive=True)
            stop = _number(grid, "stop_ms", "schedule.grid", problems,
                           required=True, positive=True)
            points = _integer(grid, "points", "schedule.grid", problems,
                              required=True, minimum=1)
            if None not in (start, stop, points):
                if stop <= start and points > 1:
                    problems.add("schedule.grid.stop_ms", "must exceed start_ms")
                else:
                    out["grid_spec"] = (start, stop, points)
    if kind == "reheat":
        out["n_past_qe"] = _integer(d, "n_past_qe", "schedule", problems,
                                    required=True, minimum=0)
    return out


def _parse_channel(d, seed, problems):
    if d is None:
        return IDEAL, None
    if not isinstance(d, dict):
        problems.add("channel", f"expected an object, got {d!r}")
        return IDEAL, None
    kind = _choice(d, "kind", "channel", problems, CHANNELS, IDEAL)
    if kind != GRADIENT:
        _reject_unknown(d, ("kind",), "channel", problems)
        return kind, None
    allowed = ("kind", "mode", "max_gradient", "sample_length", "tau_m_ms",
               "gamma_S", "gamma_I", "slices")
    _reject_unknown(d, allowed, "channel", problems)
    mode = _choice(d, "mode", "channel", problems, GRADIENT_MODES, RANDOM)
    defaults = GradientModel()
    max_gradient = _number(d, "max_gradient", "channel", problems,
                           default=defaults.max_gradient, nonnegative=True)
    sample_length = _number(d, "sample_length", "channel", problems,
                            default=defaults.sample_length, positive=True)
    tau_m_ms = _number(d, "tau_m_ms", "channel", problems,
                       default=defaults.tau_m * 1e3, nonnegative=True)
    gamma_S = _number(d, "gamma_S", "channel", problems,
                      default=defaults.gamma_S, nonnegative=True)
    gamma_I = _number(d, "gamma_I", "channel", problems,
                      default=defaults.gamma_I, nonnegative=True)
    slices = _integer(d, "slices", "channel", problems,
                      default=defaults.slices, minimum=2)
    if problems.items:
        return kind, None
    gm = GradientModel(mode=mode, max_gradient=max_gradient, sample_length=sample_length,
                       tau_m=tau_m_ms * 1e-3, gamma_S=gamma_S, gamma_I=gamma_I,
                       slices=slices, rng_seed=seed)
    return kind, gm


def parse_runspec(text: str) -> RunSpec:
    """Parse and fully validate a JSON run document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    problems = _Problems()
    if not isinstance(doc, dict):
        problems.add("document", "top level must be an object")
        problems.raise_if_any()
    _reject_unknown(doc, ("system", "schedule", "channel", "engine", "seed", "out"),
                    "", problems)
    if "system" not in doc:
        problems.add("system", "missing required section")
    if "schedule" not in doc:
        problems.add("schedule", "missing required section")
    system = _parse_system(doc.get("system", {}), problems) if "system" in doc else None
    sched = _parse_schedule(doc.get("schedule", {}), problems) if "schedule" in doc else \
        {"schedule_kind": None, "tau_ms": None, "n": None, "t_stop_ms": None,
         "grid_spec": None, "n_past_qe": None}
    engine = _choice(doc, "engine", "", problems, ENGINES, SECTOR)
    seed = _integer(doc, "seed", "", problems, default=0, minimum=0) or 0
    out = doc.get("out")
    if out is not None and not isinstance(out, str):
        problems.add("out", f"expected a string path, got {out!r}")
        out = None
    channel, gradient = _parse_channel(doc.get("channel"), seed, problems)
    if channel in ("s_only", GRADIENT) and engine == SECTOR:
        problems.add("engine", f"channel {channel!r} requires engine \"full\"")
    problems.raise_if_any()
    return RunSpec(system=system, channel=channel, gradient=gradient, engine=engine,
                   seed=seed, out=out, **sched)


def serialize_runspec(spec: RunSpec) -> str:
    """Canonical JSON for a RunSpec; parse(serialize(x)) == x."""
    sysd = {
        "N": spec.system.N, "J": spec.system.J,
        "omega_S": spec.system.omega_S, "omega_I": spec.system.omega_I,
        "eps_S0": spec.system.eps_S0, "eps_I0": spec.system.eps_I0,
        "coupling": spec.system.coupling,
        "angular_convention": spec.system.angular_convention,
    }
    sched: dict = {"kind": spec.schedule_kind}
    if spec.tau_ms is not None:
        sched["tau_ms"] = spec.tau_ms
    if spec.n is not None:
        sched["n"] = spec.n
    if spec.t_stop_ms is not None:
        sched["t_stop_ms"] = spec.t_stop_ms
    if spec.grid_spec is not None:
        sched["grid"] = {"start_ms": spec.grid_spec[0], "stop_ms": spec.grid_spec[1],
                         "points": spec.grid_spec[2]}
    if spec.n_past_qe is not None:
        sched["n_past_qe"] = spec.n_past_qe
    doc = {"system": sysd, "schedule": sched, "engine": spec.engine, "seed": spec.seed}
    if spec.channel == GRADIENT:
        g = spec.gradient
        doc["channel"] = {"kind": GRADIENT, "mode": g.mode, "max_gradient": g.max_gradient,
                          "sample_length": g.sample_length, "tau_m_ms": g.tau_m * 1e3,
                          "gamma_S": g.gamma_S, "gamma_I": g.gamma_I, "slices": g.slices}
    else:
        doc["channel"] = {"kind": spec.channel}
    if spec.out is not None:
        doc["out"] = spec.out
    return json.dumps(doc, indent=2) + "\n"


def build_schedule(spec: RunSpec) -> Schedule:
    """Materialize the schedule descriptor (not valid for sweep kind)."""
    kind = spec.schedule_kind
    if kind == "free":
        return Schedule.free(spec.t_stop_ms * 1e-3)
    if kind == "periodic":
        return Schedule.periodic(spec.tau_ms * 1e-3, spec.n)
    if kind == "periodic-then-free":
        return Schedule.periodic_then_free(spec.tau_ms * 1e-3, spec.n, spec.t_stop_ms * 1e-3)
    raise ValueError(f"schedule kind {kind!r} has no single-run schedule")


def sweep_grid(spec: RunSpec) -> np.ndarray:
    """Tau grid in seconds for a sweep-kind spec."""
    start, stop, points = spec.grid_spec
    return np.linspace(start, stop, points) * 1e-3


def execute(spec: RunSpec, max_workers: int | None = None,
            points_per_segment: int = 64) -> Trajectory | SweepResult:
    """Run whatever the spec describes."""
    if spec.schedule_kind == "sweep":
        return sweep_tau(spec.system, spec.n, sweep_grid(spec), engine=spec.engine,
                         channel=spec.channel, gradient=spec.gradient,
                         max_workers=max_workers)
    if spec.schedule_kind == "reheat":
        return reheating_probe(spec.system, spec.tau_ms * 1e-3, spec.n_past_qe,
                               engine=spec.engine, channel=spec.channel)
    return run(spec.system, build_schedule(spec), engine=spec.engine,
               channel=spec.channel, gradient=spec.gradient,
               points_per_segment=points_per_segment)


def _format_row(values) -> str:
    return ",".join("%.12g" % v for v in values)


def emit_csv(traj: Trajectory, path) -> None:
    """Trajectory CSV: header + one row per sample, 12 significant digits, LF."""
    if len(traj) == 0:
        raise ValueError("refusing to emit an empty trajectory")
    lines = [TRAJECTORY_HEADER]
    pol_s = traj.pol_S
    ratio = traj.pol_ratio
    for i in range(len(traj)):
        lines.append(_format_row((traj.t[i] * 1e3, traj.eps_S[i], traj.eps_I[i],
                                  pol_s[i], ratio[i])))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_sweep_csv(sweep: SweepResult, path) -> None:
    """Sweep CSV: same column convention with tau_ms as the abscissa."""
    lines = [SWEEP_HEADER]
    pol_s = sweep.pol_S
    ratio = sweep.pol_ratio
    for i in range(sweep.tau.size):
        lines.append(_format_row((sweep.tau[i] * 1e3, sweep.eps_S[i], sweep.eps_I[i],
                                  pol_s[i], ratio[i])))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit(result: Trajectory | SweepResult, path) -> None:
    if isinstance(result, SweepResult):
        emit_sweep_csv(result, path)
    else:
        emit_csv(result, path)
