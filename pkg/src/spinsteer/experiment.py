"""Schedules, trajectory generation and parameter sweeps.

A Schedule is an ordered list of free-evolution segments and dephasing
events.  run() executes it on either engine: SECTOR propagates the weighted
total-spin blocks (fast, exact for every coupling variant), FULL propagates
the dense product-space matrix (the oracle, and the only engine on which the
bath-coherence-preserving and gradient channels are defined).

Time is in seconds here; the CSV/config layer converts to ms at the boundary.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import dephasing
from .analytics import block_recursion
from .core import (
    FullState,
    SectorState,
    SystemConfig,
    bath_sectors,
    bath_population,
    initial_full_state,
    initial_sector_ensemble,
    polarization,
    qubit_population,
)
from .dephasing import FIXED, GradientEnsemble, GradientModel, dephase_gradient, dephase_s_only
from .hamiltonians import FULL, Propagator, build_hamiltonian, sector_spectra

SECTOR = "sector"
ENGINES = (SECTOR, FULL)

IDEAL = "ideal"
S_ONLY = "s_only"
GRADIENT = "gradient"
CHANNELS = (IDEAL, S_ONLY, GRADIENT)


@dataclass(frozen=True)
class Evolve:
    duration: float  # seconds

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError(f"segment duration must be >= 0, got {self.duration!r}")


@dataclass(frozen=True)
class Dephase:
    pass


@dataclass(frozen=True)
class Schedule:
    segments: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        for seg in self.segments:
            if not isinstance(seg, (Evolve, Dephase)):
                raise ValueError(f"unknown segment {seg!r}")

    @classmethod
    def free(cls, duration: float) -> "Schedule":
        return cls(segments=(Evolve(duration),))

    @classmethod
    def periodic(cls, tau: float, n: int) -> "Schedule":
        """n cycles of evolve(tau) followed by a dephasing event."""
        if n < 0:
            raise ValueError(f"measurement count must be >= 0, got {n!r}")
        if n > 0 and tau <= 0:
            raise ValueError(f"tau must be > 0, got {tau!r}")
        return cls(segments=(Evolve(tau), Dephase()) * n)

    @classmethod
    def periodic_then_free(cls, tau: float, n: int, t_stop: float) -> "Schedule":
        """Measure until n*tau, then evolve freely until t_stop."""
        base = cls.periodic(tau, n)
        t_meas = n * tau
        if t_stop < t_meas - 1e-12:
            raise ValueError(f"t_stop={t_stop} ends before the last measurement at {t_meas}")
        tail = max(t_stop - t_meas, 0.0)
        if tail > 0:
            return cls(segments=base.segments + (Evolve(tail),))
        return base

    @property
    def total_time(self) -> float:
        return sum(s.duration for s in self.segments if isinstance(s, Evolve))

    @property
    def n_measurements(self) -> int:
        return sum(1 for s in self.segments if isinstance(s, Dephase))

    @property
    def tau(self) -> float | None:
        """The measurement interval, when every dephase follows an equal evolve."""
        taus = set()
        for prev, seg in zip(self.segments, self.segments[1:]):
            if isinstance(seg, Dephase):
                if not isinstance(prev, Evolve):
                    return None
                taus.add(prev.duration)
        if len(taus) == 1:
            return taus.pop()
        return None


def _pol_denominator(eps_S0: float, eps_I0: float) -> float:
    # ratios are taken against the qubit's initial polarization; an erased
    # qubit (eps_S0 = 1/2) is normalized by the bath instead
    p0 = polarization(eps_S0)
    if abs(p0) > 1e-12:
        return p0
    p0 = polarization(eps_I0)
    if abs(p0) > 1e-12:
        return p0
    return 1.0


@dataclass(frozen=True)
class Trajectory:
    """Sampled time series of the qubit/bath populations.

    t is in seconds and strictly increasing.  pol_ratio divides the qubit
    polarization by its initial value, or by the bath's when the qubit
    starts erased.
    """

    t: np.ndarray
    eps_S: np.ndarray
    eps_I: np.ndarray
    pol_denominator: float

    @property
    def pol_S(self) -> np.ndarray:
        return 1.0 - 2.0 * self.eps_S

    @property
    def pol_ratio(self) -> np.ndarray:
        return self.pol_S / self.pol_denominator

    def __len__(self) -> int:
        return self.t.size

    def validate(self, pop_tol: float = 1e-9) -> None:
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("trajectory times must be strictly increasing")
        for name, arr in (("eps_S", self.eps_S), ("eps_I", self.eps_I)):
            if np.any(arr < -pop_tol) or np.any(arr > 1 + pop_tol):
                raise ValueError(f"{name} leaves [0, 1] beyond {pop_tol}")


class _SectorDriver:
    def __init__(self, cfg: SystemConfig):
        self.states = initial_sector_ensemble(cfg)
        conv = cfg.angular_convention
        self.props = {st.label.two_I: Propagator(build_hamiltonian(cfg, st.label), conv)
                      for st in self.states}

    def sample(self, offset: float):
        return [SectorState(label=st.label, rho=self.props[st.label.two_I].apply(st.rho, offset))
                for st in self.states]

    def advance(self, duration: float) -> None:
        self.states = self.sample(duration)

    def dephase(self, channel: str, gradient, step_index: int) -> None:
        self.states = dephasing.dephase_ideal(self.states)

    def current(self):
        return self.states

    def validate_final(self) -> None:
        for st in self.states:
            st.validate()


class _FullDriver:
    def __init__(self, cfg: SystemConfig):
        self.state = initial_full_state(cfg)
        self.prop = Propagator(build_hamiltonian(cfg, FULL), cfg.angular_convention)

    def sample(self, offset: float):
        return FullState(rho=self.prop.apply(self.state.rho, offset))

    def advance(self, duration: float) -> None:
        self.state = self.sample(duration)

    def dephase(self, channel: str, gradient, step_index: int) -> None:
        if channel == IDEAL:
            self.state = dephasing.dephase_ideal(self.state)
        elif channel == S_ONLY:
            self.state = dephase_s_only(self.state)
        else:
            self.state = dephase_gradient(self.state, gradient, step_index)

    def current(self):
        return self.state

    def validate_final(self) -> None:
        self.state.validate()


class _FixedGradientDriver:
    """Full engine with per-slice phase histories (fixed-gradient semantics).

    Evolution is linear, so mid-segment readouts may evolve the slice
    average; only dephasing acts slice by slice.
    """

    def __init__(self, cfg: SystemConfig, gradient: GradientModel):
        self.prop = Propagator(build_hamiltonian(cfg, FULL), cfg.angular_convention)
        self.ensemble = GradientEnsemble(initial_full_state(cfg), gradient)

    def sample(self, offset: float):
        return FullState(rho=self.prop.apply(self.ensemble.state().rho, offset))

    def advance(self, duration: float) -> None:
        self.ensemble.evolve(self.prop.unitary(duration))

    def dephase(self, channel: str, gradient, step_index: int) -> None:
        self.ensemble.dephase(step_index)

    def current(self):
        return self.ensemble.state()

    def validate_final(self) -> None:
        self.ensemble.state().validate()


def _make_driver(cfg, engine, channel, gradient):
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    if channel not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}, got {channel!r}")
    if channel == GRADIENT and gradient is None:
        raise ValueError("gradient channel needs a GradientModel")
    if engine == SECTOR and channel != IDEAL:
        raise ValueError(f"channel {channel!r} requires the full engine: bath/gradient "
                         "coherence structure is not representable per sector")
    if engine == SECTOR:
        return _SectorDriver(cfg)
    if channel == GRADIENT and gradient.mode == FIXED:
        return _FixedGradientDriver(cfg, gradient)
    return _FullDriver(cfg)


def run(cfg: SystemConfig, schedule: Schedule, engine: str = SECTOR,
        channel: str = IDEAL, gradient: GradientModel | None = None,
        points_per_segment: int = 64) -> Trajectory:
    """Execute a schedule and return the sampled trajectory.

    Each evolve segment contributes `points_per_segment` boundary-inclusive
    sample points; dephasing events take no time and add no rows (they leave
    populations untouched).  Deterministic for fixed inputs and seed.
    """
    if points_per_segment < 1:
        raise ValueError(f"points_per_segment must be >= 1, got {points_per_segment!r}")
    driver = _make_driver(cfg, engine, channel, gradient)

    times, eps_s, eps_i = [], [], []

    def record(t, state):
        times.append(t)
        eps_s.append(qubit_population(state))
        eps_i.append(bath_population(state))

    record(0.0, driver.current())
    t_now = 0.0
    step_index = 0
    for seg in schedule.segments:
        if isinstance(seg, Dephase):
            driver.dephase(channel, gradient, step_index)
            step_index += 1
            continue
        if seg.duration == 0.0:
            continue
        offsets = np.linspace(0.0, seg.duration, points_per_segment + 1)[1:]
        for off in offsets[:-1]:
            record(t_now + float(off), driver.sample(float(off)))
        driver.advance(seg.duration)
        t_now += seg.duration
        record(t_now, driver.current())

    driver.validate_final()
    traj = Trajectory(
        t=np.asarray(times),
        eps_S=np.asarray(eps_s),
        eps_I=np.asarray(eps_i),
        pol_denominator=_pol_denominator(cfg.eps_S0, cfg.eps_I0),
    )
    traj.validate()
    return traj


@dataclass(frozen=True)
class SweepResult:
    """Final-state populations of independent periodic runs over a tau grid."""

    tau: np.ndarray
    eps_S: np.ndarray
    eps_I: np.ndarray
    pol_denominator: float

    @property
    def pol_S(self) -> np.ndarray:
        return 1.0 - 2.0 * self.eps_S

    @property
    def pol_ratio(self) -> np.ndarray:
        return self.pol_S / self.pol_denominator


def sweep_tau(cfg: SystemConfig, n: int, tau_grid, engine: str = SECTOR,
              channel: str = IDEAL, gradient: GradientModel | None = None,
              max_workers: int | None = None) -> SweepResult:
    """eps_S(n*tau) for each tau in the grid; each point is an independent run."""
    taus = np.asarray(tau_grid, dtype=float)
    if taus.size == 0:
        raise ValueError("tau grid must be nonempty")

    def point(tau):
        traj = run(cfg, Schedule.periodic(float(tau), n), engine=engine,
                   channel=channel, gradient=gradient, points_per_segment=1)
        return traj.eps_S[-1], traj.eps_I[-1]

    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            pairs = list(pool.map(point, taus))
    else:
        pairs = [point(t) for t in taus]
    eps_s = np.array([p[0] for p in pairs])
    eps_i = np.array([p[1] for p in pairs])
    return SweepResult(tau=taus, eps_S=eps_s, eps_I=eps_i,
                       pol_denominator=_pol_denominator(cfg.eps_S0, cfg.eps_I0))


def steps_to_plateau(cfg: SystemConfig, tau: float, residual: float = 1e-3,
                     cap: int = 10000) -> int:
    """Measurement count after which every block has contracted below `residual`."""
    worst = 0.0
    any_active = False
    for label in bath_sectors(cfg.N):
        for spec in sector_spectra(cfg, label):
            rec = block_recursion(spec, tau, cfg.angular)
            if rec.f2 > 1e-12:
                any_active = True
                worst = max(worst, abs(rec.f1))
    if not any_active or worst >= 1.0:
        return cap if any_active else 1
    if worst == 0.0:
        return 1
    return min(cap, max(1, math.ceil(math.log(residual) / math.log(worst))))


def reheating_probe(cfg: SystemConfig, tau: float, n_past_qe: int,
                    engine: str = SECTOR, channel: str = IDEAL,
                    points_per_segment: int = 8) -> Trajectory:
    """Measure up to the quasi-equilibrium plateau, then keep measuring.

    With flip-flip terms present the continued measurements depolarize the
    plateau again; with flip-flop coupling only, the plateau holds flat
    (the equilibrated blocks commute with the measurement), which is the
    discriminating control.
    """
    if n_past_qe < 0:
        raise ValueError(f"n_past_qe must be >= 0, got {n_past_qe!r}")
    n_total = steps_to_plateau(cfg, tau) + n_past_qe
    schedule = Schedule.periodic(tau, n_total)
    return run(cfg, schedule, engine=engine, channel=channel,
               points_per_segment=points_per_segment)
