"""Domain types and state construction for a central spin-1/2 coupled to N identical bath spins.

Conventions used throughout the package:

* "excited" means the higher-energy Zeeman state and eps denotes its
  population, so the polarization of a spin is P = 1 - 2*eps.
* S^z is signed so that the *ground* state has <S^z> = +1/2.  The excited
  state is therefore spin-down, and a bath with excited population eps_I
  has magnetization <Sum_k I_k^z> = N*(1/2 - eps_I).
* Frequencies (omega_S, omega_I, J) are quoted in Hz.  Whether a factor of
  2*pi enters the propagator is controlled by ``angular_convention``; the
  default TWO_PI uses U = exp(-i * 2pi * H * t) with t in seconds.

The bath decomposes into total-spin sectors I = N/2, N/2-1, ... each carrying
an integer multiplicity weight lambda_I.  Identical thermal bath spins are
diagonal in any basis that diagonalizes Sum_k I_k^z, with a weight that
depends only on the total magnetization, so the initial state block-splits
exactly over (sector, copy) and every copy of a sector evolves identically.
A sector ensemble of weighted 2(2I+1)-dimensional blocks is therefore a
faithful (and exponentially smaller) representation of the full product-space
density matrix for every coupling variant implemented here.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

TWO_PI = "two_pi"
HZ_AS_RAD = "hz_as_rad"
ANGULAR_CONVENTIONS = (TWO_PI, HZ_AS_RAD)

COUPLINGS = ("XX", "RW", "CR", "ISO")

# Full product-space construction is capped here; sector ensembles carry on.
FULL_SPACE_MAX_N = 16

# lambda_I switches from exact integer arithmetic to log-gamma above this.
EXACT_LAMBDA_MAX_N = 20


class InconsistentStateError(RuntimeError):
    """A density matrix drifted past its numerical health tolerances."""


def angular_factor(convention: str) -> float:
    """Radians per (Hz * s) under the given convention."""
    if convention == TWO_PI:
        return 2.0 * math.pi
    if convention == HZ_AS_RAD:
        return 1.0
    raise ValueError(f"unknown angular convention {convention!r}")


@dataclass(frozen=True)
class SystemConfig:
    """Physical parameters of one central-spin problem.

    omega_S, omega_I and J are in Hz, N is the bath size, coupling picks the
    interaction variant (XX = flip-flop plus flip-flip, RW = flip-flop only,
    CR = flip-flip only, ISO = planar xy form of the flip-flop terms), and
    eps_S0/eps_I0 are the initial excited-state populations.
    """

    omega_S: float
    omega_I: float
    J: float
    N: int
    coupling: str = "XX"
    eps_S0: float = 0.0
    eps_I0: float = 0.0
    angular_convention: str = TWO_PI

    def __post_init__(self):
        problems = []
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 1):
            problems.append(f"N must be a positive integer, got {self.N!r}")
        if not self.J > 0:
            problems.append(f"J must be > 0, got {self.J!r}")
        if not self.omega_S >= 0:
            problems.append(f"omega_S must be >= 0, got {self.omega_S!r}")
        if not self.omega_I >= 0:
            problems.append(f"omega_I must be >= 0, got {self.omega_I!r}")
        if self.coupling not in COUPLINGS:
            problems.append(f"coupling must be one of {COUPLINGS}, got {self.coupling!r}")
        for name, val in (("eps_S0", self.eps_S0), ("eps_I0", self.eps_I0)):
            if not (0.0 <= val <= 1.0):
                problems.append(f"{name} must lie in [0, 1], got {val!r}")
        if self.angular_convention not in ANGULAR_CONVENTIONS:
            problems.append(
                f"angular_convention must be one of {ANGULAR_CONVENTIONS}, "
                f"got {self.angular_convention!r}"
            )
        if problems:
            raise ValueError("invalid SystemConfig: " + "; ".join(problems))
        for name, val in (("eps_S0", self.eps_S0), ("eps_I0", self.eps_I0)):
            if 0.0 <= val <= 1.0 and not (0.0 <= val <= 0.5):
                # Thermal states live in [0, 1/2]; population inversion is
                # admitted but worth flagging.
                warnings.warn(f"{name}={val} is outside the thermal range [0, 1/2]")

    @property
    def angular(self) -> float:
        return angular_factor(self.angular_convention)


@dataclass(frozen=True)
class SectorLabel:
    """One total-bath-spin sector: I stored as the integer 2I, plus its weight."""

    two_I: int
    lambda_I: float

    @property
    def I(self) -> float:
        return self.two_I / 2.0

    @property
    def dim(self) -> int:
        """Bath dimension 2I+1 of this sector."""
        return self.two_I + 1


def _lambda_exact(N: int, two_I: int) -> int:
    a = (N + two_I) // 2
    b = (N - two_I) // 2
    num = math.factorial(N) * (two_I + 1)
    den = math.factorial(a) * math.factorial(b) * (a + 1)
    assert num % den == 0, "sector weight must be an integer"
    return num // den


def _lambda_log(N: int, two_I: int) -> float:
    a = (N + two_I) // 2
    b = (N - two_I) // 2
    log_lam = (
        math.lgamma(N + 1)
        - math.lgamma(a + 1)
        - math.lgamma(b + 1)
        + math.log(two_I + 1)
        - math.log(a + 1)
    )
    return math.exp(log_lam)


def bath_sectors(N: int) -> list[SectorLabel]:
    """All total-spin sectors of N spin-1/2 particles, largest I first.

    The weight lambda_I is the number of times sector I appears in the
    product space; Sum_I lambda_I * (2I+1) = 2^N.  Weights are exact
    integers up to N = 20 and log-gamma floats beyond (relative error
    below 1e-9 there).
    """
    if not (isinstance(N, (int, np.integer)) and N >= 1):
        raise ValueError(f"N must be a positive integer, got {N!r}")
    out = []
    for two_I in range(N, -1, -2):
        if N <= EXACT_LAMBDA_MAX_N:
            lam = float(_lambda_exact(N, two_I))
        else:
            lam = _lambda_log(N, two_I)
        out.append(SectorLabel(two_I=two_I, lambda_I=lam))
    return out


def sector_m_values(two_I: int) -> np.ndarray:
    """M_I values of one sector, descending from +I to -I."""
    return (two_I - 2 * np.arange(two_I + 1)) / 2.0


def _freeze(rho: np.ndarray) -> np.ndarray:
    rho = np.ascontiguousarray(rho, dtype=complex)
    rho.setflags(write=False)
    return rho


@dataclass(frozen=True)
class SectorState:
    """Density-matrix block of one sector, scaled by the sector weight.

    Basis: |s, M_I> ordered lexicographically with s = +1/2 (ground) before
    s = -1/2 (excited) and M_I descending within each s, so rho has dimension
    2*(2I+1).  trace(rho) is the probability weight of the sector; the traces
    of a full sector ensemble sum to 1.
    """

    label: SectorLabel
    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rho", _freeze(self.rho))
        d = 2 * self.label.dim
        if self.rho.shape != (d, d):
            raise ValueError(
                f"sector 2I={self.label.two_I} needs a {d}x{d} matrix, "
                f"got {self.rho.shape}"
            )

    def validate(self, psd_tol: float = 1e-10, herm_tol: float = 1e-12) -> None:
        _check_health(self.rho, f"sector 2I={self.label.two_I}", psd_tol, herm_tol)


@dataclass(frozen=True)
class FullState:
    """Dense density matrix on the qubit (x) bath product z-basis.

    The qubit occupies the most significant bit; bath spin k occupies bit
    N-k.  Bit value 0 is the ground (spin-up) state.  A bare qubit with no
    bath (dimension 2) is allowed so single-spin channel testbeds can reuse
    the same type.
    """

    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rho", _freeze(self.rho))
        dim = self.rho.shape[0]
        if self.rho.ndim != 2 or self.rho.shape[0] != self.rho.shape[1]:
            raise ValueError(f"density matrix must be square, got {self.rho.shape}")
        if dim < 2 or dim & (dim - 1):
            raise ValueError(f"dimension must be a power of two >= 2, got {dim}")

    @property
    def n_bath(self) -> int:
        return self.rho.shape[0].bit_length() - 2

    def validate(self, psd_tol: float = 1e-10, herm_tol: float = 1e-12) -> None:
        _check_health(self.rho, "full state", psd_tol, herm_tol)
        tr = float(np.real(np.trace(self.rho)))
        if abs(tr - 1.0) > 1e-12:
            raise InconsistentStateError(f"full state trace {tr} deviates from 1")


SectorEnsemble = list[SectorState]
State = SectorEnsemble | FullState


def _check_health(rho, what, psd_tol, herm_tol):
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise InconsistentStateError(f"{what}: hermiticity deviation {herm:.3e}")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -psd_tol:
        raise InconsistentStateError(f"{what}: negative eigenvalue {evals.min():.3e}")


def _bath_weights(N: int, eps_I0: float, m_values: np.ndarray) -> np.ndarray:
    # excited = spin-down: weight eps^(number excited) * (1-eps)^(number ground)
    return eps_I0 ** (N / 2.0 - m_values) * (1.0 - eps_I0) ** (N / 2.0 + m_values)


def initial_sector_state(cfg: SystemConfig, label: SectorLabel) -> SectorState:
    """Product thermal state restricted to one sector (diagonal, weight-scaled)."""
    if label.two_I > cfg.N or (cfg.N - label.two_I) % 2 != 0 or label.two_I < 0:
        raise ValueError(f"sector 2I={label.two_I} does not belong to a bath of N={cfg.N}")
    w = _bath_weights(cfg.N, cfg.eps_I0, sector_m_values(label.two_I))
    diag = np.concatenate([(1.0 - cfg.eps_S0) * w, cfg.eps_S0 * w]) * label.lambda_I
    return SectorState(label=label, rho=np.diag(diag).astype(complex))


def initial_sector_ensemble(cfg: SystemConfig) -> SectorEnsemble:
    return [initial_sector_state(cfg, lab) for lab in bath_sectors(cfg.N)]


def initial_full_state(cfg: SystemConfig) -> FullState:
    """Same product thermal state as a dense 2^(N+1) matrix (oracle engine)."""
    if cfg.N > FULL_SPACE_MAX_N:
        raise ValueError(f"full-space construction capped at N={FULL_SPACE_MAX_N}")
    qubit = np.array([1.0 - cfg.eps_S0, cfg.eps_S0])
    bath = np.array([1.0 - cfg.eps_I0, cfg.eps_I0])
    diag = qubit
    for _ in range(cfg.N):
        diag = np.kron(diag, bath)
    return FullState(rho=np.diag(diag).astype(complex))


def initial_state(cfg: SystemConfig, engine: str = "sector") -> State:
    if engine == "sector":
        return initial_sector_ensemble(cfg)
    if engine == "full":
        return initial_full_state(cfg)
    raise ValueError(f"engine must be 'sector' or 'full', got {engine!r}")


def full_sz_values(dim: int) -> np.ndarray:
    """S^z of the qubit for each product basis state (+1/2 ground, -1/2 excited)."""
    idx = np.arange(dim)
    return 0.5 - (idx >= dim // 2).astype(float)


def full_mz_values(dim: int) -> np.ndarray:
    """Total bath magnetization Sum_k I_k^z for each product basis state."""
    idx = np.arange(dim)
    n_bath = dim.bit_length() - 2
    m = np.zeros(dim)
    for k in range(n_bath):
        bit = (idx >> k) & 1
        m += 0.5 - bit  # bit 0 = ground = +1/2
    return m


def _ensemble_diag_moments(states: SectorEnsemble):
    trace = 0.0
    excited = 0.0
    mz = 0.0
    for st in states:
        d = st.label.dim
        diag = np.real(np.diag(st.rho))
        trace += diag.sum()
        excited += diag[d:].sum()
        m = sector_m_values(st.label.two_I)
        mz += float(diag[:d] @ m + diag[d:] @ m)
    return trace, excited, mz


def qubit_population(state: State) -> float:
    """Excited-state population eps_S of the central spin."""
    if isinstance(state, FullState):
        diag = np.real(np.diag(state.rho))
        trace = diag.sum()
        excited = diag[diag.size // 2:].sum()
    else:
        trace, excited, _ = _ensemble_diag_moments(state)
    if abs(trace - 1.0) > 1e-8:
        raise InconsistentStateError(f"state trace {trace} deviates from 1 beyond 1e-8")
    return float(excited)


def bath_population(state: State) -> float:
    """Mean excited-state population eps_I of the bath spins."""
    if isinstance(state, FullState):
        diag = np.real(np.diag(state.rho))
        trace = diag.sum()
        n_bath = state.n_bath
        if n_bath == 0:
            raise ValueError("state has no bath spins")
        mz = float(diag @ full_mz_values(diag.size))
        N = n_bath
    else:
        trace, _, mz = _ensemble_diag_moments(state)
        N = _ensemble_bath_size(state)
    if abs(trace - 1.0) > 1e-8:
        raise InconsistentStateError(f"state trace {trace} deviates from 1 beyond 1e-8")
    return float((N / 2.0 - mz) / N)


def _ensemble_bath_size(states: SectorEnsemble) -> int:
    if not states:
        raise ValueError("empty sector ensemble")
    return max(st.label.two_I for st in states)


def polarization(eps: float) -> float:
    return 1.0 - 2.0 * eps
