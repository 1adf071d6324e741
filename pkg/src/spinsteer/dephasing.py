"""Measurement-simulation channels: ideal pinch, S-only pinch, gradient ensembles.

All channels leave z-basis populations untouched; they differ in which
coherences survive.  The ideal channel zeroes every off-diagonal element of
the state's own representation.  The S-only channel, defined on the product
space, keeps coherences inside each fixed (S^z, total bath M_I) block, the
so-called zero-quantum coherences of chemically equivalent bath spins.  The
gradient channel models the physical implementation: a field gradient along
the sample winds a position-dependent phase, and the detected state is the
average over sample slices.

A fixed gradient repeated every step does *not* simulate projective
measurements: each slice keeps a coherent phase history and refocusing terms
survive the average.  ``GradientEnsemble`` keeps those per-slice histories so
the fixed-mode residual is reproduced faithfully.  Re-drawing a random
gradient each step destroys the correlations, which is what
``dephase_gradient`` applies as a single ensemble-averaged channel per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FullState, SectorState, full_mz_values, full_sz_values

RANDOM = "random"
FIXED = "fixed"
GRADIENT_MODES = (RANDOM, FIXED)

# 13C central spin, 1H bath; Hz per gauss
DEFAULT_GAMMA_S = 1070.8
DEFAULT_GAMMA_I = 4257.7


def dephase_ideal(state):
    """Zero all off-diagonal elements of the state in its own basis.

    Diagonal entries are copied bitwise; the map is idempotent.  On a sector
    ensemble member this is the measurement assumed by the closed-form
    recursions; on a full product state it pinches in the product z-basis.
    """
    if isinstance(state, SectorState):
        return SectorState(label=state.label, rho=np.diag(np.diag(state.rho)))
    if isinstance(state, FullState):
        return FullState(rho=np.diag(np.diag(state.rho)))
    return [dephase_ideal(s) for s in state]


def dephase_s_only(state: FullState) -> FullState:
    """Dephase the qubit only: erase everything except fixed-(S^z, M_I) blocks.

    Bath coherences between product states of equal total magnetization
    survive (gradient fields cannot distinguish equivalent spins).  Input
    must be a full product-space state; the distinction is invisible in a
    sector block.
    """
    if not isinstance(state, FullState):
        raise TypeError("dephase_s_only needs a FullState; sector blocks are an "
                        "unsupported representation for this channel")
    dim = state.rho.shape[0]
    sz = full_sz_values(dim)
    mz = full_mz_values(dim)
    keep = (sz[:, None] == sz[None, :]) & (mz[:, None] == mz[None, :])
    return FullState(rho=np.where(keep, state.rho, 0.0))


@dataclass(frozen=True)
class GradientModel:
    """Parameters of the gradient-pulse measurement simulation.

    max_gradient is the |dB_z/dz| bound in G/cm, sample_length the sample
    extent h in cm, tau_m the gradient duration in seconds, gamma_S/gamma_I
    the gyromagnetic ratios in Hz/G, slices the number of z-positions in the
    ensemble average.  RANDOM mode draws a fresh gradient uniformly from
    [-max, +max] every step; FIXED mode reuses the step-0 draw forever.
    The uniform draw distribution is an assumption, not a measured fact.
    """

    mode: str = RANDOM
    max_gradient: float = 30.0
    sample_length: float = 1.0
    tau_m: float = 100e-6
    gamma_S: float = DEFAULT_GAMMA_S
    gamma_I: float = DEFAULT_GAMMA_I
    slices: int = 256
    rng_seed: int = 0

    def __post_init__(self):
        problems = []
        if self.mode not in GRADIENT_MODES:
            problems.append(f"mode must be one of {GRADIENT_MODES}, got {self.mode!r}")
        if not (isinstance(self.slices, (int, np.integer)) and self.slices >= 2):
            problems.append(f"slices must be an integer >= 2, got {self.slices!r}")
        if self.max_gradient < 0:
            problems.append(f"max_gradient must be >= 0, got {self.max_gradient!r}")
        if not self.sample_length > 0:
            problems.append(f"sample_length must be > 0, got {self.sample_length!r}")
        if self.tau_m < 0:
            problems.append(f"tau_m must be >= 0, got {self.tau_m!r}")
        if self.gamma_S < 0 or self.gamma_I < 0:
            problems.append("gyromagnetic ratios must be >= 0")
        if problems:
            raise ValueError("invalid GradientModel: " + "; ".join(problems))

    @property
    def phase_span(self) -> float:
        """Qubit phase spread across the sample at full gradient, in radians."""
        return 2.0 * math.pi * self.gamma_S * self.max_gradient * self.sample_length * self.tau_m

    @property
    def weak_dephasing(self) -> bool:
        """True when the phase spread is under 5 cycles; averages dephase poorly."""
        return self.phase_span < 5.0 * 2.0 * math.pi


def slice_positions(model: GradientModel) -> np.ndarray:
    """Deterministic stratified z-positions: midpoints of `slices` equal bins."""
    M = model.slices
    h = model.sample_length
    return -h / 2.0 + (np.arange(M) + 0.5) * h / M


def gradient_draw(model: GradientModel, step_index: int) -> float:
    """The gradient strength (G/cm) used at one step; pure in (seed, step)."""
    if step_index < 0:
        raise ValueError(f"step_index must be >= 0, got {step_index!r}")
    step = 0 if model.mode == FIXED else int(step_index)
    rng = np.random.default_rng((model.rng_seed, step))
    return float(rng.uniform(-model.max_gradient, model.max_gradient))


def _pairwise_sum(make, lo: int, hi: int):
    # balanced binary tree so the result is independent of chunking choices
    if hi - lo == 1:
        return make(lo)
    mid = (lo + hi) // 2
    return _pairwise_sum(make, lo, mid) + _pairwise_sum(make, mid, hi)


def pairwise_mean(make, count: int):
    """Mean of make(0..count-1) summed over a fixed balanced tree."""
    if count < 1:
        raise ValueError("need at least one term")
    return _pairwise_sum(make, 0, count) / count


def _phase_rates(model: GradientModel, dim: int) -> np.ndarray:
    """Phase accumulated per (G/cm * cm of z) for each product basis state."""
    sz = full_sz_values(dim)
    mz = full_mz_values(dim)
    return 2.0 * math.pi * model.tau_m * (model.gamma_S * sz + model.gamma_I * mz)


def _slice_phases(model: GradientModel, dB: float, dim: int) -> np.ndarray:
    """(slices, dim) array of z-rotation angles for one gradient strength."""
    return np.outer(dB * slice_positions(model), _phase_rates(model, dim))


def dephase_gradient(state: FullState, model: GradientModel, step_index: int) -> FullState:
    """One step of the random-gradient measurement simulation.

    Applies the slice-ensemble average of U_z rho U_z+ with the gradient
    strength drawn for this step.  Modeling each step as an average is what
    re-randomized gradients buy physically; for FIXED gradients use
    GradientEnsemble, which this channel does not replace.
    """
    if not isinstance(state, FullState):
        raise TypeError("dephase_gradient needs a FullState")
    dim = state.rho.shape[0]
    dB = gradient_draw(model, step_index)
    phases = _slice_phases(model, dB, dim)

    def term(j):
        v = np.exp(-1j * phases[j])
        return np.outer(v, v.conj())

    K = pairwise_mean(term, model.slices)
    np.fill_diagonal(K, 1.0)  # |v|^2 rounds near 1; populations stay exact
    return FullState(rho=state.rho * K)


class GradientEnsemble:
    """Per-slice state histories for gradient sequences averaged at readout.

    Each z-slice carries its own density matrix; evolution and gradient
    pulses act slice by slice and only the readout takes the ensemble mean.
    This keeps the step-to-step phase correlations a fixed gradient imposes,
    which the per-step averaged channel deliberately discards.  Memory scales
    as slices * dim^2.
    """

    def __init__(self, state: FullState, model: GradientModel):
        if not isinstance(state, FullState):
            raise TypeError("GradientEnsemble needs a FullState")
        self.model = model
        self._dim = state.rho.shape[0]
        self._slices = np.broadcast_to(state.rho, (model.slices, self._dim, self._dim)).copy()

    def evolve(self, U: np.ndarray) -> None:
        self._slices = np.einsum("ab,sbc,dc->sad", U, self._slices, U.conj(), optimize=True)

    def dephase(self, step_index: int) -> None:
        """Wind each slice's z-phase with this step's gradient draw."""
        dB = gradient_draw(self.model, step_index)
        phases = _slice_phases(self.model, dB, self._dim)
        v = np.exp(-1j * phases)  # (slices, dim)
        self._slices = v[:, :, None] * self._slices * v.conj()[:, None, :]

    def state(self) -> FullState:
        """Ensemble-averaged state (fixed-tree pairwise mean over slices)."""
        rho = pairwise_mean(lambda j: self._slices[j], self.model.slices)
        return FullState(rho=rho)
