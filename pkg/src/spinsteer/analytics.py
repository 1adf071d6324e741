"""Closed forms for the flip-flop dynamics under free evolution and measurements.

Every flip-flop block is a two-level system: the qubit-excited member
|e, M> exchanges population with |g, M'> at the block Rabi frequency.  With
ideal dephasing every interval tau the excited share x of a block obeys the
affine recursion x -> f1*x + f2, which these functions solve in closed form
and resum over blocks and sectors.  All expressions are written directly in
per-pair populations, so they stay finite for every eps in [0, 1] including
the fully excited bath; the familiar common-factor forms (which divide by
1 - eps_I0) are algebraically identical away from eps_I0 = 1 and that
equivalence is exercised in the tests.

Blocks are labeled here by the bath number M_I with effective coupling
J*sqrt((I-M_I)(I+M_I+1)); under the package's excited-is-down sign the pair
weight carried by label M_I is eps_I^(N/2+M_I) (1-eps_I)^(N/2-M_I).

The flip-flip (CR) terms have no measured-evolution closed form here, only
the quasi-equilibrium; that regime is otherwise engine-only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SectorLabel, SystemConfig, bath_sectors
from .hamiltonians import SectorSpectrum, sector_spectra


@dataclass(frozen=True)
class BlockRecursion:
    """Per-block step maps under evolve(tau)+dephase.

    f2 is the population transferred in one interval, f1 = 1 - 2*f2 the
    contraction factor of the excited share, and f = cos(2*Omega*tau) the
    printed form of the contraction, which coincides with f1 exactly at
    resonance (Delta = 0) and only there.
    """

    f1: float
    f2: float
    f: float


def block_recursion(spec: SectorSpectrum, tau: float, angular: float = 2.0 * np.pi) -> BlockRecursion:
    if spec.Omega > 0:
        p = (spec.Jtilde / 2.0) ** 2 / spec.Omega ** 2
    else:
        p = 0.0  # stretched block at exact resonance: nothing to transfer
    f2 = p * np.sin(angular * spec.Omega * tau) ** 2
    return BlockRecursion(f1=1.0 - 2.0 * f2, f2=f2, f=float(np.cos(2.0 * angular * spec.Omega * tau)))


def x_after_n(x0: float, rec: BlockRecursion, n: int) -> float:
    """Excited share of a block after n evolve+dephase cycles.

    Closed form of x_n = f1^n x_0 + f2 * Sum_{m=0}^{n-1} f1^m; tends to
    f2/(1-f1) = 1/2 whenever f2 > 0.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n!r}")
    if n == 0 or rec.f2 == 0.0:
        return x0
    f1n = rec.f1 ** n
    return f1n * x0 + rec.f2 * (1.0 - f1n) / (1.0 - rec.f1)


def _pair_weight(cfg: SystemConfig, M: float) -> float:
    """Initial bath weight carried by block label M (see module docstring)."""
    return cfg.eps_I0 ** (cfg.N / 2.0 + M) * (1.0 - cfg.eps_I0) ** (cfg.N / 2.0 - M)


def _blocks(cfg: SystemConfig, label: SectorLabel):
    """Yield (spectrum, w_excited, w_ground) per flip-flop pair, plus the
    stretched excited weight as a (None, w, None) sentinel."""
    for spec in sector_spectra(cfg, label):
        if spec.M_I == label.I:
            yield None, _pair_weight(cfg, spec.M_I), None
        else:
            yield spec, _pair_weight(cfg, spec.M_I), _pair_weight(cfg, spec.M_I + 1)


def eps_free(cfg: SystemConfig, t):
    """Qubit excited population under free flip-flop evolution at time(s) t.

    Accepts a scalar or array of times (seconds).  Describes the flip-flop
    part of the dynamics only; flip-flip admixtures in the XX variant show up
    as the small ripple the engine resolves on top of this.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("times must be >= 0")
    a = cfg.angular
    out = np.zeros_like(t_arr)
    for label in bath_sectors(cfg.N):
        for spec, w_e, w_g in _blocks(cfg, label):
            if spec is None:
                out += label.lambda_I * cfg.eps_S0 * w_e
                continue
            pop_e0 = cfg.eps_S0 * w_e
            pop_g0 = (1.0 - cfg.eps_S0) * w_g
            if spec.Omega > 0:
                p = (spec.Jtilde / 2.0) ** 2 / spec.Omega ** 2
            else:
                p = 0.0
            q = p * np.sin(a * spec.Omega * t_arr) ** 2
            out += label.lambda_I * (pop_e0 + (pop_g0 - pop_e0) * q)
    return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out


def eps_measured(cfg: SystemConfig, tau: float, n: int):
    """Qubit excited population after n ideal measurements at intervals tau."""
    if tau <= 0:
        raise ValueError(f"tau must be > 0, got {tau!r}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n!r}")
    a = cfg.angular
    total = 0.0
    for label in bath_sectors(cfg.N):
        for spec, w_e, w_g in _blocks(cfg, label):
            if spec is None:
                total += label.lambda_I * cfg.eps_S0 * w_e
                continue
            pop_e0 = cfg.eps_S0 * w_e
            pop_g0 = (1.0 - cfg.eps_S0) * w_g
            T = pop_e0 + pop_g0
            if T == 0.0:
                continue
            rec = block_recursion(spec, tau, a)
            total += label.lambda_I * T * x_after_n(pop_e0 / T, rec, n)
    return total


def stretched_weight_sum(N: int, eps: float) -> float:
    """Sum over sectors of lambda_I eps^(N/2+I) (1-eps)^(N/2-I).

    The weight that never equilibrates: each sector's stretched block has no
    flip-flop partner.  Appears in every quasi-equilibrium bracket; tends to
    zero as N grows for 0 < eps < 1.
    """
    return float(sum(lab.lambda_I * eps ** (N / 2.0 + lab.I) * (1.0 - eps) ** (N / 2.0 - lab.I)
                     for lab in bath_sectors(N)))


@dataclass(frozen=True)
class QuasiEquilibrium:
    """The asymptotic (n -> infinity) qubit populations under each closed form.

    rw_any_n: exact flip-flop value for the configured N.
    n3: the N=3 closed form (meaningful when N=3, where it equals rw_any_n).
    cr: flip-flip equilibrium, which pushes toward 1 - eps_I0.
    large_n: the N -> infinity limit eps_S0 + (eps_I0-eps_S0)/(2(1-eps_I0));
        at eps_I0 = 1 this slot holds the saturation value 1/2 and
        `saturated` is set.
    """

    rw_any_n: float
    n3: float
    cr: float
    large_n: float
    saturated: bool = False


def eps_quasi_equilibrium(cfg: SystemConfig) -> QuasiEquilibrium:
    eps_S, eps_I, N = cfg.eps_S0, cfg.eps_I0, cfg.N

    # exact pair form: every flip-flop pair splits its population evenly
    rw = 0.0
    for label in bath_sectors(N):
        for spec, w_e, w_g in _blocks(cfg, label):
            if spec is None:
                rw += label.lambda_I * eps_S * w_e
            else:
                rw += label.lambda_I * 0.5 * (eps_S * w_e + (1.0 - eps_S) * w_g)

    n3 = eps_S + 0.5 * (eps_I - eps_S) * (1.0 + eps_I * (1.0 - eps_I))

    cr = (0.5
          + 0.5 * eps_S * stretched_weight_sum(N, 1.0 - eps_I)
          - 0.5 * (1.0 - eps_S) * stretched_weight_sum(N, eps_I))

    if eps_I == 1.0:
        return QuasiEquilibrium(rw_any_n=rw, n3=n3, cr=cr, large_n=0.5, saturated=True)
    large_n = eps_S + (eps_I - eps_S) / (2.0 * (1.0 - eps_I))
    return QuasiEquilibrium(rw_any_n=rw, n3=n3, cr=cr, large_n=large_n)
