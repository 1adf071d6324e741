"""Closed-form predictions against hand formulas and a brute-force oracle.

The brute oracle lives in helpers.py: product-space expm evolution with a
literal diagonal pinch between intervals.  Everything the closed forms
claim must be reproducible that way.
"""

import numpy as np
import pytest

from spinsteer.analytics import (
    block_recursion,
    eps_free,
    eps_measured,
    eps_quasi_equilibrium,
    stretched_weight_sum,
    x_after_n,
)
from spinsteer.core import SystemConfig, bath_sectors
from spinsteer.experiment import Schedule, run
from spinsteer.hamiltonians import sector_spectra

from helpers import brute_eps, brute_evolve, brute_hamiltonian, brute_initial_rho


def rand_cfg(rng, N=None, coupling="RW"):
    return SystemConfig(
        omega_S=float(rng.uniform(20, 600)),
        omega_I=float(rng.uniform(20, 600)),
        J=float(rng.uniform(10, 250)),
        N=int(rng.integers(1, 5)) if N is None else N,
        coupling=coupling,
        eps_S0=float(rng.uniform(0, 0.5)),
        eps_I0=float(rng.uniform(0, 0.5)),
    )


# ═══════════════════════════════════════════════════════════════════
# Per-block recursion
# ═══════════════════════════════════════════════════════════════════


class TestBlockRecursion:
    def test_resonant_contraction_matches_printed_form(self):
        cfg = SystemConfig(omega_S=100.0, omega_I=100.0, J=50.0, N=2, coupling="RW")
        spec = sector_spectra(cfg, bath_sectors(2)[0])[1]
        rec = block_recursion(spec, 1.3e-3)
        assert rec.f1 == pytest.approx(rec.f, abs=1e-12)

    def test_detuned_contraction_differs_from_printed_form(self):
        cfg = SystemConfig(omega_S=100.0, omega_I=400.0, J=50.0, N=2, coupling="RW")
        spec = sector_spectra(cfg, bath_sectors(2)[0])[1]
        rec = block_recursion(spec, 1.3e-3)
        assert abs(rec.f1 - rec.f) > 1e-3

    def test_stretched_block_is_a_fixed_point(self):
        cfg = SystemConfig(omega_S=100.0, omega_I=100.0, J=50.0, N=2, coupling="RW")
        stretched = sector_spectra(cfg, bath_sectors(2)[0])[0]
        rec = block_recursion(stretched, 2e-3)
        assert rec.f2 == 0.0 and rec.f1 == 1.0
        assert x_after_n(0.77, rec, 1000) == 0.77

    def test_closed_form_equals_iteration(self):
        from spinsteer.analytics import BlockRecursion

        rng = np.random.default_rng(31)
        for _ in range(40):
            f2 = float(rng.uniform(1e-6, 1.0))
            rec = BlockRecursion(f1=1.0 - 2.0 * f2, f2=f2, f=0.0)
            x0 = float(rng.uniform(0, 1))
            n = int(rng.integers(0, 60))
            x = x0
            for _ in range(n):
                x = rec.f1 * x + rec.f2
            assert x_after_n(x0, rec, n) == pytest.approx(x, abs=1e-12)

    def test_rejects_negative_n(self):
        from spinsteer.analytics import BlockRecursion

        with pytest.raises(ValueError, match="n must be >= 0"):
            x_after_n(0.5, BlockRecursion(f1=0.5, f2=0.25, f=0.5), -1)


# ═══════════════════════════════════════════════════════════════════
# Free evolution
# ═══════════════════════════════════════════════════════════════════


class TestEpsFree:
    def test_time_zero_returns_initial(self):
        rng = np.random.default_rng(33)
        for _ in range(5):
            cfg = rand_cfg(rng)
            assert eps_free(cfg, 0.0) == pytest.approx(cfg.eps_S0, abs=1e-14)

    def test_single_bath_spin_hand_formula(self):
        cfg = SystemConfig(omega_S=310.0, omega_I=170.0, J=90.0, N=1,
                           coupling="RW", eps_S0=0.12, eps_I0=0.34)
        delta = (cfg.omega_S - cfg.omega_I) / 2.0
        omega = np.sqrt((cfg.J / 2.0) ** 2 + delta ** 2)
        p = (cfg.J / 2.0) ** 2 / omega ** 2
        for t in (1e-4, 8e-4, 3e-3):
            q = p * np.sin(2.0 * np.pi * omega * t) ** 2
            pop_e0 = cfg.eps_S0 * (1.0 - cfg.eps_I0)
            pop_g0 = (1.0 - cfg.eps_S0) * cfg.eps_I0
            hand = cfg.eps_S0 * cfg.eps_I0 + pop_e0 + (pop_g0 - pop_e0) * q
            assert eps_free(cfg, t) == pytest.approx(hand, abs=1e-14)

    def test_against_expm_oracle(self):
        rng = np.random.default_rng(35)
        for _ in range(6):
            cfg = rand_cfg(rng, N=int(rng.integers(1, 4)))
            H = brute_hamiltonian(cfg)
            rho0 = brute_initial_rho(cfg)
            for t in rng.uniform(0, 0.02, size=3):
                got = eps_free(cfg, float(t))
                want, _ = brute_eps(brute_evolve(rho0, H, float(t)), cfg.N)
                assert got == pytest.approx(want, abs=1e-10)

    def test_array_input(self):
        cfg = rand_cfg(np.random.default_rng(36))
        t = np.linspace(0.0, 5e-3, 7)
        out = eps_free(cfg, t)
        assert out.shape == t.shape
        assert out[0] == pytest.approx(cfg.eps_S0, abs=1e-14)

    def test_rejects_negative_times(self):
        cfg = rand_cfg(np.random.default_rng(37))
        with pytest.raises(ValueError, match=">= 0"):
            eps_free(cfg, -1e-3)


# ═══════════════════════════════════════════════════════════════════
# Measured evolution
# ═══════════════════════════════════════════════════════════════════


class TestEpsMeasured:
    def test_zero_measurements_return_initial(self):
        cfg = rand_cfg(np.random.default_rng(41))
        assert eps_measured(cfg, 1e-3, 0) == pytest.approx(cfg.eps_S0, abs=1e-14)

    def test_against_pinched_expm_oracle(self):
        # the closed form describes the measurement that reads the qubit and
        # the total bath magnetization, i.e. a block pinch on (sz, mz), not a
        # full product-basis pinch (which is a strictly stronger channel)
        rng = np.random.default_rng(43)
        for _ in range(4):
            cfg = rand_cfg(rng, N=2)
            H = brute_hamiltonian(cfg)
            dim = 2 ** (cfg.N + 1)
            idx = np.arange(dim)
            sz = 1 - 2 * ((idx >> cfg.N) & 1)
            mz = sum(1 - 2 * ((idx >> k) & 1) for k in range(cfg.N))
            keep = (sz[:, None] == sz[None, :]) & (mz[:, None] == mz[None, :])
            tau = float(rng.uniform(2e-4, 2e-3))
            n = int(rng.integers(1, 20))
            rho = brute_initial_rho(cfg)
            for _ in range(n):
                rho = brute_evolve(rho, H, tau)
                rho = np.where(keep, rho, 0.0)
            want, _ = brute_eps(rho, cfg.N)
            assert eps_measured(cfg, tau, n) == pytest.approx(want, abs=1e-10)

    def test_single_bath_spin_product_pinch_oracle(self):
        # with one bath spin every (sz, mz) block is one-dimensional, so the
        # plain diagonal pinch is the same channel and can serve as oracle
        rng = np.random.default_rng(45)
        for _ in range(4):
            cfg = rand_cfg(rng, N=1)
            H = brute_hamiltonian(cfg)
            tau = float(rng.uniform(2e-4, 2e-3))
            n = int(rng.integers(1, 25))
            rho = brute_initial_rho(cfg)
            for _ in range(n):
                rho = brute_evolve(rho, H, tau)
                rho = np.diag(np.diag(rho))
            want, _ = brute_eps(rho, cfg.N)
            assert eps_measured(cfg, tau, n) == pytest.approx(want, abs=1e-10)

    def test_approach_to_equilibrium_on_resonance(self):
        cfg = SystemConfig(omega_S=200.0, omega_I=200.0, J=60.0, N=3,
                           coupling="RW", eps_S0=0.48, eps_I0=0.2)
        qe = eps_quasi_equilibrium(cfg).rw_any_n
        gaps = [abs(eps_measured(cfg, 3.1e-4, n) - qe) for n in (0, 40, 4000)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-8

    def test_rejects_bad_arguments(self):
        cfg = rand_cfg(np.random.default_rng(44))
        with pytest.raises(ValueError, match="tau must be > 0"):
            eps_measured(cfg, 0.0, 5)
        with pytest.raises(ValueError, match="n must be >= 0"):
            eps_measured(cfg, 1e-3, -2)


# ═══════════════════════════════════════════════════════════════════
# Stretched weights and quasi-equilibrium
# ═══════════════════════════════════════════════════════════════════


class TestStretchedWeightSum:
    def test_boundary_values(self):
        for N in (1, 2, 3, 6):
            assert stretched_weight_sum(N, 0.0) == 0.0
            assert stretched_weight_sum(N, 1.0) == pytest.approx(1.0)

    def test_single_spin_is_linear(self):
        for eps in (0.0, 0.25, 0.7, 1.0):
            assert stretched_weight_sum(1, eps) == pytest.approx(eps)

    def test_bracket_identity(self):
        # (1-e) A(1-e) - e A(e) telescopes to 1 - 2e for every N
        rng = np.random.default_rng(47)
        for N in range(1, 10):
            for e in rng.uniform(0, 1, size=4):
                lhs = (1.0 - e) * stretched_weight_sum(N, 1.0 - e) \
                    - e * stretched_weight_sum(N, e)
                assert lhs == pytest.approx(1.0 - 2.0 * e, abs=1e-12)


class TestQuasiEquilibrium:
    def test_three_spin_closed_form(self):
        cfg = SystemConfig(omega_S=420.0, omega_I=250.0, J=150.0, N=3,
                           coupling="RW", eps_S0=0.4995, eps_I0=0.498)
        qe = eps_quasi_equilibrium(cfg)
        hand = cfg.eps_S0 + 0.5 * (cfg.eps_I0 - cfg.eps_S0) \
            * (1.0 + cfg.eps_I0 * (1.0 - cfg.eps_I0))
        assert qe.n3 == pytest.approx(hand, abs=1e-15)
        assert qe.rw_any_n == pytest.approx(hand, abs=1e-12)

    def test_reference_cooling_gain(self):
        cfg = SystemConfig(omega_S=420.0, omega_I=250.0, J=150.0, N=3,
                           coupling="RW", eps_S0=0.4995, eps_I0=0.498)
        qe = eps_quasi_equilibrium(cfg)
        gain = (1.0 - 2.0 * qe.rw_any_n) / (1.0 - 2.0 * cfg.eps_S0)
        assert gain == pytest.approx(2.875, abs=6e-5)

    def test_matches_long_measured_run(self):
        rng = np.random.default_rng(53)
        for _ in range(4):
            cfg = rand_cfg(rng, N=int(rng.integers(1, 5)))
            qe = eps_quasi_equilibrium(cfg)
            # tau chosen off any sin^2 zero so every pair keeps mixing
            assert eps_measured(cfg, 7.3e-4, 6000) == pytest.approx(
                qe.rw_any_n, abs=1e-6)

    def test_flip_flip_slot_against_engine(self):
        cfg = SystemConfig(omega_S=420.0, omega_I=250.0, J=150.0, N=2,
                           coupling="CR", eps_S0=0.4995, eps_I0=0.498)
        traj = run(cfg, Schedule.periodic(1e-3, 1200), points_per_segment=1)
        assert traj.eps_S[-1] == pytest.approx(eps_quasi_equilibrium(cfg).cr,
                                               abs=1e-7)

    def test_large_bath_limit_and_saturation(self):
        cfg = SystemConfig(omega_S=1.0, omega_I=1.0, J=1.0, N=3,
                           eps_S0=0.1, eps_I0=0.3)
        qe = eps_quasi_equilibrium(cfg)
        want = cfg.eps_S0 + (cfg.eps_I0 - cfg.eps_S0) / (2.0 * (1.0 - cfg.eps_I0))
        assert qe.large_n == pytest.approx(want)
        assert not qe.saturated
        with pytest.warns(UserWarning):
            hot = SystemConfig(omega_S=1.0, omega_I=1.0, J=1.0, N=3,
                               eps_S0=0.1, eps_I0=1.0)
        sat = eps_quasi_equilibrium(hot)
        assert sat.large_n == 0.5 and sat.saturated
