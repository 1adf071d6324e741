"""Tests for the three dephasing channels and the gradient machinery."""

import numpy as np
import pytest
from scipy.integrate import quad

from spinsteer.core import FullState, SystemConfig, initial_sector_ensemble
from spinsteer.dephasing import (
    FIXED,
    RANDOM,
    GradientEnsemble,
    GradientModel,
    dephase_gradient,
    dephase_ideal,
    dephase_s_only,
    gradient_draw,
    pairwise_mean,
    slice_positions,
)


def rand_state(rng, dim):
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = A @ A.conj().T
    return FullState(rho=rho / np.trace(rho).real)


# ═══════════════════════════════════════════════════════════════════
# Ideal pinch
# ═══════════════════════════════════════════════════════════════════


class TestIdealPinch:
    def test_kills_off_diagonals_keeps_diagonal(self):
        rng = np.random.default_rng(2)
        state = rand_state(rng, 8)
        out = dephase_ideal(state)
        np.testing.assert_allclose(np.diag(out.rho), np.diag(state.rho), atol=1e-15)
        assert np.count_nonzero(out.rho - np.diag(np.diag(out.rho))) == 0

    def test_idempotent(self):
        rng = np.random.default_rng(3)
        state = rand_state(rng, 4)
        once = dephase_ideal(state)
        twice = dephase_ideal(once)
        np.testing.assert_allclose(once.rho, twice.rho, atol=0)

    def test_sector_ensemble_version(self):
        cfg = SystemConfig(omega_S=420.0, omega_I=250.0, J=150.0, N=3,
                           eps_S0=0.3, eps_I0=0.4)
        states = dephase_ideal(initial_sector_ensemble(cfg))
        assert isinstance(states, list)
        total = sum(np.trace(s.rho).real for s in states)
        assert total == pytest.approx(1.0, abs=1e-12)


# ═══════════════════════════════════════════════════════════════════
# Qubit-only pinch
# ═══════════════════════════════════════════════════════════════════


class TestSOnlyPinch:
    def test_blocks_survive_cross_blocks_die(self):
        # N=2 bath: indices 1 (bath 01) and 2 (bath 10) share (sz, mz)
        rho = np.eye(8, dtype=complex) / 8.0
        rho[1, 2] = rho[2, 1] = 0.05       # same block
        rho[0, 1] = rho[1, 0] = 0.04       # different mz
        rho[0, 4] = rho[4, 0] = 0.03       # different sz
        out = dephase_s_only(FullState(rho=rho)).rho
        assert out[1, 2] == pytest.approx(0.05)
        assert out[0, 1] == 0.0 and out[0, 4] == 0.0

    def test_rejects_sector_input(self):
        cfg = SystemConfig(omega_S=1.0, omega_I=1.0, J=1.0, N=2)
        states = initial_sector_ensemble(cfg)
        with pytest.raises(TypeError, match="unsupported representation"):
            dephase_s_only(states[0])

    def test_trace_and_diagonal_preserved(self):
        rng = np.random.default_rng(4)
        state = rand_state(rng, 16)
        out = dephase_s_only(state)
        np.testing.assert_allclose(np.diag(out.rho), np.diag(state.rho), atol=0)
        out.validate()


# ═══════════════════════════════════════════════════════════════════
# Gradient model plumbing
# ═══════════════════════════════════════════════════════════════════


class TestGradientModel:
    def test_phase_span_and_weakness_flag(self):
        m = GradientModel(gamma_S=1070.8, max_gradient=30.0, sample_length=1.0,
                          tau_m=100e-6)
        assert m.phase_span == pytest.approx(2.0 * np.pi * 3.2124)
        assert m.weak_dephasing
        strong = GradientModel(gamma_S=4257.7, max_gradient=30.0,
                               sample_length=1.0, tau_m=100e-6)
        assert not strong.weak_dephasing

    def test_validation_collects_problems(self):
        with pytest.raises(ValueError) as err:
            GradientModel(mode="drift", slices=1, sample_length=0.0)
        msg = str(err.value)
        assert "mode must be" in msg and "slices must be" in msg \
            and "sample_length must be" in msg

    def test_draws_are_pure_and_bounded(self):
        m = GradientModel(rng_seed=42, max_gradient=25.0)
        d5 = gradient_draw(m, 5)
        assert d5 == gradient_draw(m, 5)
        assert d5 != gradient_draw(m, 6)
        assert all(abs(gradient_draw(m, k)) <= 25.0 for k in range(50))
        with pytest.raises(ValueError, match=">= 0"):
            gradient_draw(m, -1)

    def test_fixed_mode_reuses_step_zero(self):
        m = GradientModel(mode=FIXED, rng_seed=9)
        assert gradient_draw(m, 7) == gradient_draw(m, 0)

    def test_slice_positions_are_bin_midpoints(self):
        m = GradientModel(slices=4, sample_length=2.0)
        np.testing.assert_allclose(slice_positions(m), [-0.75, -0.25, 0.25, 0.75])

    def test_pairwise_mean_matches_plain_mean(self):
        vals = np.random.default_rng(0).normal(size=37)
        got = pairwise_mean(lambda i: vals[i], 37)
        assert got == pytest.approx(vals.mean(), abs=1e-15)
        with pytest.raises(ValueError, match="at least one"):
            pairwise_mean(lambda i: 0.0, 0)


# ═══════════════════════════════════════════════════════════════════
# Gradient channel
# ═══════════════════════════════════════════════════════════════════


class TestGradientChannel:
    def test_preserves_diagonal_trace_and_positivity(self):
        rng = np.random.default_rng(6)
        m = GradientModel(slices=64)
        for dim in (2, 4, 8):
            state = rand_state(rng, dim)
            out = dephase_gradient(state, m, step_index=3)
            np.testing.assert_allclose(np.diag(out.rho), np.diag(state.rho),
                                       atol=1e-15)
            out.validate()

    def test_strong_gradient_suppresses_qubit_coherence(self):
        rho = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
        m = GradientModel(gamma_S=4257.7, max_gradient=30.0, tau_m=1e-3,
                          slices=512)
        out = dephase_gradient(FullState(rho=rho), m, step_index=0)
        assert abs(out.rho[0, 1]) < 0.02

    def test_single_spin_suppression_factor_matches_quadrature(self):
        # one qubit, one fixed gradient: the coherence picks up the average
        # of exp(i * rate * dB * z) over z, which quad can do in the continuum
        m = GradientModel(mode=FIXED, gamma_S=1070.8, gamma_I=0.0,
                          max_gradient=30.0, tau_m=100e-6, slices=4096,
                          rng_seed=1)
        dB = gradient_draw(m, 0)
        rho = np.array([[0.5, 0.3], [0.3, 0.5]], dtype=complex)
        out = dephase_gradient(FullState(rho=rho), m, step_index=0)
        rate = 2.0 * np.pi * m.gamma_S * m.tau_m  # sz gap = 1
        h = m.sample_length
        ref = quad(lambda z: np.cos(rate * dB * z) / h, -h / 2, h / 2)[0]
        assert out.rho[0, 1].real == pytest.approx(0.3 * ref, abs=1e-8)
        assert out.rho[0, 1].imag == pytest.approx(0.0, abs=1e-12)

    def test_rejects_sector_input(self):
        cfg = SystemConfig(omega_S=1.0, omega_I=1.0, J=1.0, N=1)
        with pytest.raises(TypeError, match="FullState"):
            dephase_gradient(initial_sector_ensemble(cfg)[0], GradientModel(), 0)


# ═══════════════════════════════════════════════════════════════════
# Slice-resolved ensemble
# ═══════════════════════════════════════════════════════════════════


class TestGradientEnsemble:
    def test_state_untouched_before_any_operation(self):
        rng = np.random.default_rng(8)
        state = rand_state(rng, 4)
        ens = GradientEnsemble(state, GradientModel(mode=FIXED, slices=16))
        np.testing.assert_allclose(ens.state().rho, state.rho, atol=1e-14)

    def test_evolution_commutes_with_slice_average(self):
        # evolution is slice-independent, so evolving the average equals
        # averaging the evolved slices
        rng = np.random.default_rng(9)
        state = rand_state(rng, 4)
        m = GradientModel(mode=FIXED, slices=8)
        U = np.linalg.qr(rng.normal(size=(4, 4))
                         + 1j * rng.normal(size=(4, 4)))[0]
        ens = GradientEnsemble(state, m)
        ens.evolve(U)
        direct = U @ state.rho @ U.conj().T
        np.testing.assert_allclose(ens.state().rho, direct, atol=1e-13)

    def test_dephase_then_average_matches_channel_for_one_step(self):
        # with no interleaved evolution the slice-resolved route and the
        # averaged-kernel channel are the same linear map
        rng = np.random.default_rng(10)
        state = rand_state(rng, 4)
        m = GradientModel(mode=FIXED, slices=32, rng_seed=3)
        ens = GradientEnsemble(state, m)
        ens.dephase(0)
        via_channel = dephase_gradient(state, m, 0)
        np.testing.assert_allclose(ens.state().rho, via_channel.rho, atol=1e-13)

    def test_trace_preserved_through_a_working_cycle(self):
        rng = np.random.default_rng(12)
        state = rand_state(rng, 8)
        m = GradientModel(mode=FIXED, slices=8, rng_seed=5)
        ens = GradientEnsemble(state, m)
        U = np.linalg.qr(rng.normal(size=(8, 8))
                         + 1j * rng.normal(size=(8, 8)))[0]
        for step in range(3):
            ens.evolve(U)
            ens.dephase(step)
        final = ens.state()
        assert np.trace(final.rho).real == pytest.approx(1.0, abs=1e-12)
        final.validate()

    def test_needs_full_state(self):
        cfg = SystemConfig(omega_S=1.0, omega_I=1.0, J=1.0, N=1)
        with pytest.raises(TypeError, match="FullState"):
            GradientEnsemble(initial_sector_ensemble(cfg)[0], GradientModel())
