"""Independent oracles for the test suite.

Everything here is built from scratch on the 2^(N+1) product space with
kron chains and scipy.linalg.expm, sharing no code path with the package
(which works sector by sector and exponentiates through eigh).  The
Clebsch-Gordan machinery couples bath spins one at a time and yields the
isometries that embed each total-spin sector back into the product space,
copy by copy.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

# index 0 = m=+1/2 (ground), matching the package basis
UP = np.array([1.0, 0.0])
DOWN = np.array([0.0, 1.0])
SZ2 = np.diag([0.5, -0.5])
SP2 = np.array([[0.0, 1.0], [0.0, 0.0]])
SM2 = SP2.T
SX2 = 0.5 * (SP2 + SM2)
SY2 = -0.5j * (SP2 - SM2)
ID2 = np.eye(2)


def site_op(op, site, n_sites):
    """op acting on one site of a kron chain; site 0 is most significant."""
    mats = [ID2] * n_sites
    mats[site] = op
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def brute_hamiltonian(cfg):
    """Product-space Hamiltonian assembled site by site (qubit = site 0)."""
    n_sites = cfg.N + 1
    H = cfg.omega_S * site_op(SZ2, 0, n_sites)
    Sx = site_op(SX2, 0, n_sites)
    Sy = site_op(SY2, 0, n_sites)
    for k in range(1, n_sites):
        H = H + cfg.omega_I * site_op(SZ2, k, n_sites)
        Ix = site_op(SX2, k, n_sites)
        Iy = site_op(SY2, k, n_sites)
        if cfg.coupling == "XX":
            H = H + 2.0 * cfg.J * Sx @ Ix
        elif cfg.coupling in ("RW", "ISO"):
            H = H + cfg.J * (Sx @ Ix + Sy @ Iy)
        elif cfg.coupling == "CR":
            H = H + cfg.J * (Sx @ Ix - Sy @ Iy)
        else:
            raise ValueError(cfg.coupling)
    return H


def brute_initial_rho(cfg):
    rho = np.diag([1.0 - cfg.eps_S0, cfg.eps_S0])
    bath = np.diag([1.0 - cfg.eps_I0, cfg.eps_I0])
    for _ in range(cfg.N):
        rho = np.kron(rho, bath)
    return rho


def brute_evolve(rho, H, t, angular=2.0 * np.pi):
    U = expm(-1j * angular * H * t)
    return U @ rho @ U.conj().T


def brute_eps(rho, N):
    """(eps_S, eps_I) read off the product-space diagonal."""
    diag = np.real(np.diag(rho))
    idx = np.arange(diag.size)
    eps_S = diag[(idx >> N) & 1 == 1].sum()
    eps_I = 0.0
    for k in range(N):
        eps_I += diag[(idx >> k) & 1 == 1].sum()
    return float(eps_S), float(eps_I / N)


# ─── Clebsch-Gordan sector embeddings ────────────────────────────────

def _couple(V, two_I, up_child):
    """Add one spin-1/2 (appended as the least significant bit) to the
    states in V (columns = |I, M>, M descending) and return the columns
    of the child multiplet I +/- 1/2, again M descending."""
    two_Ic = two_I + 1 if up_child else two_I - 1
    dim = V.shape[0] * 2
    out = np.zeros((dim, two_Ic + 1))
    for col, two_M in enumerate(range(two_Ic, -two_Ic - 1, -2)):
        vec = np.zeros(dim)
        # parent |I, M-1/2> paired with |up>, parent |I, M+1/2> with |down>
        a = np.sqrt((two_I + two_M + 1) / (2.0 * (two_I + 1)))
        b = np.sqrt((two_I - two_M + 1) / (2.0 * (two_I + 1)))
        if not up_child:
            a, b = -b, a
        if abs(two_M - 1) <= two_I:
            vec += a * np.kron(V[:, (two_I - (two_M - 1)) // 2], UP)
        if abs(two_M + 1) <= two_I:
            vec += b * np.kron(V[:, (two_I - (two_M + 1)) // 2], DOWN)
        out[:, col] = vec
    return out


def bath_isometries(N):
    """{two_I: [V, ...]} embedding each sector copy into the 2^N bath space."""
    levels = {1: [np.eye(2)]}
    for _ in range(N - 1):
        grown = {}
        for two_I, vs in levels.items():
            for V in vs:
                grown.setdefault(two_I + 1, []).append(_couple(V, two_I, True))
                if two_I >= 1:
                    grown.setdefault(two_I - 1, []).append(_couple(V, two_I, False))
        levels = grown
    return levels


def embed_sector_states(states, N):
    """Rebuild the 2^(N+1) product-space density matrix from sector states.

    Each sector weight is split evenly over its copies; the qubit factor
    rides along untouched."""
    dim = 2 ** (N + 1)
    rho = np.zeros((dim, dim), dtype=complex)
    isos = bath_isometries(N)
    for st in states:
        copies = isos[st.label.two_I]
        assert len(copies) == st.label.lambda_I
        for V in copies:
            W = np.kron(np.eye(2), V)
            rho += W @ (st.rho / st.label.lambda_I) @ W.conj().T
    return rho
