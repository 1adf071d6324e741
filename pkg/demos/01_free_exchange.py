"""Resonant exchange between the qubit and a single bath spin.

At omega_S = omega_I the flip-flop coupling swaps the two polarizations
completely, with the first full swap at t = 1/(2J).  Detune the bath and
the swap stalls at the transfer coefficient J^2/(J^2 + delta^2).
"""

import numpy as np

from spinsteer import Schedule, SystemConfig, run


def trace(cfg, t_stop, label):
    traj = run(cfg, Schedule.free(t_stop), points_per_segment=12)
    print(f"\n{label}")
    print(f"{'t [ms]':>8}  {'pol_S':>8}  {'pol_I':>8}")
    pol_I = 1.0 - 2.0 * traj.eps_I
    for t, ps, pi in zip(traj.t, traj.pol_S, pol_I):
        print(f"{t * 1e3:8.3f}  {ps:8.4f}  {pi:8.4f}")


def main():
    J = 150.0
    swap = 1.0 / (2.0 * J)
    resonant = SystemConfig(omega_S=500.0, omega_I=500.0, J=J, N=1,
                            coupling="RW", eps_S0=0.1, eps_I0=0.45)
    trace(resonant, 2.0 * swap, f"resonant, full swap expected at {swap * 1e3:.3f} ms")

    detuned = SystemConfig(omega_S=500.0, omega_I=800.0, J=J, N=1,
                           coupling="RW", eps_S0=0.1, eps_I0=0.45)
    cap = J ** 2 / (J ** 2 + (detuned.omega_S - detuned.omega_I) ** 2)
    trace(detuned, 2.0 * swap, f"detuned by 300 Hz, transfer capped at {cap:.3f}")


if __name__ == "__main__":
    main()
