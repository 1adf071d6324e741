"""Cooling at the right interval, then freezing the result.

With tau near the Rabi time, each measurement lands where the exchange has
moved the most population, so repeated dephasing pumps the qubit toward
the bath polarization instead of toward 1/2.  The run settles into a
quasi-equilibrium after a handful of steps.  Stopping the measurements
then freezes that level: under flip-flop coupling only, the equilibrated
populations commute with everything left, so free evolution holds them;
the flip-flip half of the XX coupling melts the plateau again.

Exchange-only coupling reaches a polarization gain of about 2.87 at these
parameters; the full XX engine stops short of 2 because the flip-flip
term heats while the flip-flop term cools.
"""

import numpy as np

from spinsteer import Schedule, SystemConfig, run

BASE = dict(omega_S=420.0, omega_I=250.0, J=150.0, N=3,
            eps_S0=0.4995, eps_I0=0.498)
TAU = 1e-3


def cooling(coupling):
    cfg = SystemConfig(**BASE, coupling=coupling)
    traj = run(cfg, Schedule.periodic(TAU, 20), points_per_segment=1)
    return cfg, traj


def main():
    print(f"{'step':>5}  {'ratio RW':>9}  {'ratio XX':>9}")
    cfg_rw, rw = cooling("RW")
    cfg_xx, xx = cooling("XX")
    for k in range(0, 21, 2):
        print(f"{k:5d}  {rw.pol_ratio[k]:9.4f}  {xx.pol_ratio[k]:9.4f}")
    print(f"\npeak gain: RW {rw.pol_ratio.max():.4f}, XX {xx.pol_ratio.max():.4f}")

    # freeze at the plateau and watch an equal free window
    for cfg, steps in ((cfg_rw, rw), (cfg_xx, xx)):
        ratios = steps.pol_ratio[1:]
        n_star = int(np.argmax(ratios >= 0.99 * ratios.max())) + 1
        traj = run(cfg, Schedule.periodic_then_free(TAU, n_star, 2 * n_star * TAU),
                   points_per_segment=8)
        t_stop = n_star * TAU
        base = traj.pol_ratio[np.argmin(np.abs(traj.t - t_stop))]
        late = traj.pol_ratio[traj.t > t_stop]
        drift = np.max(np.abs(late - base)) / base
        print(f"{cfg.coupling}: stop after {n_star} steps at ratio {base:.4f}, "
              f"free-evolution drift {drift * 100:.2f}%")


if __name__ == "__main__":
    main()
