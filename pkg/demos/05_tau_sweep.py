"""Map the heating and cooling regimes over the measurement interval.

Sweeps tau at fixed n and reports the final qubit population of each
independent run.  Short intervals heat; intervals near the Rabi time
cool.  Writes the sweep to tau_sweep.csv next to this script.
"""

import math
import pathlib

import numpy as np

from spinsteer import SystemConfig, emit_sweep_csv, sweep_tau

CFG = SystemConfig(omega_S=420.0, omega_I=250.0, J=150.0, N=3,
                   coupling="XX", eps_S0=0.4995, eps_I0=0.498)


def main():
    taus = np.linspace(0.05e-3, 2.0e-3, 40)
    sw = sweep_tau(CFG, 20, taus, max_workers=4)

    print(f"{'tau [ms]':>9}  {'eps_S(n tau)':>13}  regime")
    for tau, eps in zip(sw.tau, sw.eps_S):
        regime = "heats" if eps > CFG.eps_S0 else "cools"
        bar = "#" * int(round(abs(eps - CFG.eps_S0) * 4e4))
        print(f"{tau * 1e3:9.3f}  {eps:13.7f}  {regime:5s} {bar}")

    delta = (CFG.omega_S - CFG.omega_I) / 2.0
    t_rabi = 1.0 / (CFG.angular * math.hypot(CFG.J, delta))
    best = sw.tau[np.argmin(sw.eps_S)]
    print(f"\nbest cooling at tau = {best * 1e3:.3f} ms "
          f"(Rabi time {t_rabi * 1e3:.3f} ms)")

    out = pathlib.Path(__file__).with_name("tau_sweep.csv")
    emit_sweep_csv(sw, out)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
