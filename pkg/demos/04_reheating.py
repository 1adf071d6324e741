"""What happens when the measurements never stop.

The quasi-equilibrium is a plateau, not a fixed point.  Fast flip-flop
blocks equilibrate within a few steps and then sit still, but under XX
coupling the detuned flip-flip blocks keep leaking population with a tiny
contraction per step, so measuring long past the plateau slowly pulls the
qubit back toward the mixed state.  Exchange-only coupling is the control:
its equilibrated blocks are exact fixed points and the plateau holds.
"""

from spinsteer import SystemConfig, reheating_probe, steps_to_plateau

BASE = dict(omega_S=420.0, omega_I=250.0, J=150.0, N=3,
            eps_S0=0.4995, eps_I0=0.498)
TAU = 1e-3


def main():
    runs = {}
    for coupling in ("RW", "XX"):
        cfg = SystemConfig(**BASE, coupling=coupling)
        n_qe = steps_to_plateau(cfg, TAU)
        runs[coupling] = (n_qe, reheating_probe(cfg, TAU, n_past_qe=400,
                                                points_per_segment=1))
        print(f"{coupling}: plateau predicted after {n_qe} steps")

    print(f"\n{'step':>5}  {'ratio RW':>9}  {'ratio XX':>9}")
    for k in (5, 20, 50, 100, 200, 300, 400):
        rw = runs["RW"][1].pol_ratio[k]
        xx = runs["XX"][1].pol_ratio[k]
        print(f"{k:5d}  {rw:9.4f}  {xx:9.4f}")

    xx_traj = runs["XX"][1]
    peak = xx_traj.pol_ratio.max()
    print(f"\nXX peaks at {peak:.4f} and reheats to "
          f"{xx_traj.pol_ratio[-1]:.4f} by step {len(xx_traj) - 1}")


if __name__ == "__main__":
    main()
