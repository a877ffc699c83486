"""Sweep the tunneling strength and tabulate the three geometric quantities.

For a fixed drive amplitude the Aharonov-Anandan phases gamma_+-, the
time-energy uncertainty s (the Bloch path length of the cyclic states) and
the folded quasienergies q_+- are printed against Delta/omega for several
static biases.  The uncertainty maxima mark the harmonic resonances: close
to 2*pi, 4*pi and 6*pi for the main, second and third harmonic.
"""

import numpy as np

from rabigeo import ModelParams, aa_phases, propagate

OMEGA = 1.0
AMPLITUDE = 1.0


def sweep(epsilon, deltas):
    rows = []
    for d in deltas:
        p = ModelParams(float(d), epsilon, AMPLITUDE, OMEGA)
        geo = aa_phases(propagate(p))
        rows.append((d, geo.aa_phases[0], geo.aa_phases[1], geo.uncertainty,
                     geo.quasienergies[0]))
    return rows


def main():
    deltas = np.linspace(0.2, 3.8, 37)
    for eps in (0.0, 0.5, 1.0, 1.5):
        rows = sweep(eps, deltas)
        print(f"\n=== epsilon/omega = {eps} ===")
        print(f"{'Delta':>6} {'gamma+/pi':>10} {'gamma-/pi':>10} "
              f"{'s/pi':>8} {'q':>9}")
        for d, gp, gm, s, q in rows:
            print(f"{d:6.2f} {gp / np.pi:10.4f} {gm / np.pi:10.4f} "
                  f"{s / np.pi:8.4f} {q:9.5f}")
        peak = max(rows, key=lambda r: r[3])
        print(f"uncertainty maximum on this grid: s = {peak[3] / np.pi:.3f} pi "
              f"at Delta = {peak[0]:.2f}")


if __name__ == "__main__":
    main()
