"""Space and time convergence tables for the periodic evolver.

    python3 scripts/convergence_study.py [--csv out.csv]
"""

import argparse
import csv
import math
import sys

import numpy as np

from stadirac.dynamics import em_plane_wave, evolve, plane_wave, residual_charged, residual_massless, rest_oscillator


def space_rows():
    prev = {}
    for N in (32, 64, 128, 256):
        dx = 2 * math.pi / N
        cases = {
            "em-wave residual": residual_massless(em_plane_wave(N, dx, k=2.0, t=0.3)).total_max,
            "charged-wave residual": residual_charged(
                plane_wave(N, dx, k=1.0, omega0=1.0, charge=0.8, A=(0.3, 0.2, 0.0, -0.1), t=0.2)
            ).total_max,
        }
        for name, err in cases.items():
            ratio = prev[name] / err if name in prev else float("nan")
            prev[name] = err
            yield name, "dx", dx, err, ratio


def time_rows(t_end=10.0):
    prev = None
    for dt in (0.04, 0.02, 0.01, 0.005):
        steps = int(round(t_end / dt))
        traj = evolve(rest_oscillator(8), dt, steps, every=steps // 100)
        t = np.array([s.t for s in traj])
        err = float(np.max(np.abs(np.array([s.psi[0, 0, 0] for s in traj]) - np.cos(t))))
        yield "oscillator error", "dt", dt, err, (prev / err if prev else float("nan"))
        prev = err


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--csv", help="also write the table to this file")
    args = parser.parse_args(argv)
    rows = list(space_rows()) + list(time_rows())
    print(f"{'quantity':24s} {'step':>4s} {'h':>10s} {'error':>11s} {'ratio':>7s}")
    for name, kind, h, err, ratio in rows:
        print(f"{name:24s} {kind:>4s} {h:10.5f} {err:11.3e} {ratio:7.2f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["quantity", "step", "h", "error", "ratio"])
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
