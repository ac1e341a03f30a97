"""Refinement study behind the uniqueness-cross-check threshold.

Runs fd_evolve and nisio_evolve side by side on [-8, 8] for
(sigma_lo, sigma_hi) = (0.5, 1), t = 0.25, over four refinement levels and
writes data/refinement_study.csv.

    PYTHONPATH=build/python python3 tools/refinement_study.py
"""

import csv
import pathlib
import sys

import semilab

LEVELS = [(401, 16), (801, 32), (1601, 64), (3201, 128)]
FUNCTIONS = ["tent", "gauss(1)", "bump", "abs_clip"]
T = 0.25


def main(out: pathlib.Path) -> None:
    cfg = semilab.GHeatConfig(0.5, 1.0, 0.5)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["function", "n", "n_steps", "disagreement"])
        for name in FUNCTIONS:
            for n, steps in LEVELS:
                g = semilab.Grid(-8.0, 8.0, n)
                f = semilab.sample(name, g)
                d = abs(semilab.fd_evolve(f, T, cfg).values - semilab.nisio_evolve(f, T, steps, cfg).values).max()
                w.writerow([name, n, steps, f"{d:.17g}"])
                print(f"{name:10s} n={n:5d} steps={steps:4d} disagreement={d:.6e}")


if __name__ == "__main__":
    root = pathlib.Path(__file__).resolve().parent.parent
    main(pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else root / "data" / "refinement_study.csv")
