"""Reference values of erf(z) for the complex error function tests.

Writes 1000 points drawn uniformly from the disk |z| <= 10 (fixed seed),
evaluated with mpmath at 120 digits and rounded to 17 significant digits.
"""

import csv
import random
import sys

import mpmath

mpmath.mp.dps = 120


def main(path):
    rng = random.Random(20240611)
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["re", "im", "erf_re", "erf_im"])
        for _ in range(1000):
            r = 10.0 * rng.random() ** 0.5
            t = 2.0 * mpmath.pi * rng.random()
            x = float(r * mpmath.cos(t))
            y = float(r * mpmath.sin(t))
            w = mpmath.erf(mpmath.mpc(x, y))
            out.writerow([repr(x), repr(y), mpmath.nstr(w.real, 17), mpmath.nstr(w.imag, 17)])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/data/erf_oracle.csv")
