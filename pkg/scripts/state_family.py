"""Strongest CH violation across the family p|10> + q|01> + r|00>.

Sweeps the vacuum weight r and the Alice/Bob balance, optimizing the
settings at each point, and writes a CSV for external plotting:

    python scripts/state_family.py --steps 11 --out family.csv
"""

import argparse
import csv
import math
import sys

import numpy as np

from fockbell import SearchOptions, make_state, minimize_ch, two_particle_weight
from fockbell.measurements import ALICE_PRIME, post_measurement_state


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--steps", type=int, default=11)
    parser.add_argument("--points", type=int, default=12, help="coarse grid points per angle")
    parser.add_argument("--out", help="CSV path (default stdout)")
    args = parser.parse_args()

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["vacuum_weight", "mix_angle", "p", "q", "r", "min_ch", "collapse_two_particle_weight"])
    opts = SearchOptions(grid_points=args.points)
    for w in np.linspace(0, 0.9, args.steps):
        for mix in np.linspace(0, math.pi / 2, args.steps):
            scale = math.sqrt(1 - w)
            p, q, r = scale * math.cos(mix), -scale * math.sin(mix), math.sqrt(w)
            state = make_state(p, q, r)
            value = minimize_ch(state, opts).value
            collapsed, _ = post_measurement_state(state, "A", ALICE_PRIME, 1)
            writer.writerow([f"{x:.17g}" for x in (w, mix, p, q, r, value, two_particle_weight(collapsed))])
    if args.out:
        out.close()


if __name__ == "__main__":
    main()
