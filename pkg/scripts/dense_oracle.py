"""Dense real-angle grid search for the minimum CH value (reference run).

    python scripts/dense_oracle.py --points 240
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from oracle import dense_real_minimum  # noqa: E402

STATES = {
    "one_particle": np.array([0, -1, 1, 0]) / np.sqrt(2),
    "product_10": np.array([0, 0, 1, 0]),
    "vacuum": np.array([1, 0, 0, 0]),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=240, help="angles per setting in [0, pi)")
    args = parser.parse_args()
    for name, psi in STATES.items():
        t0 = time.perf_counter()
        value = dense_real_minimum(psi.astype(complex), args.points)
        print(f"{name:<14} min CH = {value:.17g}  ({time.perf_counter() - t0:.1f}s)")
    print(f"{'(1-sqrt2)/2':<14}          {(1 - np.sqrt(2)) / 2:.17g}")


if __name__ == "__main__":
    main()
