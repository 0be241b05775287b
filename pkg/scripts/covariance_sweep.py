#!/usr/bin/env python3
"""Sweep covariance residuals over word length and dimension.

Prints a table of worst-case residuals of the transformation law of the
covariant Gaussian map under random generator words, as a quick health check
of the operator calculus and its normalization.
"""

import argparse
import time

import numpy as np

from jacobiweil import check_covariance
from jacobiweil.suites import rand_heisenberg, rand_index, rand_point, rand_word


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=40)
    ap.add_argument("--max-len", type=int, default=8)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>2} {'m':>2} {'word_len':>8} {'worst_residual':>15} {'sec':>6}")
    for n in (1, 2):
        for m in (1, 2):
            for wlen in (2, 4, args.max_len):
                t0 = time.perf_counter()
                worst = 0.0
                for _ in range(args.trials):
                    mm = rand_index(rng, m)
                    word = rand_word(rng, n, wlen)
                    res = check_covariance(mm, word, rand_heisenberg(rng, n, m),
                                           rand_point(rng, n, m))
                    worst = max(worst, res)
                dt = time.perf_counter() - t0
                print(f"{n:>2} {m:>2} {wlen:>8} {worst:>15.3e} {dt:>6.2f}")


if __name__ == "__main__":
    main()
