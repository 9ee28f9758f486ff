#!/usr/bin/env python3
"""Invert a generic n-letter Gram matrix at a random hermitian rational
point, then verify A . A^-1 = I with exact Gaussian-rational arithmetic.

The symbolic n! x n! inverse is far out of reach for n >= 5, but the
per-permutation coefficient recursion evaluates happily at a point; this is
the go-to sanity experiment before trusting any n >= 5 coefficient value.

Usage:  python scripts/invert_at_point.py [-n 5] [--seed 0] [--skip-verify]
"""

import argparse
import random
import time
from fractions import Fraction

from quongram.ring import GaussRat
from quongram.fock import Weight
from quongram.gram import build_generic
from quongram.inverse import inverse_matrix_at


def hermitian_point(labels, rng, scale=32, bound=12):
    a = {}
    for i in labels:
        for j in labels:
            if j < i:
                continue
            if i == j:
                v = GaussRat(Fraction(rng.randint(-bound, bound), scale))
            else:
                v = GaussRat(Fraction(rng.randint(-bound, bound), scale),
                             Fraction(rng.randint(-bound, bound), scale))
            a[("q", i, j)] = v
            a[("q", j, i)] = v.conj()
    return a


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("-n", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-verify", action="store_true",
                    help="only time the inverse, skip the O(size^3) product")
    args = ap.parse_args()

    nu = Weight.generic_n(args.n)
    rng = random.Random(args.seed)
    a = hermitian_point(nu.labels, rng)

    t0 = time.time()
    inv = inverse_matrix_at(nu, a, "hermitian")
    size = len(inv)
    print(f"n={args.n}: {size}x{size} inverse in {time.time() - t0:.1f}s")

    if args.skip_verify:
        return
    t0 = time.time()
    A = build_generic(nu)
    Ap = [[e.evaluate(a, "hermitian") for e in row] for row in A.entries]
    one, zero = GaussRat.of(1), GaussRat.of(0)
    bad = 0
    for i in range(size):
        for j in range(size):
            s = zero
            for k in range(size):
                s = s + Ap[i][k] * inv[k][j]
            if s != (one if i == j else zero):
                bad += 1
    print(f"verify A.A^-1 = I: {'OK' if bad == 0 else f'{bad} bad entries'}"
          f" in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
