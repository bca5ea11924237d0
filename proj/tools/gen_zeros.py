#!/usr/bin/env python3
"""Write the ordinates of the first N nontrivial zeta zeros, one per line.

Zeros are located as sign changes of the Riemann-Siegel function Z(t) between
consecutive good Gram points g_a < g_b, where (-1)^n Z(g_n) > 0. Rosser's rule,
which holds far beyond the heights used here, says the block (g_a, g_b] holds
exactly b - a zeros and N(g_a) = a + 1. The sampling grid in a block is refined
until the count matches, so close pairs are not lost. Each zero is then
polished by a bracketed root finder.

Output is resumable: existing lines in the target file are kept, the zeros
recomputed around the resume point are compared against them, and generation
continues from the next index.
"""
import argparse
import os

import mpmath


def good(m):
    return (-1) ** m * mpmath.siegelz(mpmath.grampoint(m)) > 0


def block_zeros(a, b, max_refine=12):
    """The b - a zeros of Z in (g_a, g_b], ascending. a = -1 stands for t = 10,
    below the first zero, so that (10, g_0] holds the single zero N(g_0) = 1."""
    lo, hi = mpmath.grampoint(a) if a >= 0 else mpmath.mpf(10), mpmath.grampoint(b)
    expected = b - a
    cells = 2 * expected
    for _ in range(max_refine):
        ts = [lo + (hi - lo) * k / cells for k in range(cells + 1)]
        zs = [mpmath.siegelz(t) for t in ts]
        brackets = [(ts[k], ts[k + 1]) for k in range(cells) if zs[k] * zs[k + 1] < 0]
        if len(brackets) == expected:
            return [mpmath.findroot(mpmath.siegelz, br, solver="anderson") for br in brackets]
        if len(brackets) > expected:
            raise RuntimeError("more sign changes than Rosser's rule allows in (g_%d, g_%d]" % (a, b))
        cells *= 2
    raise RuntimeError("could not separate %d zeros in (g_%d, g_%d]" % (expected, a, b))


def zeros_from(a, count):
    """Yield (index, ordinate) for zeros above the good Gram point g_a."""
    n = a + 2
    while n <= count:
        b = a + 1
        while b > 0 and not good(b):
            b += 1
        for z in block_zeros(a, b):
            if n > count:
                return
            yield n, z
            n += 1
        a = b


def resume_gram_index(last):
    """Largest good Gram index with g_a below the ordinate `last`."""
    a = max(0, int(mpmath.floor(mpmath.siegeltheta(last) / mpmath.pi)) - 1)
    while a > 0 and (mpmath.grampoint(a) >= last or not good(a)):
        a -= 1
    return a


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=10000)
    ap.add_argument("--dps", type=int, default=24)
    ap.add_argument("--out", default="tests/data/zeta_zeros_10000.txt")
    args = ap.parse_args()

    mpmath.mp.dps = args.dps
    digits = args.dps - 2
    existing = []
    if os.path.exists(args.out):
        with open(args.out) as fh:
            existing = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    a = resume_gram_index(mpmath.mpf(existing[-1])) if existing else -1
    with open(args.out, "a") as fh:
        if not existing:
            fh.write("# Imaginary parts of the first %d nontrivial zeros of zeta\n" % args.count)
            fh.write("# generated by tools/gen_zeros.py (mpmath %s, dps=%d)\n" % (mpmath.__version__, args.dps))
        for n, z in zeros_from(a, args.count):
            if n <= len(existing):
                if abs(z - mpmath.mpf(existing[n - 1])) > mpmath.mpf(10) ** (-(digits - 6)):
                    raise RuntimeError("zero %d: recomputed %s, table has %s" % (n, z, existing[n - 1]))
                continue
            fh.write(mpmath.nstr(z, digits, strip_zeros=False) + "\n")
            fh.flush()


if __name__ == "__main__":
    main()
