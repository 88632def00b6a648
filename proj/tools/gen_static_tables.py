#!/usr/bin/env python3
"""Regenerate data/static_tables.csv.

Rows list integral points on
  C: Y^2 = X^e + sign*alpha
  H: Y^2 = 5 X^(2e) + sign*4*alpha
with Y >= 0, found by scanning X. Completeness of each (curve, e, alpha, sign)
block is taken from the published classifications named in `source`; the scan
only reproduces the points, it does not prove there are no others.
"""
import argparse
import sys

import gmpy2

HEADER = """# newcoef-static-tables v1
# columns: curve,exponent,alpha,sign,x,y,source
# curve C: y^2 = x^exponent + sign*alpha
# curve H: y^2 = 5*x^(2*exponent) + sign*4*alpha
# A '#coverage' line declares every (alpha, sign) in its range complete for that curve and exponent.
"""

SOURCES = {
    -1: "Bugeaud-Mignotte-Siksek 2006 (x^2 + D = y^n)",
    1: "Barros 2010 (x^2 - D = y^n)",
}


def c_points(e, alpha, sign, x_max):
    # y^2 = x^e + sign*alpha; x < 0 needs |x|^e <= alpha, so x = -1 suffices for alpha <= 100
    lo = -1
    while (-(lo - 1)) ** e <= alpha:
        lo -= 1
    for x in range(lo, x_max + 1):
        rhs = x**e + sign * alpha
        if rhs >= 0 and gmpy2.is_square(rhs):
            yield x, int(gmpy2.isqrt(rhs))


def h_points(e, alpha, sign, x_max):
    for x in range(0, x_max + 1):
        rhs = 5 * x ** (2 * e) + sign * 4 * alpha
        if rhs >= 0 and gmpy2.is_square(rhs):
            yield x, int(gmpy2.isqrt(rhs))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha-max", type=int, default=100)
    ap.add_argument("--x-max", type=int, default=10000)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()

    out = sys.stdout if args.output == "-" else open(args.output, "w")
    out.write(HEADER)
    out.write(f"#coverage C,11,1..{args.alpha_max},-1\n")
    out.write(f"#coverage C,11,1..{args.alpha_max},1\n")
    for sign in (-1, 1):
        for alpha in range(1, args.alpha_max + 1):
            for x, y in c_points(11, alpha, sign, args.x_max):
                out.write(f"C,11,{alpha},{sign},{x},{y},{SOURCES[sign]}\n")
    # H-curve points used as fixtures and by the trivial-solution notes.
    for sign in (-1, 1):
        for alpha in range(1, args.alpha_max + 1):
            for x, y in h_points(11, alpha, sign, 1000):
                out.write(f"H,11,{alpha},{sign},{x},{y},direct search x <= 1000\n")
    for x, y in h_points(3, 1, 1, 1000):
        out.write(f"H,3,1,1,{x},{y},direct search x <= 1000\n")
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
