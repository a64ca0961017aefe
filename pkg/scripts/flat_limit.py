"""Approach of eps / mu to the flat Klein-Gordon Coulomb levels as mu grows."""

import math

from mesoatom.params import DimensionlessParams
from mesoatom.spectrum import find_level

ZA = 1 / 137.036


def flat(n, l):
    k = math.sqrt((l + 0.5) ** 2 - ZA**2)
    return 1 / math.sqrt(1 + ZA**2 / (n + k + 0.5) ** 2)


def main():
    print(f"{'mu':>8} " + " ".join(f"{f'(n={n},l={l})':>14}" for n, l in [(0, 0), (1, 0), (0, 1), (2, 2)]))
    for e in range(4, 15):
        mu = 10.0**e
        p = DimensionlessParams(mu, ZA, 0)
        errs = []
        for n, l in [(0, 0), (1, 0), (0, 1), (2, 2)]:
            lv = find_level(p, n, 2 * l)
            errs.append(abs(lv.eps / mu - flat(n, l)) / flat(n, l))
        print(f"{mu:8.0e} " + " ".join(f"{x:14.3e}" for x in errs))


if __name__ == "__main__":
    main()
