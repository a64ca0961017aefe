"""Levels above the rest energy: mu < eps < sqrt(mu^2 + 1), checked by shooting.

Curvature lifts the continuum threshold from mu to sqrt(mu^2 + 1), so the
top levels of a channel can sit above mu while still decaying.
"""

import math

from mesoatom.oracle import find_eigenvalues
from mesoatom.params import DimensionlessParams
from mesoatom.spectrum import build_spectrum
from mesoatom.wavefunction import radial_profile, sobolev_norm

CASES = [(10.0, 0.3, 1), (10.0, 0.3, 2), (2.0, 0.49, 0), (30.0, 0.45, 0), (50.0, 0.49, 4)]


def main():
    print(f"{'mu':>5} {'Za':>5} {'2q':>3} {'n':>2} {'2l':>3} {'eps - mu':>12} {'edge - eps':>12} {'lambda':>10} {'oracle rel err':>15} {'Sobolev':>10}")
    for mu, za, two_q in CASES:
        p = DimensionlessParams(mu, za, two_q)
        edge = math.sqrt(mu * mu + 1)
        for lv in build_spectrum(p).levels:
            if lv.eps <= mu:
                continue
            roots = find_eigenvalues(lv.two_l / 2, two_q, za, mu)
            err = min(abs(r - lv.eps) for r in roots) / lv.eps if roots else math.inf
            s = sobolev_norm(radial_profile(lv, p))
            print(f"{mu:5g} {za:5g} {two_q:3d} {lv.n:2d} {lv.two_l:3d} {lv.eps - mu:12.4e} {edge - lv.eps:12.4e} {lv.lam:10.4f} {err:15.2e} {s:10.4g}")


if __name__ == "__main__":
    main()
