"""Caps N0 and |q|0 for a pion bound to a unit-charge dyon, versus curvature radius."""

import argparse

import numpy as np

from mesoatom.constants import PION_MASS_G, PRESETS
from mesoatom.params import PhysicalParams, from_physical
from mesoatom.quantum_numbers import spectrum_caps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Z", type=int, default=1)
    ap.add_argument("--log-a", type=float, nargs=3, default=(-14.0, 30.0, 12), metavar=("LO", "HI", "COUNT"))
    args = ap.parse_args()

    print(PRESETS["pion-cosmological"]["provenance"])
    print(f"{'a_cm':>10} {'mu':>12} {'N0':>12} {'|q|0':>12} {'|q|0/N0^2':>10}")
    for log_a in np.linspace(args.log_a[0], args.log_a[1], int(args.log_a[2])):
        p = PhysicalParams.with_two_q(a=10.0**log_a, m0=PION_MASS_G, Z=args.Z, two_q=0)
        d = from_physical(p)
        b = spectrum_caps(d.mu, d.z_alpha)
        ratio = b.q0_cap / b.n0_cap**2 if b.n0_cap > 0.5 else float("nan")
        print(f"{p.a:10.3e} {d.mu:12.4e} {b.n0_cap:12.4e} {b.q0_cap:12.4e} {ratio:10.6f}")


if __name__ == "__main__":
    main()
