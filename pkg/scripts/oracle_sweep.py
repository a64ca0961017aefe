"""Closed-form levels against the shooting solver over a random parameter bank.

    python3 scripts/oracle_sweep.py --count 1000 --seed 7
"""

import argparse
import time

import numpy as np

from mesoatom.oracle import ShootingConfig, verify_spectrum
from mesoatom.params import DimensionlessParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--mu", type=float, nargs=2, default=(2.0, 50.0))
    ap.add_argument("--za", type=float, nargs=2, default=(0.02, 0.49))
    ap.add_argument("--max-two-q", type=int, default=4)
    ap.add_argument("--bracket-pad", type=float, default=ShootingConfig.bracket_pad)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    cfg = ShootingConfig(bracket_pad=args.bracket_pad)
    t0 = time.perf_counter()
    levels = 0
    worst = (0.0, None)
    bad = []
    min_lam = np.inf
    for _ in range(args.count):
        p = DimensionlessParams(
            float(rng.uniform(*args.mu)),
            float(rng.uniform(*args.za)),
            int(rng.integers(-args.max_two_q, args.max_two_q + 1)),
        )
        rep = verify_spectrum(p, cfg)
        levels += rep.levels_checked
        if rep.levels_checked and rep.max_rel_err > worst[0]:
            worst = (rep.max_rel_err, p)
        if not rep.completeness_ok:
            bad.append((p, [(c.two_l, len(c.closed_form), len(c.roots)) for c in rep.channels]))
        for c in rep.channels:
            for e in c.closed_form:
                min_lam = min(min_lam, np.sqrt(max(0.0, p.mu**2 + 1 - e * e)))
    dt = time.perf_counter() - t0
    print(f"sets {args.count}  levels {levels}  time {dt:.1f} s")
    print(f"max relative error {worst[0]:.3e}  at {worst[1]}")
    print(f"smallest decay exponent in bank {min_lam:.3e}")
    print(f"channels with a count mismatch: {len(bad)}")
    for p, ch in bad:
        print(f"  {p}  (2l, closed form, roots): {ch}")


if __name__ == "__main__":
    main()
