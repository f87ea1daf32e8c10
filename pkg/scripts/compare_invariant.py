"""Empirical orbit measure of a logistic map against the saddle-point prediction."""
from __future__ import annotations

import argparse

import numpy as np

from pflab.bellgen import Map1D
from pflab.dynamics import arcsine_cdf, empirical_measure, iterate_map, ks_distance
from pflab.rotach import predicted_cdf, zero_density


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lam", type=float, nargs="+", default=[4.0, 3.8, 3.6])
    ap.add_argument("--points", type=int, default=1_000_000)
    args = ap.parse_args()
    for lam in args.lam:
        f = Map1D.logistic(lam)
        tr = iterate_map(f, 0.7 * 2 * lam, n_burn=10_000, n_keep=args.points)
        if tr.escaped:
            print(f"lambda={lam:g}: orbit escaped at {tr.escape_index}")
            continue
        emp = empirical_measure(tr)
        probe = zero_density(f, np.geomspace(1e-6, 1e3, 4000))
        q = zero_density(f, np.linspace(probe.support[1] * 1e-9, probe.support[1], 20_000))
        print(f"lambda={lam:g} support={emp.support} "
              f"KS(predicted)={ks_distance(emp, predicted_cdf(q)):.4f} "
              f"KS(arcsine)={ks_distance(emp, arcsine_cdf):.4f}")


if __name__ == "__main__":
    main()
