"""Saddle-point densities q and p for the logistic family versus their closed forms."""
from __future__ import annotations

import argparse

import numpy as np

from pflab.bellgen import Map1D
from pflab.rotach import invariant_density, zero_density


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambdas", type=float, nargs="+", default=[1.0, 2.0, 4.0])
    ap.add_argument("--num", type=int, default=40_000)
    args = ap.parse_args()
    for lam in args.lambdas:
        edge = 4 / lam ** 2
        s = np.linspace(0, edge, args.num + 1)[1:]
        q = zero_density(Map1D.logistic(lam), s)
        exact_q = lam / (2 * np.pi) * np.sqrt(np.clip(1 / s - lam ** 2 / 4, 0, None))
        p = invariant_density(q)
        exact_p = lam / (2 * np.pi * np.sqrt(4 * p.s - p.s ** 2 * lam ** 2))
        print(f"lambda={lam:g} support={q.support} mass={q.normalization:.7f} "
              f"max|dq|={np.max(np.abs(q.values - exact_q)):.2e} "
              f"max rel dp={np.max(np.abs(p.values / exact_p - 1)):.2e}")


if __name__ == "__main__":
    main()
