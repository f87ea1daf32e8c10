"""Scaled real zeros of H_64 for the unit logistic map against the semicircle law."""
from __future__ import annotations

import argparse

import numpy as np
from scipy import stats

from pflab.bellgen import Map1D, bell_table, zero_spectrum


def semicircle_cdf(t):
    t = np.clip(t, -1, 1)
    return 0.5 + (t * np.sqrt(1 - t * t) + np.arcsin(t)) / np.pi


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=64)
    args = ap.parse_args()
    zs = zero_spectrum(bell_table(Map1D.logistic(1), args.n))
    t = np.sqrt(zs.nonzero_s()) / 2
    sample = np.concatenate([t, -t])
    print(f"n={args.n} nonzero zeros={len(t)} max t={t.max():.6f}")
    print(f"KS vs semicircle = {stats.kstest(sample, semicircle_cdf).statistic:.4f}")


if __name__ == "__main__":
    main()
