"""Uniformity statistic of saddle phases at the real zeros for growing order."""
from __future__ import annotations

import argparse
from fractions import Fraction

import numpy as np

from pflab.bellgen import Map1D, bell_table
from pflab.rotach import phase_spectrum

VARIANTS = {
    "logistic 1": Map1D.logistic(1),
    "logistic 2": Map1D.logistic(2),
    "hermitian m=3": Map1D.m_hermitian(1, 3),
    "cubic +1/40": Map1D.from_coeffs([0, 1, Fraction(-1, 2), Fraction(1, 40)]),
    "cubic +1/20": Map1D.from_coeffs([0, 1, Fraction(-1, 2), Fraction(1, 20)]),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=[16, 24, 32, 48, 64])
    args = ap.parse_args()
    rows = []
    for name, f in VARIANTS.items():
        table = bell_table(f, max(args.orders))
        ks = [phase_spectrum(table, n).uniformity_stat for n in args.orders]
        rows.append(ks)
        print(f"{name:>14}: " + " ".join(f"{v:.3f}" for v in ks))
    print(f"{'median':>14}: " + " ".join(f"{v:.3f}" for v in np.median(rows, axis=0)))


if __name__ == "__main__":
    main()
