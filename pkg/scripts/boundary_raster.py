"""Saddle-based |mu| raster for z -> alpha z + z^m/m next to a direct escape raster."""
from __future__ import annotations

import argparse

import numpy as np

from pflab.dynamics import orbit_escape_raster
from pflab.rotach import escape_boundary


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--s", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default=None, help="optional .npz path")
    args = ap.parse_args()
    re, im = np.meshgrid(np.linspace(-3, 2, args.n), np.linspace(-2, 2, args.n))
    alpha = re + 1j * im
    br = escape_boundary(alpha, args.m, args.s, workers=args.threads)
    alive = orbit_escape_raster(alpha, args.m)
    labels, counts = np.unique(br.labels, return_counts=True)
    print(dict(zip(labels.tolist(), counts.tolist())))
    has = br.labels != "no-saddle"
    agree = np.mean((br.labels[has] == "bounded") == alive[has]) if has.any() else float("nan")
    print(f"agreement of saddle verdict with orbit escape: {agree:.3f}")
    if args.out:
        np.savez(args.out, alpha=alpha, mu_abs=br.mu_abs, labels=br.labels, alive=alive)


if __name__ == "__main__":
    main()
