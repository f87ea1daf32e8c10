"""Lorenz fixed points, spectra, quadratic rotation checks and surface residuals."""
from __future__ import annotations

import argparse

import numpy as np

from pflab.odeflow import (VectorFieldSystem, differential_iteration,
                           field_fixed_points, jacobian_spectrum,
                           l3_zero_fraction, lorenz_decomposition,
                           surface_statistics)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sigma", type=float, default=10.0)
    ap.add_argument("--rho", type=float, default=28.0)
    ap.add_argument("--beta", type=float, default=8 / 3)
    ap.add_argument("--delta", type=float, default=0.005)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    s, r, b = args.sigma, args.rho, args.beta
    f = VectorFieldSystem.lorenz(s, r, b)
    for p in field_fixed_points(f):
        rep = jacobian_spectrum(f, p)
        print(f"point {np.round(p, 6)} |F|={np.linalg.norm(f(p)):.1e} "
              f"eig={np.round(rep.eigenvalues, 4)} times={np.round(rep.fredholm_times, 4)}")
    dirs = np.random.default_rng(args.seed).normal(size=(100, 3))
    dec = [lorenz_decomposition(s, r, b, y, args.delta) for y in dirs]
    print(f"max TtT-I={max(d.orth_residual for d in dec):.1e} "
          f"max TtQT-diag={max(d.diag_residual for d in dec):.1e}")
    print(f"l3 near-zero share={l3_zero_fraction(s, r, b, args.delta, dirs):.3f}")
    traj = differential_iteration(f, args.delta).iterate([1.0, 1.0, 1.0], 20_000)
    for k, v in surface_statistics(s, r, b, traj[10_000:]).items():
        print(f"{k}={v:.4g}")


if __name__ == "__main__":
    main()
