"""Independent reference implementations used only by the tests.

None of these share code paths with the package: Bell polynomials come from
the power series of exp(y f(a)), densities from their closed forms, and
determinants from sympy.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

import numpy as np


def bell_oracle(f_coeffs, n: int) -> list[Fraction]:
    """Coefficients (in y) of ``H_n = n! [a^n] exp(y f(a))``.

    With ``E = exp(y f)`` one has ``E' = y f' E``, so
    ``(k+1) E_{k+1} = y sum_j (j+1) f_{j+1} E_{k-j}`` on the a-coefficients.
    Each ``E_k`` is a list of y-coefficients.
    """
    f = [Fraction(c) for c in f_coeffs] + [Fraction(0)] * (n + 2)
    E = [[Fraction(1)]]
    for k in range(n):
        acc = [Fraction(0)] * (k + 2)
        for j in range(k + 1):
            w = (j + 1) * f[j + 1]
            if not w:
                continue
            for i, c in enumerate(E[k - j]):
                acc[i + 1] += w * c
        E.append([c / (k + 1) for c in acc])
    out = [c * factorial(n) for c in E[n]]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def logistic_q(s, lam):
    s = np.asarray(s, dtype=float)
    return lam / (2 * np.pi) * np.sqrt(np.clip(1 / s - lam ** 2 / 4, 0, None))


def logistic_p(x, lam):
    x = np.asarray(x, dtype=float)
    return lam / (2 * np.pi * np.sqrt(4 * x - x ** 2 * lam ** 2))


def semicircle_cdf(t):
    t = np.clip(np.asarray(t, dtype=float), -1, 1)
    return 0.5 + (t * np.sqrt(1 - t * t) + np.arcsin(t)) / np.pi


def arcsine_cdf(u):
    u = np.clip(np.asarray(u, dtype=float), 0, 1)
    return 2 / np.pi * np.arcsin(np.sqrt(u))


def ks_uniform(x) -> float:
    """One-sample Kolmogorov statistic against U[0,1], written out by hand."""
    x = np.sort(np.asarray(x, dtype=float))
    n = len(x)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - x), np.max(x - (i - 1) / n)))


def arrowhead_det_sympy(c, lam):
    import sympy as sp
    n = len(c) + 1
    M = sp.zeros(n, n)
    M[0, 0] = sum(sp.nsimplify(v) for v in c)
    for l, v in enumerate(c, start=1):
        v = sp.nsimplify(v)
        M[0, l] = M[l, 0] = -v
        M[l, l] = v
    return (M - sp.nsimplify(lam) * sp.eye(n)).det()
