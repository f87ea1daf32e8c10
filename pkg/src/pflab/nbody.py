"""Arrowhead Hessian of the reduced n-body problem around a central mass.

``M`` has ``M[0,0] = sum c``, ``M[0,l] = M[l,0] = -c_l`` and ``M[l,l] = c_l``.
Its characteristic polynomial follows from ``Pi(lambda) = prod (lambda - c_l)``
and is built two independent ways in exact arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import InternalMismatch, ZeroSeparation
from .polycore import Polynomial, sym_eig


def cs_from_potential(eps: Sequence[float], M: float, r: Sequence[float],
                      g1: Callable, g2: Callable, euclidean: bool = False) -> np.ndarray:
    """Diagonal curvatures ``c_l`` of the star-planet potential.

    Default reading: ``r_l`` is the squared separation, giving
    ``c_l = M eps_l (4 r_l g''(r_l) + 2 g'(r_l))``.  With ``euclidean=True``
    the kernel takes the plain distance and ``c_l = M eps_l g''(r_l)``.
    """
    eps = np.asarray(eps, dtype=float)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ZeroSeparation("separations must be positive")
    if np.any(eps < 0) or M < 0:
        raise ValueError("masses must be nonnegative")
    d1 = np.array([g1(v) for v in r], dtype=float)
    d2 = np.array([g2(v) for v in r], dtype=float)
    if euclidean:
        return M * eps * d2
    return M * eps * (4 * r * d2 + 2 * d1)


@dataclass(frozen=True)
class ArrowheadSpec:
    c: tuple

    @property
    def n(self) -> int:
        return len(self.c) + 1

    @property
    def c1(self):
        return sum(self.c)

    def matrix(self, exact: bool = False):
        n = self.n
        if exact:
            c = [Fraction(v) for v in self.c]
            M = [[Fraction(0)] * n for _ in range(n)]
            M[0][0] = sum(c, Fraction(0))
            for l, v in enumerate(c, start=1):
                M[0][l] = M[l][0] = -v
                M[l][l] = v
            return M
        c = np.asarray(self.c, dtype=float)
        M = np.zeros((n, n))
        M[0, 0] = c.sum()
        M[0, 1:] = M[1:, 0] = -c
        M[1:, 1:] += np.diag(c)
        return M


@dataclass(frozen=True)
class CharPoly:
    Pi: Polynomial
    sigma: tuple       # elementary symmetric functions sigma_0..sigma_{n-1}
    Delta: Polynomial  # det(M - lambda I)


def _elementary(c: Sequence[Fraction]) -> list[Fraction]:
    e = [Fraction(1)]
    for v in c:
        e = [a - v * b for a, b in zip(e + [Fraction(0)], [Fraction(0)] + e)]
    # e now holds the coefficients of prod(1 - v t) = sum (-1)^k sigma_k t^k
    return [x * (-1) ** k for k, x in enumerate(e)]


def arrowhead_charpoly(c: Sequence) -> CharPoly:
    """``Delta(lambda) = det(M - lambda I)`` by two exact routes.

    (a) ``(-1)^(n+1) lambda^(n+2) d/dlambda[lambda^-n Pi(lambda)]``, which
        gives ``(-1)^(n+1) (j - n) p_j`` at degree ``j + 1``;
    (b) ``(-1)^n sum_{k=0}^{n-1} (-1)^k (k+1) sigma_k lambda^(n-k)``.
    """
    if len(c) < 1:
        raise ValueError("need at least one c value")
    cq = [Fraction(v) for v in c]
    n = len(cq) + 1
    Pi = Polynomial.from_roots(cq)
    p = [Fraction(Pi.coeff(j)) for j in range(n)]
    a = [Fraction(0)] * (n + 1)
    for j in range(n):
        a[j + 1] = (-1) ** (n + 1) * (j - n) * p[j]
    sig = _elementary(cq)
    b = [Fraction(0)] * (n + 1)
    for k in range(n):
        b[n - k] += (-1) ** n * (-1) ** k * (k + 1) * sig[k]
    if a != b:
        raise InternalMismatch("derivative identity and symmetric expansion disagree")
    return CharPoly(Pi=Pi, sigma=tuple(sig), Delta=Polynomial(tuple(a)))


def det_direct(M, lam) -> float:
    """``det(M - lam I)`` by Gaussian elimination with partial pivoting."""
    A = np.array(M, dtype=float) - lam * np.eye(len(M))
    n = len(A)
    det = 1.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(A[k:, k])))
        if A[piv, k] == 0:
            return 0.0
        if piv != k:
            A[[k, piv]] = A[[piv, k]]
            det = -det
        det *= A[k, k]
        A[k + 1:, k:] -= np.outer(A[k + 1:, k] / A[k, k], A[k, k:])
    return det


@dataclass(frozen=True)
class ArrowheadReport:
    eigenvalues: np.ndarray
    c_sorted: np.ndarray
    interlaced: bool
    zero_present: bool
    trace_ok: bool


def arrowhead_eigs(spec: ArrowheadSpec) -> ArrowheadReport:
    """Spectrum of ``M`` with the interlacing verdict ``c_l <= lambda_l <= c_{l+1}``."""
    M = spec.matrix()
    if spec.n == 1:
        return ArrowheadReport(np.zeros(1), np.zeros(0), True, True, True)
    w = np.sort(sym_eig(M).eigenvalues)
    scale = max(np.linalg.norm(M), 1e-300)
    c = np.sort(np.asarray(spec.c, dtype=float))
    tol = 1e-10 * scale
    zero = abs(w[0]) <= tol
    lam = w[1:]
    ok = zero and lam[-1] > c[-1] - tol
    for l in range(len(c) - 1):
        ok &= c[l] - tol <= lam[l] <= c[l + 1] + tol
    trace_ok = abs(w.sum() - 2 * c.sum()) <= tol * len(w)
    return ArrowheadReport(eigenvalues=w, c_sorted=c, interlaced=bool(ok),
                           zero_present=bool(zero), trace_ok=bool(trace_ok))


def sample_cs(n: int, low: float, high: float, seed: int) -> np.ndarray:
    """Seeded uniform ``c`` values on ``(low, high)``."""
    return np.random.default_rng(seed).uniform(low, high, size=n)
