"""Polynomial arithmetic, root finding and symmetric eigen-decomposition.

Coefficients are stored in ascending degree.  Exact ``Fraction`` coefficients
are kept exact by every arithmetic operation; floats and complex numbers are
accepted as well.  Conversion to floating point happens only inside
:func:`poly_roots`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Complex, Rational
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .errors import NonConvergence, NotSymmetric, ZeroPolynomial

ROOT_TOL = 1e-10
REALITY_TOL = 1e-8
CLUSTER_RADIUS = 1e-7


def _is_zero(c) -> bool:
    return c == 0


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple = ()

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def rational(cls, coeffs: Iterable) -> "Polynomial":
        """Build from anything ``Fraction`` accepts (ints, strings, floats)."""
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls((0,) * k + (c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def scalar_kind(self) -> str:
        if all(isinstance(c, Rational) for c in self.coeffs):
            return "rational"
        if all(not isinstance(c, complex) and not isinstance(c, np.complexfloating)
               for c in self.coeffs):
            return "real"
        return "complex"

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        return poly_eval(self, x)

    def deriv(self) -> "Polynomial":
        return poly_derive(self)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Polynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def compose(self, inner: "Polynomial") -> "Polynomial":
        out = Polynomial(())
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def shift(self, c) -> "Polynomial":
        """Return ``x -> p(x + c)``."""
        return self.compose(Polynomial((c, 1)))

    def to_complex(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Complex):
        return Polynomial((x,))
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


def poly_eval(p: Polynomial, x):
    """Horner evaluation.  Exact when both ``p`` and ``x`` are rational."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_derive(p: Polynomial) -> Polynomial:
    return Polynomial(tuple(k * c for k, c in enumerate(p.coeffs) if k > 0))


@dataclass(frozen=True)
class RootSet:
    """Roots listed with multiplicity; ``cluster`` groups repeated roots."""

    roots: np.ndarray
    residuals: np.ndarray
    real_flags: np.ndarray
    cluster: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.roots)

    def clusters(self) -> list[tuple[complex, int]]:
        """Distinct roots with their multiplicities, in cluster order."""
        out = []
        for cid in np.unique(self.cluster):
            idx = np.flatnonzero(self.cluster == cid)
            out.append((complex(self.roots[idx[0]]), len(idx)))
        return out

    def real_roots(self) -> list[tuple[float, int]]:
        """Distinct real roots (ascending) with multiplicities."""
        out = []
        for cid in np.unique(self.cluster):
            idx = np.flatnonzero(self.cluster == cid)
            if self.real_flags[idx[0]]:
                out.append((float(self.roots[idx[0]].real), len(idx)))
        out.sort()
        return out


def _backward_error(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    # |p(z)| / sum |c_k| |z|^k, the relative backward error of each root
    num = np.zeros_like(z, dtype=complex)
    den = np.zeros(z.shape, dtype=float)
    az = np.abs(z)
    for c in coeffs[::-1]:
        num = num * z + c
        den = den * az + abs(c)
    den = np.where(den == 0, 1.0, den)
    return np.abs(num) / den


def _companion_roots(coeffs: np.ndarray) -> np.ndarray:
    # numpy's polyroots builds the scaled companion matrix and calls eigvals
    return np.polynomial.polynomial.polyroots(coeffs).astype(complex)


def _newton_float(coeffs: np.ndarray, z: np.ndarray, steps: int = 4) -> np.ndarray:
    dcoeffs = np.arange(1, len(coeffs)) * coeffs[1:]
    z = z.copy()
    for _ in range(steps):
        pz = np.polynomial.polynomial.polyval(z, coeffs)
        dz = np.polynomial.polynomial.polyval(z, dcoeffs)
        ok = dz != 0
        step = np.zeros_like(z)
        step[ok] = pz[ok] / dz[ok]
        trial = z - step
        better = (np.abs(np.polynomial.polynomial.polyval(trial, coeffs))
                  <= np.abs(pz))
        z = np.where(better, trial, z)
    return z


def _to_mpc(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    if isinstance(c, Rational):
        return mpmath.mpf(int(c))
    return mpmath.mpc(complex(c))


def _newton_mp(mcoeffs, z0: complex, steps: int = 12):
    z = mpmath.mpc(z0)
    for _ in range(steps):
        pz = mpmath.mpc(0)
        dz = mpmath.mpc(0)
        for c in reversed(mcoeffs):
            dz = dz * z + pz
            pz = pz * z + c
        if dz == 0:
            break
        step = pz / dz
        z -= step
        if abs(step) <= mpmath.mpf(10) ** (-mpmath.mp.dps + 5) * (1 + abs(z)):
            break
    return z


def _vieta_ok(coeffs: np.ndarray, z: np.ndarray) -> bool:
    lead = coeffs[-1]
    expected = -coeffs[-2] / lead if len(coeffs) > 1 else 0
    scale = np.sum(np.abs(z)) + abs(expected) + 1.0
    return abs(np.sum(z) - expected) <= 1e-8 * scale


def _merge_clusters(z: np.ndarray, radius: float) -> tuple[np.ndarray, np.ndarray]:
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radius * (1 + max(abs(z[i]), abs(z[j]))):
                parent[find(i)] = find(j)
    roots = [find(i) for i in range(n)]
    out = z.copy()
    labels = np.empty(n, dtype=int)
    order = {}
    for i, r in enumerate(roots):
        labels[i] = order.setdefault(r, len(order))
    for cid in range(len(order)):
        idx = labels == cid
        out[idx] = z[idx].mean()
    return out, labels


def poly_roots(p: Polynomial, root_tol: float = ROOT_TOL,
               reality_tol: float = REALITY_TOL,
               cluster_radius: float = CLUSTER_RADIUS) -> RootSet:
    """All complex roots of ``p`` with multiplicity, Newton-polished.

    The residual of a root is its relative backward error
    ``|p(z)| / sum_k |c_k| |z|^k``.  Exact zero coefficients at the bottom
    are split off as an exact root at the origin.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot take roots of the zero polynomial")
    if p.degree < 1:
        raise ValueError("poly_roots needs degree >= 1")

    k0 = 0
    while _is_zero(p.coeffs[k0]):
        k0 += 1
    rest = p.coeffs[k0:]
    fcoeffs = np.array([complex(c) for c in rest], dtype=complex)
    found = np.zeros(0, dtype=complex)
    if len(rest) > 1:
        seeds = _newton_float(fcoeffs, _companion_roots(fcoeffs))
        exact_input = p.scalar_kind == "rational"
        found = seeds
        if exact_input or not _vieta_ok(fcoeffs, seeds):
            found = _mp_polish(rest, seeds)
        if (np.max(_backward_error(fcoeffs, found)) > root_tol
                or not _vieta_ok(fcoeffs, found)):
            found = _mp_fallback(rest, fcoeffs, root_tol)

    z = np.concatenate([np.zeros(k0, dtype=complex), found])
    res = np.concatenate([np.zeros(k0), _backward_error(fcoeffs, found)])
    z, labels = _merge_clusters(z, cluster_radius)
    flags = np.abs(z.imag) <= reality_tol * (1 + np.abs(z))
    z = np.where(flags, z.real + 0j, z)
    order = np.lexsort((z.imag, z.real))
    return RootSet(roots=z[order], residuals=res[order], real_flags=flags[order],
                   cluster=labels[order])


def _mp_polish(rest, seeds: np.ndarray) -> np.ndarray:
    with mpmath.workdps(40):
        mc = [_to_mpc(c) for c in rest]
        return np.array([complex(_newton_mp(mc, s)) for s in seeds], dtype=complex)


def _mp_fallback(rest, fcoeffs: np.ndarray, root_tol: float) -> np.ndarray:
    for dps in (50, 100):
        with mpmath.workdps(dps):
            mc = [_to_mpc(c) for c in rest]
            try:
                rr = mpmath.polyroots(mc[::-1], maxsteps=400, extraprec=2 * dps)
            except mpmath.libmp.NoConvergence:
                continue
        z = np.array([complex(r) for r in rr], dtype=complex)
        if np.max(_backward_error(fcoeffs, z)) <= root_tol:
            return z
    raise NonConvergence(f"roots of degree-{len(rest) - 1} polynomial "
                         "failed the residual contract")


@dataclass(frozen=True)
class SymmetricEig:
    eigenvalues: np.ndarray
    basis: np.ndarray


def sym_eig(M: Sequence[Sequence[float]] | np.ndarray) -> SymmetricEig:
    """Eigen-decomposition of a real symmetric matrix, ascending eigenvalues.

    Eigenvector signs are fixed so the largest-magnitude entry of every
    column is positive, which keeps outputs reproducible.
    """
    A = np.atleast_2d(np.asarray(M, dtype=float))
    if A.shape[0] != A.shape[1]:
        raise NotSymmetric(f"matrix is not square: {A.shape}")
    scale = max(np.max(np.abs(A)), 1.0) if A.size else 1.0
    if np.max(np.abs(A - A.T), initial=0.0) > 1e-12 * scale:
        raise NotSymmetric("matrix is not symmetric within 1e-12 relative")
    w, V = np.linalg.eigh((A + A.T) / 2)
    for j in range(V.shape[1]):
        i = np.argmax(np.abs(V[:, j]))
        if V[i, j] < 0:
            V[:, j] = -V[:, j]
    return SymmetricEig(eigenvalues=w, basis=V)
