"""Bell polynomials of a 1D map, gap polynomials and the PF coefficient solve.

For a map ``f`` with ``f(0) = 0`` the Bell polynomial ``H_n(y)`` is defined by
``d^n/da^n exp(y f(a)) = H_n(y, a) exp(y f(a))`` evaluated at ``a = 0``.
Everything here is exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import OrderTooLarge, Resonance
from .polycore import Polynomial, poly_roots, ROOT_TOL

ORDER_CAP = 128


@dataclass(frozen=True)
class Map1D:
    """Polynomial map with the fixed point of reference at the origin."""

    f: Polynomial

    def __post_init__(self):
        f = Polynomial.rational(self.f.coeffs)
        if f.degree < 1:
            raise ValueError("map must have degree >= 1")
        if f.coeff(0) != 0:
            raise ValueError("map must fix the origin: f(0) = 0")
        object.__setattr__(self, "f", f)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "Map1D":
        return cls(Polynomial.rational(coeffs))

    @classmethod
    def logistic(cls, lam) -> "Map1D":
        """``f(a) = lam*a - a^2/2``."""
        return cls.from_coeffs([0, Fraction(lam), Fraction(-1, 2)])

    @classmethod
    def m_hermitian(cls, lam, m: int) -> "Map1D":
        """``f(a) = lam*a - a^m/m``."""
        if m < 2:
            raise ValueError("m must be >= 2")
        cs = [Fraction(0)] * (m + 1)
        cs[1] += Fraction(lam)
        cs[m] -= Fraction(1, m)
        return cls.from_coeffs(cs)

    @classmethod
    def linear(cls, lam) -> "Map1D":
        return cls.from_coeffs([0, Fraction(lam)])

    @property
    def multiplier(self) -> Fraction:
        return self.f.coeff(1)

    @property
    def degree(self) -> int:
        return self.f.degree

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.f.coeffs])


@dataclass(frozen=True)
class BellTable:
    map: Map1D
    n: int
    polys: tuple  # H_1 .. H_n

    def __getitem__(self, m: int) -> Polynomial:
        if m == 0:
            return Polynomial((Fraction(1),))
        if not 1 <= m <= self.n:
            raise IndexError(f"H_{m} not in table of order {self.n}")
        return self.polys[m - 1]

    def h(self, m: int, k: int) -> Fraction:
        """Coefficient of ``y^k`` in ``H_m``."""
        return Fraction(self[m].coeff(k))


def bell_table(map: Map1D, n: int, cap: int = ORDER_CAP) -> BellTable:
    """``H_1..H_n`` via ``H_{m+1}(y,a) = dH_m/da + y f'(a) H_m(y,a)`` at ``a = 0``.

    ``H_m(y, a)`` is carried as a power series in ``a`` truncated at degree
    ``n - m``; that is all the later steps ever differentiate.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if n > cap:
        raise OrderTooLarge(f"order {n} exceeds cap {cap}")
    fp = map.f.deriv().coeffs
    zero = Fraction(0)
    # series[j] = list of y-coefficients of the a^j term
    series: list[list[Fraction]] = [[Fraction(1)]] + [[zero] for _ in range(n)]
    polys = []
    for m in range(n):
        keep = n - m - 1
        nxt = []
        for j in range(keep + 1):
            acc = [zero] * (m + 2)
            if j + 1 < len(series):
                for k, c in enumerate(series[j + 1]):
                    if c:
                        acc[k] += (j + 1) * c
            for i, fi in enumerate(fp):
                if i > j or not fi:
                    continue
                for k, c in enumerate(series[j - i]):
                    if c:
                        acc[k + 1] += fi * c
            nxt.append(acc)
        series = nxt
        polys.append(Polynomial(tuple(series[0])))
    return BellTable(map=map, n=n, polys=tuple(polys))


def gap_polynomial(table: BellTable, m: int) -> Polynomial:
    """``e^m(y) = y^m - H_m(y)``."""
    if not 1 <= m <= table.n:
        raise IndexError(f"gap order {m} outside 1..{table.n}")
    return Polynomial.monomial(m, Fraction(1)) - table[m]


@dataclass(frozen=True)
class PhiSolution:
    coefficients: tuple  # b*_0 .. b*_n
    residual: Polynomial
    b: Fraction

    def phi(self) -> Polynomial:
        """``Phi*_n(y) = 1 + sum_{0<m<=n} b*_m y^m``."""
        return Polynomial(tuple(self.coefficients))

    def phi_f(self, table: BellTable) -> Polynomial:
        """``1 + sum_{0<m<=n} b*_m H_m(y)``."""
        out = Polynomial((Fraction(1),))
        for m in range(1, len(self.coefficients)):
            out = out + self.coefficients[m] * table[m]
        return out


def pf_coefficients(table: BellTable, b=1) -> PhiSolution:
    """Solve the triangular system for ``b*_1 .. b*_{n-1}`` given ``b*_n = b``.

    The lower-degree coefficients of ``theta*_n = sum_{m<=n} b*_m e^m`` are
    cancelled degree by degree from ``n-1`` down to ``1``; the pivot at degree
    ``k`` is ``1 - lambda^k``.  Only the forced top term ``b(1-lambda^n) y^n``
    survives.
    """
    b = Fraction(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    n = table.n
    lam = table.map.multiplier
    for m in range(1, n):
        if 1 - lam ** m == 0:
            raise Resonance(m)
    gaps = [None] + [gap_polynomial(table, m) for m in range(1, n + 1)]
    coef = [Fraction(0)] * (n + 1)
    coef[0] = Fraction(1)
    coef[n] = b
    for k in range(n - 1, 0, -1):
        # degree-k coefficient of sum_{m>k} b*_m e^m, already known
        known = sum((coef[m] * Fraction(gaps[m].coeff(k)) for m in range(k + 1, n + 1)),
                    Fraction(0))
        coef[k] = -known / Fraction(gaps[k].coeff(k))
    residual = Polynomial((Fraction(0),))
    for m in range(1, n + 1):
        residual = residual + coef[m] * gaps[m]
    return PhiSolution(coefficients=tuple(coef), residual=residual, b=b)


@dataclass(frozen=True)
class ZeroSet:
    n: int
    y: np.ndarray  # distinct real zeros, ascending
    multiplicity: np.ndarray
    residuals: np.ndarray

    @property
    def s(self) -> np.ndarray:
        return self.y / self.n

    def nonzero_s(self) -> np.ndarray:
        """Normalized zeros with the origin removed (with multiplicity)."""
        keep = self.y != 0
        return np.repeat(self.s[keep], self.multiplicity[keep])


def zero_spectrum(table: BellTable, n: int | None = None) -> ZeroSet:
    """Real zeros of ``H_n`` and their normalization ``s = y/n``."""
    n = table.n if n is None else n
    H = table[n]
    rs = poly_roots(H)
    real = rs.real_roots()
    ys = np.array([y for y, _ in real], dtype=float)
    mult = np.array([k for _, k in real], dtype=int)
    res = np.array([_rel_residual(H, y) for y in ys])
    return ZeroSet(n=n, y=ys, multiplicity=mult, residuals=res)


def _rel_residual(p: Polynomial, y: float) -> float:
    # exact evaluation at the float root, scaled by sum |c_k| |y|^k
    yq = Fraction(y)
    num = abs(p(yq))
    den = sum(abs(Fraction(c)) * abs(yq) ** k for k, c in enumerate(p.coeffs))
    return float(num / den) if den else 0.0


def is_root_ok(zs: ZeroSet, tol: float = ROOT_TOL) -> bool:
    return bool(np.all(zs.residuals <= tol))
