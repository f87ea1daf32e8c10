"""Plancherel-Rotach saddle analysis of ``gamma(a) = s f(a) - ln a``.

Critical points solve ``s a f'(a) - 1 = 0``.  Among the non-real ones the
dominant saddle maximizes ``Re gamma``; ties go to the smaller ``|a|`` and
then to ``Im a > 0``.  The predicted density of normalized Bell zeros is
``q(s) = |Im f(alpha)| / pi`` at that saddle and the invariant density is
``p(x) = -x q'(x)``.
"""
from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import stats

from .bellgen import BellTable, Map1D, zero_spectrum
from .errors import (DegenerateForm, DegenerateParameter, NoComplexSaddle,
                     TooFewSamples)
from .polycore import REALITY_TOL, Polynomial, poly_roots, sym_eig

EDGE_TOL = 1e-10


def _coeffs_of(f) -> np.ndarray:
    if isinstance(f, Map1D):
        f = f.f
    if isinstance(f, Polynomial):
        return f.to_complex()
    return np.asarray(f, dtype=complex)


def _polyval(c: np.ndarray, z):
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for ck in c[::-1]:
        acc = acc * z + ck
    return acc


# -- single-point API -------------------------------------------------------

@dataclass(frozen=True)
class CriticalPoint:
    location: complex
    gamma_re: float
    gamma_im: float
    is_complex: bool


def _critical_poly(fc: np.ndarray, s) -> Polynomial:
    # s * a * f'(a) - 1
    cs = [complex(-1)] + [complex(s * k * fc[k]) for k in range(1, len(fc))]
    return Polynomial(tuple(cs))


def critical_points(f, s) -> list[CriticalPoint]:
    """All roots of ``s a f'(a) - 1`` with their ``gamma`` values."""
    if s == 0:
        raise ValueError("s must be nonzero")
    fc = _coeffs_of(f)
    rs = poly_roots(_critical_poly(fc, s))
    out = []
    for z, real in zip(rs.roots, rs.real_flags):
        z = complex(z)
        g = s * complex(_polyval(fc, z)) - np.log(z)
        out.append(CriticalPoint(location=z, gamma_re=float(g.real),
                                 gamma_im=float(g.imag), is_complex=not bool(real)))
    return out


def dominant_saddle(points: Sequence[CriticalPoint]) -> CriticalPoint:
    cands = [p for p in points if p.is_complex]
    if not cands:
        raise NoComplexSaddle("all critical points are real")
    best = max(p.gamma_re for p in cands)
    cands = [p for p in cands if p.gamma_re >= best - 1e-9 * (1 + abs(best))]
    small = min(abs(p.location) for p in cands)
    cands = [p for p in cands if abs(p.location) <= small + 1e-9 * (1 + small)]
    upper = [p for p in cands if p.location.imag > 0]
    return (upper or cands)[0]


# -- batched machinery -------------------------------------------------------

def _batch_roots(C: np.ndarray, polish: int = 3) -> np.ndarray:
    """Roots of many polynomials at once; ``C`` is (N, d+1) ascending."""
    N, d1 = C.shape
    d = d1 - 1
    if d == 1:
        return (-C[:, :1] / C[:, 1:2]).astype(complex)
    comp = np.zeros((N, d, d), dtype=complex)
    comp[:, 1:, :-1] = np.eye(d - 1)
    comp[:, :, -1] = -C[:, :-1] / C[:, -1:]
    Z = np.linalg.eigvals(comp)
    dC = C[:, 1:] * np.arange(1, d1)
    for _ in range(polish):
        P = np.zeros_like(Z)
        D = np.zeros_like(Z)
        for k in range(d, -1, -1):
            P = P * Z + C[:, k:k + 1]
        for k in range(d - 1, -1, -1):
            D = D * Z + dC[:, k:k + 1]
        step = np.divide(P, D, out=np.zeros_like(P), where=D != 0)
        Z = Z - step
    return Z


def _select_dominant(Z: np.ndarray, G: np.ndarray, cplx: np.ndarray) -> np.ndarray:
    """Index of the dominant saddle per row, -1 where no complex point."""
    gr = np.where(cplx, G.real, -np.inf)
    best = gr.max(axis=1, keepdims=True)
    cand = cplx & (gr >= best - 1e-9 * (1 + np.abs(best)))
    absz = np.where(cand, np.abs(Z), np.inf)
    small = absz.min(axis=1, keepdims=True)
    cand &= absz <= small + 1e-9 * (1 + small)
    score = cand * (1 + (Z.imag > 0))
    idx = score.argmax(axis=1)
    idx[~cplx.any(axis=1)] = -1
    return idx


def saddle_batch(f, s: np.ndarray):
    """Dominant saddle and its ``gamma`` for each ``s``; NaN where none."""
    fc = _coeffs_of(f)
    s = np.asarray(s, dtype=float)
    d = len(fc) - 1
    C = np.empty((len(s), d + 1), dtype=complex)
    C[:, 0] = -1
    for k in range(1, d + 1):
        C[:, k] = s * k * fc[k]
    Z = _batch_roots(C)
    G = s[:, None] * _polyval(fc, Z) - np.log(Z)
    cplx = np.abs(Z.imag) > REALITY_TOL * (1 + np.abs(Z))
    idx = _select_dominant(Z, G, cplx)
    rows = np.arange(len(s))
    alpha = np.where(idx >= 0, Z[rows, idx], np.nan + 0j)
    gamma = np.where(idx >= 0, G[rows, idx], np.nan + 0j)
    return alpha, gamma


def _has_complex(fc: np.ndarray, s: float) -> bool:
    a, _ = saddle_batch(fc, np.array([s]))
    return not np.isnan(a[0].real)


def _bisect_edge(fc, inside: float, outside: float, tol: float = EDGE_TOL) -> float:
    lo, hi = inside, outside
    while abs(hi - lo) > tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        if _has_complex(fc, mid):
            lo = mid
        else:
            hi = mid
    return lo if _has_complex(fc, lo) else hi


def _complex_near_zero(fc: np.ndarray, s0: float) -> bool:
    probe = s0 * np.geomspace(1e-6, 1.0, 64)
    a, _ = saddle_batch(fc, probe)
    return bool(np.all(~np.isnan(a.real)))


# -- densities --------------------------------------------------------------

@dataclass(frozen=True)
class DensityCurve:
    s: np.ndarray
    values: np.ndarray
    support: tuple[float, float]
    normalization: float
    kind: str
    intervals: tuple = ()
    clamped: int = 0

    def normalized(self) -> np.ndarray:
        return self.values / self.normalization if self.normalization else self.values

    def rescaled(self) -> tuple[np.ndarray, np.ndarray]:
        """Map the support affinely onto [0, 1] and renormalize to unit mass."""
        lo, hi = self.support
        x = (self.s - lo) / (hi - lo)
        v = self.values * (hi - lo)
        return x, v / self.normalization if self.normalization else v


def zero_density(f, s_grid: Sequence[float]) -> DensityCurve:
    """Predicted density of normalized real zeros on a positive grid."""
    s = np.asarray(s_grid, dtype=float)
    if np.any(s <= 0) or np.any(np.diff(s) <= 0):
        raise ValueError("s_grid must be positive and strictly ascending")
    fc = _coeffs_of(f)
    alpha, _ = saddle_batch(fc, s)
    inside = ~np.isnan(alpha.real)
    q = np.zeros_like(s)
    q[inside] = np.abs(_polyval(fc, alpha[inside]).imag) / np.pi

    intervals = []
    i = 0
    while i < len(s):
        if not inside[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(s) and inside[j + 1]:
            j += 1
        if i > 0:
            lo = _bisect_edge(fc, s[i], s[i - 1])
        elif _complex_near_zero(fc, s[0]):
            lo = 0.0
        else:
            lo = s[0]
        hi = _bisect_edge(fc, s[j], s[j + 1]) if j + 1 < len(s) else s[-1]
        intervals.append((lo, hi))
        i = j + 1
    intervals = [(float(a), float(b)) for a, b in intervals]
    support = (intervals[0][0], intervals[-1][1]) if intervals else (0.0, 0.0)
    return DensityCurve(s=s, values=q, support=support,
                        normalization=float(_cumulative_mass(s, q, support[0])[-1]) if intervals else 0.0,
                        kind="zero_density_q", intervals=tuple(intervals))


def invariant_density(q: DensityCurve) -> DensityCurve:
    """``p(x) = -x dq/dx`` on the interior 5%-95% of the support."""
    if q.kind != "zero_density_q":
        raise ValueError("invariant_density expects a zero_density_q curve")
    if len(q.s) < 5:
        raise TooFewSamples(f"need >= 5 samples, got {len(q.s)}")
    dq = np.gradient(q.values, q.s)
    p = -q.s * dq
    neg = p < 0
    p = np.where(neg, 0.0, p)
    lo, hi = q.support
    a, b = lo + 0.05 * (hi - lo), lo + 0.95 * (hi - lo)
    keep = (q.s >= a) & (q.s <= b)
    clamped = int(np.count_nonzero(neg & keep))
    if clamped:
        warnings.warn(f"clamped {clamped} negative density samples", RuntimeWarning)
    x, px = q.s[keep], p[keep]
    return DensityCurve(s=x, values=px, support=q.support,
                        normalization=float(np.trapezoid(px, x)) if len(x) > 1 else 0.0,
                        kind="invariant_density_p", intervals=q.intervals,
                        clamped=clamped)


def _cumulative_mass(s: np.ndarray, q: np.ndarray, lo: float) -> np.ndarray:
    """Running integral of ``q`` from ``lo``, trapezoid in ``t = sqrt(s - lo)``.

    The substitution keeps ``2 t q`` bounded at an inverse square-root edge,
    which is how ``q`` behaves at the origin; the integral starts at ``lo``
    by extending ``2 t q`` flat to ``t = 0``.
    """
    t = np.sqrt(np.maximum(s - lo, 0.0))
    g = 2 * t * q
    t = np.concatenate([[0.0], t])
    g = np.concatenate([[g[0]], g])
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (g[1:] + g[:-1]) * np.diff(t))])
    return cum[1:]


def predicted_cdf(q: DensityCurve):
    """CDF of ``p = -x q'`` on the support of ``q``, built from ``q`` itself.

    Integration by parts gives ``int_lo^x p = int_lo^x q - x q(x) + lo q(lo)``,
    which avoids differentiating near the square-root edges.  The result is a
    callable on the support mapped to [0, 1].
    """
    if q.kind != "zero_density_q":
        raise ValueError("predicted_cdf expects a zero_density_q curve")
    lo, hi = q.support
    keep = (q.s > lo) & (q.s < hi)
    s = np.concatenate([q.s[keep], [hi]])
    v = np.concatenate([q.values[keep], [0.0]])
    # lo * q(lo) vanishes: either lo = 0 or q has a square-root edge there
    F = _cumulative_mass(s, v, lo) - s * v
    s = np.concatenate([[lo], s])
    F = np.concatenate([[0.0], F])
    F = np.maximum.accumulate(np.clip(F, 0, None))
    F /= F[-1]

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.interp(lo + x * (hi - lo), s, F)

    return cdf


# -- phases ------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseSpectrum:
    s: np.ndarray
    phases: np.ndarray          # frac(Im gamma / pi)
    unwrapped: np.ndarray       # Im gamma / pi on the principal log branch
    rescaled: np.ndarray        # position inside the predicted phase window
    windows: dict
    uniformity_stat: float      # KS of ``rescaled`` against U[0,1]
    raw_uniformity_stat: float  # KS of ``phases`` against U[0,1]


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    out, i = [], 0
    while i < len(mask):
        if mask[i]:
            j = i
            while j + 1 < len(mask) and mask[j + 1]:
                j += 1
            out.append((i, j))
            i = j + 1
        else:
            i += 1
    return out


def _phase_window(fc: np.ndarray, s_branch: np.ndarray) -> tuple[float, float]:
    sign = np.sign(s_branch[0])
    top = 4.0 * np.max(np.abs(s_branch))
    grid = np.unique(np.concatenate([np.geomspace(1e-9 * top, top, 4000),
                                     np.abs(s_branch)])) * sign
    if sign < 0:
        grid = grid[::-1]
    alpha, gamma = saddle_batch(fc, grid)
    inside = ~np.isnan(alpha.real)
    u = gamma.imag / np.pi
    keep = np.zeros_like(inside)
    for i, j in _runs(inside):
        lo, hi = sorted((grid[i], grid[j]))
        if np.any((s_branch >= lo) & (s_branch <= hi)):
            keep[i:j + 1] = True
    return float(np.min(u[keep])), float(np.max(u[keep]))


def phase_spectrum(table: BellTable, n: int | None = None) -> PhaseSpectrum:
    """Phases ``frac(Im gamma(alpha(s_i)) / pi)`` at the normalized zeros.

    The predicted phases fill a window whose length equals the total mass of
    ``q`` on each sign branch (1/2 for the logistic family, where half of the
    zeros sit at the origin).  ``uniformity_stat`` tests uniformity inside
    that window; ``raw_uniformity_stat`` tests the bare fractional parts.
    """
    zs = zero_spectrum(table, n)
    s = zs.nonzero_s()
    if len(s) == 0:
        raise ValueError("no nonzero real zeros to analyse")
    fc = table.map.float_coeffs().astype(complex)
    alpha, gamma = saddle_batch(fc, s)
    if np.any(np.isnan(alpha.real)):
        bad = s[np.isnan(alpha.real)][0]
        raise NoComplexSaddle(f"no complex saddle at zero s = {bad:.6g}")
    u = gamma.imag / np.pi
    rescaled = np.empty_like(u)
    windows = {}
    for sign in (1, -1):
        sel = np.sign(s) == sign
        if not sel.any():
            continue
        lo, hi = _phase_window(fc, s[sel])
        windows[int(sign)] = (lo, hi)
        width = hi - lo
        rescaled[sel] = np.clip((u[sel] - lo) / width, 0, 1) if width > 0 else 0.5
    chi = np.mod(u, 1.0)
    return PhaseSpectrum(
        s=s, phases=chi, unwrapped=u, rescaled=rescaled, windows=windows,
        uniformity_stat=float(stats.kstest(rescaled, "uniform").statistic),
        raw_uniformity_stat=float(stats.kstest(chi, "uniform").statistic),
    )


# -- basins and quadratic forms ---------------------------------------------

def translate(f: Polynomial, c) -> Polynomial:
    """``f_c(u) = f(c + u) - c``, the map seen from the point ``c``."""
    return f.shift(c) - c


def basin_sign(f, alpha, beta, s, u, tol: float = 1e-12) -> int:
    """Sign of ``Re[s (f_alpha(u) - f_beta(u))]``; +1 means ``alpha`` dominates."""
    if isinstance(f, Map1D):
        f = f.f
    for c in (alpha, beta):
        if abs(complex(f(c)) - complex(c)) > 1e-9 * (1 + abs(complex(c))):
            raise ValueError(f"{c} is not a fixed point")
    fa, fb = translate(f, alpha), translate(f, beta)
    va, vb = complex(fa(u)), complex(fb(u))
    val = (s * (va - vb)).real
    scale = 1 + abs(s) * (abs(va) + abs(vb))
    if abs(val) <= tol * scale:
        return 0
    return 1 if val > 0 else -1


@dataclass(frozen=True)
class QuadraticSplit:
    Lambda: np.ndarray
    D: np.ndarray
    T: np.ndarray
    positive: tuple
    negative: tuple
    problems: dict  # axis -> Map1D for the negative (logistic-type) axes


def quadratic_split(lambda_vec, Q, s) -> QuadraticSplit:
    """Diagonalize ``s.Q`` and split ``gamma`` into independent 1D problems.

    ``Q`` is either a stack of component Hessians of shape (d, d, d), which is
    contracted with ``s``, or one (d, d) form shared by all components.
    """
    lam = np.atleast_1d(np.asarray(lambda_vec, dtype=float))
    s = np.atleast_1d(np.asarray(s, dtype=float))
    Q = np.asarray(Q, dtype=float)
    d = len(lam)
    if Q.ndim == 3:
        sQ = np.tensordot(s, Q, axes=1)
    else:
        sQ = np.atleast_2d(Q) * s.sum()
    if sQ.shape != (d, d):
        raise ValueError(f"form has shape {sQ.shape}, expected {(d, d)}")
    scale = max(np.max(np.abs(sQ)), 1e-300) ** d
    if abs(np.linalg.det(sQ)) <= 1e-10 * scale:
        raise DegenerateForm("s.Q is degenerate")
    eig = sym_eig(sQ)
    T = eig.basis
    Lam = T.T @ (lam * s)
    pos = tuple(int(i) for i in np.flatnonzero(eig.eigenvalues > 0))
    neg = tuple(int(i) for i in np.flatnonzero(eig.eigenvalues < 0))
    problems = {i: Map1D.from_coeffs([0, Fraction(float(Lam[i])),
                                      Fraction(float(eig.eigenvalues[i])) / 2])
                for i in neg if Lam[i] != 0}
    return QuadraticSplit(Lambda=Lam, D=eig.eigenvalues, T=T, positive=pos,
                          negative=neg, problems=problems)


# -- self-similarity ---------------------------------------------------------

def composition_scale(g, f, alpha, s_f):
    """``s_{g o f}`` that keeps ``alpha`` critical for ``gamma_{g o f}``."""
    g = g.f if isinstance(g, Map1D) else g
    f = f.f if isinstance(f, Map1D) else f
    return s_f / complex(g.deriv()(complex(f(alpha))))


@dataclass(frozen=True)
class MultiplierReport:
    matrix: np.ndarray
    multipliers: np.ndarray
    moduli: np.ndarray
    phases: np.ndarray
    omega: np.ndarray
    regime: tuple          # per multiplier: "inside", "unit", "outside"
    residuals: np.ndarray
    diagonalizable: bool


def similarity_multipliers(f, alpha, unit_tol: float = 1e-9) -> MultiplierReport:
    """Eigenvalues of the Jacobian of ``f`` evaluated at ``f(alpha)``.

    ``f`` is a :class:`Map1D`/:class:`Polynomial`, or any object with
    ``__call__`` and ``jacobian`` acting on d-vectors.
    """
    if isinstance(f, (Map1D, Polynomial)):
        p = f.f if isinstance(f, Map1D) else f
        fa = complex(p(complex(alpha)))
        M = np.array([[complex(p.deriv()(fa))]])
    else:
        a = np.asarray(alpha, dtype=complex)
        M = np.asarray(f.jacobian(f(a)), dtype=complex)
    mu, V = np.linalg.eig(M)
    diag = np.linalg.cond(V) <= 1e12
    if not diag:
        warnings.warn("Jacobian is numerically non-diagonalizable", RuntimeWarning)
    cp = np.poly(M)
    res = np.array([abs(np.polyval(cp, m)) / max(1.0, np.sum(np.abs(cp) * abs(m) ** np.arange(len(cp))[::-1]))
                    for m in mu])
    rho = np.abs(mu)
    theta = np.angle(mu)
    regime = tuple("unit" if abs(r - 1) <= unit_tol else ("inside" if r < 1 else "outside")
                   for r in rho)
    if np.all(np.abs(M.imag) == 0) and np.all(np.abs(mu.imag) <= 1e-14 * (1 + rho)):
        mu = mu.real.astype(complex)
    return MultiplierReport(matrix=M, multipliers=mu, moduli=rho, phases=theta,
                            omega=theta / np.pi, regime=regime, residuals=res,
                            diagonalizable=bool(diag))


# -- complex trinomial iterations ------------------------------------------

def trinomial(alpha: complex, m: int) -> Polynomial:
    """``f(z) = alpha z + z^m / m``."""
    cs = [0j] * (m + 1)
    cs[1] += complex(alpha)
    cs[m] += 1.0 / m
    return Polynomial(tuple(cs))


@dataclass(frozen=True)
class TrinomialReport:
    alpha: complex
    m: int
    fixed_points: np.ndarray        # 0 followed by the m-1 rotated outer points
    multipliers: np.ndarray         # f'(z) at each fixed point
    theta: np.ndarray
    rho: np.ndarray
    s: np.ndarray
    dchi_ds: np.ndarray
    dchi_dtheta: np.ndarray


def trinomial_analysis(alpha: complex, m: int, theta_grid) -> TrinomialReport:
    """Fixed points, multipliers and polar saddle curves of ``alpha z + z^m/m``.

    On the polar curve ``z = rho e^{i theta}`` the critical equation
    ``s (alpha z + z^m) = 1`` gives ``rho^{m-1} = -r sin(omega) / sin(m theta)``
    with ``omega = theta + sigma`` and ``s = sin(m theta) / (rho r sin(m theta - omega))``.
    Only samples with ``rho^{m-1} > 0`` are kept.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    alpha = complex(alpha)
    if abs(alpha - 1) < 1e-15:
        raise DegenerateParameter("alpha = 1 collapses the fixed points")
    base = ((1 - alpha) * m) ** (1.0 / (m - 1))
    outer = base * np.exp(2j * np.pi * np.arange(m - 1) / (m - 1))
    fixed = np.concatenate([[0j], outer])
    mults = alpha + fixed ** (m - 1)

    r, sigma = abs(alpha), np.angle(alpha)
    th = np.asarray(theta_grid, dtype=float)
    omega = th + sigma
    with np.errstate(divide="ignore", invalid="ignore"):
        rho_pow = -r * np.sin(omega) / np.sin(m * th)
        ok = np.isfinite(rho_pow) & (rho_pow > 0)
        rho = np.where(ok, np.abs(rho_pow) ** (1.0 / (m - 1)), np.nan)
        den = np.sin(m * th - omega)
        s = np.sin(m * th) / (rho * r * den)
        dchi_ds = (m - 1) / m * r * rho * np.sin(omega) / np.pi
        ds = np.gradient(s[ok], th[ok]) if np.count_nonzero(ok) > 1 else np.zeros(np.count_nonzero(ok))
    dchi_dth = np.full_like(th, np.nan)
    dchi_dth[ok] = dchi_ds[ok] * ds
    return TrinomialReport(alpha=alpha, m=m, fixed_points=fixed, multipliers=mults,
                           theta=th[ok], rho=rho[ok], s=s[ok], dchi_ds=dchi_ds[ok],
                           dchi_dtheta=dchi_dth[ok])


@dataclass(frozen=True)
class BoundaryRaster:
    alpha: np.ndarray
    mu: np.ndarray
    mu_abs: np.ndarray
    labels: np.ndarray
    saddle: np.ndarray = field(repr=False)


def _boundary_rows(alpha: np.ndarray, m: int, s: float, band: float):
    a = alpha.ravel()
    C = np.zeros((len(a), m + 1), dtype=complex)
    C[:, 0] = -1
    C[:, 1] = s * a
    C[:, m] += s
    Z = _batch_roots(C)
    fz = a[:, None] * Z + Z ** m / m
    G = s * fz - np.log(Z)
    cplx = np.abs(Z.imag) > REALITY_TOL * (1 + np.abs(Z))
    idx = _select_dominant(Z, G, cplx)
    rows = np.arange(len(a))
    z = np.where(idx >= 0, Z[rows, idx], np.nan + 0j)
    w = a * z + z ** m / m
    mu = (w ** (m - 1) + a).real
    mu_abs = np.abs(mu)
    labels = np.where(idx < 0, "no-saddle",
                      np.where(mu_abs < 1 - band, "bounded",
                               np.where(mu_abs > 1 + band, "divergent", "boundary")))
    return z, mu, mu_abs, labels


def escape_boundary(alpha_grid, m: int, s: float, band: float = 1e-6,
                    workers: int = 1) -> BoundaryRaster:
    """Classify each parameter by ``|mu|`` against 1, ``mu`` taken at the saddle.

    ``mu = Re((alpha z + z^m/m)^(m-1) + alpha)`` with ``z`` the dominant
    saddle of ``s (alpha z + z^m/m) - ln z``.  Nothing is iterated.
    """
    alpha = np.asarray(alpha_grid, dtype=complex)
    if alpha.ndim != 2 or min(alpha.shape) < 1:
        raise ValueError("alpha_grid must be a 2D array")
    chunks = np.array_split(np.arange(alpha.shape[0]), max(1, workers))
    chunks = [c for c in chunks if len(c)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda c: _boundary_rows(alpha[c], m, s, band), chunks))
    else:
        parts = [_boundary_rows(alpha[c], m, s, band) for c in chunks]
    z = np.concatenate([p[0] for p in parts]).reshape(alpha.shape)
    mu = np.concatenate([p[1] for p in parts]).reshape(alpha.shape)
    mu_abs = np.concatenate([p[2] for p in parts]).reshape(alpha.shape)
    labels = np.concatenate([p[3] for p in parts]).reshape(alpha.shape)
    return BoundaryRaster(alpha=alpha, mu=mu, mu_abs=mu_abs, labels=labels, saddle=z)


# -- Henon preset -------------------------------------------------------------

@dataclass(frozen=True)
class HenonMap:
    """``f(a, b) = (delta a - sigma a^2 + b, v a)`` with ``delta = lam + lam2``, ``v = -lam lam2``."""

    lam: complex
    lam2: complex
    sigma: float

    @property
    def delta(self):
        return self.lam + self.lam2

    @property
    def v(self):
        return -self.lam * self.lam2

    def __call__(self, x):
        a, b = np.asarray(x)[..., 0], np.asarray(x)[..., 1]
        return np.stack([self.delta * a - self.sigma * a * a + b, self.v * a], axis=-1)

    def jacobian(self, x):
        a = np.asarray(x)[0]
        return np.array([[self.delta - 2 * self.sigma * a, 1], [self.v, 0]])


def henon_logistic_parameter(x: float, y: float, h: HenonMap) -> float:
    """Logistic multiplier ``(x delta + y v) / sqrt(2 x sigma)`` of the reduced problem."""
    if x * h.sigma <= 0:
        raise DegenerateParameter("need x sigma > 0")
    return float(np.real(x * h.delta + y * h.v) / np.sqrt(2 * x * h.sigma))
