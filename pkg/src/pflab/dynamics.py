"""Direct orbit computation and empirical measures.

Orbits are iterated in plain floating point.  The empirical measure keeps the
sorted samples so the ECDF is exact; the uniform-bin histogram is kept
alongside for density plots.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from .bellgen import Map1D
from .errors import EscapedTrajectory, NoReturns
from .polycore import Polynomial

DEFAULT_BURN = 10_000
FALLBACK_BOUND = 1e6


@dataclass(frozen=True)
class Trajectory:
    points: np.ndarray        # (n, d)
    burn_in: int
    seed: int
    escaped: bool
    escape_index: int | None  # iteration count at which the bound was exceeded

    def __len__(self):
        return len(self.points)

    @property
    def x(self) -> np.ndarray:
        """First coordinate, convenient for 1D maps."""
        return self.points[:, 0]


def a_priori_bound(f) -> float:
    """Radius of the invariant interval for quadratic maps, else a fallback."""
    if isinstance(f, Map1D):
        f = f.f
    if isinstance(f, Polynomial) and f.degree == 2:
        lam, c = complex(f.coeff(1)), complex(f.coeff(2))
        if c != 0 and lam != 0:
            return abs(lam / c)
    return FALLBACK_BOUND


def _scalar_step(f):
    cs = [float(c) for c in f.coeffs][::-1]

    def step(x):
        acc = 0.0
        for c in cs:
            acc = acc * x + c
        return acc
    return step


def iterate_map(f, x0, n_burn: int = DEFAULT_BURN, n_keep: int = 1000,
                bound: float | None = None, seed: int = 0) -> Trajectory:
    """Iterate ``f`` from ``x0``: drop ``n_burn`` points, keep ``n_keep``.

    ``f`` is a :class:`Map1D`, a :class:`Polynomial`, or a callable acting on
    d-vectors (complex allowed).  Escape beyond ``bound`` stops the run and is
    recorded, not raised.  The first kept point is the state after ``n_burn``
    steps, so ``n_burn = 0, n_keep = 1`` returns ``[x0]``.
    """
    if n_keep < 1:
        raise ValueError("n_keep must be >= 1")
    if bound is None:
        bound = 10 * a_priori_bound(f)
    if isinstance(f, Map1D):
        f = f.f
    total = n_burn + n_keep
    if isinstance(f, Polynomial) and f.scalar_kind != "complex" and np.ndim(x0) == 0:
        step = _scalar_step(f)
        x = float(x0)
        out = np.empty(n_keep)
        for i in range(total):
            if abs(x) > bound or x != x:
                return Trajectory(out[:max(0, i - n_burn)].reshape(-1, 1), n_burn, seed,
                                  True, i)
            if i >= n_burn:
                out[i - n_burn] = x
            if i + 1 < total:
                x = step(x)
        return Trajectory(out.reshape(-1, 1), n_burn, seed, False, None)

    call = (lambda z: f(z)) if not isinstance(f, Polynomial) else (lambda z: f(z[0]))
    x = np.atleast_1d(np.asarray(x0))
    kept = []
    for i in range(total):
        if not np.all(np.isfinite(x)) or np.linalg.norm(x) > bound:
            return Trajectory(_stack(kept, x), n_burn, seed, True, i)
        if i >= n_burn:
            kept.append(x)
        if i + 1 < total:
            x = np.atleast_1d(np.asarray(call(x)))
    return Trajectory(_stack(kept, x), n_burn, seed, False, None)


def _stack(kept, x):
    if kept:
        return np.array(kept)
    return np.empty((0, np.size(x)), dtype=np.asarray(x).dtype)


def sample_initial_points(box: Sequence[tuple[float, float]], n: int, seed: int) -> np.ndarray:
    """Seeded uniform draws from a box given as ``[(lo, hi), ...]``."""
    box = np.asarray(box, dtype=float).reshape(-1, 2)
    rng = np.random.default_rng(seed)
    return box[:, 0] + (box[:, 1] - box[:, 0]) * rng.random((n, len(box)))


def iterate_ensemble(f, x0s: np.ndarray, workers: int = 1, **kw) -> list[Trajectory]:
    """One orbit per starting point; results keep the input order."""
    def one(args):
        k, x0 = args
        return iterate_map(f, x0, seed=k, **kw)
    jobs = list(enumerate(x0s))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(one, jobs))
    return [one(j) for j in jobs]


@dataclass(frozen=True)
class EmpiricalMeasure:
    edges: np.ndarray
    counts: np.ndarray
    total: int
    samples: np.ndarray  # sorted

    @property
    def support(self) -> tuple[float, float]:
        return float(self.samples[0]), float(self.samples[-1])

    def ecdf(self, x):
        """Right-continuous ECDF evaluated at ``x``."""
        return np.searchsorted(self.samples, np.asarray(x, dtype=float), side="right") / self.total

    def density(self) -> tuple[np.ndarray, np.ndarray]:
        """Bin centers and normalized histogram heights."""
        w = np.diff(self.edges)
        centers = 0.5 * (self.edges[1:] + self.edges[:-1])
        with np.errstate(invalid="ignore", divide="ignore"):
            h = np.where(w > 0, self.counts / (self.total * np.where(w > 0, w, 1)), 0.0)
        return centers, h


def empirical_measure(traj: Trajectory | np.ndarray, n_bins: int = 200,
                      range: tuple[float, float] | None = None) -> EmpiricalMeasure:
    """Uniform-bin histogram over the observed range plus the exact ECDF."""
    if isinstance(traj, Trajectory):
        if traj.escaped:
            raise EscapedTrajectory(f"orbit escaped at iteration {traj.escape_index}")
        x = traj.x
    else:
        x = np.asarray(traj, dtype=float).ravel()
    if len(x) == 0:
        raise ValueError("empty trajectory")
    x = np.sort(x.real.astype(float))
    lo, hi = range if range is not None else (x[0], x[-1])
    if hi <= lo:
        edges = np.array([lo, lo])
        counts = np.array([len(x)])
    else:
        counts, edges = np.histogram(x, bins=n_bins, range=(lo, hi))
    return EmpiricalMeasure(edges=edges, counts=counts, total=len(x), samples=x)


def arcsine_cdf(x):
    """Beta(1/2, 1/2) CDF on [0, 1]."""
    return stats.beta(0.5, 0.5).cdf(np.clip(x, 0, 1))


def ks_distance(emp: EmpiricalMeasure, other: Callable | EmpiricalMeasure,
                rescale: bool = True, support: tuple[float, float] | None = None) -> float:
    """Sup distance between the ECDF and a CDF or another ECDF.

    Against a callable the samples are first mapped affinely from ``support``
    (default: the observed range) onto [0, 1], unless ``rescale`` is off or
    the range is degenerate.  Two empirical measures are compared on their raw
    samples, which keeps the distance a metric.
    """
    if emp.total < 1:
        raise ValueError("empty measure")
    if isinstance(other, EmpiricalMeasure):
        return float(stats.ks_2samp(emp.samples, other.samples).statistic)
    x = emp.samples
    if rescale:
        lo, hi = support if support is not None else emp.support
        if hi > lo:
            x = (x - lo) / (hi - lo)
    return float(stats.kstest(x, other).statistic)


def stationarity_defect(f, emp: EmpiricalMeasure) -> float:
    """Largest relative change of bin mass after pushing the samples through ``f``.

    Bins holding under 1% of the mass are skipped.
    """
    g = f.f if isinstance(f, Map1D) else f
    if isinstance(g, Polynomial):
        img = np.polynomial.polynomial.polyval(emp.samples, [float(c) for c in g.coeffs])
    else:
        img = np.asarray(g(emp.samples), dtype=float)
    c2, _ = np.histogram(img, bins=emp.edges)
    big = emp.counts >= 0.01 * emp.total
    return float(np.max(np.abs(c2[big] - emp.counts[big]) / emp.counts[big]))


@dataclass(frozen=True)
class ReturnStats:
    target: np.ndarray
    radius: float
    hits: np.ndarray
    return_times: np.ndarray
    modal_period: int


def detect_cycles(traj: Trajectory | np.ndarray, target, radius: float) -> ReturnStats:
    """Return times of the orbit into the ball of ``radius`` around ``target``."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    pts = traj.points if isinstance(traj, Trajectory) else np.asarray(traj)
    if pts.ndim == 1:
        pts = pts[:, None]
    t = np.atleast_1d(np.asarray(target))
    hits = np.flatnonzero(np.linalg.norm(pts - t, axis=1) <= radius)
    if len(hits) < 2:
        raise NoReturns(f"{len(hits)} hit(s) within radius {radius}")
    gaps = np.diff(hits)
    vals, cnt = np.unique(gaps, return_counts=True)
    return ReturnStats(target=t, radius=radius, hits=hits, return_times=gaps,
                       modal_period=int(vals[np.argmax(cnt)]))


def orbit_escape_raster(alpha_grid, m: int, n_iter: int = 200, bound: float = 1e6,
                        z0=None) -> np.ndarray:
    """Escape test for ``z -> alpha z + z^m / m``, started at a critical point.

    Returns a boolean array, True where the orbit stayed bounded.
    """
    a = np.asarray(alpha_grid, dtype=complex)
    z = (-a) ** (1.0 / (m - 1)) if z0 is None else np.full_like(a, z0)
    alive = np.ones(a.shape, dtype=bool)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(n_iter):
            z = np.where(alive, a * z + z ** m / m, z)
            alive &= np.isfinite(z) & (np.abs(z) <= bound)
    return alive
