"""Vector fields seen as iterations ``a -> a + delta F(a)``.

Fields are sympy expressions so Jacobians and characteristic polynomials can
be taken exactly; numeric work goes through lambdified callables.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np
import sympy as sp

from .dynamics import Trajectory
from .errors import (DegenerateDirection, NoConvergence, NotCritical,
                     NotQuadratic, SingularAtCriticalTime, ZeroCoordinate)
from .polycore import SymmetricEig, sym_eig

EIG_TOL = 1e-10
FREDHOLM_WINDOW = 1e-9
LAM = sp.Symbol("lambda")


@dataclass(frozen=True)
class VectorFieldSystem:
    symbols: tuple
    exprs: tuple
    name: str = "generic"
    params: tuple = ()  # (name, value) pairs, kept for reports

    def __post_init__(self):
        if len(self.symbols) != len(self.exprs):
            raise ValueError("one component per variable")
        exprs = tuple(sp.expand(sp.sympify(e)) for e in self.exprs)
        for e in exprs:
            if not e.is_polynomial(*self.symbols):
                raise ValueError(f"component {e} is not polynomial")
        object.__setattr__(self, "exprs", exprs)

    @property
    def dim(self) -> int:
        return len(self.symbols)

    @property
    def degree(self) -> int:
        return max((sp.Poly(e, *self.symbols).total_degree() if e != 0 else 0)
                   for e in self.exprs)

    @cached_property
    def _f(self):
        return sp.lambdify([self.symbols], list(self.exprs), "numpy")

    @cached_property
    def jacobian_expr(self) -> sp.Matrix:
        return sp.Matrix(self.exprs).jacobian(sp.Matrix(self.symbols))

    @cached_property
    def _J(self):
        return sp.lambdify([self.symbols], self.jacobian_expr, "numpy")

    def __call__(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        out = self._f(a)
        return np.array([np.broadcast_to(np.asarray(v, dtype=float), a.shape[1:]) if a.ndim > 1
                         else float(v) for v in out])

    def jacobian(self, a) -> np.ndarray:
        return np.asarray(self._J(np.asarray(a, dtype=float)), dtype=float)

    @cached_property
    def hessian_tensor(self) -> np.ndarray:
        """Stack of component Hessians, shape (d, d, d); constant for quadratic fields."""
        if self.degree > 2:
            raise NotQuadratic(f"field has degree {self.degree}")
        return np.array([np.array(sp.hessian(e, self.symbols), dtype=float) for e in self.exprs])

    def jacobian_at(self, point) -> sp.Matrix:
        """Exact Jacobian at a point of sympy numbers."""
        return self.jacobian_expr.subs(dict(zip(self.symbols, [sp.nsimplify(p) if isinstance(p, float) else p
                                                                for p in point])))

    def charpoly(self, point) -> sp.Poly:
        """``det(lambda I - J(point))`` in exact arithmetic."""
        J = self.jacobian_at(point)
        return sp.Poly(sp.expand((LAM * sp.eye(self.dim) - J).det()), LAM)

    # -- presets --
    @classmethod
    def lorenz(cls, sigma, rho, beta) -> "VectorFieldSystem":
        a, b, c = sp.symbols("a b c")
        s, r, be = (sp.nsimplify(v) for v in (sigma, rho, beta))
        return cls((a, b, c), (s * (b - a), r * a - b - a * c, a * b - be * c), "lorenz",
                   (("sigma", s), ("rho", r), ("beta", be)))

    @classmethod
    def rossler(cls, sigma, beta, rho) -> "VectorFieldSystem":
        a, b, c = sp.symbols("a b c")
        s, be, r = (sp.nsimplify(v) for v in (sigma, beta, rho))
        return cls((a, b, c), (-(b + c), a + s * b, be + c * (a - r)), "rossler",
                   (("sigma", s), ("beta", be), ("rho", r)))

    @classmethod
    def linear(cls, A) -> "VectorFieldSystem":
        A = sp.Matrix(A)
        xs = sp.symbols(f"a1:{A.shape[0] + 1}")
        return cls(tuple(xs), tuple(A * sp.Matrix(xs)), "linear")

    @classmethod
    def generic(cls, exprs: Sequence[str], variables: Sequence[str]) -> "VectorFieldSystem":
        xs = sp.symbols(list(variables))
        loc = {str(x): x for x in xs}
        return cls(tuple(xs), tuple(sp.sympify(e, locals=loc) for e in exprs), "generic")

    def param(self, key):
        return dict(self.params)[key]


def hamiltonian_field(V, q: Sequence[sp.Symbol], m=1) -> VectorFieldSystem:
    """``(dp/dt, dq/dt) = (-grad V(q), p / m)`` with variables ordered ``(p, q)``."""
    if m <= 0:
        raise ValueError("mass must be positive")
    q = tuple(q)
    p = tuple(sp.Symbol(f"p{i + 1}") for i in range(len(q)))
    m = sp.nsimplify(m)
    V = sp.sympify(V)
    return VectorFieldSystem(p + q, tuple(-sp.diff(V, qi) for qi in q) + tuple(pi / m for pi in p),
                             "hamiltonian", (("m", m),))


# -- differential iteration -------------------------------------------------

@dataclass(frozen=True)
class DifferentialIteration:
    field: VectorFieldSystem
    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("delta must be positive")

    @cached_property
    def exprs(self) -> tuple:
        d = sp.nsimplify(self.delta)
        return tuple(sp.expand(x + d * e) for x, e in zip(self.field.symbols, self.field.exprs))

    def __call__(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        return a + self.delta * self.field(a)

    def jacobian(self, a) -> np.ndarray:
        return np.eye(self.field.dim) + self.delta * self.field.jacobian(a)

    def iterate(self, x0, n: int) -> np.ndarray:
        """``n`` Euler steps; returns all ``n + 1`` states."""
        out = np.empty((n + 1, self.field.dim))
        out[0] = x0
        for k in range(n):
            out[k + 1] = self(out[k])
        return out


def differential_iteration(field: VectorFieldSystem, delta: float) -> DifferentialIteration:
    return DifferentialIteration(field, delta)


def rk4(field: VectorFieldSystem, x0, h: float, n_steps: int) -> Trajectory:
    """Classical RK4 reference orbit (oracle only)."""
    out = np.empty((n_steps + 1, field.dim))
    x = out[0] = np.asarray(x0, dtype=float)
    for k in range(n_steps):
        x = out[k + 1] = _rk4_step(field, x, h)
    return Trajectory(out, 0, 0, False, None)


def _rk4_step(field, x, h):
    k1 = field(x)
    k2 = field(x + 0.5 * h * k1)
    k3 = field(x + 0.5 * h * k2)
    k4 = field(x + h * k3)
    return x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_flow(field: VectorFieldSystem, x0, t: float, h: float) -> np.ndarray:
    """State at exactly time ``t``: whole RK4 steps plus one partial step."""
    n = int(t // h)
    x = rk4(field, x0, h, n).points[-1]
    rest = t - n * h
    return _rk4_step(field, x, rest) if rest > 0 else x


# -- fixed points and spectra -----------------------------------------------

def field_fixed_points(field: VectorFieldSystem, box=None, seed: int = 0,
                       n_starts: int = 64) -> list[np.ndarray]:
    """Zeros of ``F``: closed forms for presets, damped Newton otherwise."""
    if field.name == "lorenz":
        s, r, b = (float(field.param(k)) for k in ("sigma", "rho", "beta"))
        pts = [np.zeros(3)]
        if r > 1:
            al = np.sqrt(b * (r - 1))
            pts += [np.array([al, al, al * al / b]), np.array([-al, -al, al * al / b])]
        return pts
    if field.name == "rossler":
        s, b, r = (float(field.param(k)) for k in ("sigma", "beta", "rho"))
        taus = np.roots([s, -r, b])
        taus = np.sort(taus[np.abs(taus.imag) <= 1e-12 * (1 + np.abs(taus))].real)
        return [np.array([s * t, -t, t]) for t in taus]
    if field.name == "linear":
        return [np.zeros(field.dim)]
    return _newton_multistart(field, box, seed, n_starts)


def _newton_multistart(field, box, seed, n_starts, dedup=1e-6) -> list[np.ndarray]:
    d = field.dim
    box = np.asarray(box if box is not None else [(-10.0, 10.0)] * d, dtype=float).reshape(d, 2)
    rng = np.random.default_rng(seed)
    starts = box[:, 0] + (box[:, 1] - box[:, 0]) * rng.random((n_starts, d))
    found: list[np.ndarray] = []
    for x in starts:
        for _ in range(100):
            F = field(x)
            if np.linalg.norm(F) <= 1e-13 * (1 + np.linalg.norm(x)):
                break
            try:
                dx = np.linalg.solve(field.jacobian(x), -F)
            except np.linalg.LinAlgError:
                break
            t = 1.0
            while t > 1e-6 and np.linalg.norm(field(x + t * dx)) >= np.linalg.norm(F):
                t /= 2
            x = x + t * dx
        if np.linalg.norm(field(x)) <= 1e-10 * (1 + np.linalg.norm(x)):
            if all(np.linalg.norm(x - y) > dedup for y in found):
                found.append(x)
    if not found:
        raise NoConvergence("multi-start Newton found no zero")
    return sorted(found, key=tuple)


@dataclass(frozen=True)
class SpectralReport:
    point: np.ndarray
    jacobian: np.ndarray
    eigenvalues: np.ndarray
    fredholm_times: tuple
    classes: tuple  # "attracting" / "repelling" / "neutral"


def _classify(lam: complex, tol: float) -> str:
    if lam.real < -tol:
        return "attracting"
    if lam.real > tol:
        return "repelling"
    return "neutral"


def _real_eigs(ev: np.ndarray) -> np.ndarray:
    return ev[np.abs(ev.imag) <= EIG_TOL * (1 + np.abs(ev))].real


def _times_from(ev: np.ndarray) -> tuple:
    lam = _real_eigs(ev)
    lam = lam[lam != 0]
    t = -1.0 / lam
    return tuple(sorted(float(x) for x in t[t > 0]))


def jacobian_spectrum(field: VectorFieldSystem, a) -> SpectralReport:
    J = field.jacobian(a)
    ev, V = np.linalg.eig(J)
    scale = max(np.linalg.norm(J), 1e-300)
    res = np.linalg.norm(J @ V - V * ev, axis=0)
    if np.any(res > 1e-8 * scale):
        raise NoConvergence("eigenvalue residual above tolerance")
    order = np.lexsort((ev.imag, ev.real))
    ev = ev[order]
    if np.all(np.abs(ev.imag) == 0):
        ev = ev.real.astype(complex)
    tol = 1e-12 * scale
    return SpectralReport(point=np.asarray(a, dtype=float), jacobian=J, eigenvalues=ev,
                          fredholm_times=_times_from(ev),
                          classes=tuple(_classify(complex(v), tol) for v in ev))


def fredholm_times(field: VectorFieldSystem, a) -> tuple:
    """Critical times ``-1/lambda > 0`` over the real Jacobian eigenvalues, ascending."""
    return _times_from(np.linalg.eigvals(field.jacobian(a)))


def fredholm_particular(field: VectorFieldSystem, a, t: float) -> np.ndarray:
    """Solve ``(I + t J(a)) s = 1/a`` away from the critical times."""
    a = np.asarray(a, dtype=float)
    if np.any(a == 0):
        raise ZeroCoordinate("all coordinates of a must be nonzero")
    J = field.jacobian(a)
    for tc in fredholm_times(field, a):
        if abs(t - tc) <= FREDHOLM_WINDOW * tc:
            raise SingularAtCriticalTime(f"t = {t} is within the window of {tc}")
    A = np.eye(len(a)) + t * J
    scale = max(1.0, np.linalg.norm(A)) ** len(a)
    if abs(np.linalg.det(A)) < 1e-12 * scale:
        raise SingularAtCriticalTime("I + tJ is singular")
    rhs = 1.0 / a
    s = np.linalg.solve(A, rhs)
    return s


# -- cycles -------------------------------------------------------------------

def cycle_residual(field: VectorFieldSystem, points, h: float, period_steps: int) -> np.ndarray:
    """Trapezoid integral of ``F`` along ``points[0 .. period_steps]``."""
    pts = points.points if isinstance(points, Trajectory) else np.asarray(points, dtype=float)
    if period_steps >= len(pts):
        raise ValueError("period longer than the trajectory")
    F = np.array([field(p) for p in pts[:period_steps + 1]])
    return h * (F.sum(axis=0) - 0.5 * (F[0] + F[-1]))


@dataclass(frozen=True)
class LatticeVerdict:
    ok: bool
    tau: float
    ratios: dict


def period_lattice_check(periods: dict, rel: float = 0.01) -> LatticeVerdict:
    """Every period an integer multiple of the smallest one, within ``rel``."""
    if not periods or any(p <= 0 for p in periods.values()):
        raise ValueError("periods must be positive")
    tau = min(periods.values())
    ratios = {k: p / tau for k, p in periods.items()}
    ok = all(abs(p - round(p / tau) * tau) <= rel * p for p in periods.values())
    return LatticeVerdict(ok=ok, tau=tau, ratios=ratios)


# -- quadratic structure ------------------------------------------------------

def quad_projection(field: VectorFieldSystem, y) -> tuple[np.ndarray, SymmetricEig]:
    """Hessian of ``y . F`` (constant for quadratic fields) and its eigen-decomposition."""
    Q = np.tensordot(np.asarray(y, dtype=float), field.hessian_tensor, axes=1)
    return Q, sym_eig(Q)


def lorenz_T(y) -> tuple[np.ndarray, float]:
    """Orthogonal eigenvector matrix of the Lorenz form, columns for (0, -mu, mu)."""
    _, yy, zz = np.asarray(y, dtype=float)
    mu = float(np.hypot(yy, zz))
    if mu == 0:
        raise DegenerateDirection("y and z components both vanish")
    r2 = np.sqrt(2.0)
    T = np.array([[0.0, mu, mu], [yy * r2, -zz, zz], [zz * r2, yy, -yy]]) / (mu * r2)
    return T, mu


@dataclass(frozen=True)
class LorenzDecomposition:
    direction: np.ndarray
    mu: float
    Q: np.ndarray
    T: np.ndarray
    Lambda: np.ndarray
    linear_origin: np.ndarray
    linear_plus: np.ndarray
    linear_minus: np.ndarray
    orth_residual: float
    diag_residual: float


def lorenz_linear_parts(sigma, rho, beta, y, delta, fixed_point: str = "origin") -> np.ndarray:
    """Linear parts ``l = T L`` of ``y . (a + delta F(p + a))`` at a fixed point ``p``.

    ``L = y + delta J(p)^t y``; applying ``T`` itself (not its transpose)
    gives ``l_1 = (L_2 + L_3)/sqrt 2``.
    """
    T, mu = lorenz_T(y)
    yv = np.asarray(y, dtype=float)
    f = _lorenz(sigma, rho, beta)
    pts = field_fixed_points(f)
    key = {"origin": 0, "alpha_plus": 1, "alpha_minus": 2}[fixed_point]
    if key >= len(pts):
        raise ValueError("rho <= 1 leaves only the origin")
    L = yv + delta * f.jacobian(pts[key]).T @ yv
    return T @ L


@lru_cache(maxsize=32)
def _lorenz(sigma, rho, beta) -> VectorFieldSystem:
    return VectorFieldSystem.lorenz(sigma, rho, beta)


def lorenz_decomposition(sigma, rho, beta, y, delta) -> LorenzDecomposition:
    f = _lorenz(sigma, rho, beta)
    Q, _ = quad_projection(f, y)
    T, mu = lorenz_T(y)
    Lam = np.diag([0.0, -mu, mu])
    parts = {k: lorenz_linear_parts(sigma, rho, beta, y, delta, k) if (k == "origin" or rho > 1)
             else np.full(3, np.nan) for k in ("origin", "alpha_plus", "alpha_minus")}
    return LorenzDecomposition(
        direction=np.asarray(y, dtype=float), mu=mu, Q=Q, T=T, Lambda=Lam,
        linear_origin=parts["origin"], linear_plus=parts["alpha_plus"],
        linear_minus=parts["alpha_minus"],
        orth_residual=float(np.max(np.abs(T.T @ T - np.eye(3)))),
        diag_residual=float(np.max(np.abs(T.T @ Q @ T - Lam))),
    )


def lorenz_surfaces(sigma, rho, beta, point) -> tuple[float, float]:
    x, y, z = (float(v) for v in point)
    r1 = sigma * x - y - beta * z
    r2 = (-sigma * x + rho * y) * z + (sigma * x - y + z * beta) * y / np.sqrt(2.0)
    return r1, r2


def surface_statistics(sigma, rho, beta, points) -> dict:
    """Descriptive statistics of both surface residuals along sampled points."""
    r = np.array([lorenz_surfaces(sigma, rho, beta, p) for p in np.asarray(points)])
    return {f"r{i + 1}_{k}": float(fn(r[:, i])) for i in range(2)
            for k, fn in (("mean", np.mean), ("abs_median", lambda v: np.median(np.abs(v))),
                          ("abs_max", lambda v: np.max(np.abs(v))))}


def l3_zero_fraction(sigma, rho, beta, delta, directions, fixed_point="origin",
                     tol: float = 1e-3) -> float:
    """Share of directions for which ``|l_3|`` falls under ``tol`` (descriptive)."""
    l3 = np.array([lorenz_linear_parts(sigma, rho, beta, y, delta, fixed_point)[2]
                   for y in np.asarray(directions)])
    return float(np.mean(np.abs(l3) <= tol))


# -- Hamiltonian structure ------------------------------------------------------

def hamiltonian_matrix(H, p: Sequence[sp.Symbol], q: Sequence[sp.Symbol], point) -> np.ndarray:
    """Block matrix ``[[-H_qp, H_pp], [-H_qq, H_pq]]`` at ``point = (p, q)``."""
    p, q = list(p), list(q)
    sub = dict(zip(p + q, [sp.nsimplify(v) for v in point]))

    def block(u, v):
        return np.array([[float(sp.diff(H, a, b).subs(sub)) for b in v] for a in u])
    return np.block([[-block(q, p), block(p, p)], [-block(q, q), block(p, q)]])


def symplectic_J(d: int) -> np.ndarray:
    return np.block([[np.zeros((d, d)), np.eye(d)], [-np.eye(d), np.zeros((d, d))]])


@dataclass(frozen=True)
class ModeReport:
    eigenvalues: np.ndarray
    vectors: np.ndarray
    slow: tuple  # indices of the smallest-eigenvalue directions


def potential_modes(V, q: Sequence[sp.Symbol], point, tol: float = 1e-8) -> ModeReport:
    """Normal modes of ``V`` at a critical point, ascending by eigenvalue."""
    q = list(q)
    sub = dict(zip(q, [sp.nsimplify(v) for v in np.atleast_1d(point)]))
    grad = np.array([float(sp.diff(V, qi).subs(sub)) for qi in q])
    if np.linalg.norm(grad) > tol:
        raise NotCritical(f"|grad V| = {np.linalg.norm(grad):.3g}")
    Hs = np.array([[float(sp.diff(V, a, b).subs(sub)) for b in q] for a in q])
    eig = sym_eig(Hs)
    order = np.argsort(eig.eigenvalues, kind="stable")
    w, U = eig.eigenvalues[order], eig.basis[:, order]
    smallest = w[0]
    slow = tuple(int(i) for i in np.flatnonzero(w <= smallest + 1e-12 * (1 + abs(smallest))))
    return ModeReport(eigenvalues=w, vectors=U, slow=slow)
