"""Command-line front end: ``lab <kind> --config <path>`` and ``lab validate``.

A run reads a JSON :class:`RunConfig`, dispatches to the owning module and
writes CSV data files, ``summary.json`` and ``manifest.json`` into a fresh
output directory.  Exit codes: 0 success, 2 config error, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
import sympy as sp

from . import __version__
from . import bellgen, dynamics, nbody, odeflow, rotach
from .errors import ConfigError, LabError

KINDS = ("zeros", "density", "iterate", "compare", "lorenz", "rossler", "hamiltonian",
         "nbody", "trinomial", "boundary", "fredholm")

TOP_KEYS = {"kind", "params", "seed", "threads", "out", "tolerances"}

# allowed parameter keys per kind; values are defaults (None = required)
PARAMS: dict[str, dict[str, Any]] = {
    "zeros": {"map": None, "n": 64, "pf": False, "b": 1},
    "density": {"map": None, "grid": {"start": 1e-3, "stop": None, "num": 2000}},
    "iterate": {"map": None, "x0": None, "n_burn": 10_000, "n_keep": 10_000, "bound": None},
    "compare": {"map": None, "x0": None, "n_burn": 10_000, "n_keep": 1_000_000,
                "n_bins": 200, "grid_num": 20_000},
    "lorenz": {"sigma": 10, "rho": 28, "beta": "8/3", "delta": 0.01, "n_directions": 100,
               "n_steps": 20_000, "x0": [1.0, 1.0, 1.0]},
    "rossler": {"sigma": 0.2, "beta": 0.2, "rho": 5.7, "direction": [0.0, 0.0, 1.0]},
    "hamiltonian": {"V": "q**2/2", "q": ["q"], "m": 1, "x0": None, "h": 1e-3, "periods": 3},
    "nbody": {"c": None, "sampler": None},
    "trinomial": {"alpha_re": None, "alpha_im": 0.0, "m": 3, "theta_num": 400},
    "boundary": {"m": 2, "s": 1.0, "re": [-2.0, 2.0], "im": [-2.0, 2.0], "nx": 200, "ny": 200,
                 "band": 1e-6},
    "fredholm": {"A": None, "point": None, "t": [0.1, 0.5, 1.0]},
}

TOLERANCE_KEYS = {"band"}


@dataclass
class RunConfig:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    threads: int = 1
    out: str | None = None
    tolerances: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        extra = set(d) - TOP_KEYS
        if extra:
            raise ConfigError(f"unknown config fields: {sorted(extra)}")
        if "kind" not in d:
            raise ConfigError("missing field: kind")
        return cls(kind=d["kind"], params=dict(d.get("params", {})), seed=int(d.get("seed", 0)),
                   threads=int(d.get("threads", 1)), out=d.get("out"),
                   tolerances=dict(d.get("tolerances", {})))

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON: {e}") from None

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        try:
            return cls.from_json(Path(path).read_text())
        except OSError as e:
            raise ConfigError(f"cannot read config: {e}") from None

    def resolved(self) -> dict:
        """Parameters with defaults filled in."""
        out = {k: v for k, v in PARAMS[self.kind].items()}
        for k, v in self.params.items():
            if isinstance(out.get(k), dict) and isinstance(v, dict):
                out[k] = {**out[k], **v}
            else:
                out[k] = v
        return out


@dataclass
class RunManifest:
    config: dict
    files: list
    wall_clock_s: float
    version: str

    def verify(self, root: Path) -> bool:
        return all(_sha256(root / f["name"]) == f["sha256"] for f in self.files)


# -- parsing helpers ----------------------------------------------------------

def _frac(v) -> Fraction:
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational number: {v!r}") from None


def _num(v) -> float:
    return float(_frac(v))


def parse_map(spec) -> bellgen.Map1D:
    if not isinstance(spec, dict) or "family" not in spec:
        raise ConfigError("map must be an object with a 'family' field")
    fam = spec["family"]
    allowed = {"logistic": {"family", "lambda"}, "m_hermitian": {"family", "lambda", "m"},
               "coeffs": {"family", "coeffs"}}
    if fam not in allowed:
        raise ConfigError(f"unknown map family {fam!r}")
    extra = set(spec) - allowed[fam]
    if extra:
        raise ConfigError(f"unknown map fields: {sorted(extra)}")
    try:
        if fam == "logistic":
            return bellgen.Map1D.logistic(_frac(spec["lambda"]))
        if fam == "m_hermitian":
            m = int(spec["m"])
            return bellgen.Map1D.m_hermitian(_frac(spec["lambda"]), m)
        return bellgen.Map1D.from_coeffs([_frac(c) for c in spec["coeffs"]])
    except KeyError as e:
        raise ConfigError(f"map is missing {e}") from None
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _check_schema(cfg: RunConfig) -> dict:
    if cfg.kind not in KINDS:
        raise ConfigError(f"unknown kind {cfg.kind!r}")
    extra = set(cfg.params) - set(PARAMS[cfg.kind])
    if extra:
        raise ConfigError(f"unknown params for {cfg.kind}: {sorted(extra)}")
    bad_tol = set(cfg.tolerances) - TOLERANCE_KEYS
    if bad_tol:
        raise ConfigError(f"unknown tolerances: {sorted(bad_tol)}")
    if cfg.threads < 1:
        raise ConfigError("threads must be >= 1")
    if not 0 <= cfg.seed < 2 ** 64:
        raise ConfigError("seed must be an unsigned 64-bit integer")
    p = cfg.resolved()
    missing = [k for k, v in p.items() if v is None and k not in ("bound", "sampler", "c", "x0")]
    if cfg.kind == "density" and p["grid"].get("stop") is None:
        missing.append("grid.stop")
    if cfg.kind == "nbody" and p["c"] is None and p["sampler"] is None:
        missing.append("c or sampler")
    if cfg.kind in ("iterate", "compare", "lorenz") and p.get("x0") is None:
        missing.append("x0")
    if missing:
        raise ConfigError(f"missing params for {cfg.kind}: {missing}")
    if "map" in p:
        parse_map(p["map"])
    for key in ("n", "n_keep", "n_bins", "grid_num", "theta_num", "nx", "ny", "n_directions",
                "n_steps", "periods"):
        if key in p and (not isinstance(p[key], int) or p[key] < 1):
            raise ConfigError(f"{key} must be a positive integer")
    if cfg.kind == "zeros" and p["n"] > bellgen.ORDER_CAP:
        raise ConfigError(f"n exceeds the order cap {bellgen.ORDER_CAP}")
    if cfg.kind == "density":
        g = p["grid"]
        if not 0 < _num(g["start"]) < _num(g["stop"]):
            raise ConfigError("grid needs 0 < start < stop")
    if cfg.kind == "hamiltonian" and _num(p["m"]) <= 0:
        raise ConfigError("mass m must be positive")
    if cfg.kind == "lorenz" and _num(p["delta"]) <= 0:
        raise ConfigError("delta must be positive")
    if cfg.kind in ("trinomial", "boundary") and int(p["m"]) < 2:
        raise ConfigError("m must be >= 2")
    return p


def validate(cfg: RunConfig | dict) -> list[str]:
    """Schema and range check without running; returns messages, empty if clean."""
    try:
        if isinstance(cfg, dict):
            cfg = RunConfig.from_dict(cfg)
        p = _check_schema(cfg)
        return _advice(cfg, p)
    except ConfigError as e:
        return [f"error: ConfigError: {e}"]


def _advice(cfg: RunConfig, p: dict) -> list[str]:
    msgs = []
    if "map" in p:
        f = parse_map(p["map"])
        lam = f.multiplier
        n = int(p.get("n", 64))
        if cfg.kind == "zeros" and p.get("pf"):
            for m in range(1, n):
                if lam ** m == 1:
                    msgs.append(f"error: Resonance: lambda^{m} = 1")
                    break
        if abs(lam) == 1 and not msgs:
            msgs.append("warning: |lambda| = 1 is resonance-adjacent")
        elif not msgs:
            for m in range(1, min(n, 64)):
                if abs(float(lam) ** m - 1) < 1e-6:
                    msgs.append(f"warning: lambda^{m} is within 1e-6 of 1")
                    break
    if cfg.kind == "lorenz" and _num(p["rho"]) <= 1:
        msgs.append("warning: rho <= 1 gives fewer than three fixed points")
    if cfg.kind == "trinomial" and complex(_num(p["alpha_re"]), _num(p["alpha_im"])) == 1:
        msgs.append("warning: alpha = 1 collapses the trinomial fixed points")
    return msgs


# -- writers ------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v) for v in r])


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return v if np.isfinite(v) else None
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, Fraction):
        return str(x)
    return x


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


# -- experiments --------------------------------------------------------------

def _run_zeros(p, cfg, out: Path) -> dict:
    f = parse_map(p["map"])
    n = int(p["n"])
    table = bellgen.bell_table(f, n)
    # solve first so a resonance fails before any file is written
    sol = bellgen.pf_coefficients(table, b=_frac(p["b"])) if p.get("pf") else None
    zs = bellgen.zero_spectrum(table)
    write_csv(out / "zeros.csv", ["y", "s", "multiplicity"],
              zip(zs.y, zs.s, zs.multiplicity))
    summary = {"n": n, "distinct_real_zeros": len(zs.y),
               "real_zero_count": int(zs.multiplicity.sum()),
               "max_residual": float(zs.residuals.max()) if len(zs.y) else 0.0}
    if len(zs.nonzero_s()):
        ph = rotach.phase_spectrum(table)
        write_csv(out / "phases.csv", ["s", "chi"], zip(ph.s, ph.phases))
        summary.update(uniformity_stat=ph.uniformity_stat,
                       raw_uniformity_stat=ph.raw_uniformity_stat,
                       phase_windows={str(k): v for k, v in ph.windows.items()})
    if sol is not None:
        write_csv(out / "pf.csv", ["m", "b_exact", "b_float"],
                  ((m, str(c), float(c)) for m, c in enumerate(sol.coefficients)))
        summary["pf_residual_top"] = str(sol.residual.coeff(n))
        summary["pf_residual_degree"] = sol.residual.degree
    return summary


def _grid(g) -> np.ndarray:
    return np.linspace(_num(g["start"]), _num(g["stop"]), int(g.get("num", 2000)))


def _run_density(p, cfg, out: Path) -> dict:
    f = parse_map(p["map"])
    q = rotach.zero_density(f, _grid(p["grid"]))
    write_csv(out / "density.csv", ["s", "q"], zip(q.s, q.values))
    pc = rotach.invariant_density(q)
    write_csv(out / "density_p.csv", ["x", "p"], zip(pc.s, pc.values))
    return {"support": list(q.support), "intervals": [list(iv) for iv in q.intervals],
            "q_mass": q.normalization, "p_clamped": pc.clamped}


def _run_iterate(p, cfg, out: Path) -> dict:
    f = parse_map(p["map"])
    bound = None if p["bound"] is None else _num(p["bound"])
    tr = dynamics.iterate_map(f, _num(p["x0"]), int(p["n_burn"]), int(p["n_keep"]),
                              bound=bound, seed=cfg.seed)
    t0 = tr.burn_in
    write_csv(out / "trajectory.csv", ["t", "x_1"],
              ((t0 + i, x) for i, x in enumerate(tr.x)))
    return {"escaped": tr.escaped, "escape_index": tr.escape_index, "kept": len(tr)}


def _run_compare(p, cfg, out: Path) -> dict:
    f = parse_map(p["map"])
    tr = dynamics.iterate_map(f, _num(p["x0"]), int(p["n_burn"]), int(p["n_keep"]),
                              seed=cfg.seed)
    if tr.escaped:
        raise dynamics.EscapedTrajectory(f"orbit escaped at iteration {tr.escape_index}")
    emp = dynamics.empirical_measure(tr, int(p["n_bins"]))
    # locate the support of q, then resample it finely
    probe = rotach.zero_density(f, np.geomspace(1e-6, 1e3, 4000))
    lo, hi = probe.support
    if hi <= lo:
        raise rotach.NoComplexSaddle("predicted density has empty support")
    start = max(lo, hi * 1e-9)
    grid = np.linspace(start, hi, int(p["grid_num"]))
    q = rotach.zero_density(f, grid)
    cdf = rotach.predicted_cdf(q)
    ks = dynamics.ks_distance(emp, cdf)
    centers, h = emp.density()
    write_csv(out / "histogram.csv", ["x", "density"], zip(centers, h))
    x = np.linspace(0, 1, 201)
    write_csv(out / "cdf.csv", ["u", "empirical", "predicted"],
              zip(x, emp.ecdf(emp.support[0] + x * (emp.support[1] - emp.support[0])), cdf(x)))
    return {"ks_distance": ks, "n_points": emp.total, "empirical_support": list(emp.support),
            "predicted_support": [lo, hi]}


def _spectrum_rows(label, ev, classes):
    return [(label, complex(v).real, complex(v).imag, c) for v, c in zip(ev, classes)]


def _run_lorenz(p, cfg, out: Path) -> dict:
    s, r, b = _num(p["sigma"]), _num(p["rho"]), _num(p["beta"])
    fld = odeflow.VectorFieldSystem.lorenz(_frac(p["sigma"]), _frac(p["rho"]), _frac(p["beta"]))
    pts = odeflow.field_fixed_points(fld)
    names = ["origin", "alpha_plus", "alpha_minus"][:len(pts)]
    rows, fps = [], {}
    for name, pt in zip(names, pts):
        rep = odeflow.jacobian_spectrum(fld, pt)
        rows += _spectrum_rows(name, rep.eigenvalues, rep.classes)
        fps[name] = {"point": pt, "residual": float(np.linalg.norm(fld(pt))),
                     "fredholm_times": rep.fredholm_times}
    write_csv(out / "spectrum.csv", ["point", "re", "im", "class"], rows)
    rng = np.random.default_rng(cfg.seed)
    dirs = rng.normal(size=(int(p["n_directions"]), 3))
    delta = _num(p["delta"])
    dec = [odeflow.lorenz_decomposition(s, r, b, y, delta) for y in dirs]
    it = odeflow.differential_iteration(fld, delta)
    traj = it.iterate(np.asarray(p["x0"], dtype=float), int(p["n_steps"]))
    write_csv(out / "trajectory.csv", ["t", "x_1", "x_2", "x_3"],
              ((k * delta, *x) for k, x in enumerate(traj)))
    return {"fixed_points": fps,
            "max_orth_residual": max(d.orth_residual for d in dec),
            "max_diag_residual": max(d.diag_residual for d in dec),
            "surfaces": odeflow.surface_statistics(s, r, b, traj[len(traj) // 2:]),
            "l3_zero_fraction": odeflow.l3_zero_fraction(s, r, b, delta, dirs)}


def _run_rossler(p, cfg, out: Path) -> dict:
    fld = odeflow.VectorFieldSystem.rossler(_frac(p["sigma"]), _frac(p["beta"]), _frac(p["rho"]))
    pts = odeflow.field_fixed_points(fld)
    rows, fps = [], {}
    for k, pt in enumerate(pts):
        rep = odeflow.jacobian_spectrum(fld, pt)
        rows += _spectrum_rows(f"tau_{k}", rep.eigenvalues, rep.classes)
        fps[f"tau_{k}"] = {"point": pt, "residual": float(np.linalg.norm(fld(pt)))}
    write_csv(out / "spectrum.csv", ["point", "re", "im", "class"], rows)
    Q, eig = odeflow.quad_projection(fld, p["direction"])
    return {"fixed_points": fps, "Q": Q, "Q_eigenvalues": eig.eigenvalues}


def _run_hamiltonian(p, cfg, out: Path) -> dict:
    qs = [sp.Symbol(n) for n in p["q"]]
    V = sp.sympify(p["V"], locals={str(x): x for x in qs})
    fld = odeflow.hamiltonian_field(V, qs, _frac(p["m"]))
    d = len(qs)
    crit = np.zeros(d)
    modes = odeflow.potential_modes(V, qs, crit)
    rep = odeflow.jacobian_spectrum(fld, np.zeros(2 * d))
    write_csv(out / "spectrum.csv", ["point", "re", "im", "class"],
              _spectrum_rows("origin", rep.eigenvalues, rep.classes))
    x0 = np.asarray(p["x0"] if p["x0"] is not None else [0.0] * d + [1.0] * d, dtype=float)
    h = _num(p["h"])
    n = int(round(int(p["periods"]) * 2 * np.pi / h))
    tr = odeflow.rk4(fld, x0, h, n)
    write_csv(out / "trajectory.csv", ["t"] + [f"x_{i + 1}" for i in range(2 * d)],
              ((k * h, *x) for k, x in enumerate(tr.points)))
    summary = {"mode_eigenvalues": modes.eigenvalues, "slow_modes": list(modes.slow)}
    try:
        rs = dynamics.detect_cycles(tr, x0, h / 2)
        summary.update(modal_period_steps=rs.modal_period, period=rs.modal_period * h,
                       cycle_residual=odeflow.cycle_residual(fld, tr, h, rs.modal_period))
    except LabError as e:
        summary["returns"] = type(e).__name__
    return summary


def _run_nbody(p, cfg, out: Path) -> dict:
    if p["c"] is not None:
        trials = [[_num(v) for v in p["c"]]]
    else:
        smp = p["sampler"]
        rng = np.random.default_rng(cfg.seed)
        trials = [nbody.sample_cs(int(smp["n"]), _num(smp["low"]), _num(smp["high"]),
                                  int(rng.integers(2 ** 63))) for _ in range(int(smp.get("trials", 1)))]
    rows, verdicts = [], []
    for k, c in enumerate(trials):
        rep = nbody.arrowhead_eigs(nbody.ArrowheadSpec(tuple(c)))
        verdicts.append(rep.interlaced)
        for i, w in enumerate(rep.eigenvalues):
            cls = "zero" if i == 0 else "interlaced" if rep.interlaced else "violates"
            rows.append((w, 0.0, cls) if len(trials) == 1 else (k, w, 0.0, cls))
    header = ["re", "im", "class"] if len(trials) == 1 else ["trial", "re", "im", "class"]
    write_csv(out / "spectrum.csv", header, rows)
    if len(trials) == 1 and len(trials[0]):
        cp = nbody.arrowhead_charpoly([_frac(v) for v in p["c"]] if p["c"] is not None else trials[0])
        delta = [str(c) for c in cp.Delta.coeffs]
    else:
        delta = None
    return {"trials": len(trials), "all_interlaced": all(verdicts), "delta_coeffs": delta}


def _run_trinomial(p, cfg, out: Path) -> dict:
    alpha = complex(_num(p["alpha_re"]), _num(p["alpha_im"]))
    m = int(p["m"])
    th = np.linspace(0, np.pi, int(p["theta_num"]) + 2)[1:-1]
    rep = rotach.trinomial_analysis(alpha, m, th)
    write_csv(out / "curve.csv", ["theta", "rho", "s", "dchi_ds", "dchi_dtheta"],
              zip(rep.theta, rep.rho, rep.s, rep.dchi_ds, rep.dchi_dtheta))
    f = rotach.trinomial(alpha, m)
    rows = []
    for k, z in enumerate(rep.fixed_points):
        mult = complex(rep.multipliers[k])
        cls = "unit" if abs(abs(mult) - 1) <= 1e-9 else ("attracting" if abs(mult) < 1 else "repelling")
        rows.append((f"fixed_{k}", mult.real, mult.imag, cls))
    write_csv(out / "spectrum.csv", ["point", "re", "im", "class"], rows)
    sim = rotach.similarity_multipliers(f, rep.fixed_points[0])
    return {"fixed_points": [complex(z) for z in rep.fixed_points],
            "similarity_moduli": sim.moduli, "curve_points": len(rep.s)}


def _run_boundary(p, cfg, out: Path) -> dict:
    re = np.linspace(_num(p["re"][0]), _num(p["re"][1]), int(p["nx"]))
    im = np.linspace(_num(p["im"][0]), _num(p["im"][1]), int(p["ny"]))
    A = re[None, :] + 1j * im[:, None]
    band = _num(cfg.tolerances.get("band", p["band"]))
    br = rotach.escape_boundary(A, int(p["m"]), _num(p["s"]), band=band, workers=cfg.threads)
    write_csv(out / "raster.csv", ["alpha_re", "alpha_im", "mu_abs", "class"],
              zip(A.real.ravel(), A.imag.ravel(), br.mu_abs.ravel(), br.labels.ravel()))
    labels, counts = np.unique(br.labels, return_counts=True)
    return {"counts": {str(k): int(v) for k, v in zip(labels, counts)}}


def _run_fredholm(p, cfg, out: Path) -> dict:
    fld = odeflow.VectorFieldSystem.linear([[_frac(v) for v in row] for row in p["A"]])
    a = np.asarray([_num(v) for v in p["point"]])
    times = odeflow.fredholm_times(fld, a)
    rows, singular = [], []
    for t in p["t"]:
        t = _num(t)
        try:
            s = odeflow.fredholm_particular(fld, a, t)
            rows.append((t, *s))
        except odeflow.SingularAtCriticalTime:
            singular.append(t)
    write_csv(out / "particular.csv", ["t"] + [f"s_{i + 1}" for i in range(len(a))], rows)
    rep = odeflow.jacobian_spectrum(fld, a)
    write_csv(out / "spectrum.csv", ["point", "re", "im", "class"],
              _spectrum_rows("a", rep.eigenvalues, rep.classes))
    return {"fredholm_times": times, "singular_t": singular}


RUNNERS = {"zeros": _run_zeros, "density": _run_density, "iterate": _run_iterate,
           "compare": _run_compare, "lorenz": _run_lorenz, "rossler": _run_rossler,
           "hamiltonian": _run_hamiltonian, "nbody": _run_nbody, "trinomial": _run_trinomial,
           "boundary": _run_boundary, "fredholm": _run_fredholm}


def run(cfg: RunConfig, out: str | Path | None = None) -> RunManifest:
    """Execute one experiment into a fresh directory and return its manifest."""
    p = _check_schema(cfg)
    root = Path(out or cfg.out or f"lab_out/{cfg.kind}")
    if root.exists() and any(root.iterdir()):
        raise ConfigError(f"output directory {root} is not empty")
    root.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    summary = RUNNERS[cfg.kind](p, cfg, root)
    summary = {"kind": cfg.kind, **summary}
    (root / "summary.json").write_text(json.dumps(_jsonable(summary), sort_keys=True, indent=2) + "\n")
    files = sorted(f.name for f in root.iterdir() if f.name != "manifest.json")
    man = RunManifest(config=asdict(cfg),
                      files=[{"name": f, "sha256": _sha256(root / f)} for f in files],
                      wall_clock_s=time.perf_counter() - t0, version=__version__)
    (root / "manifest.json").write_text(json.dumps(asdict(man), sort_keys=True, indent=2) + "\n")
    return man


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="lab", description=__doc__.splitlines()[0])
    ap.add_argument("kind", choices=KINDS + ("validate",))
    ap.add_argument("--config", required=True)
    ap.add_argument("--out")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--threads", type=int)
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig.load(args.config)
        if args.kind == "validate":
            msgs = validate(cfg)
            for m in msgs:
                print(m)
            return 2 if any(m.startswith("error:") for m in msgs) else 0
        if cfg.kind != args.kind:
            raise ConfigError(f"config kind {cfg.kind!r} does not match command {args.kind!r}")
        if args.seed is not None:
            cfg.seed = args.seed
        if args.threads is not None:
            cfg.threads = args.threads
        man = run(cfg, args.out)
    except ConfigError as e:
        print(f"ConfigError: {e}", file=sys.stderr)
        return 2
    except LabError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 3
    print(json.dumps({"files": [f["name"] for f in man.files], "wall_clock_s": man.wall_clock_s}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
