from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import arcsine_cdf, ks_uniform
from pflab.bellgen import Map1D
from pflab.dynamics import (Trajectory, a_priori_bound, detect_cycles,
                            empirical_measure, iterate_ensemble, iterate_map,
                            ks_distance, orbit_escape_raster,
                            sample_initial_points, stationarity_defect)
from pflab.errors import EscapedTrajectory, NoReturns
from pflab.rotach import HenonMap

L4 = Map1D.logistic(4)


def test_fixed_point_orbit():
    t = iterate_map(L4, 6.0, n_burn=5, n_keep=20)
    assert not t.escaped and np.all(t.x == 6.0)


def test_single_point():
    t = iterate_map(L4, 0.3, n_burn=0, n_keep=1)
    assert t.points.tolist() == [[0.3]]


def test_escape_recorded():
    t = iterate_map(L4, 9.0, n_burn=0, n_keep=100, bound=100)
    assert t.escaped and t.escape_index is not None and t.escape_index < 20
    assert np.all(np.abs(t.x) <= 100)


def test_default_bound():
    assert a_priori_bound(L4) == 8.0
    t = iterate_map(L4, 9.0, n_burn=0, n_keep=100)
    assert t.escaped


def test_n_keep_validated():
    with pytest.raises(ValueError):
        iterate_map(L4, 0.1, n_keep=0)


def test_determinism_and_vector_maps():
    h = HenonMap(lam=1.2, lam2=-0.3, sigma=1.0)
    a = iterate_map(h, np.array([0.1, 0.0]), n_burn=10, n_keep=50)
    b = iterate_map(h, np.array([0.1, 0.0]), n_burn=10, n_keep=50)
    assert np.array_equal(a.points, b.points) and a.points.shape[1] == 2
    c = iterate_map(L4, 0.123, n_burn=100, n_keep=1000)
    d = iterate_map(L4, 0.123, n_burn=100, n_keep=1000)
    assert np.array_equal(c.points, d.points)


def test_scalar_path_matches_generic():
    f = Map1D.logistic(Fraction(37, 10))
    fast = iterate_map(f, 0.4, n_burn=3, n_keep=30)
    slow = iterate_map(lambda z: 3.7 * z - z * z / 2, np.array([0.4]), n_burn=3, n_keep=30)
    assert np.allclose(fast.points, slow.points, rtol=1e-12)


def test_ensemble_order_and_workers():
    x0 = sample_initial_points([(0.5, 7.5)], 8, seed=3)
    assert np.array_equal(x0, sample_initial_points([(0.5, 7.5)], 8, seed=3))
    one = iterate_ensemble(L4, x0[:, 0], workers=1, n_burn=10, n_keep=40)
    many = iterate_ensemble(L4, x0[:, 0], workers=4, n_burn=10, n_keep=40)
    for a, b in zip(one, many):
        assert np.array_equal(a.points, b.points)


def test_measure_constant():
    em = empirical_measure(np.full(10, 2.0))
    assert em.counts.tolist() == [10] and em.total == 10


def test_measure_two_bins():
    em = empirical_measure(np.array([0.25, 0.75]), n_bins=2, range=(0, 1))
    assert em.counts.tolist() == [1, 1]


def test_measure_rejects_escape():
    t = Trajectory(np.zeros((3, 1)), 0, 0, True, 3)
    with pytest.raises(EscapedTrajectory):
        empirical_measure(t)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=1, max_size=200), st.integers(1, 50))
def test_measure_invariants(xs, bins):
    em = empirical_measure(np.array(xs), n_bins=bins)
    assert em.counts.sum() == em.total == len(xs)
    grid = np.linspace(min(xs) - 1, max(xs) + 1, 50)
    F = em.ecdf(grid)
    assert np.all(np.diff(F) >= 0) and F[0] == 0 and F[-1] == 1


def test_ks_self_zero():
    em = empirical_measure(np.random.default_rng(0).random(100))
    assert ks_distance(em, em) == 0.0


def test_ks_single_point():
    em = empirical_measure(np.array([0.5]))
    assert ks_distance(em, lambda x: np.clip(x, 0, 1)) == 0.5


def test_ks_matches_hand_statistic():
    x = np.random.default_rng(1).random(500)
    em = empirical_measure(x)
    assert abs(ks_distance(em, lambda u: np.clip(u, 0, 1), rescale=False) - ks_uniform(x)) < 1e-15


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_ks_metric(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (empirical_measure(rng.normal(size=rng.integers(5, 60))) for _ in range(3))
    ab, ba = ks_distance(a, b), ks_distance(b, a)
    assert ab == ba
    assert ab <= ks_distance(a, c) + ks_distance(c, b) + 1e-12


@pytest.fixture(scope="module")
def logistic_orbit():
    return iterate_map(L4, 0.1234, n_burn=10_000, n_keep=200_000)


def test_logistic_arcsine(logistic_orbit):
    em = empirical_measure(logistic_orbit)
    assert ks_distance(em, arcsine_cdf) <= 0.02
    # also against the known support [0, 8] of the conjugated variable
    assert ks_distance(em, arcsine_cdf, support=(0.0, 8.0)) <= 0.02


def test_stationarity(logistic_orbit):
    em = empirical_measure(logistic_orbit, n_bins=50)
    assert stationarity_defect(L4, em) <= 3 / np.sqrt(em.counts.min())


def test_cycles_two_cycle():
    pts = np.array([1.0, 2.0] * 20)
    r = detect_cycles(pts, 1.0, 1e-6)
    assert np.all(r.return_times == 2) and r.modal_period == 2


def test_cycles_constant():
    r = detect_cycles(np.full(10, 3.0), 3.0, 1e-9)
    assert np.all(r.return_times == 1)


def test_cycles_circle():
    h = 2 * np.pi / 100
    t = np.arange(1000) * h
    pts = np.stack([np.cos(t), np.sin(t)], axis=1)
    r = detect_cycles(pts, pts[0], h / 2)
    assert r.modal_period == 100


def test_cycles_errors():
    with pytest.raises(NoReturns):
        detect_cycles(np.arange(5.0), 0.0, 0.1)
    with pytest.raises(ValueError):
        detect_cycles(np.arange(5.0), 0.0, 0.0)


def test_orbit_raster_real_axis():
    # alpha in (-1, 1) with z = alpha z + z^2/2 started at the critical point
    alive = orbit_escape_raster(np.array([[0.0 + 0j, -5.0 + 0j]]), 2)
    assert alive[0, 0] and not alive[0, 1]
