from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import bell_oracle
from pflab.bellgen import (Map1D, bell_table, gap_polynomial, is_root_ok,
                           pf_coefficients, zero_spectrum)
from pflab.errors import OrderTooLarge, Resonance

small = st.fractions(min_value=-3, max_value=3, max_denominator=7)


def test_linear_map_table():
    lam = Fraction(3, 2)
    t = bell_table(Map1D.linear(lam), 3)
    for m in range(1, 4):
        assert t[m].coeffs == (0,) * m + (lam ** m,)


def test_logistic_h2_h3():
    lam = Fraction(5, 3)
    t = bell_table(Map1D.logistic(lam), 3)
    assert t[2].coeffs == (0, -1, lam ** 2)
    assert t[3].coeffs == (0, 0, -3 * lam, lam ** 3)


def test_table_invariants():
    lam = Fraction(-2, 3)
    t = bell_table(Map1D.from_coeffs([0, lam, 1, Fraction(1, 5)]), 9)
    assert t[1].coeffs == (0, lam)
    for m in range(1, 10):
        assert t[m].degree == m and t.h(m, m) == lam ** m


def test_order_cap():
    with pytest.raises(OrderTooLarge):
        bell_table(Map1D.logistic(1), 129)


def test_map_validation():
    with pytest.raises(ValueError):
        Map1D.from_coeffs([1, 1])
    with pytest.raises(ValueError):
        Map1D.from_coeffs([0])


@settings(max_examples=40, deadline=None)
@given(small, small, small.filter(lambda v: v != 0), st.integers(1, 10))
def test_table_matches_series_oracle(l, c2, c3, n):
    f = Map1D.from_coeffs([0, l, c2, c3])
    t = bell_table(f, n)
    for m in range(1, n + 1):
        want = bell_oracle([0, l, c2, c3], m)
        got = list(t[m].coeffs) or [Fraction(0)]
        assert got == want


def test_gap_examples():
    lam = Fraction(2)
    t = bell_table(Map1D.logistic(lam), 2)
    assert gap_polynomial(t, 2).coeffs == (0, 1, 1 - lam ** 2)
    tl = bell_table(Map1D.linear(Fraction(1, 2)), 4)
    for m in range(1, 5):
        assert gap_polynomial(tl, m).coeffs == (0,) * m + (1 - Fraction(1, 2) ** m,)
    assert gap_polynomial(bell_table(Map1D.logistic(1), 1), 1).is_zero


def test_pf_worked_example():
    sol = pf_coefficients(bell_table(Map1D.logistic(2), 2), b=1)
    assert sol.coefficients == (1, 1, 1)
    assert sol.residual.coeffs == (0, 0, -3)


def test_pf_linear_map():
    lam = Fraction(3)
    sol = pf_coefficients(bell_table(Map1D.linear(lam), 5), b=1)
    assert sol.coefficients[1:5] == (0, 0, 0, 0)
    assert sol.residual.coeffs == (0,) * 5 + (1 - lam ** 5,)


def test_pf_resonance():
    with pytest.raises(Resonance) as e:
        pf_coefficients(bell_table(Map1D.logistic(1), 4))
    assert e.value.m == 1
    with pytest.raises(Resonance) as e:
        pf_coefficients(bell_table(Map1D.logistic(-1), 4))
    assert e.value.m == 2


@settings(max_examples=40, deadline=None)
@given(small.filter(lambda v: abs(v) != 1), small, small.filter(lambda v: v != 0),
       st.integers(1, 12),
       st.fractions(min_value=-4, max_value=4, max_denominator=9).filter(lambda v: v != 0))
def test_pf_residual_exact(l, c2, c3, n, b):
    t = bell_table(Map1D.from_coeffs([0, l, c2, c3]), n)
    sol = pf_coefficients(t, b)
    res = sol.residual
    assert all(res.coeff(k) == 0 for k in range(n))
    assert res.coeff(n) == b * (1 - l ** n)
    assert sol.coefficients[0] == 1 and sol.coefficients[n] == b


@settings(max_examples=25, deadline=None)
@given(small.filter(lambda v: abs(v) not in (0, 1)), small, st.integers(2, 9),
       st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(lambda v: v != 0))
def test_pf_linear_in_b(l, c2, n, c):
    t = bell_table(Map1D.from_coeffs([0, l, c2, 1]), n)
    one = pf_coefficients(t, 1).coefficients
    scaled = pf_coefficients(t, c).coefficients
    assert scaled[0] == 1
    assert all(scaled[m] == c * one[m] for m in range(1, n + 1))


def test_zero_spectrum_cubic_case():
    lam = Fraction(2)
    zs = zero_spectrum(bell_table(Map1D.logistic(lam), 3))
    assert zs.y.tolist() == [0.0, 0.75]
    assert zs.multiplicity.tolist() == [2, 1]
    assert np.allclose(zs.nonzero_s(), [0.75 / 3])


def test_zero_spectrum_linear():
    zs = zero_spectrum(bell_table(Map1D.linear(2), 6))
    assert zs.y.tolist() == [0.0] and zs.multiplicity.tolist() == [6]


def test_zero_spectrum_n64_support():
    zs = zero_spectrum(bell_table(Map1D.logistic(1), 64))
    s = zs.nonzero_s()
    assert is_root_ok(zs)
    assert len(s) == 32 and np.all((s > 0) & (s <= 4))
    assert int(zs.multiplicity.sum()) == 64


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(3, 2)])
def test_zeros_interlace(lam):
    t = bell_table(Map1D.logistic(lam), 40)
    prev = None
    for n in range(4, 41):
        y = zero_spectrum(t, n).y
        y = y[y > 0]
        if prev is not None:
            merged = np.concatenate([prev, y])
            src = np.concatenate([np.zeros(len(prev)), np.ones(len(y))])[np.argsort(merged)]
            assert np.all(src[1:] != src[:-1]), n
        prev = y
