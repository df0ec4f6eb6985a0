import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sp

from rdsum.exceptions import DomainError
from rdsum.special import (
    Accuracy,
    bernoulli_number,
    bernoulli_periodic,
    bernoulli_poly_array,
    bessel_k0,
    gamma_half,
    zeta_int,
)


@pytest.mark.parametrize("n", range(0, 31))
def test_bernoulli_numbers_match_mpmath(n):
    expected = mpmath.bernoulli(n)
    if n == 1:
        assert bernoulli_number(1) == Fraction(-1, 2)
    else:
        assert float(bernoulli_number(n)) == pytest.approx(float(expected), rel=1e-15, abs=0)


def test_known_small_bernoulli():
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(4) == Fraction(-1, 30)
    assert bernoulli_number(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("x", [0.0, 0.1, 0.37, 0.5, 0.9, 1.0])
def test_bernoulli_polynomial_matches_mpmath(n, x):
    assert bernoulli_periodic(n, x) == pytest.approx(float(mpmath.bernpoly(n, x)), abs=1e-15)


@given(n=st.integers(2, 8), x=st.floats(0.0, 1.0))
def test_bernoulli_reflection(n, x):
    # B_n(1 - x) = (-1)^n B_n(x)
    assert bernoulli_periodic(n, 1.0 - x) == pytest.approx(
        (-1) ** n * bernoulli_periodic(n, x), abs=1e-14
    )


def test_bernoulli_array_agrees_with_scalar():
    x = np.linspace(0, 1, 17)
    for n in range(2, 9):
        np.testing.assert_allclose(
            bernoulli_poly_array(n, x), [bernoulli_periodic(n, v) for v in x], rtol=0, atol=1e-16
        )


@pytest.mark.parametrize("bad", [(1, 0.5), (9, 0.5), (4, -0.1), (4, 1.1)])
def test_bernoulli_domain(bad):
    with pytest.raises(DomainError):
        bernoulli_periodic(*bad)


@pytest.mark.parametrize("two_a", range(1, 40))
def test_gamma_half(two_a):
    assert gamma_half(two_a) == pytest.approx(math.gamma(two_a / 2), rel=2e-15)


@pytest.mark.parametrize("bad", [0, -1, 2.5])
def test_gamma_half_domain(bad):
    with pytest.raises(DomainError):
        gamma_half(bad)


@pytest.mark.parametrize("s", list(range(2, 40)) + [59, 60, 61, 80, 101])
def test_zeta_matches_mpmath(s):
    assert zeta_int(s) == pytest.approx(float(mpmath.zeta(s)), rel=2e-15)


def test_zeta_closed_forms():
    assert zeta_int(2) == pytest.approx(math.pi**2 / 6, rel=1e-15)
    assert zeta_int(4) == pytest.approx(math.pi**4 / 90, rel=1e-15)
    assert zeta_int(30) - 1.0 < 1e-9


@pytest.mark.parametrize("s", [1, 0, -3, 2.5])
def test_zeta_domain(s):
    with pytest.raises(DomainError):
        zeta_int(s)


@pytest.mark.parametrize("x", np.geomspace(1e-3, 700, 60))
def test_k0_matches_mpmath(x):
    assert bessel_k0(x) == pytest.approx(float(mpmath.besselk(0, x)), rel=5e-15)


@given(x=st.floats(1e-6, 740.0))
@settings(max_examples=200)
def test_k0_matches_scipy(x):
    assert bessel_k0(x) == pytest.approx(sp.k0(x), rel=1e-13, abs=1e-300)


def test_k0_branch_boundary_is_continuous():
    left, right = bessel_k0(2.0), bessel_k0(np.nextafter(2.0, 3.0))
    assert abs(left - right) / left < 1e-14


def test_k0_underflow_and_domain():
    assert bessel_k0(800.0) == 0.0
    for bad in (0.0, -1.0, math.nan):
        with pytest.raises(DomainError):
            bessel_k0(bad)


def test_k0_monotone():
    vals = [bessel_k0(x) for x in np.geomspace(1e-3, 700, 400)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("kwargs", [{"eps_rel": 0.0}, {"eps_rel": 1.0}, {"max_terms": 0}, {"max_terms": 2.5}])
def test_accuracy_validation(kwargs):
    with pytest.raises(DomainError):
        Accuracy(**kwargs)
