import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdsum import euler_maclaurin as em
from rdsum.analytic import i_term
from rdsum.exceptions import DomainError

LAMS = [0.5, 1.0, 2.0]
SHIFTS = [0.25, 1.0, 4.0]


def remainder_mp(lam, c):
    f = lambda x: mpmath.exp(-lam * mpmath.sqrt(x * x + c))
    return mpmath.nsum(f, [1, mpmath.inf]) - mpmath.quad(f, [0, mpmath.inf]) + f(0) / 2


@pytest.mark.parametrize("lam", LAMS)
@pytest.mark.parametrize("c", SHIFTS)
def test_remainder_independent_of_q(lam, c):
    r1, r2, r3 = (em.remainder_direct(q, lam, c).value for q in (1, 2, 3))
    assert abs(r1 - r2) < 1e-6
    assert abs(r2 - r3) < 1e-6
    assert abs(r1 - r3) < 1e-6


@pytest.mark.parametrize("lam, c", [(1.0, 1.0), (2.0, 0.25), (0.5, 4.0)])
def test_remainder_matches_mpmath(lam, c):
    expected = float(remainder_mp(lam, c))
    assert em.remainder_direct(2, lam, c).value == pytest.approx(expected, abs=1e-12)
    assert em.remainder_from_sum(lam, c)[0] == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("order", [0, 1, 2, 4, 6])
def test_periodized_derivative_matches_mpmath(order):
    lam, c, x = 1.0, 1.0, 0.3
    f = lambda t: mpmath.exp(-lam * mpmath.sqrt(t * t + c))
    expected = sum(mpmath.diff(f, x + nu, order) for nu in range(0, 45))
    assert em.periodized_derivative(order, x, lam, c) == pytest.approx(float(expected), rel=1e-10, abs=1e-14)


def test_remainder_domain():
    with pytest.raises(DomainError):
        em.remainder_direct(4, 1.0, 1.0)
    with pytest.raises(DomainError):
        em.remainder_direct(1, 1.0, 0.0)
    with pytest.raises(DomainError):
        em.remainder_from_sum(-1.0, 1.0)


def test_fornberg_classic_stencils():
    np.testing.assert_allclose(em.fornberg_weights(1, [-1, 0, 1]), [-0.5, 0, 0.5], atol=1e-15)
    np.testing.assert_allclose(em.fornberg_weights(2, [-1, 0, 1]), [1, -2, 1], atol=1e-15)
    np.testing.assert_allclose(
        em.fornberg_weights(1, [-2, -1, 0, 1, 2]), [1 / 12, -2 / 3, 0, 2 / 3, -1 / 12], atol=1e-15
    )
    with pytest.raises(DomainError):
        em.fornberg_weights(3, [0, 1, 2])


@given(k=st.integers(0, 6))
def test_fornberg_exact_on_monomials(k):
    offsets = np.arange(-4, 5, dtype=float)
    w = em.fornberg_weights(k, offsets)
    for p in range(9):
        expected = math.factorial(k) if p == k else 0.0
        assert float(np.dot(w, offsets**p)) == pytest.approx(expected, abs=1e-9 * max(1, 4**p))


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
def test_central_derivative_of_exp(order):
    assert em.central_derivative(math.exp, 0.3, order) == pytest.approx(math.exp(0.3), rel=1e-6)


@pytest.mark.parametrize("lam, c", [(1.0, 1.0), (0.5, 2.0), (2.0, 0.25)])
def test_odd_derivatives_vanish(lam, c):
    k1, k3, k5 = em.odd_derivatives_vanish(lam, c)
    assert abs(k1) < 1e-7
    assert abs(k3) < 1e-7
    assert abs(k5) < 1e-6


def test_odd_derivative_orders_validated():
    with pytest.raises(DomainError):
        em.odd_derivatives_vanish(1.0, 1.0, orders=(2,))


@pytest.mark.parametrize("d", range(1, 6))
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_i_term_quadrature(d, lam):
    assert em.i_term_quadrature(d, lam) == pytest.approx(i_term(d, lam), rel=1e-8)


def test_i_term_quadrature_spots():
    assert em.i_term_quadrature(2, 1.0) == pytest.approx(2 * math.pi, rel=1e-12)
    assert em.i_term_quadrature(1, 2.0) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("d", range(1, 11))
def test_gamma_identity(d):
    assert em.gamma_identity_deviation(d) < 1e-13


@pytest.mark.parametrize("k", range(1, 7))
def test_angular_integral(k):
    assert em.angular_integral_deviation(k) < 1e-10


def test_angular_integral_domain():
    with pytest.raises(DomainError):
        em.angular_integral_deviation(0)
