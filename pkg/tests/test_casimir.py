import math

import mpmath
import pytest

from rdsum import casimir as cs
from rdsum.exceptions import DomainError, ExtrapolationDiverged

E2_REFERENCE = -0.22026370310131022


def energy_mp(d):
    # independent high-precision evaluation of the double sum
    total = mpmath.mpf(0)
    for p in range(1, d + 1):
        for j in range(p):
            total += mpmath.binomial(d, p) * mpmath.gamma(mpmath.mpf(j + 2) / 2) * mpmath.pi ** (-mpmath.mpf(j) / 2) * mpmath.zeta(j + 2)
    return -total / (mpmath.pi * 2 ** (d + 1))


def test_d1_is_minus_pi_over_24():
    assert cs.casimir_closed_form(1).energy == pytest.approx(-math.pi / 24, abs=1e-12)


def test_d1_matches_zeta_minus_one():
    # (pi/2) zeta(-1) = -pi/24
    assert cs.casimir_closed_form(1).energy == pytest.approx(float(mpmath.pi / 2 * mpmath.zeta(-1)), rel=1e-14)


def test_d2_closed_form():
    expected = -(mpmath.pi**2 + mpmath.zeta(3)) / (16 * mpmath.pi)
    assert cs.casimir_closed_form(2).energy == pytest.approx(float(expected), rel=1e-14)
    assert cs.casimir_closed_form(2).energy == pytest.approx(E2_REFERENCE, rel=1e-14)


@pytest.mark.parametrize("d", range(1, 11))
def test_closed_form_matches_mpmath(d):
    assert cs.casimir_closed_form(d).energy == pytest.approx(float(energy_mp(d)), rel=1e-14)


def test_term_table_shape():
    res = cs.casimir_closed_form(4)
    assert len(res.terms) == 10
    assert {(t.p, t.j) for t in res.terms} == {(p, j) for p in range(1, 5) for j in range(p)}
    assert all(t.value > 0 for t in res.terms)
    assert res.energy < 0


@pytest.mark.parametrize("d", range(1, 6))
def test_limit_matches_closed_form(d):
    assert cs.casimir_via_limit(d) == pytest.approx(cs.casimir_closed_form(d).energy, rel=1e-5)


def test_limit_d1_tight():
    assert cs.casimir_via_limit(1) == pytest.approx(-math.pi / 24, abs=1e-6)


@pytest.mark.parametrize("d", range(1, 5))
def test_finite_lambda_difference(d):
    lam = 0.01
    diff = cs.regularized_with_boundaries(d, lam) - cs.regularized_without_boundaries(d, lam)
    assert diff == pytest.approx(cs.casimir_closed_form(d).energy, rel=0.01)


@pytest.mark.parametrize("d", range(1, 5))
def test_difference_routes_agree(d):
    lam = 0.3
    subtracted = cs.regularized_with_boundaries(d, lam) - cs.regularized_without_boundaries(d, lam)
    assert cs.casimir_difference(d, lam) == pytest.approx(subtracted, rel=1e-9)


def test_h1_value():
    exact = math.pi / 4 * 2 * math.e / (math.e - 1) ** 2
    assert cs.regularized_with_boundaries(1, 1.0) == pytest.approx(exact, rel=1e-12)
    assert cs.regularized_with_boundaries(1, 1.0) == pytest.approx(1.4462, rel=1e-4)


def test_g_values():
    assert cs.regularized_without_boundaries(1, 1.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert cs.regularized_without_boundaries(2, 1.0) == pytest.approx(math.pi / 8 * (4 + 4 * math.pi), rel=1e-14)


def test_g_diverges_and_overflows():
    assert cs.regularized_without_boundaries(3, 1e-3) > 1e9
    with pytest.raises(OverflowError):
        cs.regularized_without_boundaries(10, 1e-40)


def test_h_vanishes_at_large_lambda():
    # the formula carries ~1e-17 absolute cancellation error out here
    assert abs(cs.regularized_with_boundaries(3, 60.0)) < 1e-15
    assert cs.nonnegative_mode_sum(3, 60.0) < 1e-24


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("lam", [0.5, 1.0])
def test_operator_identity(d, lam):
    assert cs.binomial_brute_sum(d, lam) == pytest.approx(cs.nonnegative_mode_sum(d, lam), rel=1e-8)


def test_h_matches_mode_sum_d1_exactly():
    assert cs.regularized_with_boundaries(1, 0.7) == pytest.approx(cs.nonnegative_mode_sum(1, 0.7), rel=1e-9)


@pytest.mark.parametrize("d", [2, 3])
def test_h_matches_mode_sum_within_remainder(d):
    assert cs.regularized_with_boundaries(d, 0.5) == pytest.approx(cs.nonnegative_mode_sum(d, 0.5), rel=1e-3)


@pytest.mark.parametrize(
    "grid", [(0.04, 0.02), (0.02, 0.04, 0.01), (0.5, 1.5, 0.1), (0.04, 0.0, -0.01)]
)
def test_limit_grid_validation(grid):
    with pytest.raises(DomainError):
        cs.casimir_via_limit(2, grid)


def test_richardson_detects_divergence(monkeypatch):
    values = iter([0.0, 1.0, 0.0, 0.0])
    monkeypatch.setattr(cs, "casimir_difference", lambda d, lam, acc=None: next(values))
    with pytest.raises(ExtrapolationDiverged):
        cs.casimir_via_limit(2, (0.08, 0.04, 0.02, 0.01))


def test_richardson_exact_on_quadratic():
    hs = [0.4, 0.2, 0.1]
    vals = [3.0 + 2.0 * h * h - h**4 for h in hs]
    assert cs._richardson_even(hs, vals)[-1] == pytest.approx(3.0, abs=1e-13)
