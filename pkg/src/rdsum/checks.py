"""Invariant suite run by ``rdsum validate``.

Each check returns a measured deviation and the tolerance it is held to;
boolean properties report 0 on success and 1 on failure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analytic as an
from . import casimir as cs
from . import euler_maclaurin as em
from . import lattice as lt
from .special import bernoulli_periodic, bessel_k0, zeta_int


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    deviation: float
    tolerance: float


def _flag(ok: bool) -> float:
    return 0.0 if ok else 1.0


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


# -- special functions -------------------------------------------------------


def bernoulli_reflection():
    dev = max(
        abs(bernoulli_periodic(n, 1.0) - (-1) ** n * bernoulli_periodic(n, 0.0)) for n in range(2, 9)
    )
    return dev, 1e-15


def bernoulli_derivative():
    dev = 0.0
    h = 1e-5
    for n in range(3, 9):
        for x in np.linspace(0.05, 0.95, 10):
            fd = (bernoulli_periodic(n, x + h) - bernoulli_periodic(n, x - h)) / (2 * h)
            dev = max(dev, abs(fd - n * bernoulli_periodic(n - 1, x)))
    return dev, 1e-8


def k0_monotone():
    vals = [bessel_k0(x) for x in np.geomspace(1e-3, 700, 400)]
    return _flag(all(b < a for a, b in zip(vals, vals[1:]))), 0.0


def zeta_large():
    return zeta_int(30) - 1.0, 1e-9


# -- analytic core -----------------------------------------------------------


def d1_exactness():
    dev = max(
        _rel(an.xi_formula(an.EvalConfig(1, lam)).xi, 2.0 / math.expm1(lam))
        for lam in (0.5, 1.0, 2.0, 5.0, 10.0)
    )
    return dev, 1e-12


def telescoping():
    dev = 0.0
    for d in range(1, 7):
        for lam in (0.1, 1.0, 5.0):
            xi = an.xi_formula(an.EvalConfig(d, lam)).xi
            total = math.fsum(an.lambda_j(j, lam).value for j in range(d))
            dev = max(dev, _rel(total, xi))
    return dev, 1e-11


def chi_method_agreement():
    dev = max(
        _rel(an.chi_power_series(j, lam).value, an.chi_direct(j, lam).value)
        for j in range(5)
        for lam in (0.1, 1.0, 3.0)
    )
    return dev, 1e-10


def bessel_series_identity():
    dev = max(abs(an.k0_sum_direct(lam) - an.k0_sum_series(lam)) for lam in (0.5, 1.0, 2.0))
    return dev, 1e-10


def c_term_limits():
    dev = 0.0
    for d in range(1, 6):
        dev = max(dev, an.c_term(d, 1e-6) / 1e-5, abs(an.c_term(d, 1e3) - 1.0) / 0.02)
    return dev, 1.0


def xi_monotone():
    grid = np.geomspace(0.05, 20.0, 40)
    ok = True
    for d in range(1, 6):
        xs = [an.xi_formula(an.EvalConfig(d, float(lam))) for lam in grid]
        ok &= all(b.xi < a.xi for a, b in zip(xs, xs[1:]))
        ok &= all(b.i_term < a.i_term for a, b in zip(xs, xs[1:]))
        ok &= all(b.c_term > a.c_term for a, b in zip(xs, xs[1:]))
    return _flag(ok), 0.0


# -- lattice oracle ----------------------------------------------------------


def table_dual_method():
    ok = all(
        np.array_equal(lt.rd_table_convolution(d, 2000).counts, lt.rd_table_enumeration(d, 2000).counts)
        for d in range(1, 6)
    )
    return _flag(ok), 0.0


def lattice_point_identity():
    ok = all(
        int(lt.rd_table_convolution(d, n).counts.sum()) == lt.lattice_points_in_ball(d, n)
        for d in range(1, 5)
        for n in (0, 1, 7, 50, 400)
    )
    return _flag(ok), 0.0


def table_spot_values():
    ok = (
        lt.rd_table_convolution(2, 25)[25] == 12
        and lt.rd_table_convolution(3, 1)[1] == 6
        and lt.rd_table_convolution(4, 4)[4] == 24
    )
    return _flag(bool(ok)), 0.0


def average_order():
    n = 10**6
    return abs(lt.average_order_check(n) - math.pi), 3.0 / math.sqrt(n)


def pct_diff_grows_with_lambda():
    rows = lt.compare([2, 3, 4, 5], [0.1, 1.0, 5.0, 10.0])
    ok = True
    for _, group in itertools.groupby(rows, key=lambda r: r.d):
        pct = [r.pct_diff for r in group]
        ok &= all(b >= a for a, b in zip(pct, pct[1:]))
    return _flag(ok), 0.0


# -- Casimir -----------------------------------------------------------------


def casimir_d1():
    return abs(cs.casimir_closed_form(1).energy + math.pi / 24.0), 1e-12


def casimir_limit_consistency():
    dev = max(
        _rel(cs.casimir_via_limit(d), cs.casimir_closed_form(d).energy) for d in range(1, 6)
    )
    return dev, 1e-5


def casimir_finite_lambda():
    lam = 0.01
    dev = max(
        _rel(
            cs.regularized_with_boundaries(d, lam) - cs.regularized_without_boundaries(d, lam),
            cs.casimir_closed_form(d).energy,
        )
        for d in range(1, 5)
    )
    return dev, 0.01


def casimir_negative():
    ok = all(
        cs.casimir_closed_form(d).energy < 0
        and all(t.value > 0 for t in cs.casimir_closed_form(d).terms)
        for d in range(1, 11)
    )
    return _flag(ok), 0.0


def operator_identity():
    dev = max(
        _rel(cs.binomial_brute_sum(d, lam), cs.nonnegative_mode_sum(d, lam))
        for d in (1, 2, 3)
        for lam in (0.5, 1.0)
    )
    return dev, 1e-8


# -- Euler-Maclaurin / volume integral ---------------------------------------


def remainder_q_independence():
    dev = 0.0
    for lam in (0.5, 1.0, 2.0):
        for c in (0.25, 1.0, 4.0):
            r = [em.remainder_direct(q, lam, c).value for q in (1, 2, 3)]
            dev = max(dev, abs(r[0] - r[1]), abs(r[1] - r[2]), abs(r[0] - r[2]))
    return dev, 1e-6


def remainder_matches_sum():
    dev = 0.0
    for lam, c in ((1.0, 1.0), (2.0, 0.25), (0.5, 4.0)):
        direct = em.remainder_direct(1, lam, c).value
        dev = max(dev, abs(direct - em.remainder_from_sum(lam, c)[0]))
    return dev, 1e-8


def odd_derivatives():
    dev = 0.0
    for lam, c in ((1.0, 1.0), (0.5, 2.0), (2.0, 0.25)):
        f0 = math.exp(-lam * math.sqrt(c))
        est = em.odd_derivatives_vanish(lam, c)
        dev = max(dev, max(abs(e) for e in est) / max(1.0, f0))
    return dev, 1e-7


def i_term_quadrature():
    dev = max(
        _rel(em.i_term_quadrature(d, lam), an.i_term(d, lam))
        for d in range(1, 6)
        for lam in (0.5, 1.0, 2.0)
    )
    return dev, 1e-8


def gamma_identity():
    return max(em.gamma_identity_deviation(d) for d in range(1, 11)), 1e-13


def angular_integral():
    return max(em.angular_integral_deviation(k) for k in range(1, 7)), 1e-10


CHECKS: dict[str, Callable[[], tuple[float, float]]] = {
    "bernoulli_reflection": bernoulli_reflection,
    "bernoulli_derivative": bernoulli_derivative,
    "k0_monotone": k0_monotone,
    "zeta_large_argument": zeta_large,
    "d1_exactness": d1_exactness,
    "telescoping": telescoping,
    "chi_method_agreement": chi_method_agreement,
    "bessel_series_identity": bessel_series_identity,
    "c_term_limits": c_term_limits,
    "xi_monotone": xi_monotone,
    "table_dual_method": table_dual_method,
    "lattice_point_identity": lattice_point_identity,
    "table_spot_values": table_spot_values,
    "average_order": average_order,
    "pct_diff_grows_with_lambda": pct_diff_grows_with_lambda,
    "casimir_d1": casimir_d1,
    "casimir_limit_consistency": casimir_limit_consistency,
    "casimir_finite_lambda": casimir_finite_lambda,
    "casimir_negative": casimir_negative,
    "operator_identity": operator_identity,
    "remainder_q_independence": remainder_q_independence,
    "remainder_matches_sum": remainder_matches_sum,
    "odd_derivatives": odd_derivatives,
    "i_term_quadrature": i_term_quadrature,
    "gamma_identity": gamma_identity,
    "angular_integral": angular_integral,
}


def run_checks(names=None) -> list[CheckResult]:
    results = []
    for name in names or CHECKS:
        deviation, tolerance = CHECKS[name]()
        deviation = float(deviation)
        results.append(CheckResult(name, deviation <= tolerance, deviation, tolerance))
    return results
