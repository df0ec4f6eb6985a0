"""Neumann Casimir energy of a massless scalar field in a d-cube.

All energies are returned per unit ``1/L`` (box side ``L`` factored out,
``hbar = c = 1``). With Neumann walls the modes are
``omega = (pi/L) sqrt(n_1^2 + ... + n_d^2)``, ``n_i >= 0``, and

    H_d(lambda) = (pi/2) sum_{n_i >= 0} |n| exp(-lambda |n|)
                = -(pi / 2^(d+1)) sum_{p=1}^{d} C(d,p) dxi_p/dlambda,
    G_d(lambda) = -(pi / 2^(d+1)) sum_{p=1}^{d} C(d,p) dI_p/dlambda,
    E_d         = lim_{lambda -> 0} (H_d - G_d).

The ``p = 0`` binomial term is absent because the all-zero mode carries
zero frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analytic import (
    EvalConfig,
    _check_dimension,
    _check_lambda,
    _volume_coeff,
    c_term_derivative,
    xi_derivative,
)
from .exceptions import DomainError, ExtrapolationDiverged
from .lattice import BRUTE_ACCURACY, rd_table_convolution, xi_brute
from .special import Accuracy, gamma_half, zeta_int

DEFAULT_LIMIT_GRID = (0.04, 0.02, 0.01)


@dataclass(frozen=True)
class CasimirTerm:
    p: int
    j: int
    value: float


@dataclass(frozen=True)
class CasimirBreakdown:
    d: int
    terms: list[CasimirTerm] = field(repr=False)
    energy: float


def _prefactor(d: int) -> float:
    return math.pi / 2.0 ** (d + 1)


def casimir_closed_form(d: int) -> CasimirBreakdown:
    """``E_d = -1/(pi 2^(d+1)) sum_p sum_{j<p} C(d,p) Gamma((j+2)/2) pi^(-j/2) zeta(j+2)``."""
    _check_dimension(d)
    terms = []
    for p in range(1, d + 1):
        for j in range(p):
            value = math.comb(d, p) * gamma_half(j + 2) * math.pi ** (-0.5 * j) * zeta_int(j + 2)
            terms.append(CasimirTerm(p=p, j=j, value=value))
    energy = -math.fsum(t.value for t in terms) / (math.pi * 2.0 ** (d + 1))
    return CasimirBreakdown(d=d, terms=terms, energy=energy)


def regularized_with_boundaries(d: int, lam: float, acc: Accuracy | None = None) -> float:
    """``H_d(lambda)`` from the analytic ``xi_p`` derivatives."""
    _check_dimension(d)
    _check_lambda(lam)
    acc = acc or Accuracy()
    parts = [math.comb(d, p) * xi_derivative(EvalConfig(p, lam, acc)) for p in range(1, d + 1)]
    return _prefactor(d) * math.fsum(parts)


def regularized_without_boundaries(d: int, lam: float) -> float:
    """``G_d(lambda)``; diverges like ``lambda^-(d+1)`` as lambda -> 0."""
    _check_dimension(d)
    _check_lambda(lam)
    try:
        parts = [
            math.comb(d, p) * p * _volume_coeff(p) / lam ** (p + 1) for p in range(1, d + 1)
        ]
        value = _prefactor(d) * math.fsum(parts)
    except (OverflowError, ZeroDivisionError) as exc:
        raise OverflowError(f"G_{d}({lam}) is outside the float range") from exc
    if not math.isfinite(value):
        raise OverflowError(f"G_{d}({lam}) is outside the float range")
    return value


def casimir_difference(d: int, lam: float, acc: Accuracy | None = None) -> float:
    """``H_d - G_d`` at finite lambda, computed from ``dC_p/dlambda`` directly."""
    _check_dimension(d)
    _check_lambda(lam)
    parts = [math.comb(d, p) * c_term_derivative(p, lam, acc) for p in range(1, d + 1)]
    return -_prefactor(d) * math.fsum(parts)


def _richardson_even(hs, values):
    # Neville extrapolation to h = 0 in the variable h^2. Returns the
    # diagonal estimates T[0][0], T[1][1], ...
    x = [h * h for h in hs]
    table = [list(values)]
    for k in range(1, len(values)):
        prev = table[-1]
        row = []
        for i in range(len(prev) - 1):
            row.append(prev[i + 1] + (prev[i + 1] - prev[i]) * x[i + k] / (x[i] - x[i + k]))
        table.append(row)
    return [col[-1] for col in table]


def casimir_via_limit(
    d: int, lambdas=DEFAULT_LIMIT_GRID, acc: Accuracy | None = None
) -> float:
    """``E_d`` as the lambda -> 0 limit of ``H_d - G_d``.

    The difference is even in lambda, so the grid values are extrapolated in
    ``lambda^2``. Raises :class:`ExtrapolationDiverged` when successive
    diagonal estimates stop contracting.
    """
    _check_dimension(d)
    lambdas = [float(v) for v in lambdas]
    if len(lambdas) < 3:
        raise DomainError("casimir_via_limit needs at least three grid points")
    if any(not 0.0 < v < 1.0 for v in lambdas):
        raise DomainError("grid points must lie in (0, 1)")
    if any(b >= a for a, b in zip(lambdas, lambdas[1:])):
        raise DomainError("grid must be strictly decreasing")
    values = [casimir_difference(d, lam, acc) for lam in lambdas]
    estimates = _richardson_even(lambdas, values)
    steps = [abs(b - a) for a, b in zip(estimates, estimates[1:])]
    floor = 1e-13 * max(1.0, abs(estimates[-1]))
    for a, b in zip(steps, steps[1:]):
        if b > a and b > floor:
            raise ExtrapolationDiverged(f"Richardson estimates for d={d} do not contract: {steps}")
    return estimates[-1]


def nonnegative_mode_sum(d: int, lam: float, acc: Accuracy | None = None) -> float:
    """``H_d(lambda)`` summed mode by mode over ``n_i >= 0``.

    Uses the table of representations by nonnegative integers, cut where the
    signed lattice sum is already converged (the nonnegative modes are a
    subset of it, so their tail is smaller).
    """
    _check_dimension(d)
    _check_lambda(lam)
    eps = (acc or BRUTE_ACCURACY).eps_rel
    n_cut = xi_brute(EvalConfig(d, lam, Accuracy(eps)), weight_p=1).n_cut
    counts = rd_table_convolution(d, n_cut, signed=False).counts
    n = np.arange(1, n_cut + 1, dtype=float)
    root = np.sqrt(n)
    c = counts[1:].astype(float)
    total = math.fsum(c * root * np.exp(-lam * root))
    return 0.5 * math.pi * total


def binomial_brute_sum(d: int, lam: float, acc: Accuracy | None = None) -> float:
    """``H_d(lambda)`` via the binomial expansion with brute-force ``xi_p`` derivatives."""
    _check_dimension(d)
    eps = (acc or BRUTE_ACCURACY).eps_rel
    parts = [
        math.comb(d, p) * xi_brute(EvalConfig(p, lam, Accuracy(eps)), weight_p=1).value
        for p in range(1, d + 1)
    ]
    return _prefactor(d) * math.fsum(parts)
