"""Numerical checks of the Euler-Maclaurin remainder and of the volume integral.

The regulator ``f(x) = exp(-lambda sqrt(x^2 + C))`` is even, so its odd
derivatives vanish at 0 and every correction term in the Euler-Maclaurin
formula drops out. What is left,

    R_q = -1/(2q)! int_0^1 B_2q(x) sum_{nu>=0} f^(2q)(x + nu) dx,

should therefore not depend on ``q`` and should equal
``sum_{n>=1} f(n) - int_0^inf f + f(0)/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .analytic import _check_dimension, _check_lambda
from .exceptions import DomainError, ToleranceNotReached
from .special import bernoulli_periodic, gamma_half

_CAUCHY_POINTS = 64


@dataclass(frozen=True)
class RemainderCheck:
    q: int
    lam: float
    c_shift: float
    value: float
    quad_error: float


def regulator(x, lam: float, c_shift: float):
    """``exp(-lam sqrt(x^2 + c_shift))``; accepts real or complex arrays."""
    return np.exp(-lam * np.sqrt(np.asarray(x) ** 2 + c_shift))


def _check_positive(lam, c_shift):
    _check_lambda(lam)
    if not c_shift > 0:
        raise DomainError(f"c_shift must be positive, got {c_shift!r}")


def _nu_max(lam: float) -> int:
    return math.ceil(40.0 / lam)


def periodized_derivative(order: int, x: float, lam: float, c_shift: float) -> float:
    """``sum_{nu>=0} f^(order)(x + nu)`` via Cauchy's integral formula.

    The branch points of ``f`` sit at ``+-i sqrt(C)``, at least ``sqrt(C)``
    away from any real point, so a circle of radius ``sqrt(C)/2`` is safe
    and the trapezoid rule on it converges geometrically.
    """
    r = 0.5 * math.sqrt(c_shift)
    theta = 2.0 * np.pi * np.arange(_CAUCHY_POINTS) / _CAUCHY_POINTS
    ring = r * np.exp(1j * theta)
    nu = np.arange(_nu_max(lam) + 1, dtype=float)
    z = x + nu[:, None] + ring[None, :]
    f_ring = regulator(z, lam, c_shift).sum(axis=0)
    coeff = np.mean(f_ring * np.exp(-1j * order * theta))
    return float(coeff.real) * math.factorial(order) / r**order


def remainder_direct(q: int, lam: float, c_shift: float) -> RemainderCheck:
    """Evaluate ``R_q`` from its integral form with adaptive quadrature over ``x``."""
    if q not in (1, 2, 3):
        raise DomainError(f"q must be 1, 2 or 3, got {q!r}")
    _check_positive(lam, c_shift)
    order = 2 * q

    def integrand(x):
        return bernoulli_periodic(order, x) * periodized_derivative(order, x, lam, c_shift)

    value, err = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-14, epsrel=1e-12, limit=200)
    scale = -1.0 / math.factorial(order)
    if not math.isfinite(value):
        raise ToleranceNotReached(f"quadrature for R_{q} failed")
    return RemainderCheck(q=q, lam=lam, c_shift=c_shift, value=scale * value, quad_error=abs(scale) * err)


def remainder_from_sum(lam: float, c_shift: float) -> tuple[float, float]:
    """``sum_{n>=1} f(n) - int_0^inf f(x) dx + f(0)/2`` and the quadrature error."""
    _check_positive(lam, c_shift)
    n = np.arange(1, _nu_max(lam) + 2, dtype=float)
    series = math.fsum(regulator(n, lam, c_shift))
    # split at a few decay lengths so quad resolves the bulk accurately
    split = 5.0 / lam
    head, e1 = integrate.quad(lambda x: float(regulator(x, lam, c_shift)), 0.0, split,
                              epsabs=1e-15, epsrel=1e-13, limit=200)
    tail, e2 = integrate.quad(lambda x: float(regulator(x, lam, c_shift)), split, np.inf,
                              epsabs=1e-15, epsrel=1e-13, limit=200)
    f0 = math.exp(-lam * math.sqrt(c_shift))
    return math.fsum([series, -head, -tail, 0.5 * f0]), e1 + e2


def fornberg_weights(order: int, offsets) -> np.ndarray:
    """Finite-difference weights for the ``order``-th derivative at 0 on ``offsets``."""
    x = np.asarray(offsets, dtype=float)
    n = len(x)
    if order >= n:
        raise DomainError("need more stencil points than the derivative order")
    c = np.zeros((n, order + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0]
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5, c4 = c4, x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def central_derivative(f, x: float, order: int, h: float | None = None, half_width: int = 4) -> float:
    """Derivative of ``f`` at ``x`` from a ``2*half_width + 1`` point central stencil
    with one Richardson step (``h`` against ``h/2``).

    Function values are combined in symmetric pairs ``f(x + ih) -+ f(x - ih)``
    before weighting, which keeps rounding from leaking into the result.
    The default step balances truncation against rounding.
    """
    offsets = np.arange(-half_width, half_width + 1, dtype=float)
    w = fornberg_weights(order, offsets)[half_width:]
    accuracy = 2 * half_width + 2 - order - (order % 2)
    if h is None:
        h = np.finfo(float).eps ** (1.0 / (order + accuracy))
    sign = (-1) ** order

    def estimate(step):
        pairs = [f(x + i * step) + sign * f(x - i * step) for i in range(1, half_width + 1)]
        centre = w[0] * f(x) if sign > 0 else 0.0
        return math.fsum([centre] + [wi * v for wi, v in zip(w[1:], pairs)]) / step**order

    coarse, fine = estimate(h), estimate(0.5 * h)
    return float((2.0**accuracy * fine - coarse) / (2.0**accuracy - 1.0))


def odd_derivatives_vanish(lam: float, c_shift: float, orders=(1, 3, 5)) -> list[float]:
    """Finite-difference estimates of ``f^(k)(0)`` for odd ``k``; all should be ~0."""
    _check_positive(lam, c_shift)
    out = []
    for k in orders:
        if k % 2 == 0 or k < 1:
            raise DomainError(f"orders must be odd positive integers, got {k}")
        out.append(central_derivative(lambda t: math.exp(-lam * math.sqrt(t * t + c_shift)), 0.0, k))
    return out


def i_term_quadrature(d: int, lam: float) -> float:
    """``I_d`` as (unit-sphere area) x ``int_0^inf exp(-lam r) r^(d-1) dr``."""
    _check_dimension(d)
    _check_lambda(lam)
    area = 2.0 * math.pi ** (0.5 * d) / gamma_half(d)
    radial, _ = integrate.quad(
        lambda r: math.exp(-lam * r) * r ** (d - 1), 0.0, np.inf, epsabs=0.0, epsrel=1e-13, limit=200
    )
    return area * radial


def gamma_identity_deviation(d: int) -> float:
    """Relative gap in ``Gamma(d)/Gamma(d/2) = 2^(d-1) Gamma((d+1)/2)/sqrt(pi)``."""
    _check_dimension(d)
    lhs = gamma_half(2 * d) / gamma_half(d)
    rhs = 2.0 ** (d - 1) * gamma_half(d + 1) / math.sqrt(math.pi)
    return abs(lhs / rhs - 1.0)


def angular_integral_deviation(k: int) -> float:
    """Relative gap between quadrature of ``int_0^pi sin^k`` and its gamma closed form."""
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    numeric, _ = integrate.quad(lambda t: math.sin(t) ** k, 0.0, math.pi, epsabs=0.0, epsrel=1e-13)
    exact = math.sqrt(math.pi) * gamma_half(k + 1) / gamma_half(k + 2)
    return abs(numeric / exact - 1.0)
