"""Closed-form evaluation of the generating function ``xi_d(lambda)``.

``xi_d(lambda) = sum_{n>=1} r_d(n) exp(-lambda sqrt(n))`` is approximated by

    xi_d = I_d - 1 + C_d,
    I_d  = 2^d pi^((d-1)/2) Gamma((d+1)/2) / lambda^d,
    C_d  = lambda sum_{j<d} 2^(j+2) Gamma((j+2)/2) pi^(j/2) chi_j(lambda),
    chi_j(lambda) = sum_{m>=1} (lambda^2 + 4 m^2 pi^2)^(-(j+2)/2).

``chi_j`` is available both as a direct sum (any ``lambda > 0``) and as a
power series in ``lambda^2`` with zeta-valued coefficients (``lambda < 2 pi``).
The approximation is exact for ``d = 1``; for ``d >= 2`` it drops an
Euler-Maclaurin remainder that is exponentially small at small ``lambda``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .exceptions import DomainError, ToleranceNotReached
from .special import EULER_GAMMA, Accuracy, bernoulli_number, bessel_k0, gamma_half, zeta_int

DIRECT = "direct_chi"
POWER_SERIES = "power_series"
BRUTE = "brute"
MODES = (DIRECT, POWER_SERIES)

MAX_DIMENSION = 10
TWO_PI = 2.0 * math.pi

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
_CHI_MIN_CUT = 64
_CANCELLATION_REFINE = 10.0
_EPS_FLOOR = 1e-18


@dataclass(frozen=True)
class EvalConfig:
    """Dimension ``d``, regulator ``lam`` and the truncation policy."""

    d: int
    lam: float
    accuracy: Accuracy = field(default_factory=Accuracy)

    def __post_init__(self):
        _check_dimension(self.d)
        _check_lambda(self.lam)


@dataclass(frozen=True)
class ChiValue:
    j: int
    lam: float
    value: float
    terms_used: int
    tail_bound: float


@dataclass(frozen=True)
class XiBreakdown:
    config: EvalConfig
    i_term: float
    c_term: float
    xi: float
    method: str


@dataclass(frozen=True)
class LambdaJValue:
    j: int
    lam: float
    value: float


def _check_dimension(d):
    if int(d) != d or not 1 <= d <= MAX_DIMENSION:
        raise DomainError(f"dimension must be an integer in 1..{MAX_DIMENSION}, got {d!r}")


def _check_lambda(lam):
    if not (isinstance(lam, (int, float)) and math.isfinite(lam) and lam > 0):
        raise DomainError(f"lambda must be a positive finite real, got {lam!r}")


def _check_j(j):
    if int(j) != j or j < 0:
        raise DomainError(f"j must be a nonnegative integer, got {j!r}")


# ---------------------------------------------------------------------------
# chi_j
# ---------------------------------------------------------------------------


def _chi_tail(j: int, lam: float, M: int) -> tuple[float, float]:
    """Euler-Maclaurin estimate of ``sum_{m>=M} g(m)`` and an error bound.

    ``g(t) = (lam^2 + b t^2)^(-alpha)`` with ``b = 4 pi^2``, ``alpha = (j+2)/2``.
    """
    a = lam * lam
    b = TWO_PI * TWO_PI
    alpha = 0.5 * (j + 2)

    # int_M^inf g(t) dt = int_0^(1/M) u^j (a u^2 + b)^(-alpha) du
    u = 0.5 / M * (_GL_NODES + 1.0)
    integrand = u**j * (a * u * u + b) ** (-alpha)
    integral = 0.5 / M * float(np.dot(_GL_WEIGHTS, integrand))

    t = float(M)
    w = a + b * t * t
    g = w**-alpha
    g1 = -2.0 * alpha * b * t * w ** (-alpha - 1.0)
    g3 = (
        12.0 * alpha * (alpha + 1.0) * b * b * t * w ** (-alpha - 2.0)
        - 8.0 * alpha * (alpha + 1.0) * (alpha + 2.0) * b**3 * t**3 * w ** (-alpha - 3.0)
    )
    b2 = float(bernoulli_number(2)) / 2.0
    b4 = float(bernoulli_number(4)) / 24.0
    b6 = float(bernoulli_number(6)) / 720.0
    tail = math.fsum([integral, 0.5 * g, -b2 * g1, -b4 * g3])

    # First omitted correction, from the power-law envelope of g, doubled.
    rising = math.prod(range(j + 2, j + 7))
    bound = 2.0 * abs(b6) * rising * TWO_PI ** (-(j + 2)) * t ** (-(j + 7))
    return tail, bound


def chi_direct(j: int, lam: float, acc: Accuracy | None = None) -> ChiValue:
    """``chi_j(lambda)`` by direct summation over ``m``.

    The first ``M - 1`` terms are summed exactly (compensated); the rest is
    replaced by its Euler-Maclaurin expansion through the third derivative.
    ``M`` grows until the first neglected correction falls below
    ``eps_rel`` times the value.
    """
    _check_j(j)
    _check_lambda(lam)
    acc = acc or Accuracy()
    M = max(_CHI_MIN_CUT, math.ceil(2.0 * lam))
    while True:
        if M > acc.max_terms:
            raise ToleranceNotReached(
                f"chi_{j}({lam}) needs more than max_terms={acc.max_terms} terms"
            )
        m = np.arange(1, M, dtype=float)
        head = (lam * lam + (TWO_PI * m) ** 2) ** (-0.5 * (j + 2))
        tail, bound = _chi_tail(j, lam, M)
        value = math.fsum(head) + tail
        if bound <= acc.eps_rel * value:
            return ChiValue(j=j, lam=lam, value=value, terms_used=M - 1, tail_bound=bound)
        M *= 4


def chi_power_series(j: int, lam: float, acc: Accuracy | None = None) -> ChiValue:
    """``chi_j(lambda)`` from its expansion in ``lambda^2 / (4 pi^2)``.

    Term ``n`` is ``(-x)^n / n! * prod_{i=1..n}(i + j/2) * zeta(j + 2 + 2n)``
    with ``x = lambda^2 / (4 pi^2)``, all scaled by ``(2 pi)^-(j+2)``. The
    series alternates, so the first omitted term bounds the error.
    """
    _check_j(j)
    _check_lambda(lam)
    if lam >= TWO_PI:
        raise DomainError(f"power series for chi_j requires lambda < 2 pi, got {lam}")
    acc = acc or Accuracy()
    x = (lam / TWO_PI) ** 2
    coeff = 1.0
    terms = [zeta_int(j + 2)]
    partial = terms[0]
    prev = abs(terms[0])
    n = 0
    while True:
        n += 1
        if n > acc.max_terms:
            raise ToleranceNotReached(f"chi_{j} power series did not converge at lambda={lam}")
        coeff *= -x * (n + 0.5 * j) / n
        term = coeff * zeta_int(j + 2 + 2 * n)
        shrinking = abs(term) < prev
        if shrinking and abs(term) < acc.eps_rel * abs(partial):
            break
        terms.append(term)
        partial += term
        prev = abs(term)
    scale = TWO_PI ** (-(j + 2))
    return ChiValue(
        j=j,
        lam=lam,
        value=scale * math.fsum(terms),
        terms_used=n,
        tail_bound=scale * abs(term),
    )


def chi(j: int, lam: float, acc: Accuracy | None = None, mode: str = DIRECT) -> float:
    if mode == DIRECT:
        return chi_direct(j, lam, acc).value
    if mode == POWER_SERIES:
        return chi_power_series(j, lam, acc).value
    raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")


# ---------------------------------------------------------------------------
# I_d, C_d, Lambda_j, xi_d
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _volume_coeff(d: int) -> float:
    # 2^d pi^((d-1)/2) Gamma((d+1)/2)
    return 2.0**d * math.pi ** (0.5 * (d - 1)) * gamma_half(d + 1)


@lru_cache(maxsize=64)
def _chi_weight(j: int) -> float:
    # 2^(j+2) Gamma((j+2)/2) pi^(j/2)
    return 2.0 ** (j + 2) * gamma_half(j + 2) * math.pi ** (0.5 * j)


def i_term(d: int, lam: float) -> float:
    """Integral contribution ``I_d(lambda)``."""
    _check_dimension(d)
    _check_lambda(lam)
    try:
        value = _volume_coeff(d) / lam**d
    except (OverflowError, ZeroDivisionError) as exc:
        raise OverflowError(f"I_{d}({lam}) is outside the float range") from exc
    if not math.isfinite(value):
        raise OverflowError(f"I_{d}({lam}) is outside the float range")
    return value


def c_term(d: int, lam: float, acc: Accuracy | None = None, mode: str = DIRECT) -> float:
    """Correction term ``C_d(lambda)``; tends to 0 as lambda -> 0 and 1 as lambda -> inf."""
    _check_dimension(d)
    parts = [_chi_weight(j) * chi(j, lam, acc, mode) for j in range(d)]
    return lam * math.fsum(parts)


def c_term_derivative(d: int, lam: float, acc: Accuracy | None = None, mode: str = DIRECT) -> float:
    """``dC_d/dlambda`` using ``d(lambda chi_j)/dlambda = chi_j - (j+2) lambda^2 chi_{j+2}``."""
    _check_dimension(d)
    parts = []
    for j in range(d):
        inner = chi(j, lam, acc, mode) - (j + 2) * lam * lam * chi(j + 2, lam, acc, mode)
        parts.append(_chi_weight(j) * inner)
    return math.fsum(parts)


def lambda_j(j: int, lam: float, acc: Accuracy | None = None, mode: str = DIRECT) -> LambdaJValue:
    """Approximate ``(j+1)``-fold lattice sum whose outermost index skips zero.

    ``Lambda_j = -a_j + a_{j+1} + lambda 2^(j+2) Gamma((j+2)/2) pi^(j/2) chi_j``
    with ``a_j = 2^j pi^((j-1)/2) Gamma((j+1)/2) / lambda^j``.
    """
    _check_j(j)
    _check_lambda(lam)
    a_j = 2.0**j * math.pi ** (0.5 * (j - 1)) * gamma_half(j + 1) / lam**j
    a_next = 2.0 ** (j + 1) * math.pi ** (0.5 * j) * gamma_half(j + 2) / lam ** (j + 1)
    corr = lam * _chi_weight(j) * chi(j, lam, acc, mode)
    return LambdaJValue(j=j, lam=lam, value=math.fsum([-a_j, a_next, corr]))


def xi_formula(config: EvalConfig, mode: str = DIRECT) -> XiBreakdown:
    """``xi_d(lambda) = I_d - 1 + C_d`` with its two constituents."""
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")
    acc = config.accuracy
    i_val = i_term(config.d, config.lam)
    c_val = c_term(config.d, config.lam, acc, mode)
    xi = math.fsum([i_val, -1.0, c_val])
    # At large lambda, xi is a small difference of O(1) terms; tighten the
    # chi tolerance so the relative error of xi itself stays near eps_rel.
    magnitude = i_val + 1.0 + c_val
    if magnitude > _CANCELLATION_REFINE * abs(xi):
        eps = max(acc.eps_rel * abs(xi) / magnitude, _EPS_FLOOR)
        c_val = c_term(config.d, config.lam, replace(acc, eps_rel=eps), mode)
    return XiBreakdown(
        config=config,
        i_term=i_val,
        c_term=c_val,
        xi=math.fsum([i_val, -1.0, c_val]),
        method=mode,
    )


def xi_derivative(config: EvalConfig, mode: str = DIRECT) -> float:
    """``-dxi_d/dlambda``, i.e. the formula for ``sum r_d(n) sqrt(n) exp(-lambda sqrt(n))``."""
    d, lam = config.d, config.lam
    minus_di = d * i_term(d, lam) / lam
    dc = c_term_derivative(d, lam, config.accuracy, mode)
    return minus_di - dc


# ---------------------------------------------------------------------------
# sum_n K_0(lambda n)
# ---------------------------------------------------------------------------


def k0_sum_direct(lam: float, cutoff: float = 1e-18) -> float:
    """``sum_{n>=1} K_0(lambda n)``, stopping once ``K_0(lambda n) < cutoff``."""
    _check_lambda(lam)
    terms = []
    n = 1
    while True:
        k = bessel_k0(lam * n)
        terms.append(k)
        if k < cutoff:
            return math.fsum(terms)
        n += 1


def k0_sum_series(lam: float, acc: Accuracy | None = None) -> float:
    """Right-hand side of the lattice identity for ``sum_n K_0(lambda n)``:

    ``(gamma + ln(lambda/4pi))/2 + pi/(2 lambda)
    + pi sum_m [(lambda^2 + 4 m^2 pi^2)^(-1/2) - 1/(2 m pi)]``.
    """
    _check_lambda(lam)
    acc = acc or Accuracy()
    a = lam * lam
    M = max(_CHI_MIN_CUT, math.ceil(2.0 * lam))
    while True:
        m = np.arange(1, M, dtype=float)
        b = (TWO_PI * m) ** 2
        root_ab, root_b = np.sqrt(a + b), np.sqrt(b)
        # 1/sqrt(a+b) - 1/sqrt(b) without cancellation
        head = -a / (root_ab * root_b * (root_ab + root_b))
        # tail ~ -(a / 16 pi^3) sum_{m>=M} m^-3, next order O(M^-4)
        tail = -a / (16.0 * math.pi**3) * (0.5 / M**2 + 0.5 / M**3)
        bound = a / (16.0 * math.pi**3) * (1.0 / M**4 + 3.0 * a / (8.0 * math.pi**2 * M**4))
        total = math.fsum(head) + tail
        if bound <= 0.1 * acc.eps_rel or M > acc.max_terms:
            break
        M *= 4
    if bound > 0.1 * acc.eps_rel:
        raise ToleranceNotReached(f"k0_sum_series({lam}) did not converge")
    return math.fsum([
        0.5 * (EULER_GAMMA + math.log(lam / (4.0 * math.pi))),
        0.5 * math.pi / lam,
        math.pi * total,
    ])
