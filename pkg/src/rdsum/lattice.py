"""Exact tables of ``r_d(n)`` and brute-force lattice sums.

Two independent table builders are provided. :func:`rd_table_convolution`
adds one dimension at a time via ``r_d(n) = sum_k w_k r_{d-1}(n - k^2)`` with
``w_0 = 1`` and ``w_k = 2`` otherwise. :func:`rd_table_enumeration` walks
nondecreasing tuples of nonnegative integers and weights each one by its
number of signed orderings, so no negative integers or permutations are
ever generated.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .analytic import (
    EvalConfig,
    XiBreakdown,
    _check_dimension,
    _check_lambda,
    xi_formula,
)
from .exceptions import DomainError, GuardError
from .special import Accuracy, gamma_half

TABLE_GUARD = 50_000_000
ENUMERATION_GUARD = 10**8
BRUTE_ACCURACY = Accuracy(eps_rel=1e-10)

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class RdTable:
    """``counts[n] = r_d(n)`` for ``0 <= n <= nmax``."""

    d: int
    nmax: int
    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.counts.setflags(write=False)

    def __getitem__(self, n):
        return self.counts[n]

    def __len__(self):
        return self.nmax + 1

    def tolist(self) -> list[int]:
        return [int(c) for c in self.counts]


@dataclass(frozen=True)
class BruteSumResult:
    config: EvalConfig
    value: float
    n_cut: int
    tail_bound: float


@dataclass(frozen=True)
class ComparisonRow:
    d: int
    lam: float
    xi_formula: float
    xi_brute: float
    abs_diff: float
    pct_diff: float
    i_term: float
    c_term: float
    ratio_c_over_i: float


def _check_nmax(nmax):
    if int(nmax) != nmax or nmax < 0:
        raise DomainError(f"nmax must be a nonnegative integer, got {nmax!r}")
    if nmax > TABLE_GUARD:
        raise GuardError(f"nmax={nmax} exceeds the table guard {TABLE_GUARD}")


def _count_dtype(d: int, nmax: int):
    # Every count is at most the number of lattice points in the cube
    # [-sqrt(nmax), sqrt(nmax)]^d.
    side = 2 * math.isqrt(nmax) + 1
    return np.int64 if side**d < _INT64_SAFE else object


def rd_table_convolution(d: int, nmax: int, *, signed: bool = True) -> RdTable:
    """Build ``r_d(0..nmax)`` one dimension at a time.

    With ``signed=False`` the table counts representations by nonnegative
    integers only (every ``w_k = 1``), which is what Neumann mode sums need.
    Counts that could overflow 64 bits are kept as Python integers.
    """
    _check_dimension(d)
    _check_nmax(nmax)
    dtype = _count_dtype(d, nmax)
    weight = 2 if signed else 1
    r = np.zeros(nmax + 1, dtype=dtype)
    r[0] = 1
    for _ in range(d):
        nxt = r.copy()
        k = 1
        while k * k <= nmax:
            sq = k * k
            nxt[sq:] += weight * r[: nmax + 1 - sq]
            k += 1
        r = nxt
    return RdTable(d=d, nmax=nmax, counts=r)


def rd_table_enumeration(d: int, nmax: int, guard: int = ENUMERATION_GUARD) -> RdTable:
    """Build ``r_d(0..nmax)`` from nondecreasing tuples ``0 <= n_1 <= ... <= n_d``.

    Each tuple contributes ``d! / prod(mult_v!) * 2^(#nonzero)`` to
    ``r_d(sum n_i^2)``. The dimension is a runtime value: the walk uses an
    explicit stack rather than ``d`` nested loops.
    """
    _check_dimension(d)
    _check_nmax(nmax)
    counts = [0] * (nmax + 1)
    d_fact = math.factorial(d)
    visited = 0

    # stack entries: (position, last value, sum of squares, run length of
    # last value, product of closed-run factorials, nonzero count)
    stack = [(0, 0, 0, 0, 1, 0)]
    while stack:
        pos, last, total, run, fact_prod, nonzero = stack.pop()
        if pos == d:
            visited += 1
            if visited > guard:
                raise GuardError(f"more than {guard} tuples for d={d}, nmax={nmax}")
            mult = d_fact // (fact_prod * math.factorial(run))
            counts[total] += mult << nonzero
            continue
        v = last
        while total + v * v <= nmax:
            if pos > 0 and v == last:
                child = (pos + 1, v, total + v * v, run + 1, fact_prod, nonzero + (v > 0))
            else:
                closed = fact_prod * math.factorial(run)
                child = (pos + 1, v, total + v * v, 1, closed, nonzero + (v > 0))
            stack.append(child)
            v += 1

    dtype = _count_dtype(d, nmax)
    return RdTable(d=d, nmax=nmax, counts=np.array(counts, dtype=dtype))


# Largest table built so far per dimension; brute sums slice from it.
_TABLE_CACHE: dict[int, RdTable] = {}
_TABLE_LOCK = threading.Lock()


def cached_table(d: int, nmax: int) -> np.ndarray:
    with _TABLE_LOCK:
        table = _TABLE_CACHE.get(d)
    if table is None or table.nmax < nmax:
        table = rd_table_convolution(d, nmax)
        with _TABLE_LOCK:
            current = _TABLE_CACHE.get(d)
            if current is None or current.nmax < table.nmax:
                _TABLE_CACHE[d] = table
    return table.counts[: nmax + 1]


def _upper_gamma_int(k: int, lam: float, a: float) -> float:
    # int_a^inf u^k e^(-lam u) du for integer k >= 0 and a >= 0
    terms = []
    coeff = math.factorial(k) / lam ** (k + 1)
    for i in range(k + 1):
        terms.append(coeff * a**i)
        coeff *= lam / (i + 1)
    return math.exp(-lam * a) * math.fsum(terms)


def brute_tail_bound(d: int, lam: float, weight_p: int, radius: float) -> float:
    """Upper bound on ``sum_{|x| > radius} |x|^p exp(-lam |x|)`` over ``Z^d``.

    Each lattice point owns the unit cube centred on it; inside that cube
    ``|y| <= |x| + s`` with ``s = sqrt(d)/2``, so the sum is at most
    ``S_d int_{radius - 2s}^inf (u + s)^(d-1) u^p exp(-lam u) du`` provided
    ``u^p exp(-lam u)`` is decreasing there. ``S_d`` is the unit-sphere area.
    Returns ``inf`` when that condition fails.
    """
    s = 0.5 * math.sqrt(d)
    lower = radius - 2.0 * s
    if lower < 0.0 or lam * lower < weight_p:
        return math.inf
    area = 2.0 * math.pi ** (0.5 * d) / gamma_half(d)
    parts = [
        math.comb(d - 1, i) * s ** (d - 1 - i) * _upper_gamma_int(i + weight_p, lam, lower)
        for i in range(d)
    ]
    return area * math.fsum(parts)


def _shell_sum(counts: np.ndarray, lam: float, weight_p: int) -> float:
    n = np.arange(1, len(counts), dtype=float)
    root = np.sqrt(n)
    w = np.exp(-lam * root)
    if weight_p == 1:
        w = w * root
    c = counts[1:]
    if c.dtype == object:
        c = c.astype(float)
    return math.fsum(c * w)


def xi_brute(config: EvalConfig, weight_p: int = 0) -> BruteSumResult:
    """``sum_{n>=1} r_d(n) n^(p/2) exp(-lambda sqrt(n))`` straight from the table.

    The shell cutoff grows until :func:`brute_tail_bound` is below
    ``eps_rel`` times the partial sum (a lower bound on the full value).
    """
    if weight_p not in (0, 1):
        raise DomainError(f"weight_p must be 0 or 1, got {weight_p!r}")
    d, lam, eps = config.d, config.lam, config.accuracy.eps_rel
    s = 0.5 * math.sqrt(d)
    radius = 2.0 * s + (weight_p + d + 8.0) / lam
    while True:
        n_cut = math.ceil(radius * radius)
        if n_cut > min(TABLE_GUARD, config.accuracy.max_terms * 10):
            raise GuardError(
                f"brute sum for d={d}, lambda={lam} needs n_cut={n_cut} beyond the table guard"
            )
        value = _shell_sum(cached_table(d, n_cut), lam, weight_p)
        bound = brute_tail_bound(d, lam, weight_p, math.sqrt(n_cut))
        if value > 0 and bound <= eps * value:
            return BruteSumResult(config=config, value=value, n_cut=n_cut, tail_bound=bound)
        # bound ~ radius^(d-1+p) exp(-lam radius); step to close the gap
        gap = math.log(bound / (eps * value)) if value > 0 and math.isfinite(bound) else 10.0
        radius += max(gap, 1.0) / lam + 1.0


def average_order_check(nmax: int) -> float:
    """``(1/nmax) sum_{n=0}^{nmax} r_2(n)``, which tends to pi."""
    if int(nmax) != nmax or nmax < 1:
        raise DomainError(f"nmax must be a positive integer, got {nmax!r}")
    counts = rd_table_convolution(2, nmax).counts
    return int(counts.sum()) / nmax


def lattice_points_in_ball(d: int, nmax: int) -> int:
    """Count ``x`` in ``Z^d`` with ``|x|^2 <= nmax`` by direct enumeration."""
    _check_dimension(d)
    k = math.isqrt(nmax)
    axis = np.arange(-k, k + 1) ** 2
    sq = np.zeros(1, dtype=np.int64)
    for _ in range(d):
        sq = (sq[:, None] + axis[None, :]).ravel()
        sq = sq[sq <= nmax]
    return int(sq.size)


def compare(
    d_list,
    lambda_list,
    acc: Accuracy | None = None,
    brute_acc: Accuracy | None = None,
) -> list[ComparisonRow]:
    """Formula against brute force over a ``(d, lambda)`` grid, sorted by ``(d, lambda)``."""
    acc = acc or Accuracy()
    brute_acc = brute_acc or BRUTE_ACCURACY
    rows = []
    for d in sorted(set(d_list)):
        for lam in sorted(set(lambda_list)):
            _check_lambda(lam)
            formula: XiBreakdown = xi_formula(EvalConfig(d, lam, acc))
            brute = xi_brute(EvalConfig(d, lam, brute_acc)).value
            diff = abs(formula.xi - brute)
            rows.append(
                ComparisonRow(
                    d=d,
                    lam=lam,
                    xi_formula=formula.xi,
                    xi_brute=brute,
                    abs_diff=diff,
                    pct_diff=100.0 * diff / brute,
                    i_term=formula.i_term,
                    c_term=formula.c_term,
                    ratio_c_over_i=formula.c_term / formula.i_term,
                )
            )
    return rows
