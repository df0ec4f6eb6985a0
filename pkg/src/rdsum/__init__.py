"""The generating function of the sum-of-squares function ``r_d(n)``.

``xi_d(lambda) = sum_{n>=1} r_d(n) exp(-lambda sqrt(n))`` is evaluated by
brute-force lattice sums, by a closed formula built on modified-Bessel
series, and by a small-lambda zeta power series. The correction term of
the formula also yields the Neumann Casimir energy of a d-cube.
"""

from .analytic import (
    DIRECT,
    POWER_SERIES,
    EvalConfig,
    XiBreakdown,
    c_term,
    chi,
    chi_direct,
    chi_power_series,
    i_term,
    lambda_j,
    xi_formula,
)
from .casimir import casimir_closed_form, casimir_via_limit
from .exceptions import DomainError, ExtrapolationDiverged, GuardError, ToleranceNotReached
from .lattice import compare, rd_table_convolution, rd_table_enumeration, xi_brute
from .special import Accuracy, bessel_k0, zeta_int

__version__ = "0.1.0"

__all__ = [
    "Accuracy",
    "DIRECT",
    "POWER_SERIES",
    "DomainError",
    "EvalConfig",
    "ExtrapolationDiverged",
    "GuardError",
    "ToleranceNotReached",
    "XiBreakdown",
    "bessel_k0",
    "c_term",
    "casimir_closed_form",
    "casimir_via_limit",
    "chi",
    "chi_direct",
    "chi_power_series",
    "compare",
    "i_term",
    "lambda_j",
    "rd_table_convolution",
    "rd_table_enumeration",
    "xi_brute",
    "xi_formula",
    "zeta_int",
]
