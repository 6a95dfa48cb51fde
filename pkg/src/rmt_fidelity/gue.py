"""Exact fidelity amplitude of the Gaussian unitary ensemble.

In units of the Heisenberg time the ensemble average at the band centre is
the elementary integral

    f(eps, tau) = (1/tau) * int_0^min(tau,1) (1+tau-2y) exp(-(eps/2) tau (1+tau-2y)) dy,

which evaluates in closed form to

    f = exp(-(eps/2) tau)   * [ sinhc(x) - tau   * sinhc'(x) ],  x = (eps/2) tau^2,  tau <= 1
    f = exp(-(eps/2) tau^2) * [ sinhc(v) - (1/tau)* sinhc'(v) ],  v = (eps/2) tau,    tau > 1.

Both branches follow from int w e^{-aw} dw with a = eps*tau/2 over
w in [|tau-1|, tau+1]; they agree at tau = 1 together with their first
derivative, while the third derivative jumps.  :func:`fidelity_gue_oracle`
integrates the defining integral numerically and is kept as a permanent
regression guard on the closed form.
"""

import numpy as np

from .quadrature import QuadratureRule, gauss_legendre, integrate_1d
from .special import sinhc, sinhc_prime

__all__ = ["fidelity_gue", "fidelity_gue_oracle", "fidelity_gue_small_eps"]

# The defining integrand is entire in y; a single high-order panel is exact
# to rounding for eps <= 100, tau <= 10.
_ORACLE_RULE = gauss_legendre(64)


def _check_domain(epsilon: float, tau: float) -> None:
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")


def fidelity_gue(epsilon: float, tau: float) -> float:
    """Closed-form GUE fidelity amplitude; lies in (0, 1], f(eps, 0) = 1."""
    _check_domain(epsilon, tau)
    if tau == 0.0 or epsilon == 0.0:
        return 1.0
    if tau <= 1.0:
        x = 0.5 * epsilon * tau * tau
        return np.exp(-0.5 * epsilon * tau) * (sinhc(x) - tau * sinhc_prime(x))
    x = 0.5 * epsilon * tau
    return np.exp(-0.5 * epsilon * tau * tau) * (sinhc(x) - sinhc_prime(x) / tau)


def fidelity_gue_oracle(epsilon: float, tau: float,
                        rule: QuadratureRule | None = None) -> float:
    """GUE fidelity amplitude from the defining single integral.

    Independent of the closed form (numerical quadrature only); agrees
    with :func:`fidelity_gue` to 1e-10 everywhere.  The tau = 0 limit is a
    removable singularity handled by :func:`fidelity_gue` instead, so
    tau = 0 is rejected here.
    """
    _check_domain(epsilon, tau)
    if tau == 0.0:
        raise ValueError("tau = 0 is the exact limit f = 1; use fidelity_gue")
    rule = rule or _ORACLE_RULE

    def integrand(y: float) -> float:
        w = 1.0 + tau - 2.0 * y
        return w * np.exp(-0.5 * epsilon * tau * w)

    value, _ = integrate_1d(integrand, 0.0, min(tau, 1.0), rule)
    return value / tau


def fidelity_gue_small_eps(epsilon: float, tau: float) -> float:
    """First order in epsilon: 1 - (eps/2)(tau + tau^3/3) for tau <= 1,
    1 - (eps/2)(1/3 + tau^2) beyond."""
    _check_domain(epsilon, tau)
    if tau <= 1.0:
        return 1.0 - 0.5 * epsilon * (tau + tau ** 3 / 3.0)
    return 1.0 - 0.5 * epsilon * (1.0 / 3.0 + tau * tau)
