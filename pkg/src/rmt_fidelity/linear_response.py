"""Weak-perturbation (linear-response) fidelity decay.

To first order in the perturbation strength,

    f(eps, tau) ~ 1 - eps * C(tau),
    C(tau) = tau^2/beta + tau/2 - int_0^tau int_0^t b2(beta, t') dt' dt,

where 1 - b2(beta, t) is the two-level spectral form factor.
Exponentiating, f ~ exp(-eps * C(tau)), captures the crossover from
Gaussian to exponential decay.  The b2 expressions below are the standard
Gaussian-ensemble results; the simulator's spectral calibration
reproduces 1 - b2 empirically, which pins their normalisation.
"""

import numpy as np

from .quadrature import QuadratureRule, gauss_legendre, integrate_segments

__all__ = ["b2", "c_of_tau", "fidelity_lr"]

_DEFAULT_RULE = gauss_legendre(32, panels=4)

# Geometric grading depth for the integrable log singularity of the
# beta=4 form factor at t = 1.  The innermost panel has width 0.1*2**-36
# ~ 1.5e-12: small enough that its whole mass is < 1e-10, large enough
# that interior Gauss nodes stay several ulps away from t = 1.
_GRADE_LEVELS = 37


def b2(beta: int, t):
    """Two-level form-factor complement b2(beta, t) for t >= 0.

    beta=2: 1-t on [0,1], zero beyond.
    beta=1: 1 - 2t + t*log(2t+1) on [0,1]; -1 + t*log((2t+1)/(2t-1)) beyond.
    beta=4: 1 - t/2 + (t/4)*log|1-t| on [0,2] with an integrable
            logarithmic divergence at t=1 (rejected as a sample point);
            zero beyond t=2.

    Accepts scalars or arrays.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be >= 0")
    if beta == 2:
        out = np.where(t_arr <= 1.0, 1.0 - t_arr, 0.0)
    elif beta == 1:
        below = 1.0 - 2.0 * t_arr + t_arr * np.log1p(2.0 * t_arr)
        with np.errstate(divide="ignore", invalid="ignore"):
            above = -1.0 + t_arr * np.log((2.0 * t_arr + 1.0)
                                          / (2.0 * t_arr - 1.0))
        out = np.where(t_arr <= 1.0, below, above)
    elif beta == 4:
        if np.any(t_arr == 1.0):
            raise ValueError("b2 is singular at t = 1 for beta = 4")
        with np.errstate(divide="ignore", invalid="ignore"):
            inside = 1.0 - 0.5 * t_arr + 0.25 * t_arr * np.log(np.abs(1.0 - t_arr))
        out = np.where(t_arr < 2.0, inside, 0.0)
    else:
        raise ValueError(f"beta must be 1, 2 or 4, got {beta}")
    return float(out) if out.ndim == 0 else out


def _segment_edges(beta: int, tau: float) -> np.ndarray:
    """Panel edges on [0, tau] isolating the non-smooth points of b2.

    beta=1 has a derivative kink at t=1; beta=4 has the log divergence at
    t=1 (approached through geometrically graded panels from both sides)
    and the support edge at t=2.
    """
    edges = [0.0, 0.25, 0.5, 0.75, 0.9]
    grades = 0.1 * 0.5 ** np.arange(_GRADE_LEVELS)
    edges.extend(1.0 - grades)
    if beta == 4:
        edges.append(1.0)
        edges.extend((1.0 + grades)[::-1])
    else:
        edges.append(1.0)
    edges.extend([1.25, 1.5, 2.0, 2.5, 3.0, max(4.0, tau)])
    e = np.asarray(edges)
    e = e[e < tau]
    return np.unique(np.concatenate([e, [tau]]))


def c_of_tau(beta: int, tau: float, rule: QuadratureRule | None = None) -> float:
    """Linear-response coefficient C(tau); absolute error <= 1e-8.

    beta=2 uses the exact piecewise polynomial obtained by integrating
    b2 = 1-t twice (tau/2 + tau^3/6 below tau=1, tau^2/2 + 1/6 beyond).
    beta=1 and beta=4 integrate numerically; the double integral is first
    reduced to the single weighted integral int_0^tau (tau - t) b2(t) dt.
    """
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    if tau == 0.0:
        return 0.0
    if beta == 2:
        if tau <= 1.0:
            return 0.5 * tau + tau ** 3 / 6.0
        return 0.5 * tau * tau + 1.0 / 6.0
    if beta not in (1, 4):
        raise ValueError(f"beta must be 1, 2 or 4, got {beta}")
    rule = rule or _DEFAULT_RULE
    edges = _segment_edges(beta, tau)
    weighted = integrate_segments(lambda t: (tau - t) * b2(beta, t), edges, rule)
    return tau * tau / beta + 0.5 * tau - weighted


def fidelity_lr(beta: int, epsilon: float, tau: float,
                exponentiated: bool = False) -> float:
    """Linear-response fidelity 1 - eps*C(tau), or exp(-eps*C(tau))."""
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    ec = epsilon * c_of_tau(beta, tau)
    return float(np.exp(-ec)) if exponentiated else 1.0 - ec
