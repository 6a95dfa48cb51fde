"""Fidelity amplitude of perturbed Gaussian random-matrix ensembles.

Four computation routes, all emitting :class:`FidelityCurve` on a shared
time grid (units of the Heisenberg time):

* :func:`fidelity_gue` -- exact closed form for the unitary ensemble, with
  :func:`fidelity_gue_oracle` integrating the defining integral as an
  independent check;
* :func:`fidelity_goe` -- exact double-integral quadrature for the
  orthogonal ensemble, with :func:`verify_appendix_a` confirming the
  zero-perturbation identity f = 1;
* :func:`fidelity_lr` -- linear-response approximation for all three
  ensembles, built on the two-level form factor;
* :func:`estimate_curve` -- direct Monte Carlo over sampled matrix pairs
  for all three ensembles, with spectral calibration checks.
"""

from .core import (EnsembleSpec, FidelityCurve, PerturbationSpec, TimeGrid,
                   semicircle_density, variance_matrix_element, variance_scale)
from .goe import IdentityReport, fidelity_goe, verify_appendix_a
from .gue import fidelity_gue, fidelity_gue_oracle, fidelity_gue_small_eps
from .linear_response import b2, c_of_tau, fidelity_lr
from .quadrature import (IntegrationError, QuadratureRule, gauss_legendre,
                         integrate_1d, integrate_segments)
from .simulate import (CalibrationReport, EigenSystem, SampledPair,
                       SimulationConfig, diagonalize, draw_matrix,
                       estimate_curve, realization_stream, sample_pair,
                       spectral_calibration)
from .special import sinhc, sinhc_prime

__version__ = "0.1.0"

__all__ = [
    "EnsembleSpec", "PerturbationSpec", "TimeGrid", "FidelityCurve",
    "variance_scale", "variance_matrix_element", "semicircle_density",
    "sinhc", "sinhc_prime",
    "QuadratureRule", "IntegrationError", "gauss_legendre", "integrate_1d",
    "integrate_segments",
    "fidelity_gue", "fidelity_gue_oracle", "fidelity_gue_small_eps",
    "fidelity_goe", "verify_appendix_a", "IdentityReport",
    "b2", "c_of_tau", "fidelity_lr",
    "SimulationConfig", "SampledPair", "EigenSystem", "CalibrationReport",
    "realization_stream", "draw_matrix", "sample_pair", "diagonalize",
    "estimate_curve", "spectral_calibration",
    "__version__",
]
