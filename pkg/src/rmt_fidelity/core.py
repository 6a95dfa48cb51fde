"""Domain types shared by every computation route.

Conventions: matrices are scaled so the mean level density at the band
centre equals one (mean spacing one), which makes time dimensionless in
units of the Heisenberg time.  The perturbation strength ``epsilon`` is of
order one when level shifts are of order of the mean spacing.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["EnsembleSpec", "PerturbationSpec", "TimeGrid", "FidelityCurve",
           "variance_scale", "variance_matrix_element", "semicircle_density"]

_BETAS = (1, 2, 4)


@dataclass(frozen=True)
class EnsembleSpec:
    """A Gaussian ensemble: universality index beta and matrix rank dim.

    beta = 1 (orthogonal, real symmetric), 2 (unitary, complex Hermitian)
    or 4 (symplectic, quaternion self-dual).  For beta = 4, ``dim`` counts
    quaternion rows, i.e. the number of distinct (Kramers-degenerate)
    eigenvalues; the complex representation has size 2*dim.
    """

    beta: int
    dim: int

    def __post_init__(self):
        if self.beta not in _BETAS:
            raise ValueError(f"beta must be one of {_BETAS}, got {self.beta}")
        if self.dim < 2:
            raise ValueError(f"dim must be >= 2, got {self.dim}")

    def variance_scale(self) -> float:
        """Variance scale of the Gaussian weight exp(-Tr H^2 / (2 s)).

        Equals 2*dim / (beta*pi^2); this is the scale that puts the mean
        level density at one in the band centre.
        """
        return 2.0 * self.dim / (self.beta * math.pi ** 2)


def variance_scale(spec: EnsembleSpec) -> float:
    """Module-level alias for :meth:`EnsembleSpec.variance_scale`."""
    return spec.variance_scale()


def variance_matrix_element(spec: EnsembleSpec, diagonal: bool) -> float:
    """Second moment of a single matrix entry under the ensemble weight.

    Off-diagonal entries have total second moment dim/pi^2 (summed over
    real, imaginary and quaternion components, i.e. the squared modulus);
    diagonal entries carry an extra factor 2/beta.
    """
    base = spec.dim / math.pi ** 2
    return (2.0 / spec.beta) * base if diagonal else base


def semicircle_density(dim: int, ebar) -> float:
    """Mean level density sqrt(1 - (pi*ebar / (2*dim))^2).

    Normalised to one at the band centre so the central mean spacing is
    one; the spectrum is supported on |ebar| <= 2*dim/pi.  Accepts scalars
    or arrays; raises ValueError outside the support.
    """
    u = np.pi * np.asarray(ebar, dtype=float) / (2.0 * dim)
    if np.any(np.abs(u) > 1.0):
        raise ValueError("energy outside the spectrum support |e| <= 2*dim/pi")
    out = np.sqrt(1.0 - u * u)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PerturbationSpec:
    """Perturbation strength epsilon (dimensionless, order one)."""

    epsilon: float

    def __post_init__(self):
        if not self.epsilon >= 0.0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")

    def mixing_angle(self, dim: int) -> float:
        """Rotation angle phi with tan(phi) = sqrt(epsilon / (4*dim)).

        The perturbed matrix is cos(phi)*H0 + sin(phi)*H1, which keeps the
        spectral density epsilon-independent; for large dim,
        4*dim*phi^2 -> epsilon.
        """
        return math.atan(math.sqrt(self.epsilon / (4.0 * dim)))


def _frozen_array(values) -> np.ndarray:
    a = np.array(values, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing, non-negative times in units of the Heisenberg time."""

    taus: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "taus", _frozen_array(self.taus))
        if self.taus.ndim != 1 or len(self.taus) == 0:
            raise ValueError("taus must be a non-empty 1-d sequence")
        if self.taus[0] < 0.0:
            raise ValueError("taus must be non-negative")
        if np.any(np.diff(self.taus) <= 0.0):
            raise ValueError("taus must be strictly increasing")

    def __len__(self) -> int:
        return len(self.taus)

    @classmethod
    def linspace(cls, tau_min: float, tau_max: float, steps: int) -> "TimeGrid":
        return cls(np.linspace(tau_min, tau_max, steps))


@dataclass(frozen=True)
class FidelityCurve:
    """Per-tau fidelity amplitude estimate.

    ``values`` holds the real part.  Monte Carlo estimates additionally
    carry ``stderr`` (standard error over outer realizations) and
    ``imag_diag`` (mean imaginary part; a pure convergence diagnostic
    since it vanishes on ensemble average).  Analytic curves leave both
    as None, so every computation route emits the same type.
    """

    taus: np.ndarray
    values: np.ndarray
    stderr: np.ndarray | None = None
    imag_diag: np.ndarray | None = None

    def __post_init__(self):
        TimeGrid(self.taus)  # validates ordering/sign
        object.__setattr__(self, "taus", _frozen_array(self.taus))
        object.__setattr__(self, "values", _frozen_array(self.values))
        if self.values.shape != self.taus.shape:
            raise ValueError("values must match taus in length")
        for name in ("stderr", "imag_diag"):
            cur = getattr(self, name)
            if cur is not None:
                cur = _frozen_array(cur)
                object.__setattr__(self, name, cur)
                if cur.shape != self.taus.shape:
                    raise ValueError(f"{name} must match taus in length")
        slack = 3.0 * self.stderr if self.stderr is not None else 1e-9
        if np.any(self.values < -1.0) or np.any(self.values > 1.0 + slack):
            raise ValueError("fidelity values must lie in [-1, 1] up to noise")
        if self.taus[0] == 0.0:
            tol = slack[0] if isinstance(slack, np.ndarray) else slack
            if abs(self.values[0] - 1.0) > max(tol, 1e-9):
                raise ValueError("fidelity at tau = 0 must equal 1")

    def __len__(self) -> int:
        return len(self.taus)
