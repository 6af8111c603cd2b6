"""Lieb kernel of the delta-interacting Bose gas and its exact integrals.

The two-body kernel K(lam) = 2c/(lam^2 + c^2) drives every integral operator
in this package.  The impenetrable limit c = +inf (K identically zero) is kept
as a first-class sentinel: there the gas is free-fermionic and all downstream
quantities have closed forms, which the test suite uses as a global oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ModelParams", "lieb_kernel", "lieb_kernel_deriv", "kernel_mass"]


@dataclass(frozen=True)
class ModelParams:
    """Coupling c > 0 (may be inf) and chemical potential h > 0."""

    c: float
    h: float

    def __post_init__(self):
        c, h = float(self.c), float(self.h)
        if math.isnan(c) or not c > 0.0:
            raise ValueError(f"coupling must satisfy c > 0, got {self.c!r}")
        if not (math.isfinite(h) and h > 0.0):
            raise ValueError(f"chemical potential must satisfy 0 < h < inf, got {self.h!r}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "h", h)

    @property
    def impenetrable(self) -> bool:
        """True at the free-fermion sentinel c = +inf, where the kernel vanishes."""
        return math.isinf(self.c)

    @classmethod
    def impenetrable_limit(cls, h: float) -> "ModelParams":
        return cls(c=math.inf, h=h)


def lieb_kernel(lam, params: ModelParams):
    """K(lam) = 2c/(lam^2 + c^2): even, strictly positive, peak value 2/c at 0.

    Accepts scalars or arrays; the impenetrable sentinel returns exact zeros.
    """
    lam = np.asarray(lam, dtype=float)
    if params.impenetrable:
        out = np.zeros(lam.shape)
    else:
        c = params.c
        out = 2.0 * c / (lam * lam + c * c)
    return out if out.ndim else float(out)


def lieb_kernel_deriv(lam, params: ModelParams):
    """K'(lam) = -4c*lam/(lam^2 + c^2)^2, the odd derivative of the kernel."""
    lam = np.asarray(lam, dtype=float)
    if params.impenetrable:
        out = np.zeros(lam.shape)
    else:
        c = params.c
        den = lam * lam + c * c
        out = -4.0 * c * lam / (den * den)
    return out if out.ndim else float(out)


def kernel_mass(alpha: float, params: ModelParams) -> float:
    """Partial mass (1/2pi) Int_{-alpha}^{alpha} K = (2/pi) arctan(alpha/c).

    Strictly below 1 for every finite alpha; tends to 1 as alpha -> inf.  This
    is the contraction budget of all Fredholm operators built from K.
    """
    alpha = float(alpha)
    if alpha < 0.0 or math.isnan(alpha):
        raise ValueError(f"alpha must be nonnegative, got {alpha!r}")
    if params.impenetrable:
        return 0.0
    return (2.0 / math.pi) * math.atan(alpha / params.c)
