"""Special functions and quadrature oracles.

Everything here exists to evaluate, and independently validate, the closed
forms used by the projection engine: the incomplete gamma Gamma(1/2, .), the
layer kernels alpha(y) and beta(y), Gauss 2F1, and adaptive quadrature on
(0, inf).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, ToleranceError

EULER_GAMMA = 0.5772156649015328606065120900824024


def euler_gamma() -> float:
    """The Euler-Mascheroni constant to double precision."""
    return EULER_GAMMA


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


def integrate_0_inf(f: Callable[[float], float], tol: float = 1e-10) -> QuadratureResult:
    """Adaptive Gauss-Kronrod integration of f over (0, inf).

    Requires the reported error estimate to come in below tol.
    """
    value, abserr, info = quad(f, 0.0, np.inf, epsabs=tol / 4, epsrel=tol / 4,
                               limit=300, full_output=True)[:3]
    neval = int(info.get("neval", 0)) if isinstance(info, dict) else 0
    if abserr > tol * max(1.0, abs(value)):
        raise ToleranceError(f"quadrature error {abserr:.3e} exceeds tol {tol:.3e}")
    return QuadratureResult(value, abserr, neval)


def upper_gamma_half(x: float) -> float:
    """Gamma(1/2, x) = sqrt(pi) * erfc(sqrt(x)) for x >= 0."""
    if x < 0:
        raise DomainError(f"upper_gamma_half requires x >= 0, got {x}")
    return math.sqrt(math.pi) * math.erfc(math.sqrt(x))


def beta_fn(y: float) -> float:
    """beta(y) = Gamma(1/2, pi y)/sqrt(pi) = erfc(sqrt(pi y)); beta(0+) = 1."""
    if y < 0:
        raise DomainError(f"beta_fn requires y >= 0, got {y}")
    return math.erfc(math.sqrt(math.pi * y))


def alpha_numeric(y: float, tol: float = 1e-10) -> QuadratureResult:
    """alpha(y) = (sqrt(y)/4pi) int_0^inf t^(-1/2) e^(-pi y t) log(1+t) dt by quadrature.

    The substitution t = u^2 removes the endpoint singularity.
    """
    if y <= 0:
        raise DomainError(f"alpha_numeric requires y > 0, got {y}")

    def integrand(u: float) -> float:
        return 2.0 * math.exp(-math.pi * y * u * u) * math.log1p(u * u)

    inner = integrate_0_inf(integrand, tol)
    scale = math.sqrt(y) / (4 * math.pi)
    return QuadratureResult(scale * inner.value, scale * inner.error_estimate,
                            inner.evaluations)


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss 2F1 for real parameters and z < 1, by series and Pfaff transformation."""
    if c <= 0 and c == int(c):
        raise DomainError(f"2F1 undefined for c a non-positive integer, got c={c}")
    if z >= 1:
        raise DomainError(f"need z < 1, got z={z}")
    if z < 0:
        # Pfaff: (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), mapped argument in (0,1)
        w = z / (z - 1)
        if w >= 1:
            raise DomainError("transformed argument leaves the series domain")
        return (1 - z) ** (-a) * hyp2f1(a, c - b, c, w)
    term = 1.0
    total = 1.0
    for k in range(100000):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if abs(term) <= 1e-17 * abs(total) + 5e-300:
            return total
    raise ToleranceError("2F1 series did not converge")  # pragma: no cover
