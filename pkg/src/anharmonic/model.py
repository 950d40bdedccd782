"""Potentials, trial-wavefunction families and the Rayleigh quotient.

Natural units throughout (hbar = m = 1). The Hamiltonian is
``p^2/2 + g2 x^2/2 + lam x^4``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .polygauss import (
    GaussPoly,
    Polynomial,
    expectation,
    gaussian_moments,
    hermite,
    inner_product,
)


class DegenerateTrialError(ValueError):
    """Raised when a trial function has (numerically) zero norm."""


@dataclass(frozen=True)
class Potential:
    g_squared: float = 1.0
    lam: float = 0.0

    def __post_init__(self):
        if self.g_squared < 0 or self.lam < 0:
            raise ValueError(f"g_squared and lambda must be >= 0, got {self.g_squared}, {self.lam}")
        if self.g_squared == 0 and self.lam == 0:
            raise ValueError("free particle (g_squared = lambda = 0) has no bound states")

    @property
    def kind(self) -> str:
        if self.lam == 0:
            return "quadratic"
        if self.g_squared == 0:
            return "pure_quartic"
        return "qao"

    def polynomial(self) -> Polynomial:
        return Polynomial([0.0, 0.0, 0.5 * self.g_squared, 0.0, self.lam])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * self.g_squared * x**2 + self.lam * x**4


@dataclass(frozen=True)
class HOWF:
    """Harmonic-oscillator eigenfunction of level ``n`` with length scale ``alpha``."""

    n: int
    alpha: float

    family = "howf"

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"level index must be >= 0, got {self.n}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")


@dataclass(frozen=True)
class PPEWF:
    """``x^n exp(-alpha_prime x^2) (1 - a x + b x^2 - c x^3 + d x^4)``, unnormalized."""

    n: int
    alpha_prime: float
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    family = "ppewf"

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"level index must be >= 0, got {self.n}")
        if not self.alpha_prime > 0:
            raise ValueError(f"alpha_prime must be positive, got {self.alpha_prime}")

    def vector(self) -> np.ndarray:
        return np.array([self.alpha_prime, self.a, self.b, self.c, self.d])

    @classmethod
    def from_vector(cls, n: int, v) -> PPEWF:
        return cls(n, *(float(x) for x in v))

    def polynomial_coeffs(self) -> np.ndarray:
        return np.array([1.0, -self.a, self.b, -self.c, self.d])


TrialParams = Union[HOWF, PPEWF]


def build_trial(params: TrialParams, normalized: bool = True) -> GaussPoly:
    """Trial function as ``P(x) exp(-rate x^2)``.

    With ``normalized=False`` HOWF keeps the bare Hermite coefficients, which
    are integers at ``alpha = 1`` and so square without rounding.
    """
    if isinstance(params, HOWF):
        n, alpha = params.n, params.alpha
        norm = 1.0 / math.sqrt(math.sqrt(math.pi) * 2.0**n * math.factorial(n) * alpha)
        if not normalized:
            norm = 1.0
        h = hermite(n)
        # H_n(x / alpha): rescale coefficient k by alpha^-k
        poly = Polynomial(c * norm / alpha**k for k, c in enumerate(h.coeffs))
        return GaussPoly(poly, 1.0 / (2.0 * alpha * alpha))
    if isinstance(params, PPEWF):
        poly = Polynomial(params.polynomial_coeffs()).shift(params.n)
        if poly.is_zero():
            raise ValueError("PPEWF polynomial is identically zero")
        return GaussPoly(poly, params.alpha_prime)
    raise TypeError(f"unknown trial parameters {params!r}")


def rayleigh_quotient_of(psi: GaussPoly, pot: Potential) -> float:
    """``<psi|H|psi> / <psi|psi>`` with the kinetic term as ``(1/2) int psi'^2``."""
    norm = inner_product(psi, psi)
    if not norm > 1e-300:
        raise DegenerateTrialError(f"trial norm {norm!r} is too small")
    dpsi = psi.derivative()
    kinetic = 0.5 * inner_product(dpsi, dpsi)
    potential = expectation(psi, pot.polynomial())
    return (kinetic + potential) / norm


@lru_cache(maxsize=64)
def _howf_unit_integrals(n: int) -> tuple[float, float, float, float]:
    """(S, T, <x^2>, <x^4>) unnormalized, for H_n(y) exp(-y^2/2).

    Integer Hermite coefficients at rate 1 make these sums exact.
    """
    psi = build_trial(HOWF(n, 1.0), normalized=False)
    dpsi = psi.derivative()
    return (inner_product(psi, psi), 0.5 * inner_product(dpsi, dpsi),
            expectation(psi, Polynomial([0.0, 0.0, 1.0])),
            expectation(psi, Polynomial([0.0, 0.0, 0.0, 0.0, 1.0])))


def rayleigh_quotient(params: TrialParams, pot: Potential) -> float:
    if isinstance(params, HOWF):
        # x = alpha y: kinetic scales as alpha^-2, x^2 as alpha^2, x^4 as alpha^4
        s, t, x2, x4 = _howf_unit_integrals(params.n)
        a2 = params.alpha * params.alpha
        return (t / a2 + 0.5 * pot.g_squared * a2 * x2 + pot.lam * a2 * a2 * x4) / s
    return rayleigh_quotient_of(build_trial(params), pot)


def mean_square_position(psi: GaussPoly) -> float:
    return expectation(psi, Polynomial([0.0, 0.0, 1.0])) / inner_product(psi, psi)


def rms_width(params: TrialParams) -> float:
    return math.sqrt(mean_square_position(build_trial(params)))


class PPEWFQuadraticForm:
    """Fast PPEWF energy for the optimizer.

    For fixed ``alpha_prime`` the energy is a ratio of two quadratic forms in
    the polynomial coefficients ``(1, -a, b, -c, d)``; the 5x5 overlap and
    Hamiltonian matrices come straight from Gaussian moments. Agrees with
    :func:`rayleigh_quotient` to rounding.
    """

    def __init__(self, n: int, pot: Potential):
        self.n = n
        self.pot = pot
        p = n + np.arange(5)
        self._pi = p[:, None]
        self._pj = p[None, :]
        self._P = self._pi + self._pj
        self._pp = (self._pi * self._pj).astype(float)
        self._psum = (self._pi + self._pj).astype(float)
        self._lower = np.where(self._P >= 2, self._P - 2, 0)
        self._max_power = int(self._P.max()) + 4

    def matrices(self, beta: float) -> tuple[np.ndarray, np.ndarray]:
        m = gaussian_moments(self._max_power, 2.0 * beta)
        P = self._P
        overlap = m[P]
        # (1/2) int phi_i' phi_j' with phi_k = x^{p_k} e^{-beta x^2}
        kinetic = 0.5 * (self._pp * m[self._lower] - 2.0 * beta * self._psum * m[P] + 4.0 * beta * beta * m[P + 2])
        ham = kinetic + 0.5 * self.pot.g_squared * m[P + 2] + self.pot.lam * m[P + 4]
        return ham, overlap

    def energy(self, alpha_prime: float, a: float, b: float, c: float, d: float) -> float:
        if not alpha_prime > 0:
            return math.inf
        ham, overlap = self.matrices(alpha_prime)
        v = np.array([1.0, -a, b, -c, d])
        norm = v @ overlap @ v
        if not norm > 1e-300:
            return math.inf
        return float(v @ ham @ v / norm)
