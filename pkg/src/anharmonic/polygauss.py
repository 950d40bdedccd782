"""Exact algebra for polynomials and polynomial-times-Gaussian functions.

Every trial wavefunction in this package has the shape ``P(x) * exp(-beta x^2)``,
so all overlap, potential and kinetic integrals reduce to sums of even
Gaussian moments. Nothing here does numerical quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Polynomial:
    """Dense real polynomial; ``coeffs[k]`` multiplies ``x**k``."""

    coeffs: tuple[float, ...] = ()

    def __init__(self, coeffs: Iterable[float] = ()):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in coeffs))

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient, -1 for the zero polynomial."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k] != 0.0:
                return k
        return -1

    def is_zero(self) -> bool:
        return self.degree < 0

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def __call__(self, x):
        if not self.coeffs:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        return np.polynomial.polynomial.polyval(x, self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return poly_mul(self, other)
        return Polynomial(c * other for c in self.coeffs)

    __rmul__ = __mul__

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0.0,) * (n - len(self.coeffs))
        b = other.coeffs + (0.0,) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> Polynomial:
        return self * -1.0

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def shift(self, k: int) -> Polynomial:
        """Multiply by ``x**k``."""
        return Polynomial((0.0,) * k + self.coeffs)

    def derivative(self) -> Polynomial:
        return poly_derivative(self)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero() or q.is_zero():
        return Polynomial()
    a = p.as_array()[: p.degree + 1]
    b = q.as_array()[: q.degree + 1]
    return Polynomial(np.convolve(a, b))


def poly_derivative(p: Polynomial) -> Polynomial:
    return Polynomial(k * p.coeffs[k] for k in range(1, len(p.coeffs)))


def monomial(k: int, coeff: float = 1.0) -> Polynomial:
    return Polynomial((0.0,) * k + (coeff,))


@lru_cache(maxsize=64)
def hermite(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n from the three-term recurrence."""
    if n < 0:
        raise ValueError(f"hermite order must be non-negative, got {n}")
    h_prev = Polynomial([1.0])
    if n == 0:
        return h_prev
    h = Polynomial([0.0, 2.0])
    two_y = Polynomial([0.0, 2.0])
    for k in range(1, n):
        h_prev, h = h, two_y * h - h_prev * (2.0 * k)
    return h


def gaussian_moment(two_k: int, beta: float) -> float:
    """Integral of ``x**two_k * exp(-beta x^2)`` over the real line."""
    if two_k < 0 or two_k % 2:
        raise ValueError(f"moment order must be even and non-negative, got {two_k}")
    if not beta > 0:
        raise ValueError(f"Gaussian rate must be positive, got {beta}")
    return float(gaussian_moments(two_k, beta)[two_k])


def gaussian_moments(max_power: int, beta: float) -> np.ndarray:
    """All moments ``int x**j exp(-beta x^2) dx`` for ``j <= max_power``.

    Odd entries are zero. The even entries use the ratio recurrence
    M[2k+2] = M[2k] (2k+1) / (2 beta), which stays finite where the double
    factorial and the power of 2*beta taken separately would overflow.
    """
    if not beta > 0:
        raise ValueError(f"Gaussian rate must be positive, got {beta}")
    out = np.zeros(max_power + 1)
    m = math.sqrt(math.pi / beta)
    inv = 1.0 / (2.0 * beta)
    for j in range(0, max_power + 1, 2):
        out[j] = m
        m *= (j + 1) * inv
    return out


@dataclass(frozen=True)
class GaussPoly:
    """``poly(x) * exp(-rate * x^2)`` with ``rate > 0``."""

    poly: Polynomial
    rate: float

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError(f"GaussPoly needs a positive rate, got {self.rate}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.poly(x) * np.exp(-self.rate * x * x)

    def scaled(self, c: float) -> GaussPoly:
        return GaussPoly(self.poly * c, self.rate)

    def times_poly(self, p: Polynomial) -> GaussPoly:
        return GaussPoly(self.poly * p, self.rate)

    def derivative(self) -> GaussPoly:
        # d/dx [P e^{-b x^2}] = (P' - 2 b x P) e^{-b x^2}
        return GaussPoly(self.poly.derivative() - self.poly.shift(1) * (2.0 * self.rate), self.rate)


def _even_moment_sum(coeffs: Sequence[float] | np.ndarray, rate: float) -> float:
    c = np.asarray(coeffs, dtype=float)
    if c.size == 0:
        return 0.0
    # Squared Hermite-type polynomials give alternating terms that cancel by
    # many orders of magnitude. Factor out M_0 so the ratios M_k / M_0 stay
    # exact where possible, and sum the products without intermediate rounding.
    even = c[0::2]
    k = np.arange(even.size)
    ratios = np.cumprod(np.concatenate(([1.0], (2 * k[:-1] + 1) / (2.0 * rate))))
    return math.fsum(even * ratios) * math.sqrt(math.pi / rate)


def inner_product(f: GaussPoly, g: GaussPoly) -> float:
    """Exact ``int f(x) g(x) dx``; odd powers integrate to zero and are skipped."""
    prod = poly_mul(f.poly, g.poly)
    return _even_moment_sum(prod.coeffs, f.rate + g.rate)


def expectation(f: GaussPoly, weight: Polynomial) -> float:
    """``int f(x)^2 weight(x) dx``."""
    prod = poly_mul(poly_mul(f.poly, f.poly), weight)
    return _even_moment_sum(prod.coeffs, 2.0 * f.rate)
