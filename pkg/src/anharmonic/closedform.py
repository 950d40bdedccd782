"""Closed-form variational energies.

The harmonic-oscillator-family formulas are exact consequences of the
Rayleigh quotient and are cross-checked against :mod:`anharmonic.model`.
The printed polynomial-times-exponential formulas (n = 0..5) are kept
verbatim for diagnostics only; they are not consistent with the Hamiltonian
(at a = b = c = d = 0 the n = 0 form has no kinetic term) and the optimizer
never uses them.
"""
from __future__ import annotations

from .model import PPEWF, Potential, rayleigh_quotient


def level_sum(n: int) -> int:
    """sum_{i=0}^{n} (n - i), i.e. n(n+1)/2."""
    return sum(n - i for i in range(n + 1))


def _check_alpha(alpha):
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")


def energy_howf_qao(n: int, alpha: float, lam: float) -> float:
    """HOWF energy for ``x^2/2 + lam x^4`` (g = 1)."""
    _check_alpha(alpha)
    k = 4 * level_sum(n) + 1
    return (2 * n + 1) / (4 * alpha**2) + (2 * n + 1) * alpha**2 / 4 + 3 * k * alpha**4 * lam / 4


def energy_howf_quartic(n: int, alpha: float) -> float:
    """HOWF energy for the pure quartic ``x^4 / 4``."""
    _check_alpha(alpha)
    k = 4 * level_sum(n) + 1
    return (2 * n + 1) / (4 * alpha**2) + 3 * k * alpha**4 / 16


def energy_howf_quadratic(n: int, alpha: float) -> float:
    """HOWF energy for ``x^2 / 2``; minimal (= n + 1/2) at alpha = 1."""
    _check_alpha(alpha)
    return (2 * n + 1) / 4 * (1 / alpha**2 + alpha**2)


# Literal transcriptions; `al` is the printed alpha. Written with plain
# arithmetic so they also accept sympy symbols.
def _e0(al, a, b, c, d):
    num = (512 * al**5 + 192 * a**2 * al**3 * (5 + 2 * al) + 768 * al**4 * (1 + b)
           + 480 * a * al**2 * (7 + 2 * al) * c + 10395 * d**2
           + 480 * al**3 * (4 * b + b**2 + 2 * d)
           + 840 * al**2 * (2 * b**2 + c**2 + 4 * d + 2 * b * d)
           + 1890 * al * (2 * c**2 + 4 * b * d + d**2))
    den = 16 * al**2 * (4 * al * (4 * al * (4 * al * (a**2 + 4 * al) + 8 * al * b + 3 * b**2)
                                  + 24 * a * al * c + 15 * c**2)
                        + 24 * al * (4 * al + 5 * b) * d + 105 * d**2)
    return num, den


def _e1(al, a, b, c, d):
    num = 3 * (4 * al * (4 * al * (32 * al**3 + 20 * a**2 * al * (7 + 2 * al) + 315 * b**2
                                   + 80 * al**2 * (1 + b) + 70 * al * b * (4 + b))
                         + 280 * a * al * (9 + 2 * al) * c + 315 * (11 + 2 * al) * c**2)
               + 280 * al * (8 * al**2 + 99 * b + 18 * al * (2 + b)) * d
               + 3465 * (13 + 2 * al) * d**2)
    den = 16 * al**2 * (4 * al * (4 * al * (4 * al * (3 * a**2 + 4 * al) + 24 * al * b + 15 * b**2)
                                  + 120 * a * al * c + 105 * c**2)
                        + 120 * al * (4 * al + 7 * b) * d + 945 * d**2)
    return num, den


def _family(k, c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13, c14):
    """Shared shape of the printed n = 2, 3, 4 forms."""
    def expr(al, a, b, c, d):
        num = k * (512 * al**5 + c1 * a**2 * al**3 * (c2 + 2 * al) + c3 * al**4 * (1 + b)
                   + c4 * a * al**2 * (c5 + 2 * al) * c + c6 * d**2
                   + c4 * al**3 * (4 * b + b**2 + 2 * d)
                   + c7 * al**2 * (2 * b**2 + c**2 + 4 * d + 2 * b * d)
                   + c8 * al * (2 * c**2 + 4 * b * d + d**2))
        den = 16 * al**2 * (4 * al * (4 * al * (4 * al * (c9 * a**2 + 4 * al) + c10 * al * b + c11 * b**2)
                                      + c12 * a * al * c + c13 * c**2)
                            + c12 * al * (4 * al + c2 * b) * d + c14 * d**2)
        return num, den
    return expr


_e2 = _family(5, 448, 9, 1792, 2016, 11, 135135, 5544, 18018, 5, 40, 35, 280, 315, 3465)
_e3 = _family(7, 576, 11, 2304, 3168, 13, 328185, 10296, 38610, 7, 56, 63, 504, 693, 9009)
_e4 = _family(9, 704, 13, 2816, 4576, 15, 692835, 17160, 72930, 9, 72, 99, 792, 1287, 19305)


def _e5(al, a, b, c, d):
    num = 11 * (512 * al**5 + 832 * a**2 * al**3 * (15 + 2 * al) + 3328 * al**4 * (1 + b)
                + 6240 * a * al**2 * (17 + 2 * al) * c + 1322685 * d**2
                + 6240 * al**3 * (4 * b + b**2 + 2 * d)
                + 26520 * al**2 * (2 * b**2 + c**2 + 4 * d + 2 * b * d)
                + 125970 * al * (2 * c**2 + 4 * b * d + d**2))
    den = 16 * al**2 * (4 * al * (4 * al * (44 * a**2 * al + 16 * al**2 + 88 * al * b + 143 * b**2)
                                  + 1144 * a * al * c + 2145 * c**2)
                        + 1144 * al * (4 * al + 15 * b) * d + 36465 * d**2)
    return num, den


_PRINTED = (_e0, _e1, _e2, _e3, _e4, _e5)


def energy_ppewf_printed(n: int, alpha, a=0, b=0, c=0, d=0):
    """Value of the printed PPEWF energy expression for level ``n`` (0..5)."""
    if not 0 <= n <= 5:
        raise ValueError(f"printed expressions exist only for n = 0..5, got {n}")
    num, den = _PRINTED[n](alpha, a, b, c, d)
    if den == 0:
        raise ZeroDivisionError(f"printed E_{n} denominator vanishes")
    return num / den


def compare_printed_ppewf(params: PPEWF, pot: Potential) -> dict:
    """Printed-formula value next to the moment-based Rayleigh quotient.

    Reports the difference; never asserts agreement.
    """
    printed = energy_ppewf_printed(params.n, params.alpha_prime, params.a, params.b, params.c, params.d)
    exact = rayleigh_quotient(params, pot)
    return {
        "n": params.n,
        "lambda": pot.lam,
        "alpha_prime": params.alpha_prime,
        "printed": float(printed),
        "rayleigh": exact,
        "difference": float(printed) - exact,
    }
