"""Variational energies of quadratic, pure-quartic and quartic anharmonic oscillators.

Two trial families (Hermite-Gaussian and polynomial-times-Gaussian) are
optimized through an exact moment-based Rayleigh quotient and compared with
an oscillator-basis diagonalization.
"""
from .model import HOWF, PPEWF, Potential, build_trial, rayleigh_quotient
from .optimize import VariationalResult, is_collapsed, solve_howf, solve_ppewf
from .oracle import SpectrumResult, exact_spectrum
from .polygauss import GaussPoly, Polynomial

__all__ = [
    "HOWF", "PPEWF", "Potential", "build_trial", "rayleigh_quotient",
    "VariationalResult", "is_collapsed", "solve_howf", "solve_ppewf",
    "SpectrumResult", "exact_spectrum", "GaussPoly", "Polynomial",
]
__version__ = "0.1.0"
