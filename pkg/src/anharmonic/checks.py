"""Consistency checks shared by the ``selfcheck`` command and the test suite."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import closedform
from .model import HOWF, PPEWF, Potential, build_trial, rayleigh_quotient, rayleigh_quotient_of
from .oracle import SymmetricMatrix, eigenvalues_symmetric, exact_spectrum
from .published import PPEWF_TABLES


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def rel_diff(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def count_below(a: np.ndarray, x: float) -> int:
    """Number of eigenvalues of symmetric ``a`` below ``x``.

    Sylvester inertia: count negative pivots of an LDL^T factorization of
    ``a - x I``. Elimination runs in exact rationals, so tiny pivots cannot
    flip the count the way they can in floating point.
    """
    n = len(a)
    xf = Fraction(x)
    m = [[Fraction(float(a[i][j])) - (xf if i == j else 0) for j in range(n)] for i in range(n)]
    negatives = 0
    for k in range(n):
        piv = m[k][k]
        if piv == 0:
            # x is an eigenvalue of a leading block; shift by a hair to stay consistent
            piv = Fraction(1, 10**40)
        if piv < 0:
            negatives += 1
        for i in range(k + 1, n):
            f = m[i][k] / piv
            if f:
                for j in range(k + 1, n):
                    m[i][j] -= f * m[k][j]
    return negatives


def eigenvalues_by_bisection(a: np.ndarray, tol: float = 1e-13) -> np.ndarray:
    """Roots of det(a - x I) = 0 located one by one by bisection on the inertia count."""
    a = np.asarray(a, dtype=float)
    radius = np.abs(a).sum(axis=1)
    lo0 = float(np.min(np.diag(a) - (radius - np.abs(np.diag(a))))) - 1.0
    hi0 = float(np.max(np.diag(a) + (radius - np.abs(np.diag(a))))) + 1.0
    out = []
    for k in range(len(a)):
        lo, hi = lo0, hi0
        while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if count_below(a, mid) > k:
                hi = mid
            else:
                lo = mid
        out.append(0.5 * (lo + hi))
    return np.array(out)


def _generic(params, pot) -> float:
    # full polynomial expansion, bypassing the scaled HOWF shortcut
    return rayleigh_quotient_of(build_trial(params), pot)


def closedform_consistency() -> CheckResult:
    worst = 0.0
    for n in range(11):
        for alpha in (0.3, 0.7, 1.0, 1.6):
            for lam in (0.0, 0.25, 1.0, 10.0):
                worst = max(worst, rel_diff(closedform.energy_howf_qao(n, alpha, lam),
                                            _generic(HOWF(n, alpha), Potential(1.0, lam))))
            worst = max(worst, rel_diff(closedform.energy_howf_quartic(n, alpha),
                                        _generic(HOWF(n, alpha), Potential(0.0, 0.25))))
            worst = max(worst, rel_diff(closedform.energy_howf_quadratic(n, alpha),
                                        _generic(HOWF(n, alpha), Potential(1.0, 0.0))))
    return CheckResult("closed forms vs Rayleigh quotient", worst < 1e-10, f"max rel diff {worst:.2e}")


def scale_invariance() -> CheckResult:
    pot = Potential(1.0, 1.0)
    worst = 0.0
    for p in (PPEWF(0, 1.3, 0.1, 0.5, -0.05, 0.2), PPEWF(3, 2.0, -0.4, 0.1, 0.3, 0.7)):
        base = rayleigh_quotient(p, pot)
        for k in (-3.0, 1e-3, 7.5e4):
            worst = max(worst, rel_diff(rayleigh_quotient_of(build_trial(p).scaled(k), pot), base))
    return CheckResult("Rayleigh quotient scale invariance", worst < 1e-12, f"max rel diff {worst:.2e}")


def harmonic_limit() -> CheckResult:
    worst = max(abs(rayleigh_quotient(HOWF(n, 1.0), Potential(1.0, 0.0)) - (2 * n + 1) / 2)
                for n in range(11))
    return CheckResult("lambda = 0 gives (2n+1)/2", worst < 1e-12, f"max abs diff {worst:.2e}")


def jacobi_vs_bisection(trials: int = 5, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        a = rng.normal(size=(6, 6))
        a = a + a.T
        worst = max(worst, float(np.max(np.abs(
            eigenvalues_symmetric(SymmetricMatrix(a)) - eigenvalues_by_bisection(a)))))
    return CheckResult("Jacobi vs inertia bisection (6x6)", worst < 1e-10, f"max abs diff {worst:.2e}")


def basis_scale_independence() -> CheckResult:
    pot = Potential(1.0, 1.0)
    e = [exact_spectrum(pot, 1, tol=1e-11, omega=w).eigenvalues[0] for w in (0.5, 1.0, 2.0)]
    spread = max(e) - min(e)
    return CheckResult("oracle basis-scale independence", spread < 1e-8, f"spread {spread:.2e}")


def printed_ppewf_diagnostic() -> list[dict]:
    """Printed PPEWF formula vs Rayleigh quotient at the published n = 0 rows (informational)."""
    rows = []
    for lam, ref in PPEWF_TABLES[0].items():
        params = PPEWF(0, ref[1], *ref[2:6])
        rows.append(closedform.compare_printed_ppewf(params, Potential(1.0, float(lam))))
    return rows


def run_all() -> list[CheckResult]:
    return [closedform_consistency(), scale_invariance(), harmonic_limit(),
            jacobi_vs_bisection(), basis_scale_independence()]
