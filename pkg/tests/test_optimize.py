from fractions import Fraction

import numpy as np
import pytest

from anharmonic import report
from anharmonic.model import HOWF, Potential, rayleigh_quotient
from anharmonic.optimize import (NoInteriorMinimum, is_collapsed, minimize_1d, minimize_simplex,
                                 solve_howf, solve_ppewf)
from anharmonic.published import LAMBDA_GRID


def test_minimize_1d_bowl():
    x, v = minimize_1d(lambda a: (a - 2.0) ** 2, 0.1, 5.0)
    assert x == pytest.approx(2.0, abs=1e-8)
    assert v == pytest.approx(0.0, abs=1e-15)


def test_minimize_1d_edge_minimum_is_an_error():
    with pytest.raises(NoInteriorMinimum):
        minimize_1d(lambda a: a, 0.1, 5.0)


def test_minimize_1d_bad_bracket():
    with pytest.raises(ValueError):
        minimize_1d(lambda a: a * a, 2.0, 1.0)


@pytest.mark.parametrize("n, pot, alpha, energy, tol_a, tol_e", [
    (0, Potential(1, 0), 1.0, 0.5, 1e-6, 1e-12),
    (0, Potential(0, 0.25), 0.934655, 0.429268, 1e-5, 1e-6),
    (0, Potential(1, 0.25), 0.835913, 0.624016, 1e-5, 1e-6),
    (0, Potential(1, 1000), 0.2345, 6.8279, 1e-4, 1e-4),
    (1, Potential(1, 0), 1.0, 1.5, 1e-6, 1e-12),
])
def test_solve_howf_examples(n, pot, alpha, energy, tol_a, tol_e):
    res = solve_howf(n, pot)
    assert res.params.alpha == pytest.approx(alpha, abs=tol_a)
    assert res.energy == pytest.approx(energy, abs=tol_e)
    assert res.converged


@pytest.mark.parametrize("n", [0, 3, 10])
@pytest.mark.parametrize("lam", [0.25, 10.0])
def test_howf_stationarity(n, lam):
    pot = Potential(1, lam)
    alpha = solve_howf(n, pot).params.alpha
    h = 1e-5
    grad = (rayleigh_quotient(HOWF(n, alpha + h), pot)
            - rayleigh_quotient(HOWF(n, alpha - h), pot)) / (2 * h)
    assert abs(grad) < 1e-4


def test_simplex_bowl():
    res = minimize_simplex(lambda x: float(np.sum((x - 1.0) ** 2)), np.zeros(4), np.ones(4),
                           tol_x=1e-10, tol_f=1e-14)
    assert res.converged
    assert np.allclose(res.x, 1.0, atol=1e-8)
    assert res.fun < 1e-15


def test_simplex_rosenbrock():
    def rosen(x):
        return (1 - x[0]) ** 2 + 100 * (x[1] - x[0] ** 2) ** 2

    x, value, converged = minimize_simplex(rosen, [-1.2, 1.0], [0.1, 0.1])
    assert converged
    assert np.allclose(x, [1.0, 1.0], atol=1e-6)
    assert value < 1e-12


def test_simplex_rejects_nonfinite_start():
    with pytest.raises(ValueError):
        minimize_simplex(lambda x: np.inf, [1.0], [1.0])


def test_simplex_budget_reported():
    res = minimize_simplex(lambda x: float(np.sum(x**2)), [5.0, 5.0], [1.0, 1.0], max_evals=20)
    assert not res.converged
    assert res.evaluations <= 25


def test_ppewf_contains_sho_ground_state():
    res = solve_ppewf(0, Potential(1, 0), restarts=2)
    assert res.energy == pytest.approx(0.5, abs=1e-9)


def test_ppewf_energy_recomputed_at_optimum():
    res = solve_ppewf(0, Potential(1, 0.5), restarts=2)
    assert res.energy == pytest.approx(rayleigh_quotient(res.params, res.potential), rel=1e-12)
    assert res.energy == pytest.approx(0.6962, abs=1e-3)


def test_ppewf_first_excited_at_lambda_one():
    res = solve_ppewf(1, Potential(1, 1), parity=True, restarts=4)
    assert res.params.a == 0.0 and res.params.c == 0.0
    assert res.energy == pytest.approx(2.7380, abs=1e-3)


def test_ppewf_determinism():
    a = solve_ppewf(2, Potential(1, 2), restarts=3, rng_seed=11)
    b = solve_ppewf(2, Potential(1, 2), restarts=3, rng_seed=11)
    assert a == b
    assert a.start_energies == b.start_energies


@pytest.mark.parametrize("lam", LAMBDA_GRID)
def test_upper_bound_chain(lam, config, exact):
    ppewf = report.ppewf_result(config, 0, lam).energy
    howf = report.howf_result(config, 0, lam).energy
    assert exact(lam) - 1e-9 <= ppewf <= howf + 1e-9


def test_collapse_label():
    assert is_collapsed(1.9148, 3.1386)
    assert not is_collapsed(3.1390, 3.1386)
    assert not is_collapsed(3.1380, 3.1386)


def test_collapse_reproduced(config, exact):
    res = report.ppewf_result(config, 2, Fraction(1, 10))
    assert res.energy <= 1.92
    assert is_collapsed(res.energy, exact(Fraction(1, 10), 2))
