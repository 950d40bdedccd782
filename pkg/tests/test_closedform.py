import math
from fractions import Fraction

import pytest
import sympy

from anharmonic import closedform
from anharmonic.checks import printed_ppewf_diagnostic
from anharmonic.model import HOWF, PPEWF, Potential, rayleigh_quotient
from anharmonic.optimize import minimize_1d
from anharmonic.published import TABLE1


@pytest.mark.parametrize("n, alpha, lam, expected, tol", [
    (0, 1.0, 0.0, 0.5, 1e-15),
    (0, 0.835913, 0.25, 0.624016, 1e-6),
    (5, 0.675683, 0.25, 9.66296, 1e-5),
])
def test_qao_examples(n, alpha, lam, expected, tol):
    assert closedform.energy_howf_qao(n, alpha, lam) == pytest.approx(expected, abs=tol)


def test_quartic_examples():
    assert closedform.energy_howf_quartic(0, 0.934655) == pytest.approx(0.429268, abs=1e-6)
    assert closedform.energy_howf_quartic(10, 0.631378) == pytest.approx(19.7548, abs=1e-4)


def test_quartic_stationary_point():
    # dE/dalpha = -1/(2 alpha^3) + 3 alpha^3 / 4 = 0  =>  alpha^6 = 2/3
    alpha_star = (2 / 3) ** (1 / 6)
    alpha, e = minimize_1d(lambda a: closedform.energy_howf_quartic(0, a), 0.1, 5.0, tol=1e-10)
    assert alpha == pytest.approx(alpha_star, abs=1e-8)
    assert e == pytest.approx(closedform.energy_howf_quartic(0, alpha_star), abs=1e-14)


def test_quadratic_examples():
    assert closedform.energy_howf_quadratic(0, 1.0) == 0.5
    assert closedform.energy_howf_quadratic(3, 1.0) == 3.5
    assert closedform.energy_howf_quadratic(0, 2.0) == pytest.approx(1.0625, abs=1e-15)


@pytest.mark.parametrize("fn", [lambda: closedform.energy_howf_qao(0, 0.0, 1.0),
                                lambda: closedform.energy_howf_quartic(1, -1.0),
                                lambda: closedform.energy_howf_quadratic(2, 0.0)])
def test_nonpositive_alpha_rejected(fn):
    with pytest.raises(ValueError):
        fn()


def test_sum_identity():
    for n in range(21):
        assert 4 * closedform.level_sum(n) + 1 == 2 * n * n + 2 * n + 1


@pytest.mark.parametrize("n", range(11))
def test_closed_forms_match_rayleigh_quotient(n):
    for alpha in (0.3, 0.7, 1.0, 1.6):
        for lam in (0.0, 0.25, 1.0, 10.0):
            assert closedform.energy_howf_qao(n, alpha, lam) == pytest.approx(
                rayleigh_quotient(HOWF(n, alpha), Potential(1, lam)), rel=1e-10)
        assert closedform.energy_howf_quartic(n, alpha) == pytest.approx(
            rayleigh_quotient(HOWF(n, alpha), Potential(0, 0.25)), rel=1e-10)
        assert closedform.energy_howf_quadratic(n, alpha) == pytest.approx(
            rayleigh_quotient(HOWF(n, alpha), Potential(1, 0)), rel=1e-10)


def test_table1_quadratic_column_consistent():
    for n, row in TABLE1.items():
        assert closedform.energy_howf_quadratic(n, row[0]) == pytest.approx(row[1], abs=1e-4)


# -- printed PPEWF expressions (diagnostic only) ----------------------------

def test_printed_n0_reduces_without_kinetic_term():
    al = sympy.symbols("alpha", positive=True)
    reduced = sympy.simplify(closedform.energy_ppewf_printed(0, al) - (1 / (8 * al) + sympy.Rational(3, 16) / al**2))
    assert reduced == 0


def test_printed_n1_zero_coefficients():
    al = sympy.symbols("alpha", positive=True)
    # num = 3 (512 al^5 + 1280 al^4), den = 4096 al^6, expanded by hand
    expected = 3 * (2 * al + 5) / (16 * al**2)
    assert sympy.simplify(closedform.energy_ppewf_printed(1, al) - expected) == 0


def test_printed_accepts_exact_rationals():
    assert closedform.energy_ppewf_printed(0, Fraction(1, 2)) == Fraction(1, 4) + Fraction(3, 4)


def test_printed_rejects_bad_inputs():
    with pytest.raises(ValueError):
        closedform.energy_ppewf_printed(6, 1.0)
    with pytest.raises(ZeroDivisionError):
        closedform.energy_ppewf_printed(0, 0.0)


def test_printed_disagrees_with_rayleigh_quotient():
    """The comparison runs and reports a difference; agreement is not expected."""
    rows = printed_ppewf_diagnostic()
    assert len(rows) == 9
    at_one = next(r for r in rows if r["lambda"] == 1.0)
    assert at_one["rayleigh"] == pytest.approx(0.8038, abs=1e-3)
    assert math.isfinite(at_one["difference"])
    assert abs(at_one["difference"]) > 0.1


def test_compare_fields():
    row = closedform.compare_printed_ppewf(PPEWF(2, 1.0, 0.1, 0.2, 0.0, 0.05), Potential(1, 1))
    assert set(row) == {"n", "lambda", "alpha_prime", "printed", "rayleigh", "difference"}
    assert row["difference"] == pytest.approx(row["printed"] - row["rayleigh"])
