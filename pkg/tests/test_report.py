import csv
import json
import math
from fractions import Fraction

import numpy as np
import pytest

from anharmonic import report
from anharmonic.config import RunConfig
from anharmonic.model import HOWF, Potential
from anharmonic.optimize import VariationalResult, solve_howf

WIDTH_GRID = [Fraction(0), Fraction(1, 10), Fraction(3, 10), Fraction(1, 2), Fraction(1),
              Fraction(2), Fraction(10), Fraction(100), Fraction(1000)]


@pytest.mark.parametrize("value, reference, expected", [
    (0.8125, 0.8038, 1.0861),
    (6.8279, 6.6942, 1.9977),
])
def test_percent_error_examples(value, reference, expected):
    assert report.percent_error(value, reference) == pytest.approx(expected, abs=5e-3)


def test_percent_error_identity_and_zero():
    assert report.percent_error(3.3, 3.3) == 0.0
    with pytest.raises(ZeroDivisionError):
        report.percent_error(1.0, 0.0)


def test_schemas():
    assert ",".join(report.columns_for(1)) == "state,alpha_quadratic,E_quadratic,alpha_qao,E_qao,alpha_quartic,E_quartic"
    assert ",".join(report.columns_for(3)) == ("lambda,E_exact,E_wkb_cited,E_qlm_cited,E_expansion_cited,"
                                              "E_showf,E_ppewf,err_wkb,err_qlm,err_expansion,err_showf,err_ppewf")
    for tid in (2, 4, 5, 6, 7, 8):
        assert ",".join(report.columns_for(tid)) == "lambda,alpha,alpha_prime,a,b,c,d,E_v1,E_v2,E_exact,collapsed"
    assert report.WAVEFUNCTION_COLUMNS == ("x", "psi")
    with pytest.raises(ValueError):
        report.columns_for(9)


def test_sign_changes():
    assert report.count_sign_changes([1, 0, -1, -2, 0, 0, 3]) == 2
    assert report.count_sign_changes([0, 0, 1, 2]) == 0


def _howf_result(n, lam):
    return solve_howf(n, Potential(1, lam))


def test_sho_ground_state_samples():
    s = report.sample_wavefunction(_howf_result(0, 0.0))
    assert s.nodes == 0
    assert s.x.size == 2000 and s.x[0] == -5.0 and s.x[-1] == 5.0
    assert abs(s.norm - 1.0) < 1e-10
    assert s.psi[1000] == pytest.approx(math.pi ** -0.25, abs=1e-3)
    assert s.rms_width == pytest.approx(math.sqrt(0.5), rel=1e-8)


@pytest.mark.parametrize("n", range(6))
def test_howf_node_counts(n):
    assert report.sample_wavefunction(_howf_result(n, 1.0)).nodes == n


def test_sample_validation():
    res = _howf_result(0, 1.0)
    with pytest.raises(ValueError):
        report.sample_wavefunction(res, samples=8)
    with pytest.raises(ValueError):
        report.sample_wavefunction(res, x_max=0.0)


def test_howf_width_decreases_with_lambda():
    widths = [report.sample_wavefunction(_howf_result(0, float(l))).rms_width for l in WIDTH_GRID]
    assert all(b < a for a, b in zip(widths, widths[1:]))


def test_ppewf_first_excited_has_one_node(config):
    for lam in (Fraction(1, 10), Fraction(10), Fraction(1000)):
        assert report.sample_wavefunction(report.ppewf_result(config, 1, lam)).nodes == 1


def test_csv_emit(tmp_path):
    rows = [report.TableRow(3, {"lambda": Fraction(3, 10), "E_exact": 0.63799205, "E_wkb_cited": 0.5847,
                                "err_ppewf": 1.5e-3})]
    path = report.emit(rows, "csv", tmp_path / "t.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(report.TABLE3_COLUMNS)
    rec = next(csv.DictReader(lines))
    assert rec["lambda"] == "3/10"
    assert rec["E_exact"] == "0.637992"
    assert rec["E_qlm_cited"] == ""
    assert rec["err_ppewf"] == "0.0015"


def test_json_round_trip(tmp_path):
    values = {"lambda": Fraction(1, 2), "alpha": 0.68185123456789, "alpha_prime": 2.2106,
              "a": -1.234567891234e-8, "b": 0.1, "c": 0.0, "d": 1 / 3, "E_v1": 4.3235,
              "E_v2": 2.5175, "E_exact": 4.3275, "collapsed": True}
    path = report.emit([report.TableRow(5, values)], "json", tmp_path / "t.json")
    loaded = json.loads(path.read_text())[0]
    assert loaded["lambda"] == "1/2"
    assert loaded["collapsed"] is True
    for key in ("alpha", "a", "d"):
        assert loaded[key + "_full"] == values[key]
        assert loaded[key] == float(f"{values[key]:.6g}")


def test_emit_wavefunction(tmp_path):
    s = report.sample_wavefunction(_howf_result(1, 1.0), samples=32)
    text = report.emit(s, "csv", tmp_path / "wf.csv").read_text().splitlines()
    assert text[0] == "x,psi"
    assert len(text) == 33


def test_emit_io_error_has_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(report.ReportError, match="file"):
        report.emit([report.TableRow(1, {"state": 0})], "csv", blocker / "sub" / "t.csv")


def test_table3_lambda_zero_row(config):
    row = report._table3_row(Fraction(0), config)
    assert row.error is None
    for key in ("E_exact", "E_showf", "E_ppewf", "E_wkb_cited", "E_qlm_cited"):
        assert row.values[key] == pytest.approx(0.5, abs=1e-9)
    for key in ("err_wkb", "err_qlm", "err_showf", "err_ppewf"):
        assert row.values[key] == pytest.approx(0.0, abs=1e-6)
    assert row.sources["E_wkb_cited"] == "cited"


def test_table5_collapsed_row(config):
    row = report._param_row(5, Fraction(1, 10), config)
    assert row.values["E_v1"] == pytest.approx(3.1382, abs=1e-3)
    assert row.values["E_v2"] <= 1.92
    assert row.values["collapsed"] is True


def test_row_errors_are_annotated():
    bad = RunConfig(g_squared=0.0)
    row = report._table3_row(Fraction(0), bad)  # g = 0 and lambda = 0 has no bound state
    assert row.error is not None and "ValueError" in row.error


def test_run_record(tmp_path):
    path = report.write_run_record(tmp_path / "run.json", {"lam": Fraction(1, 10), "x": np.float64(2.5)})
    assert json.loads(path.read_text()) == {"lam": "1/10", "x": 2.5}
