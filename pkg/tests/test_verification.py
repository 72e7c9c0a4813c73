import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbfweno import reconstruction as rc
from rbfweno.verification import (
    CHECKS, Check, RbfError, cell_averages, closed_form_k2, empirical_order,
    flux_reconstruct_oracle, linear_weights_oracle, mq_kernel, poly_coeffs_oracle, rbf_interp,
    run_checks,
)


def test_mq_kernel_examples():
    assert mq_kernel(1.0, 0.0, 3.0) == 2.0
    assert mq_kernel(0.0, 0.0, -5.0) == 1.0
    with pytest.raises(ValueError):
        mq_kernel(1.0, 0.0, -1.0)


def test_rbf_interp_reproduces_data():
    x = [0.0, 0.3, 1.0]
    s = rbf_interp(x, [1.0, -2.0, 0.5], 0.7)
    assert [s(v) for v in x] == pytest.approx([1.0, -2.0, 0.5], abs=1e-30)


def test_rbf_interp_singular():
    with pytest.raises(RbfError):
        rbf_interp([0.0, 0.0], [1.0, 1.0], 0.5)


def test_polynomial_oracle_midpoint():
    assert flux_reconstruct_oracle([1.0, 3.0], 2, 0.0) == pytest.approx(2.0, abs=1e-14)
    with pytest.raises(ValueError):
        flux_reconstruct_oracle([1.0, 2.0, 3.0], 2, 0.0)


def test_closed_form_example():
    assert closed_form_k2(0.0) == 0.5
    # agrees with the linearized table to first order
    assert closed_form_k2(1e-4) == pytest.approx(0.5 + 1e-4 / 4, abs=1e-7)


@pytest.mark.parametrize("k,r", [(2, -1), (2, 0), (2, 1), (3, -1), (3, 0), (3, 1), (3, 2)])
def test_table_matches_oracle(k, r):
    assert np.allclose(poly_coeffs_oracle(k, r), rc.poly_coeffs(k, r), rtol=0, atol=1e-12)


@pytest.mark.parametrize("k", [2, 3])
def test_linear_weights_match_oracle(k):
    assert np.allclose(linear_weights_oracle(k), rc.linear_weights(k), rtol=0, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.1, 0.1).filter(lambda e: abs(e) > 1e-6),
       st.floats(0.5, 3.0), st.floats(0.5, 3.0))
def test_oracle_matches_closed_form(eps2, a, b):
    got = flux_reconstruct_oracle(np.array([a, b]), 2, eps2)
    assert got == pytest.approx(closed_form_k2(eps2) * (a + b), rel=1e-11)


@settings(max_examples=15, deadline=None)
@given(st.floats(1e-4, 1e-2), st.lists(st.floats(0.5, 3.0), min_size=3, max_size=3))
def test_perturbed_table_is_first_order_in_eta(eta, f):
    f = np.array(f)
    exact = flux_reconstruct_oracle(f, 3, eta, 1.0, 0)
    linear = rc.rbf_coeffs(3, 0, eta) @ f
    poly = rc.poly_coeffs(3, 0) @ f
    # the linear term removes the O(eta) gap to the full kernel
    assert abs(exact - linear) <= 50 * eta ** 2 * np.abs(f).max() + 1e-13
    assert abs(exact - linear) <= abs(exact - poly) + 1e-13


def test_empirical_order():
    h = np.array([0.1, 0.05, 0.025])
    assert empirical_order(3 * h ** 2.5, h) == pytest.approx(2.5)
    assert math.isnan(empirical_order([1e-3, 0.0, 1e-5], h))
    with pytest.raises(ValueError):
        empirical_order([1.0, 0.5], h[:2])


def test_cell_averages():
    avg = cell_averages(lambda x: x ** 2, np.array([0.0, 1.0]), 1.0)
    assert avg.tolist() == [1.0, 3.0]


def test_check_line():
    assert Check("x", True, "ok", 0.1).line().startswith("PASS x")
    assert Check("x", False, "bad", 0.1).line().startswith("FAIL x")


def test_all_checks_pass():
    checks = run_checks()
    assert len(checks) == len(CHECKS) >= 25
    assert [c.name for c in checks if not c.passed] == []


def test_run_checks_subset_and_crash(monkeypatch):
    import rbfweno.verification as v

    def boom():
        raise RuntimeError("broken")
    monkeypatch.setattr(v, "CHECKS", [("boom", boom)] + list(v.CHECKS[:1]))
    out = v.run_checks()
    assert not out[0].passed and "broken" in out[0].detail
    assert len(v.run_checks(["boom"])) == 1


def test_fault_in_table_is_caught(monkeypatch):
    bad = {k: dict(rows) for k, rows in rc.POLY_TABLE.items()}
    bad[3][0] = (1 / 3, 5 / 6 + 1e-3, -1 / 6)
    monkeypatch.setattr(rc, "POLY_TABLE", bad)
    failed = [c.name for c in run_checks() if not c.passed]
    assert "poly-table-oracle" in failed
