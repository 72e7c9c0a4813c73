import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rbfweno import reconstruction as rc

finite = st.floats(-100, 100, allow_nan=False)
etas = st.floats(-2, 2, allow_nan=False)


def test_undivided_differences_examples():
    t = rc.undivided_differences([1, 2, 4])
    assert t[1].tolist() == [1, 2] and t[2].tolist() == [1]
    t = rc.undivided_differences([0, 1, 0, 1])
    assert t[1].tolist() == [1, -1, 1] and t[2].tolist() == [-2, 2]
    assert not np.any(rc.undivided_differences(np.full(4, 3.0))[1])


def test_eno_select_examples():
    # jump at i+1/2 pushes the stencil left
    assert rc.eno_select(np.array([0.0, 0.0, 1.0]), 2) == 1
    # tie extends right
    assert rc.eno_select(np.array([1.0, 0.0, 1.0]), 2) == 0
    assert rc.eno_select(np.array([0.0, 0.0, 0.0, 1.0, 10.0]), 3) == 2
    assert rc.eno_select(np.array([10.0, 1.0, 0.0, 0.0, 0.0]), 3) == 0


def test_eno_select_monotone_smooth_k2():
    f = np.exp(np.array([0.0, 0.1, 0.2]))
    left = abs(f[1] - f[0])
    right = abs(f[2] - f[1])
    assert rc.eno_select(f, 2) == (1 if left < right else 0)


def test_coefficient_examples():
    assert rc.poly_coeffs(2, 0).tolist() == [0.5, 0.5]
    assert np.allclose(rc.poly_coeffs(3, 1), [-1 / 6, 5 / 6, 1 / 3])
    assert np.allclose(rc.poly_coeffs(3, -1), [11 / 6, -7 / 6, 1 / 3])
    eta = 0.3
    assert np.allclose(rc.rbf_coeffs(2, 0, eta), [0.5 + eta / 4] * 2)
    assert np.allclose(rc.rbf_coeffs(3, 0, eta), [1 / 3 + 5 * eta / 6, 5 / 6 - 2 * eta / 3,
                                                  -1 / 6 - eta / 6])
    assert np.array_equal(rc.rbf_coeffs(3, 2, 0.0), rc.poly_coeffs(3, 2))


def test_coefficient_range_errors():
    with pytest.raises(rc.ReconstructionError):
        rc.poly_coeffs(2, 2)
    with pytest.raises(rc.ReconstructionError):
        rc.rbf_coeffs(4, 0, 0.0)
    with pytest.raises(rc.ReconstructionError):
        rc.linear_weights(5)


def test_eta_k2_examples():
    assert float(rc.eta_k2(1, 1, 1).value) == 0.0
    raw = rc.eta_k2(0.0, 1.0, 0.0, switch=False)
    assert float(raw.value) == pytest.approx(0.8, abs=1e-15)
    # the switch sees the extremum and forces the polynomial limit
    sw = rc.eta_k2(0.0, 1.0, 0.0)
    assert float(sw.value) == 0.0 and bool(sw.limited)


def test_eta_k2_guard_and_clamp():
    g = rc.eta_k2(1.0, -1.0, 3.0, switch=False)  # zero denominator
    assert float(g.value) == 0.0 and bool(g.limited) and not bool(g.clamped)
    c = rc.eta_k2(1.0, 0.0, 1.5, switch=False)
    raw = 2 * (-1 - 1.5) / (-1 + 3.0)
    assert abs(raw) > rc.ETA_CLAMP
    assert float(c.value) == -rc.ETA_CLAMP and bool(c.clamped) and bool(c.limited)


def test_eta_k3_examples():
    assert float(rc.eta_k3(2, 2, 2, 2).value) == 0.0
    assert float(rc.eta_k3(0, 1, 2, 3).value) == 0.0


def test_eta_k3_formula_monotone_data():
    f = np.array([1.0, 2.0, 4.5, 9.0]) ** 1.5
    e = rc.eta_k3(*f, switch=False)
    num = f[0] - 3 * f[1] + 3 * f[2] - f[3]
    den = f[0] - 15 * f[1] + 15 * f[2] - f[3]
    assert float(e.value) == pytest.approx(num / den)


def test_eta_k2_asymptotics():
    # eta / dx^2 tends to -h''/(3h) at the interface for h = 2 + sin
    x0 = 0.7
    H = lambda x: 2 * x - np.cos(x)
    vals = []
    dxs = [1e-2, 5e-3, 2.5e-3]
    for dx in dxs:
        left = x0 + np.array([-2, -1, 0]) * dx
        f = (H(left + dx) - H(left)) / dx
        vals.append(float(rc.eta_k2(*f, switch=False).value) / dx ** 2)
    limit = np.polyfit(dxs, vals, 2)[-1]
    assert limit == pytest.approx(np.sin(x0) / (3 * (2 + np.sin(x0))), rel=1e-5)


def test_monotone_examples():
    assert not rc.monotone_k2(0, 1, 2)
    assert rc.monotone_k2(0, 1, 0)
    assert not rc.monotone_k2(0, 1, 3)


def test_beta_examples():
    assert not np.any(rc.beta_js(3, np.full(5, 2.0)))
    assert np.allclose(rc.beta_js(3, np.arange(5.0)), [1, 1, 1])
    b = rc.beta_js(3, np.array([0.0, 0.0, 0.0, 1.0, 1.0]))
    assert b[0] > 100 * max(b[2], 1e-300)
    assert rc.beta_js(2, np.array([0.0, 1.0, 3.0])).tolist() == [4.0, 1.0]


def test_linear_weights():
    assert np.allclose(rc.linear_weights(3), [0.3, 0.6, 0.1])
    assert np.allclose(rc.linear_weights(2), [2 / 3, 1 / 3])


def test_weno_weights_examples():
    ww = rc.weno_weights([2 / 3, 1 / 3], [0.5, 0.5])
    assert np.allclose(ww.w, [2 / 3, 1 / 3], rtol=0, atol=1e-15)
    big = rc.weno_weights([0.3, 0.6, 0.1], [1e12, 0.0, 0.0])
    assert big.w[0] < 1e-30
    ex = rc.weno_weights([2 / 3, 1 / 3], [0.0, 1.0], 1e-6)
    a0 = (2 / 3) / 1e-12
    a1 = (1 / 3) / (1 + 1e-6) ** 2
    assert float(ex.w[0]) == pytest.approx(a0 / (a0 + a1), rel=1e-15)


def test_reconstruct_constant():
    for scheme in rc.SCHEMES:
        for k in (2, 3):
            assert rc.reconstruct(np.ones(2 * k - 1), k, scheme) == pytest.approx(1.0, abs=1e-15)


def test_window_width_checked():
    with pytest.raises(rc.ReconstructionError):
        rc.reconstruct(np.ones(4), 2, "eno")
    with pytest.raises(rc.ReconstructionError):
        rc.reconstruct(np.ones(5), 3, "bogus")
    with pytest.raises(rc.ReconstructionError):
        rc.reconstruct_interface(2, "eno", np.ones(3), side="up")


def test_minus_side_mirrors():
    w = np.array([1.0, 3.0, 2.0, 5.0, 4.0])
    for scheme in rc.SCHEMES:
        assert rc.reconstruct_interface(3, scheme, w, "minus") == \
            rc.reconstruct_interface(3, scheme, w[::-1], "plus")


def _interface_error(scheme, k, dx, x0=0.4):
    H = lambda x: 2 * x - np.cos(x)
    left = x0 + (np.arange(-(k - 1), k) - 1) * dx
    f = (H(left + dx) - H(left)) / dx
    return abs(rc.reconstruct(f, k, scheme) - (2 + np.sin(x0)))


@pytest.mark.parametrize("scheme,k,lo,hi", [
    ("eno", 2, 1.8, 2.2), ("rbf-eno", 2, 2.8, 3.2), ("weno-js", 2, 2.7, 3.3),
    ("rbf-weno-js", 2, 2.7, 3.3), ("eno", 3, 2.8, 3.2), ("rbf-eno", 3, 3.7, 4.4),
    ("weno-js", 3, 4.5, 5.5),
])
def test_interface_orders(scheme, k, lo, hi):
    dxs = np.array([0.04, 0.02, 0.01, 0.005])
    errs = [_interface_error(scheme, k, h) for h in dxs]
    slope = np.polyfit(np.log(dxs), np.log(errs), 1)[0]
    assert lo <= slope <= hi


@settings(max_examples=100, deadline=None)
@given(etas)
def test_row_sums(eta):
    for r in range(-1, 3):
        assert abs(rc.rbf_coeffs(3, r, eta).sum() - 1.0) <= 1e-14
    assert rc.rbf_coeffs(2, 0, eta).sum() == pytest.approx(1 + eta / 2, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(etas)
def test_k3_symmetry(eta):
    assert np.array_equal(rc.rbf_coeffs(3, 1, eta), rc.rbf_coeffs(3, 0, eta)[::-1])


def test_polynomial_limit_bit_exact():
    for k, rows in rc.POLY_TABLE.items():
        for r in rows:
            assert np.array_equal(rc.rbf_coeffs(k, r, 0.0), rc.poly_coeffs(k, r))


@settings(max_examples=100, deadline=None)
@given(arrays(float, (3, 5), elements=st.floats(0, 10, allow_nan=False)))
def test_weno_weights_normalized(beta):
    ww = rc.weno_weights(rc.linear_weights(3), beta)
    assert np.all(ww.w >= 0) and np.all(ww.w <= 1)
    assert np.allclose(ww.w.sum(axis=0), 1.0, rtol=0, atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3), st.lists(finite, min_size=3, max_size=3), st.floats(-3, 3))
def test_eno_exact_on_polynomials(k, coef, x0):
    # cell averages of a degree k-1 polynomial; exact interface value expected
    c = np.array(coef[:k])
    P = np.polynomial.Polynomial(c).integ()
    dx = 0.1
    left = x0 + (np.arange(-(k - 1), k) - 1) * dx
    f = (P(left + dx) - P(left)) / dx
    want = np.polynomial.Polynomial(c)(x0)
    scale = max(1.0, np.abs(f).max())
    assert abs(rc.reconstruct(f, k, "eno") - want) <= 1e-12 * scale


@settings(max_examples=100, deadline=None)
@given(st.lists(finite, min_size=3, max_size=3))
def test_switch_gives_eno(w):
    w = np.array(w)
    assume(bool(rc.monotone_k2(*w)))
    assert rc.reconstruct(w, 2, "rbf-eno") == rc.reconstruct(w, 2, "eno")


@settings(max_examples=100, deadline=None)
@given(finite, finite)
def test_weno_equal_beta_is_linear(a, b):
    w = a + b * np.arange(5.0)
    beta = rc.beta_js(3, w)
    assume(np.ptp(beta) == 0)
    rows = rc._row_values(w, 3, None)
    assert rc.reconstruct(w, 3, "weno-js") == pytest.approx(rc.linear_weights(3) @ rows, rel=1e-14, abs=1e-14)


def test_weno_equal_beta_linear_data():
    w = np.arange(5.0) * 0.7 + 1.0
    rows = rc._row_values(w, 3, None)
    assert abs(rc.reconstruct(w, 3, "weno-js") - rc.linear_weights(3) @ rows) <= 1e-14


@settings(max_examples=50, deadline=None)
@given(arrays(float, (4, 5), elements=finite))
def test_vectorized_matches_scalar(ws):
    for scheme in rc.SCHEMES:
        batch = rc.reconstruct(ws, 3, scheme)
        single = [rc.reconstruct(w, 3, scheme) for w in ws]
        assert np.array_equal(batch, np.array(single))


def test_stats_counts():
    stats = rc.EtaStats()
    rc.reconstruct(np.array([[0.0, 1.0, 0.0], [0.0, 1.0, 2.0]]), 2, "rbf-eno", stats=stats)
    assert stats.evaluated == 2 and stats.limited >= 1


def test_stencil_spec():
    s = rc.StencilSpec(3, 1)
    assert s.r + s.s + 1 == s.k
    with pytest.raises(rc.ReconstructionError):
        rc.StencilSpec(2, 5)


def test_normalize_scheme():
    assert rc.normalize_scheme("RBF_WENO_JS") == "rbf-weno-js"
