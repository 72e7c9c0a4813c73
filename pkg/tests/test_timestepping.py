import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbfweno.grid import BoundarySpec, ConfigurationError, Field, Grid1D, Grid2D, outflow, periodic
from rbfweno.physics import make_equation
from rbfweno.problems import boundary, get_problem, init
from rbfweno.reconstruction import SCHEMES
from rbfweno.timestepping import (
    SchemeConfig, SolverError, TimeConfig, cfl_dt, integrate, interface_fluxes, rk3_step, rhs_1d,
)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        SchemeConfig(k=4)
    with pytest.raises(ConfigurationError):
        SchemeConfig(euler_mode="primitive")
    with pytest.raises(ConfigurationError):
        SchemeConfig(switch="maybe")
    with pytest.raises(ConfigurationError):
        TimeConfig(1.0, cfl=0.0)
    with pytest.raises(ConfigurationError):
        TimeConfig(1.0, cfl=1.5)


def test_switch_policy():
    assert SchemeConfig(k=3, smooth=True).switch_on
    assert not SchemeConfig(k=2, smooth=True).switch_on
    assert SchemeConfig(k=2, smooth=False).switch_on
    assert SchemeConfig(k=2, smooth=True, switch="on").switch_on
    assert not SchemeConfig(k=3, switch="off").switch_on


def test_rk3_stage_weights():
    # dU/dt = 1 and dU/dt = t integrate exactly
    fld = Field.from_interior(np.zeros(1), ghost=1)
    out = rk3_step(fld, 0.5, lambda f, t: np.ones((1, 1)))
    assert out.interior[0, 0] == pytest.approx(0.5)
    out = rk3_step(fld, 0.5, lambda f, t: np.full((1, 1), t), t=1.0)
    assert out.interior[0, 0] == pytest.approx(1.0 * 0.5 + 0.5 * 0.25)


def test_rk3_third_order():
    def err(dt):
        fld = Field.from_interior(np.ones(1), ghost=1)
        t = 0.0
        for _ in range(int(round(1 / dt))):
            fld = rk3_step(fld, dt, lambda f, tt: -f.interior.copy(), t)
            t += dt
        return abs(fld.interior[0, 0] - np.exp(-1.0))
    e = [err(h) for h in (0.1, 0.05, 0.025)]
    assert np.log2(e[1] / e[2]) == pytest.approx(3.0, abs=0.1)


def test_cfl_dt_lands_on_t_end():
    g = Grid1D(0, 1, 10)
    cfg = TimeConfig(0.25, 0.5)
    assert cfl_dt(1.0, g, cfg) == pytest.approx(0.05)
    assert cfl_dt(1.0, g, cfg, t=0.24) == pytest.approx(0.01)
    assert cfl_dt(0.0, g, cfg) == 0.25
    g2 = Grid2D(0, 1, 0, 1, 10, 10)
    assert cfl_dt((1.0, 1.0), g2, cfg) == pytest.approx(0.025)


def test_ghost_width_checked():
    eq = make_equation("advection")
    with pytest.raises(ConfigurationError):
        interface_fluxes(np.zeros((1, 10)), eq, 0, SchemeConfig(k=3), 1.0, ghost=2)


def _periodic_run(problem, scheme, k, steps, n=40):
    spec = get_problem(problem)
    grid = spec.make_grid(n)
    fld = init(spec, grid)
    eq = make_equation(spec.equation)
    cfg = SchemeConfig(k, scheme, smooth=spec.smooth)
    out, info = integrate(fld.copy(), grid, eq, boundary(spec), cfg, TimeConfig(1.0, 0.4),
                          max_steps=steps)
    return fld, out, grid, info


@pytest.mark.parametrize("scheme", SCHEMES)
@pytest.mark.parametrize("k", [2, 3])
def test_periodic_conservation(scheme, k):
    fld, out, grid, info = _periodic_run("burgers-sine", scheme, k, 30)
    assert info.steps == 30
    before = fld.interior.sum() * grid.dx
    after = out.interior.sum() * grid.dx
    assert abs(after - before) <= 1e-13


def test_euler_conservation_periodic():
    grid = Grid1D(0.0, 1.0, 50)
    x = grid.x
    prim = np.array([1 + 0.2 * np.sin(2 * np.pi * x), 0.3 + 0 * x, 1 + 0.1 * np.cos(2 * np.pi * x)])
    from rbfweno.physics import conserved_from_primitive
    fld = Field.from_interior(conserved_from_primitive(prim))
    for mode in ("characteristic", "componentwise"):
        out, _ = integrate(fld.copy(), grid, make_equation("euler"), BoundarySpec(periodic(), periodic()),
                           SchemeConfig(3, "rbf-weno-js", euler_mode=mode), TimeConfig(0.05, 0.4))
        drift = np.abs(out.interior.sum(axis=1) - fld.interior.sum(axis=1)) * grid.dx
        assert drift.max() <= 1e-13


def test_constant_state_preserved():
    grid = Grid2D(0, 1, 0, 1, 8, 8)
    from rbfweno.physics import conserved_from_primitive
    U = conserved_from_primitive(np.array([1.0, 0.5, -0.25, 1.0]))[:, None, None] * np.ones((1, 8, 8))
    fld = Field.from_interior(U)
    spec = BoundarySpec(outflow(), outflow(), outflow(), outflow())
    out, info = integrate(fld, grid, make_equation("euler", 2), spec, SchemeConfig(3, "rbf-eno"),
                          TimeConfig(0.05, 0.5))
    assert np.allclose(out.interior, U, rtol=0, atol=1e-13)
    assert info.t == 0.05


def test_non_finite_raises_solver_error():
    grid = Grid1D(0, 1, 10)
    fld = Field.from_interior(np.full(10, np.nan))
    from rbfweno.grid import fill_ghosts
    fill_ghosts(fld, BoundarySpec(periodic(), periodic()))
    with pytest.raises(SolverError) as exc:
        rhs_1d(fld, grid, make_equation("advection"), SchemeConfig(), 1.0)
    assert exc.value.cell is not None


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(SCHEMES), st.sampled_from([2, 3]), st.integers(0, 2 ** 16))
def test_random_data_conserved(scheme, k, seed):
    rng = np.random.default_rng(seed)
    grid = Grid1D(0, 1, 24)
    fld = Field.from_interior(rng.uniform(-1, 1, 24))
    out, _ = integrate(fld.copy(), grid, make_equation("burgers"), BoundarySpec(periodic(), periodic()),
                       SchemeConfig(k, scheme), TimeConfig(1.0, 0.4), max_steps=5)
    assert abs(out.interior.sum() - fld.interior.sum()) * grid.dx <= 1e-13
