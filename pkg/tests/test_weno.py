import math

import numpy as np
import pytest

from mindlin1d import Grid, State
from mindlin1d.timestepping import rk3_step
from mindlin1d.weno import (
    GHOST,
    PaddedField,
    StencilDirection,
    fill_ghosts,
    weno5_derivative,
)


def exact_padded(func, grid):
    """Padded samples of func with exact ghost values."""
    dx = grid.dx
    x_pad = np.concatenate([
        grid.x[0] + dx * np.arange(-GHOST, 0),
        grid.x,
        grid.x[-1] + dx * np.arange(1, GHOST + 1),
    ])
    return PaddedField(func(x_pad))


class TestFillGhosts:
    def test_periodic_wrap(self):
        f = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        p = fill_ghosts(f, "periodic", "periodic")
        np.testing.assert_array_equal(p.values[:3], [3, 4, 5])
        np.testing.assert_array_equal(p.values[-3:], [1, 2, 3])
        np.testing.assert_array_equal(p.interior, f)

    def test_dirichlet_inflow(self):
        f = np.arange(6.0)
        p = fill_ghosts(f, 0.0, "outflow")
        np.testing.assert_array_equal(p.values[:3], [0, 0, 0])
        p = fill_ghosts(f, 2.5, "outflow")
        np.testing.assert_array_equal(p.values[:3], [2.5, 2.5, 2.5])

    def test_outflow_extrapolation(self):
        f = np.array([1.0, 2.0, 7.0])
        p = fill_ghosts(f, 0.0, "outflow")
        np.testing.assert_array_equal(p.values[-3:], [7, 7, 7])

    def test_unknown_rule_rejected(self):
        with pytest.raises(ValueError, match="unknown ghost rule"):
            fill_ghosts(np.zeros(5), "nonsense", "outflow")

    def test_one_sided_periodic_rejected(self):
        with pytest.raises(ValueError, match="periodic"):
            fill_ghosts(np.zeros(5), "periodic", "outflow")


class TestDerivative:
    def test_constant_field(self):
        grid = Grid(32)
        p = fill_ghosts(np.full(grid.n, 4.7), "periodic", "periodic")
        for direction in StencilDirection:
            d = weno5_derivative(p, grid.dx, direction)
            assert np.max(np.abs(d)) < 1e-13

    def test_linear_field_reproduced(self):
        grid = Grid(32)
        p = exact_padded(lambda x: x, grid)
        for direction in StencilDirection:
            d = weno5_derivative(p, grid.dx, direction)
            assert np.max(np.abs(d - 1.0)) <= 1e-12

    @pytest.mark.parametrize("degree", [0, 1, 2])
    def test_low_degree_polynomial_exactness(self, degree):
        # up to quadratics every candidate stencil interpolates the face
        # exactly and the indicators coincide, so exactness holds at any
        # amplitude
        grid = Grid(40, length=2.0)
        poly = np.polynomial.Polynomial(np.array([0.3, -1.2, 0.7])[: degree + 1])
        dpoly = poly.deriv()
        p = exact_padded(poly, grid)
        for direction in StencilDirection:
            d = weno5_derivative(p, grid.dx, direction)
            assert np.max(np.abs(d - dpoly(grid.x))) <= 1e-10

    @pytest.mark.parametrize("degree", [3, 4])
    def test_high_degree_exactness_in_smooth_weights_regime(self, degree):
        # cubic/quartic faces are exact only for the optimal weights; keep
        # the indicator scale far below the regularizer so the weights sit
        # at their optimal values
        grid = Grid(40, length=2.0)
        coeff = 1e-4 * np.array([0.3, -1.2, 0.7, 0.4, -0.1])[: degree + 1]
        poly = np.polynomial.Polynomial(coeff)
        dpoly = poly.deriv()
        p = exact_padded(poly, grid)
        for direction in StencilDirection:
            d = weno5_derivative(p, grid.dx, direction)
            assert np.max(np.abs(d - dpoly(grid.x))) <= 1e-10

    def test_fifth_order_on_smooth_periodic_data(self):
        errors = {}
        for n in (64, 128, 256, 512):
            grid = Grid(n)
            f = np.sin(2 * np.pi * grid.x)
            exact = 2 * np.pi * np.cos(2 * np.pi * grid.x)
            p = fill_ghosts(f, "periodic", "periodic")
            d = weno5_derivative(p, grid.dx, StencilDirection.RIGHTWARD)
            errors[n] = np.max(np.abs(d - exact))
        slope = math.log(errors[64] / errors[512]) / math.log(512 / 64)
        assert slope >= 4.8, f"observed order {slope:.2f}"
        # successive doublings individually stay close to fifth order
        for coarse, fine in ((64, 128), (128, 256), (256, 512)):
            ratio = errors[coarse] / errors[fine]
            assert ratio > 2**4.4

    def test_direction_mirror_symmetry(self):
        rng = np.random.default_rng(17)
        values = rng.normal(size=32 + 2 * GHOST)
        dx = 0.05
        left = weno5_derivative(PaddedField(values), dx, StencilDirection.LEFTWARD)
        right_rev = weno5_derivative(PaddedField(values[::-1].copy()), dx, StencilDirection.RIGHTWARD)
        np.testing.assert_allclose(left, -right_rev[::-1], rtol=1e-12, atol=1e-14)

    def test_small_grid_rejected(self):
        p = PaddedField(np.zeros(4 + 2 * GHOST))
        with pytest.raises(ValueError, match="at least 5"):
            weno5_derivative(p, 0.1, StencilDirection.LEFTWARD)

    def test_nonpositive_dx_rejected(self):
        p = PaddedField(np.zeros(8 + 2 * GHOST))
        with pytest.raises(ValueError, match="dx"):
            weno5_derivative(p, 0.0, StencilDirection.LEFTWARD)


def advect_periodic(q0, grid, speed, t_end, cfl=0.4):
    """Advance q_t = -speed*q_x with the production WENO + RK3 pieces."""
    fields = np.zeros((4, grid.n))
    fields[2] = q0
    state = State(fields, grid)

    def evaluator(s, _t):
        p = fill_ghosts(s.v, "periodic", "periodic")
        dv = weno5_derivative(p, grid.dx, StencilDirection.RIGHTWARD)
        out = np.zeros_like(s.fields)
        out[2] = -speed * dv
        return State(out, grid)

    dt_nominal = cfl * grid.dx / speed
    t = 0.0
    while t < t_end:
        dt = min(dt_nominal, t_end - t)
        state = rk3_step(state, t, dt, evaluator)
        t = t_end if dt >= t_end - t else t + dt
    return state.v


class TestNonOscillation:
    def test_step_advection_overshoot(self):
        grid = Grid(128)
        q0 = np.where((grid.x > 0.25) & (grid.x < 0.75), 1.0, 0.0)
        q = advect_periodic(q0, grid, speed=1.0, t_end=1.0)
        overshoot = q.max() - 1.0
        undershoot = -q.min()
        assert overshoot <= 1e-2
        assert undershoot <= 1e-2

    def test_ten_period_amplitude_envelope(self):
        # no linear-stability growth at the production CFL number
        grid = Grid(128)
        q0 = np.sin(2 * np.pi * grid.x)
        fields = np.zeros((4, grid.n))
        fields[2] = q0
        state = State(fields, grid)

        def evaluator(s, _t):
            p = fill_ghosts(s.v, "periodic", "periodic")
            dv = weno5_derivative(p, grid.dx, StencilDirection.RIGHTWARD)
            out = np.zeros_like(s.fields)
            out[2] = -dv
            return State(out, grid)

        dt = 0.4 * grid.dx
        steps_per_period = round(1.0 / dt)
        assert steps_per_period * dt == pytest.approx(1.0, abs=1e-12)
        period_peaks = [np.max(np.abs(state.v))]
        for period in range(10):
            t = float(period)
            for _ in range(steps_per_period):
                state = rk3_step(state, t, dt, evaluator)
                t += dt
                # never above the true initial amplitude
                assert np.max(np.abs(state.v)) <= 1.0 + 1e-12
            period_peaks.append(np.max(np.abs(state.v)))
        # at matched alignment the amplitude envelope is non-increasing
        for earlier, later in zip(period_peaks, period_peaks[1:]):
            assert later <= earlier + 1e-12
