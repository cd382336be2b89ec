import math

import numpy as np
import pytest

from mindlin1d import Grid, State
from mindlin1d.timestepping import BlowUpError, StepControl, compute_dt, rk3_step


def scalar_state(value, grid):
    fields = np.zeros((4, grid.n))
    fields[0] = value
    return State(fields, grid)


def scalar_evaluator(func):
    """Wrap dq/dt = func(q, t) acting on the first state row."""

    def evaluator(s, t):
        out = np.zeros_like(s.fields)
        out[0] = func(s.fields[0], t)
        return State(out, s.grid)

    return evaluator


class TestComputeDt:
    def test_formula(self):
        ctrl = StepControl(cfl=0.4, t_end=10.0, max_speed=1.0)
        assert compute_dt(ctrl, 1.0 / 128, 0.0) == 0.4 / 128

    def test_truncated_final_step(self):
        ctrl = StepControl(cfl=0.4, t_end=1.0, max_speed=1.0)
        assert compute_dt(ctrl, 1.0 / 128, 1.0 - 1e-5) == pytest.approx(1e-5, rel=1e-9)

    def test_benchmark_max_speed(self, bench_coeffs):
        assert bench_coeffs.max_speed == 1.0

    def test_nonpositive_speed_rejected(self):
        ctrl = StepControl(cfl=0.4, t_end=1.0, max_speed=0.0)
        with pytest.raises(ValueError, match="max_speed"):
            compute_dt(ctrl, 0.01, 0.0)

    def test_invalid_cfl_rejected(self):
        with pytest.raises(ValueError, match="cfl"):
            StepControl(cfl=1.5, t_end=1.0, max_speed=1.0)


class TestRk3Step:
    def test_zero_rhs_is_exact_identity(self):
        grid = Grid(16)
        rng = np.random.default_rng(1)
        state = State(rng.normal(size=(4, grid.n)), grid)
        zero = scalar_evaluator(lambda q, t: np.zeros_like(q))
        out = rk3_step(state, 0.0, 0.1, zero)
        assert out.fields.tobytes() == state.fields.tobytes()

    def test_linear_decay_matches_cubic_taylor(self):
        # one step of q' = -q from 1 equals the degree-3 Taylor polynomial
        # of exp(z) at z = -0.1 (frozen: 0.90483333...)
        grid = Grid(8)
        state = scalar_state(1.0, grid)
        decay = scalar_evaluator(lambda q, t: -q)
        out = rk3_step(state, 0.0, 0.1, decay)
        assert out.fields[0, 0] == pytest.approx(0.9048333333333333, rel=1e-15)

    def test_third_order_on_scalar_ode(self):
        # q' = -q + cos(t): global error at t = 1 drops ~8x per dt halving.
        # (A state-independent forcing alone would expose the Simpson-rule
        # structure of the stage weights and converge at fourth order.)
        exact_1 = 0.5 * (math.cos(1.0) + math.sin(1.0)) + 0.5 * math.exp(-1.0)
        grid = Grid(8)
        forced = scalar_evaluator(lambda q, t: -q + math.cos(t))
        errors = []
        for steps in (20, 40, 80):
            dt = 1.0 / steps
            state = scalar_state(1.0, grid)
            for i in range(steps):
                state = rk3_step(state, i * dt, dt, forced)
            errors.append(abs(state.fields[0, 0] - exact_1))
        for coarse, fine in zip(errors, errors[1:]):
            ratio = coarse / fine
            assert 7.0 <= ratio <= 9.0, f"ratio {ratio:.2f}"

    def test_third_order_in_time_on_wave_system(self):
        # spatial resolution fixed high (N = 2048) and dt varied through the
        # Courant number: the wave-system error must drop ~8x per halving
        from mindlin1d import parse_config, run_exact_verification

        errors = {}
        for cfl in (0.8, 0.4):
            cfg = parse_config(None, {
                "mode": "exact", "wave": ["sincos 2pi 1 1 1 1"],
                "grid_n": 2048, "t_end": 1.0, "cfl": cfl,
            })
            report, _ = run_exact_verification(cfg)
            errors[cfl] = report
        for field in ("err_u", "err_chi"):
            ratio = getattr(errors[0.8], field) / getattr(errors[0.4], field)
            assert 6.5 <= ratio <= 9.5, f"{field} ratio {ratio:.2f}"

    def test_stage_times_passed_to_evaluator(self):
        grid = Grid(8)
        seen = []

        def evaluator(s, t):
            seen.append(t)
            return State(np.zeros_like(s.fields), s.grid)

        rk3_step(scalar_state(0.0, grid), 2.0, 0.4, evaluator)
        assert seen == [2.0, 2.4, 2.2]

    def test_blowup_reports_time(self):
        grid = Grid(8)
        exploding = scalar_evaluator(lambda q, t: np.full_like(q, float("inf")))
        with pytest.raises(BlowUpError, match="blow-up") as excinfo:
            rk3_step(scalar_state(1.0, grid), 3.25, 0.1, exploding)
        assert excinfo.value.t == 3.25

    def test_nonpositive_dt_rejected(self):
        grid = Grid(8)
        zero = scalar_evaluator(lambda q, t: np.zeros_like(q))
        with pytest.raises(ValueError, match="dt"):
            rk3_step(scalar_state(0.0, grid), 0.0, 0.0, zero)
