"""Third-order strong-stability-preserving (TVD) Runge-Kutta stepping.

The three-stage scheme in convex (Shu-Osher) form:

    s1 = s  + dt*L(s,  t)
    s2 = 3/4*s + 1/4*(s1 + dt*L(s1, t + dt))
    s+ = 1/3*s + 2/3*(s2 + dt*L(s2, t + dt/2))

Each stage is a forward-Euler step, so any stability bound of the spatial
operator under forward Euler carries over at the same CFL restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .riemann import State

__all__ = ["StepControl", "BlowUpError", "compute_dt", "rk3_step"]

RhsEvaluator = Callable[[State, float], State]


class BlowUpError(RuntimeError):
    """Non-finite values appeared during stepping."""

    def __init__(self, t: float):
        self.t = t
        super().__init__(f"blow-up: non-finite state values at t = {t:.6g}")


@dataclass(frozen=True)
class StepControl:
    """CFL-based step selection up to a final time.

    max_speed is the largest characteristic speed over the grid,
    max over x of max(sqrt(a1(x)), sqrt(a3(x))).
    """

    cfl: float
    t_end: float
    max_speed: float

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError("cfl must be in (0, 1]")
        if not self.t_end >= 0.0:
            raise ValueError("t_end must be nonnegative")


def compute_dt(ctrl: StepControl, dx: float, t: float) -> float:
    """dt = min(cfl*dx/max_speed, t_end - t); the last step is truncated."""
    if ctrl.max_speed <= 0.0:
        raise ValueError("max_speed must be positive")
    if t >= ctrl.t_end:
        raise ValueError(f"t = {t} is already at or past t_end = {ctrl.t_end}")
    return min(ctrl.cfl * dx / ctrl.max_speed, ctrl.t_end - t)


def _check_finite(fields: np.ndarray, t: float) -> None:
    if not np.all(np.isfinite(fields)):
        raise BlowUpError(t)


def rk3_step(s: State, t: float, dt: float, rhs_evaluator: RhsEvaluator) -> State:
    """Advance the state from t to t + dt.

    `rhs_evaluator(state, stage_time)` must apply boundary conditions at the
    stage's effective time; the stages use t, t + dt, and t + dt/2.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    grid = s.grid

    f1 = s.fields + dt * rhs_evaluator(s, t).fields
    _check_finite(f1, t)
    s1 = State(f1, grid)

    # Convex combinations written in delta form, so a vanishing rhs returns
    # the input state bit-exactly.
    f2 = s.fields + 0.25 * ((f1 - s.fields) + dt * rhs_evaluator(s1, t + dt).fields)
    _check_finite(f2, t)
    s2 = State(f2, grid)

    f3 = s.fields + (2.0 / 3.0) * (
        (f2 - s.fields) + dt * rhs_evaluator(s2, t + 0.5 * dt).fields
    )
    _check_finite(f3, t)
    return State(f3, grid)
