"""Run orchestration: initialization, stepping, error measurement, output.

Two run kinds:

* exact verification - initialize from a configured exact solution on a
  periodic grid, step to t_end, and accumulate the mixed error
  max |q - q_hat| / (1 + |q|) over every grid point and accepted step.
* inhomogeneous - rest initial data on the two-material bump profile, with
  the boundary strain pulse driving the left edge; emits field snapshots.

Snapshots are CSV with header ``t,x,u,chi,v,w,ux`` at full double precision
(17 significant digits), one file per snapshot time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .boundary import BoundaryHistory, BoundaryRegime, RegimeKind, apply_regime
from .config import RunKind, SimConfig
from .exact import ExactSolution, eval_solution, make_mode, mode_time_amplitudes
from .material import (
    MaterialParams,
    ParameterProfile,
    SampledProfile,
    derive_coefficients,
    sample_profile,
    total_energy,
)
from .riemann import (
    GaugeFields,
    Grid,
    State,
    build_gauge_constant,
    build_gauge_variable,
    forward_transform,
    inverse_transform,
    rhs,
)
from .timestepping import StepControl, compute_dt, rk3_step
from .weno import StencilDirection, derivative_from_padded

__all__ = [
    "ErrorReport",
    "Snapshot",
    "mixed_relative_error",
    "build_exact_solution",
    "initial_state_from_exact",
    "run_exact_verification",
    "run_inhomogeneous",
    "convergence_study",
    "write_snapshot",
    "read_snapshot",
    "snapshot_filename",
    "write_waterfall_csv",
    "write_convergence_csv",
    "format_convergence_table",
]

SNAPSHOT_HEADER = "t,x,u,chi,v,w,ux"


@dataclass(frozen=True)
class ErrorReport:
    """Errors of one verification run, plus observed order when known."""

    n: int
    err_u: float
    err_chi: float
    order_u: float | None = None
    order_chi: float | None = None
    energy_drift: float | None = None


@dataclass(frozen=True)
class Snapshot:
    """Field values at one emitted time."""

    t: float
    x: np.ndarray
    u: np.ndarray
    chi: np.ndarray
    v: np.ndarray
    w: np.ndarray
    ux: np.ndarray


def mixed_relative_error(exact: np.ndarray, numerical: np.ndarray) -> float:
    """max |exact - numerical| / (1 + |exact|) over the grid."""
    return float(np.max(np.abs(exact - numerical) / (1.0 + np.abs(exact))))


# ---------------------------------------------------------------------------
# Semidiscrete operator and stepping loop
# ---------------------------------------------------------------------------

class _Operator:
    """Ghost fill + upwinded WENO derivatives + source algebra."""

    def __init__(
        self,
        gauge: GaugeFields,
        regime: BoundaryRegime,
        grid: Grid,
        history: BoundaryHistory | None = None,
    ):
        self.gauge = gauge
        self.regime = regime
        self.grid = grid
        self.history = history

    def __call__(self, s: State, t: float) -> State:
        padded = apply_regime(s, self.regime, t, self.gauge, self.history)
        d_left = derivative_from_padded(padded[:2], self.grid.dx, StencilDirection.LEFTWARD)
        d_right = derivative_from_padded(padded[2:], self.grid.dx, StencilDirection.RIGHTWARD)
        return rhs(s, self.gauge, d_left[0], d_left[1], d_right[0], d_right[1])

    def slope_fields(self, s: State, t: float) -> tuple[np.ndarray, np.ndarray]:
        """u_x and chi_x by the same upwinded derivative used in stepping."""
        padded = apply_regime(s, self.regime, t, self.gauge, self.history)
        d_left = derivative_from_padded(padded[:2], self.grid.dx, StencilDirection.LEFTWARD)
        return d_left[0], d_left[1]


def _step_through(
    state: State,
    op: _Operator,
    cfg: SimConfig,
    targets: Sequence[float],
) -> Iterator[tuple[State, float, float]]:
    """Yield (state, t, dt) after every accepted step.

    Steps at the CFL-limited dt, truncating so the walk lands exactly on
    each target time (snapshot times and t_end); the landing is an exact
    float assignment, so comparison times are bit-consistent across runs.
    """
    dx = state.grid.dx
    max_speed = op.gauge.max_speed
    t = 0.0
    for target in targets:
        ctrl = StepControl(cfl=cfg.cfl, t_end=target, max_speed=max_speed)
        while t < target:
            dt = compute_dt(ctrl, dx, t)
            landing = dt >= target - t
            state = rk3_step(state, t, dt, op)
            t = target if landing else t + dt
            if op.history is not None:
                op.history.advance(state.u[0], state.chi[0], dt)
            yield state, t, dt


def _event_times(cfg: SimConfig) -> list[float]:
    events = {float(t) for t in cfg.snapshot_times if t > 0.0}
    events.add(cfg.t_end)
    return sorted(events)


def _energy_of_state(
    op: _Operator,
    s: State,
    t: float,
    params: MaterialParams | SampledProfile,
) -> float:
    u_x, chi_x = op.slope_fields(s, t)
    u_t, chi_t = inverse_transform(s, u_x, chi_x, op.gauge)
    return total_energy(s.u, u_t, u_x, s.chi, chi_t, chi_x, params, s.grid.dx)


class _EnergyDriftTracker:
    """Relative drift of total energy against its initial value."""

    def __init__(self, interval: int):
        self.interval = interval
        self.reference: float | None = None
        self.drift = 0.0

    def record(self, energy: float) -> None:
        if self.reference is None:
            self.reference = energy
        elif self.reference != 0.0:
            self.drift = max(self.drift, abs(energy - self.reference) / abs(self.reference))

    def due(self, step_index: int) -> bool:
        return self.interval > 0 and step_index % self.interval == 0


# ---------------------------------------------------------------------------
# Exact verification
# ---------------------------------------------------------------------------

def build_exact_solution(cfg: SimConfig) -> ExactSolution:
    coeffs = derive_coefficients(cfg.params)
    modes = tuple(make_mode(w.family, w.omega, w.k, coeffs) for w in cfg.waves)
    return ExactSolution(modes=modes, coeffs=coeffs)


class _ExactOnGrid:
    """Exact u and chi on a fixed grid, spatial factors precomputed."""

    def __init__(self, sol: ExactSolution, x: np.ndarray):
        self.modes = sol.modes
        self.sin_wx = [np.sin(m.omega * x) for m in sol.modes]
        self.cos_wx = [np.cos(m.omega * x) for m in sol.modes]

    def __call__(self, t: float) -> tuple[np.ndarray, np.ndarray]:
        u = np.zeros_like(self.sin_wx[0])
        chi = np.zeros_like(self.sin_wx[0])
        for mode, sin_wx, cos_wx in zip(self.modes, self.sin_wx, self.cos_wx):
            u_amp, x_amp, _, _ = mode_time_amplitudes(mode, t)
            if mode.family.value == "sincos":
                u += u_amp * sin_wx
                chi += x_amp * cos_wx
            else:
                u += u_amp * cos_wx
                chi += x_amp * sin_wx
        return u, chi


def initial_state_from_exact(sol: ExactSolution, gauge: GaugeFields, grid: Grid) -> State:
    """Invariant state from the exact solution at t = 0.

    The forward transform receives the analytic spatial derivatives, so
    initialization carries no discretization error.
    """
    f = eval_solution(sol, 0.0, grid.x)
    return forward_transform(f.u, f.chi, f.u_t, f.chi_t, f.u_x, f.chi_x, gauge, grid)


def run_exact_verification(cfg: SimConfig) -> tuple[ErrorReport, list[Snapshot]]:
    """Step the solver against the configured exact solution.

    Error maxima accumulate at every accepted step (never at inner
    Runge-Kutta stages), starting from the exact initialization at t = 0.
    Returns the error report and any requested snapshots.
    """
    if cfg.mode is not RunKind.EXACT_VERIFY:
        raise ValueError("run_exact_verification requires an exact-verify config")
    cfg.validate()

    grid = Grid(cfg.grid_n, cfg.length)
    sol = build_exact_solution(cfg)
    gauge = build_gauge_constant(sol.coeffs, grid)
    op = _Operator(gauge, BoundaryRegime(RegimeKind.PERIODIC), grid)
    state = initial_state_from_exact(sol, gauge, grid)
    exact_on_grid = _ExactOnGrid(sol, grid.x)
    energy = _EnergyDriftTracker(cfg.energy_interval)
    snapshot_times = set(_snapshot_times(cfg))
    snapshots: list[Snapshot] = []

    err_u = 0.0
    err_chi = 0.0

    def record(t: float, s: State) -> None:
        nonlocal err_u, err_chi
        u_ex, chi_ex = exact_on_grid(t)
        err_u = max(err_u, mixed_relative_error(u_ex, s.u))
        err_chi = max(err_chi, mixed_relative_error(chi_ex, s.chi))

    record(0.0, state)
    if energy.interval > 0:
        energy.record(_energy_of_state(op, state, 0.0, cfg.params))
    if 0.0 in snapshot_times:
        snapshots.append(_take_snapshot(op, state, 0.0))

    step_index = 0
    for state, t, _dt in _step_through(state, op, cfg, _event_times(cfg)):
        step_index += 1
        record(t, state)
        if energy.interval > 0 and (energy.due(step_index) or t == cfg.t_end):
            energy.record(_energy_of_state(op, state, t, cfg.params))
        if t in snapshot_times:
            snapshots.append(_take_snapshot(op, state, t))

    report = ErrorReport(
        n=cfg.grid_n,
        err_u=err_u,
        err_chi=err_chi,
        energy_drift=energy.drift if energy.interval > 0 else None,
    )
    return report, snapshots


def _snapshot_times(cfg: SimConfig) -> list[float]:
    return [float(t) for t in cfg.snapshot_times]


def _take_snapshot(op: _Operator, s: State, t: float) -> Snapshot:
    u_x, _ = op.slope_fields(s, t)
    return Snapshot(
        t=t,
        x=s.grid.x,
        u=s.u.copy(),
        chi=s.chi.copy(),
        v=s.v.copy(),
        w=s.w.copy(),
        ux=u_x,
    )


# ---------------------------------------------------------------------------
# Inhomogeneous experiment
# ---------------------------------------------------------------------------

def run_inhomogeneous(cfg: SimConfig) -> list[Snapshot]:
    """Two-material experiment: rest initial data, strain-pulse inflow.

    Runs on the bump profile with the configured height, emitting snapshots
    at the configured times (t_end is always included).
    """
    if cfg.mode is not RunKind.INHOMOGENEOUS:
        raise ValueError("run_inhomogeneous requires an inhomogeneous config")
    cfg.validate()

    grid = Grid(cfg.grid_n, cfg.length)
    profile = sample_profile(ParameterProfile(cfg.params, cfg.bump_height), grid.x)
    gauge = build_gauge_variable(profile)
    history = BoundaryHistory() if cfg.regime is RegimeKind.STRAIN_EXCITATION else None
    op = _Operator(gauge, BoundaryRegime(cfg.regime), grid, history=history)
    state = State.zeros(grid)

    snapshot_times = set(_snapshot_times(cfg)) | {cfg.t_end}
    snapshots: list[Snapshot] = []
    if 0.0 in snapshot_times:
        snapshots.append(_take_snapshot(op, state, 0.0))

    for state, t, _dt in _step_through(state, op, cfg, _event_times(cfg)):
        if t in snapshot_times:
            snapshots.append(_take_snapshot(op, state, t))
    return snapshots


# ---------------------------------------------------------------------------
# Convergence study
# ---------------------------------------------------------------------------

def convergence_study(cfg: SimConfig, n_list: Sequence[int]) -> list[ErrorReport]:
    """Run the verification at each grid size and attach observed orders.

    The observed order at a grid size is log2 of the error ratio against the
    previous (half as fine) entry.
    """
    reports: list[ErrorReport] = []
    prev: ErrorReport | None = None
    for n in n_list:
        run_cfg = _with_grid(cfg, int(n))
        report, _ = run_exact_verification(run_cfg)
        if prev is not None:
            report = ErrorReport(
                n=report.n,
                err_u=report.err_u,
                err_chi=report.err_chi,
                order_u=_observed_order(prev.err_u, report.err_u, prev.n, report.n),
                order_chi=_observed_order(prev.err_chi, report.err_chi, prev.n, report.n),
                energy_drift=report.energy_drift,
            )
        reports.append(report)
        prev = report
    return reports


def _with_grid(cfg: SimConfig, n: int) -> SimConfig:
    return replace(cfg, grid_n=n)


def _observed_order(err_coarse: float, err_fine: float, n_coarse: int, n_fine: int) -> float | None:
    if err_coarse <= 0.0 or err_fine <= 0.0 or n_fine <= n_coarse:
        return None
    return math.log(err_coarse / err_fine) / math.log(n_fine / n_coarse)


def format_convergence_table(reports: Sequence[ErrorReport]) -> str:
    """Aligned text table of errors and observed orders."""
    lines = [f"{'N':>6}  {'err(u)':>12} {'order':>6}  {'err(chi)':>12} {'order':>6}"]
    for r in reports:
        order_u = f"{r.order_u:6.2f}" if r.order_u is not None else "     -"
        order_chi = f"{r.order_chi:6.2f}" if r.order_chi is not None else "     -"
        lines.append(
            f"{r.n:>6}  {r.err_u:>12.3e} {order_u}  {r.err_chi:>12.3e} {order_chi}"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# File output
# ---------------------------------------------------------------------------

def _fmt(value: float) -> str:
    return f"{value:.17g}"


def write_snapshot(snapshot: Snapshot, path: str | Path) -> Path:
    """Write one snapshot as CSV; values round-trip bit-exactly."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as fh:
            fh.write(SNAPSHOT_HEADER + "\n")
            for j in range(len(snapshot.x)):
                row = (
                    snapshot.t,
                    snapshot.x[j],
                    snapshot.u[j],
                    snapshot.chi[j],
                    snapshot.v[j],
                    snapshot.w[j],
                    snapshot.ux[j],
                )
                fh.write(",".join(_fmt(val) for val in row) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write snapshot to {path}: {exc}") from exc
    return path


def read_snapshot(path: str | Path) -> Snapshot:
    """Read a snapshot CSV back into arrays (inverse of write_snapshot)."""
    rows = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != SNAPSHOT_HEADER:
            raise ValueError(f"unexpected snapshot header in {path}: {header!r}")
        for line in fh:
            rows.append([float(part) for part in line.strip().split(",")])
    cols = np.array(rows).T
    return Snapshot(
        t=float(cols[0][0]), x=cols[1], u=cols[2], chi=cols[3],
        v=cols[4], w=cols[5], ux=cols[6],
    )


def snapshot_filename(t: float) -> str:
    return f"snapshot_t{t:.6f}.csv"


def write_waterfall_csv(
    snapshots: Sequence[Snapshot], kappa: float, path: str | Path
) -> Path:
    """Stacked slope traces u_x + kappa*t, one block per snapshot time.

    The constant shift kappa*t only separates the traces visually; the raw
    u_x stays in the per-time snapshot files.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write("t,x,ux_shifted\n")
        for snap in snapshots:
            shifted = snap.ux + kappa * snap.t
            for j in range(len(snap.x)):
                fh.write(f"{_fmt(snap.t)},{_fmt(snap.x[j])},{_fmt(shifted[j])}\n")
    return path


def write_convergence_csv(reports: Sequence[ErrorReport], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write("n,err_u,order_u,err_chi,order_chi\n")
        for r in reports:
            order_u = _fmt(r.order_u) if r.order_u is not None else ""
            order_chi = _fmt(r.order_chi) if r.order_chi is not None else ""
            fh.write(f"{r.n},{_fmt(r.err_u)},{order_u},{_fmt(r.err_chi)},{order_chi}\n")
    return path
