"""Boundary regimes: periodic, null inflow, and strain excitation.

Each field is one-way advective, so exactly one boundary value per field is
externally prescribed: u and chi at the right edge (they move left), v and w
at the left edge (they move right).  The unprescribed sides are outflow and
use zeroth-order extrapolation as a non-reflecting closure.

The strain-excitation regime drives the left boundary with a prescribed
strain pulse eps(t).  The slope equation for u is the only one containing
u_x, so a prescribed u_x(t, 0) = eps(t) converts into an inflow value for
the incoming invariant:

    v(t, 0-) = u_t(t, 0) - sqrt(a1(0))*eps(t) + gauge1(0)*u(t, 0)
               + gauge2(0)*chi(t, 0),

with u_t approximated by a backward difference of the boundary-cell value
stored at the previous accepted step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .riemann import GaugeFields, State
from .weno import GHOST, fill_ghosts

__all__ = [
    "RegimeKind",
    "BoundaryRegime",
    "BoundaryHistory",
    "excitation_eps",
    "inflow_v",
    "apply_regime",
]


def excitation_eps(t: float) -> float:
    """Smooth compactly supported strain pulse on 0 <= t <= 0.04.

    (1 + cos(pi*(1 - 50*t)))/2 inside the support, 0 outside; it vanishes
    with its first derivative at both ends and peaks at 1 for t = 0.02.
    """
    if 0.0 <= t <= 0.04:
        return 0.5 * (1.0 + math.cos(math.pi * (1.0 - 50.0 * t)))
    return 0.0


class RegimeKind(Enum):
    PERIODIC = "periodic"
    NULL_INFLOW = "null_inflow"
    STRAIN_EXCITATION = "strain"


@dataclass
class BoundaryRegime:
    """Boundary regime descriptor; `excitation` only applies to strain runs."""

    kind: RegimeKind
    excitation: Callable[[float], float] = excitation_eps


@dataclass
class BoundaryHistory:
    """Boundary-cell values retained across accepted steps for inflow_v.

    Updated by the driver after each accepted step; frozen during the
    Runge-Kutta stages of the following step.
    """

    u_prev: float | None = None
    u_curr: float = 0.0
    chi_curr: float = 0.0
    dt_prev: float | None = None

    def advance(self, u_boundary: float, chi_boundary: float, dt: float) -> None:
        self.u_prev = self.u_curr
        self.u_curr = float(u_boundary)
        self.chi_curr = float(chi_boundary)
        self.dt_prev = dt


def inflow_v(
    u_prev: float | None,
    u_curr: float,
    dt: float | None,
    chi_curr: float,
    gauge1_0: float,
    gauge2_0: float,
    sqrt_a1_0: float,
    eps: float,
) -> float:
    """Inflow value v(t, 0-) produced by a prescribed boundary strain.

    u_t is the backward difference (u_curr - u_prev)/dt of stored
    boundary-cell values; on the first step (no history) it is taken as 0,
    which is exact for rest initial data.
    """
    if dt is not None and dt == 0.0:
        raise ValueError("dt must be nonzero for the u_t backward difference")
    if u_prev is None or dt is None:
        u_t = 0.0
    else:
        u_t = (u_curr - u_prev) / dt
    return u_t - sqrt_a1_0 * eps + gauge1_0 * u_curr + gauge2_0 * chi_curr


def apply_regime(
    s: State,
    regime: BoundaryRegime,
    t: float,
    gauge: GaugeFields,
    history: BoundaryHistory | None = None,
) -> np.ndarray:
    """Ghost-filled (4, n + 2*GHOST) array for all four fields at time t.

    Periodic wraps every field.  Null inflow prescribes zero on each field's
    inflow side (u, chi at the right; v, w at the left) and extrapolates the
    outflow sides.  Strain excitation additionally sets the v inflow ghosts
    from inflow_v, with the pulse evaluated at the stage's effective time t.
    """
    n = s.grid.n
    padded = np.empty((4, n + 2 * GHOST))

    if regime.kind is RegimeKind.PERIODIC:
        rules = [("periodic", "periodic")] * 4
    elif regime.kind is RegimeKind.NULL_INFLOW:
        rules = [("outflow", 0.0), ("outflow", 0.0), (0.0, "outflow"), (0.0, "outflow")]
    elif regime.kind is RegimeKind.STRAIN_EXCITATION:
        if history is None:
            history = BoundaryHistory(u_curr=float(s.u[0]), chi_curr=float(s.chi[0]))
        v_in = inflow_v(
            u_prev=history.u_prev,
            u_curr=history.u_curr,
            dt=history.dt_prev,
            chi_curr=history.chi_curr,
            gauge1_0=float(gauge.gauge1[0]),
            gauge2_0=float(gauge.gauge2[0]),
            sqrt_a1_0=float(gauge.sqrt_a1[0]),
            eps=regime.excitation(t),
        )
        rules = [("outflow", 0.0), ("outflow", 0.0), (v_in, "outflow"), (0.0, "outflow")]
    else:
        raise ValueError(f"unknown boundary regime {regime.kind!r}")

    for row, (left, right) in enumerate(rules):
        padded[row] = fill_ghosts(s.fields[row], left, right).values
    return padded
