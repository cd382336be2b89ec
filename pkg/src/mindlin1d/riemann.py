"""First-order Riemann-invariant form of the coupled wave system.

The second-order system for (u, chi) is rewritten in the four unknowns
(u, chi, v, w), where

    v = u_t   - sqrt(a1)*u_x   + gauge1*u + gauge2*chi,
    w = chi_t - sqrt(a3)*chi_x + gauge3*u + gauge4*chi.

Each evolution equation then carries a single signed characteristic speed
(u, chi move left at -sqrt(a1), -sqrt(a3); v, w move right), which makes
upwinding and boundary assignment unambiguous.  The gauge coefficients
(gauge1..gauge4, the lower-case phi functions of the variable-parameter
derivation) are chosen so that no u_x or chi_x terms survive in the v, w
equations; the source coefficients (source1..source4, the upper-case Phi
functions) collect the zeroth-order couplings that the elimination leaves
behind.  With constant parameters the gauge reduces to gauge1 = gauge4 = 0,
gauge2 = c1, gauge3 = c2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .material import DerivedCoefficients, SampledProfile

__all__ = [
    "Grid",
    "State",
    "GaugeFields",
    "forward_transform",
    "inverse_transform",
    "build_gauge_constant",
    "build_gauge_variable",
    "rhs",
]


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered grid: n cells on [0, length]."""

    n: int
    length: float = 1.0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"grid needs at least 2 cells, got {self.n}")
        if not self.length > 0.0:
            raise ValueError("grid length must be positive")

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def x(self) -> np.ndarray:
        """Cell-center coordinates (j + 1/2)*dx."""
        return (np.arange(self.n) + 0.5) * self.dx


@dataclass
class State:
    """The four evolved fields stacked as rows of one (4, n) array.

    Row order: u, chi, v, w.  Stacking keeps the Runge-Kutta convex
    combinations to single array expressions.
    """

    fields: np.ndarray
    grid: Grid

    def __post_init__(self):
        self.fields = np.asarray(self.fields, dtype=float)
        if self.fields.shape != (4, self.grid.n):
            raise ValueError(
                f"state fields must have shape (4, {self.grid.n}), got {self.fields.shape}"
            )

    @property
    def u(self) -> np.ndarray:
        return self.fields[0]

    @property
    def chi(self) -> np.ndarray:
        return self.fields[1]

    @property
    def v(self) -> np.ndarray:
        return self.fields[2]

    @property
    def w(self) -> np.ndarray:
        return self.fields[3]

    @classmethod
    def zeros(cls, grid: Grid) -> "State":
        return cls(np.zeros((4, grid.n)), grid)

    @classmethod
    def from_fields(cls, u, chi, v, w, grid: Grid) -> "State":
        return cls(np.stack([u, chi, v, w]), grid)

    def copy(self) -> "State":
        return State(self.fields.copy(), self.grid)


@dataclass(frozen=True)
class GaugeFields:
    """Gauge/source coefficients and characteristic speeds on the grid.

    gauge1..gauge4 multiply (u, chi) inside the definitions of v and w;
    source1..source4 are the zeroth-order couplings in the v, w equations.
    Constant parameters give gauge1 = gauge4 = 0, gauge2 = c1, gauge3 = c2,
    source1 = -c1*c2, source2 = source3 = 0, source4 = -(c1*c2 + a5).
    """

    gauge1: np.ndarray
    gauge2: np.ndarray
    gauge3: np.ndarray
    gauge4: np.ndarray
    source1: np.ndarray
    source2: np.ndarray
    source3: np.ndarray
    source4: np.ndarray
    sqrt_a1: np.ndarray
    sqrt_a3: np.ndarray

    @property
    def max_speed(self) -> float:
        return float(np.max(np.maximum(self.sqrt_a1, self.sqrt_a3)))


def _check_lengths(*fields: np.ndarray) -> int:
    n = len(fields[0])
    if any(len(f) != n for f in fields):
        raise ValueError("field lengths do not match")
    return n


def forward_transform(
    u: np.ndarray,
    chi: np.ndarray,
    u_t: np.ndarray,
    chi_t: np.ndarray,
    u_x: np.ndarray,
    chi_x: np.ndarray,
    gauge: GaugeFields,
    grid: Grid,
) -> State:
    """Physical description (u, chi, u_t, chi_t) -> invariant state.

    Spatial derivatives are supplied by the caller: analytic ones when the
    data comes from an exact solution, discrete ones in production.
    """
    _check_lengths(u, chi, u_t, chi_t, u_x, chi_x)
    v = u_t - gauge.sqrt_a1 * u_x + gauge.gauge1 * u + gauge.gauge2 * chi
    w = chi_t - gauge.sqrt_a3 * chi_x + gauge.gauge3 * u + gauge.gauge4 * chi
    return State.from_fields(u.copy(), chi.copy(), v, w, grid)


def inverse_transform(
    s: State,
    u_x: np.ndarray,
    chi_x: np.ndarray,
    gauge: GaugeFields,
) -> tuple[np.ndarray, np.ndarray]:
    """Recover (u_t, chi_t) from the invariant state; exact algebraic inverse."""
    _check_lengths(s.u, u_x, chi_x)
    u_t = gauge.sqrt_a1 * u_x - gauge.gauge1 * s.u - gauge.gauge2 * s.chi + s.v
    chi_t = gauge.sqrt_a3 * chi_x - gauge.gauge3 * s.u - gauge.gauge4 * s.chi + s.w
    return u_t, chi_t


def _assemble_gauge(
    sqrt_a1: np.ndarray,
    sqrt_a3: np.ndarray,
    a2: np.ndarray,
    a4: np.ndarray,
    a5: np.ndarray,
    b2: np.ndarray,
    gauge1: np.ndarray,
    gauge4: np.ndarray,
    dgauge1: np.ndarray,
    dgauge4: np.ndarray,
    dgauge2: np.ndarray,
    dgauge3: np.ndarray,
) -> GaugeFields:
    """Shared assembly of gauge2/gauge3 and the four source coefficients."""
    speed_sum = sqrt_a1 + sqrt_a3
    gauge2 = -a2 / speed_sum
    gauge3 = a4 / speed_sum
    # + 0.0 normalizes -0.0 from zero derivative fields.
    source1 = sqrt_a1 * dgauge1 - gauge1**2 - gauge2 * gauge3 + 0.0
    source2 = sqrt_a1 * dgauge2 + b2 - gauge1 * gauge2 - gauge2 * gauge4 + 0.0
    source3 = sqrt_a3 * dgauge3 - gauge3 * gauge1 - gauge4 * gauge3 + 0.0
    source4 = sqrt_a3 * dgauge4 - a5 - gauge3 * gauge2 - gauge4**2 + 0.0
    return GaugeFields(
        gauge1=gauge1 + 0.0,
        gauge2=gauge2,
        gauge3=gauge3,
        gauge4=gauge4 + 0.0,
        source1=source1,
        source2=source2,
        source3=source3,
        source4=source4,
        sqrt_a1=sqrt_a1,
        sqrt_a3=sqrt_a3,
    )


def build_gauge_constant(coeffs: DerivedCoefficients, grid: Grid) -> GaugeFields:
    """Gauge fields for constant parameters (all derivative terms vanish)."""
    n = grid.n

    def const(value: float) -> np.ndarray:
        return np.full(n, value)

    zeros = np.zeros(n)
    return _assemble_gauge(
        sqrt_a1=const(np.sqrt(coeffs.a1)),
        sqrt_a3=const(np.sqrt(coeffs.a3)),
        a2=const(coeffs.a2),
        a4=const(coeffs.a4),
        a5=const(coeffs.a5),
        b2=zeros,
        gauge1=zeros,
        gauge4=zeros,
        dgauge1=zeros,
        dgauge4=zeros,
        dgauge2=zeros,
        dgauge3=zeros,
    )


def build_gauge_variable(profile: SampledProfile) -> GaugeFields:
    """Gauge fields for x-dependent parameters.

    gauge1 = -(d/dx)[rho*sqrt(a1)]/(2*rho) and gauge4 the analogue with
    i_mu, sqrt(a3).  All the gauge derivatives feeding the source
    coefficients are analytic compositions of the profile's closed-form
    derivatives; nested numerical differentiation is forbidden here because
    the bump's slope scale (400) makes it inaccurate on coarse grids.
    """
    a1, a3 = profile.a1, profile.a3
    sqrt_a1 = np.sqrt(a1)
    sqrt_a3 = np.sqrt(a3)
    da1, da2, da3, da4 = profile.da1, profile.da2, profile.da3, profile.da4
    rho, drho, d2rho = profile.rho, profile.drho, profile.d2rho
    i_mu, di_mu, d2i_mu = profile.i_mu, profile.di_mu, profile.d2i_mu

    # g1 = rho*sqrt(a1) = sqrt(rho*gamma); g3 = i_mu*sqrt(a3) = sqrt(i_mu*C).
    dsqrt_a1 = da1 / (2.0 * sqrt_a1)
    dsqrt_a3 = da3 / (2.0 * sqrt_a3)
    dg1 = drho * sqrt_a1 + rho * dsqrt_a1
    dg3 = di_mu * sqrt_a3 + i_mu * dsqrt_a3

    # Second derivatives of a1 = gamma/rho and a3 = C/i_mu (quotient rule
    # differentiated once more).
    d2a1 = (
        (profile.d2gamma * rho - profile.gamma * d2rho) / rho**2
        - 2.0 * drho * (profile.dgamma * rho - profile.gamma * drho) / rho**3
    )
    d2a3 = (
        (profile.d2c_micro * i_mu - profile.c_micro * d2i_mu) / i_mu**2
        - 2.0 * di_mu * (profile.dc_micro * i_mu - profile.c_micro * di_mu) / i_mu**3
    )
    d2sqrt_a1 = d2a1 / (2.0 * sqrt_a1) - da1**2 / (4.0 * a1 * sqrt_a1)
    d2sqrt_a3 = d2a3 / (2.0 * sqrt_a3) - da3**2 / (4.0 * a3 * sqrt_a3)
    d2g1 = d2rho * sqrt_a1 + 2.0 * drho * dsqrt_a1 + rho * d2sqrt_a1
    d2g3 = d2i_mu * sqrt_a3 + 2.0 * di_mu * dsqrt_a3 + i_mu * d2sqrt_a3

    gauge1 = -dg1 / (2.0 * rho)
    gauge4 = -dg3 / (2.0 * i_mu)
    dgauge1 = -(d2g1 * rho - dg1 * drho) / (2.0 * rho**2)
    dgauge4 = -(d2g3 * i_mu - dg3 * di_mu) / (2.0 * i_mu**2)

    speed_sum = sqrt_a1 + sqrt_a3
    dspeed_sum = dsqrt_a1 + dsqrt_a3
    dgauge2 = (-da2 * speed_sum + profile.a2 * dspeed_sum) / speed_sum**2
    dgauge3 = (da4 * speed_sum - profile.a4 * dspeed_sum) / speed_sum**2

    return _assemble_gauge(
        sqrt_a1=sqrt_a1,
        sqrt_a3=sqrt_a3,
        a2=profile.a2,
        a4=profile.a4,
        a5=profile.a5,
        b2=profile.b2,
        gauge1=gauge1,
        gauge4=gauge4,
        dgauge1=dgauge1,
        dgauge4=dgauge4,
        dgauge2=dgauge2,
        dgauge3=dgauge3,
    )


def rhs(
    s: State,
    gauge: GaugeFields,
    dudx: np.ndarray,
    dchidx: np.ndarray,
    dvdx: np.ndarray,
    dwdx: np.ndarray,
) -> State:
    """Semidiscrete right-hand side given upwinded spatial derivatives.

    The caller supplies the derivative fields (upwind convention: u, chi use
    the +sqrt(a) stencil, v, w the -sqrt(a) stencil), so the same algebra
    serves analytic verification and production stepping.  By construction
    the v, w equations contain no u_x or chi_x terms.
    """
    _check_lengths(s.u, dudx, dchidx, dvdx, dwdx)
    u, chi, v, w = s.u, s.chi, s.v, s.w
    du = gauge.sqrt_a1 * dudx - gauge.gauge1 * u - gauge.gauge2 * chi + v
    dchi = gauge.sqrt_a3 * dchidx - gauge.gauge3 * u - gauge.gauge4 * chi + w
    dv = (
        -gauge.sqrt_a1 * dvdx
        + gauge.source1 * u
        + gauge.source2 * chi
        + gauge.gauge1 * v
        + gauge.gauge2 * w
    )
    dw = (
        -gauge.sqrt_a3 * dwdx
        + gauge.source3 * u
        + gauge.source4 * chi
        + gauge.gauge3 * v
        + gauge.gauge4 * w
    )
    return State.from_fields(du, dchi, dv, dw, s.grid)
