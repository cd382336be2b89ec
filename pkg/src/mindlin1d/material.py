"""Material parameters, positivity checks, derived coefficients, and energy.

The model couples a macroscopic displacement u with a microdeformation chi.
Kinetic density is (rho*u_t^2 + I_mu*chi_t^2)/2 and potential density is

    W = gamma/2 * u_x^2 + A * u_x * chi + B/2 * chi^2 + C/2 * chi_x^2.

Requiring W to be strictly positive definite forces gamma, B, C > 0 and
gamma*B - A^2 > 0; those inequalities are what `validate_params` checks.
Parameters may also vary with x through a smoothed two-material bump profile
(see `ParameterProfile`), in which case every pointwise sample must satisfy
the same inequalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MaterialParams",
    "DerivedCoefficients",
    "ParameterProfile",
    "SampledProfile",
    "InvalidParameterError",
    "validate_params",
    "require_valid",
    "derive_coefficients",
    "bump_profile",
    "bump_profile_dx",
    "bump_profile_dxx",
    "sample_profile",
    "total_energy",
]

# Two-material bump: logistic rise at x = 0.5, logistic fall at x = 0.7,
# both with slope scale 400 (nearly a step on unit-interval grids).
BUMP_RISE = 0.5
BUMP_FALL = 0.7
BUMP_SLOPE = 400.0

# exp() overflows float64 near 709; clamping saturates the logistic at 0/1.
_EXP_CLAMP = 700.0


class InvalidParameterError(ValueError):
    """Raised when parameters fail the positive-definiteness conditions."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid material parameters: " + "; ".join(violations))


@dataclass(frozen=True)
class MaterialParams:
    """The six physical constants of the model (arbitrary units).

    Attributes:
        rho: mass density, > 0
        i_mu: micro-inertia, > 0
        gamma: macroscopic stiffness, > 0
        a_coupling: macro-micro coupling A, nonzero with gamma*b_micro > A^2
        b_micro: microstiffness B, > 0
        c_micro: micro gradient stiffness C, > 0
    """

    rho: float
    i_mu: float
    gamma: float
    a_coupling: float
    b_micro: float
    c_micro: float


@dataclass(frozen=True)
class DerivedCoefficients:
    """Reduced coefficients of the displacement/microdeformation system.

    a1 = gamma/rho, a2 = A/rho, a3 = C/i_mu, a4 = A/i_mu, a5 = B/i_mu.
    c1, c2 are the coupling constants that remove the u_x, chi_x terms from
    the evolution equations of the two incoming Riemann variables:
    c1 = -a2/(sqrt(a1)+sqrt(a3)), c2 = a4/(sqrt(a1)+sqrt(a3)).
    """

    a1: float
    a2: float
    a3: float
    a4: float
    a5: float
    c1: float
    c2: float

    @property
    def sqrt_a1(self) -> float:
        return math.sqrt(self.a1)

    @property
    def sqrt_a3(self) -> float:
        return math.sqrt(self.a3)

    @property
    def max_speed(self) -> float:
        """Largest characteristic speed, max(sqrt(a1), sqrt(a3))."""
        return max(self.sqrt_a1, self.sqrt_a3)


def validate_params(p: MaterialParams) -> list[str]:
    """Check the positivity inequalities; return the violated ones by name.

    An empty list means the parameter set is admissible.  Non-finite entries
    are reported with a distinct "non-finite" verdict and suppress the
    inequality checks (which would be meaningless).
    """
    fields = {
        "rho": p.rho,
        "i_mu": p.i_mu,
        "gamma": p.gamma,
        "a_coupling": p.a_coupling,
        "b_micro": p.b_micro,
        "c_micro": p.c_micro,
    }
    nonfinite = [f"non-finite: {name}" for name, val in fields.items() if not math.isfinite(val)]
    if nonfinite:
        return nonfinite

    violations = []
    if not p.rho > 0.0:
        violations.append("rho > 0")
    if not p.i_mu > 0.0:
        violations.append("i_mu > 0")
    if not p.gamma > 0.0:
        violations.append("gamma > 0")
    if not p.b_micro > 0.0:
        violations.append("b_micro > 0")
    if not p.c_micro > 0.0:
        violations.append("c_micro > 0")
    if not p.gamma * p.b_micro - p.a_coupling**2 > 0.0:
        violations.append("gamma*b_micro - a_coupling^2 > 0")
    if p.a_coupling == 0.0:
        violations.append("a_coupling != 0")
    return violations


def require_valid(p: MaterialParams) -> None:
    """Raise InvalidParameterError if `p` fails validation."""
    violations = validate_params(p)
    if violations:
        raise InvalidParameterError(violations)


def derive_coefficients(p: MaterialParams) -> DerivedCoefficients:
    """Compute the reduced coefficients a1..a5 and couplings c1, c2."""
    require_valid(p)
    a1 = p.gamma / p.rho
    a2 = p.a_coupling / p.rho
    a3 = p.c_micro / p.i_mu
    a4 = p.a_coupling / p.i_mu
    a5 = p.b_micro / p.i_mu
    speed_sum = math.sqrt(a1) + math.sqrt(a3)
    return DerivedCoefficients(
        a1=a1, a2=a2, a3=a3, a4=a4, a5=a5,
        c1=-a2 / speed_sum, c2=a4 / speed_sum,
    )


# ---------------------------------------------------------------------------
# Spatially varying parameters
# ---------------------------------------------------------------------------

def _logistic(z: np.ndarray) -> np.ndarray:
    z = np.clip(z, -_EXP_CLAMP, _EXP_CLAMP)
    return 1.0 / (1.0 + np.exp(-z))


def bump_profile(x: np.ndarray, h: float) -> np.ndarray:
    """Bump psi(x): h * [logistic rise at 0.5 - logistic fall at 0.7]."""
    x = np.asarray(x, dtype=float)
    s_rise = _logistic(BUMP_SLOPE * (x - BUMP_RISE))
    s_fall = _logistic(BUMP_SLOPE * (x - BUMP_FALL))
    return h * (s_rise - s_fall)


def bump_profile_dx(x: np.ndarray, h: float) -> np.ndarray:
    """Closed-form d(psi)/dx (sum of two logistic derivatives)."""
    x = np.asarray(x, dtype=float)
    s_rise = _logistic(BUMP_SLOPE * (x - BUMP_RISE))
    s_fall = _logistic(BUMP_SLOPE * (x - BUMP_FALL))
    return h * BUMP_SLOPE * (s_rise * (1.0 - s_rise) - s_fall * (1.0 - s_fall))


def bump_profile_dxx(x: np.ndarray, h: float) -> np.ndarray:
    """Closed-form d2(psi)/dx2."""
    x = np.asarray(x, dtype=float)
    s_rise = _logistic(BUMP_SLOPE * (x - BUMP_RISE))
    s_fall = _logistic(BUMP_SLOPE * (x - BUMP_FALL))
    return h * BUMP_SLOPE**2 * (
        s_rise * (1.0 - s_rise) * (1.0 - 2.0 * s_rise)
        - s_fall * (1.0 - s_fall) * (1.0 - 2.0 * s_fall)
    )


@dataclass(frozen=True)
class ParameterProfile:
    """x-dependent parameters: every field scales as base * (1 + psi(x)).

    `bump_height` is the dimensionless bump amplitude h; h = 0 reduces to the
    constant-parameter model exactly.
    """

    base: MaterialParams
    bump_height: float = 0.0


@dataclass(frozen=True)
class SampledProfile:
    """Parameter fields sampled on a grid, with analytic x-derivatives.

    All six parameters share the common factor (1 + psi), so each field and
    its first two derivatives follow from `scale` = 1 + psi, `dscale` = psi',
    `d2scale` = psi''.  The derivatives come from the closed-form logistic
    derivatives of psi, never from finite differences: the bump is nearly a
    step (slope scale 400), which coarse-grid differencing would corrupt.
    """

    base: MaterialParams
    x: np.ndarray
    scale: np.ndarray
    dscale: np.ndarray
    d2scale: np.ndarray

    # -- parameter fields and their derivatives --

    @property
    def rho(self) -> np.ndarray:
        return self.base.rho * self.scale

    @property
    def i_mu(self) -> np.ndarray:
        return self.base.i_mu * self.scale

    @property
    def gamma(self) -> np.ndarray:
        return self.base.gamma * self.scale

    @property
    def a_coupling(self) -> np.ndarray:
        return self.base.a_coupling * self.scale

    @property
    def b_micro(self) -> np.ndarray:
        return self.base.b_micro * self.scale

    @property
    def c_micro(self) -> np.ndarray:
        return self.base.c_micro * self.scale

    @property
    def drho(self) -> np.ndarray:
        return self.base.rho * self.dscale

    @property
    def d2rho(self) -> np.ndarray:
        return self.base.rho * self.d2scale

    @property
    def di_mu(self) -> np.ndarray:
        return self.base.i_mu * self.dscale

    @property
    def d2i_mu(self) -> np.ndarray:
        return self.base.i_mu * self.d2scale

    @property
    def dgamma(self) -> np.ndarray:
        return self.base.gamma * self.dscale

    @property
    def d2gamma(self) -> np.ndarray:
        return self.base.gamma * self.d2scale

    @property
    def da_coupling(self) -> np.ndarray:
        return self.base.a_coupling * self.dscale

    @property
    def d2a_coupling(self) -> np.ndarray:
        return self.base.a_coupling * self.d2scale

    @property
    def dc_micro(self) -> np.ndarray:
        return self.base.c_micro * self.dscale

    @property
    def d2c_micro(self) -> np.ndarray:
        return self.base.c_micro * self.d2scale

    # -- reduced coefficient fields --

    @property
    def a1(self) -> np.ndarray:
        return self.gamma / self.rho

    @property
    def a2(self) -> np.ndarray:
        return self.a_coupling / self.rho

    @property
    def a3(self) -> np.ndarray:
        return self.c_micro / self.i_mu

    @property
    def a4(self) -> np.ndarray:
        return self.a_coupling / self.i_mu

    @property
    def a5(self) -> np.ndarray:
        return self.b_micro / self.i_mu

    @property
    def b2(self) -> np.ndarray:
        """Source coefficient (dA/dx)/rho of the variable-parameter system."""
        return self.da_coupling / self.rho

    @property
    def da1(self) -> np.ndarray:
        return (self.dgamma * self.rho - self.gamma * self.drho) / self.rho**2

    @property
    def da2(self) -> np.ndarray:
        return (self.da_coupling * self.rho - self.a_coupling * self.drho) / self.rho**2

    @property
    def da3(self) -> np.ndarray:
        return (self.dc_micro * self.i_mu - self.c_micro * self.di_mu) / self.i_mu**2

    @property
    def da4(self) -> np.ndarray:
        return (self.da_coupling * self.i_mu - self.a_coupling * self.di_mu) / self.i_mu**2


def _check_uniform_grid(x: np.ndarray) -> None:
    if x.ndim != 1 or x.size < 2:
        raise ValueError("grid must be a 1-D array with at least 2 points")
    steps = np.diff(x)
    if not np.all(steps > 0.0):
        raise ValueError("grid must be strictly increasing")
    dx = x[1] - x[0]
    if not np.allclose(steps, dx, rtol=1e-12, atol=0.0):
        raise ValueError("grid must be uniformly spaced")


def sample_profile(prof: ParameterProfile, x: np.ndarray) -> SampledProfile:
    """Sample a profile on a uniform grid and validate it pointwise.

    Raises InvalidParameterError (reporting the offending x) if any sampled
    point violates the parameter inequalities.
    """
    x = np.asarray(x, dtype=float)
    _check_uniform_grid(x)
    require_valid(prof.base)

    scale = 1.0 + bump_profile(x, prof.bump_height)
    sampled = SampledProfile(
        base=prof.base,
        x=x,
        scale=scale,
        dscale=bump_profile_dx(x, prof.bump_height),
        d2scale=bump_profile_dxx(x, prof.bump_height),
    )

    bad = ~(
        (sampled.rho > 0.0)
        & (sampled.i_mu > 0.0)
        & (sampled.gamma > 0.0)
        & (sampled.b_micro > 0.0)
        & (sampled.c_micro > 0.0)
        & (sampled.gamma * sampled.b_micro - sampled.a_coupling**2 > 0.0)
        & (sampled.a_coupling != 0.0)
    )
    if np.any(bad):
        i = int(np.argmax(bad))
        raise InvalidParameterError([f"pointwise inequality violated at x = {x[i]!r}"])
    return sampled


# ---------------------------------------------------------------------------
# Energy diagnostic
# ---------------------------------------------------------------------------

def total_energy(
    u: np.ndarray,
    u_t: np.ndarray,
    u_x: np.ndarray,
    chi: np.ndarray,
    chi_t: np.ndarray,
    chi_x: np.ndarray,
    params: MaterialParams | SampledProfile,
    dx: float,
) -> float:
    """Grid quadrature of kinetic + potential energy density.

    `params` may be constant (MaterialParams) or sampled fields
    (SampledProfile); the density formula broadcasts over both.  The
    midpoint rule on cell centers doubles as the rectangle rule for periodic
    data (spectrally accurate there) and is second order on bounded domains.
    Energy is only a drift diagnostic, so second order suffices.
    """
    fields = (u, u_t, u_x, chi, chi_t, chi_x)
    n = len(u)
    if any(len(f) != n for f in fields):
        raise ValueError("energy fields must all have the same length")
    kinetic = 0.5 * params.rho * u_t**2 + 0.5 * params.i_mu * chi_t**2
    potential = (
        0.5 * params.gamma * u_x**2
        + params.a_coupling * u_x * chi
        + 0.5 * params.b_micro * chi**2
        + 0.5 * params.c_micro * chi_x**2
    )
    return float(dx * np.sum(kinetic + potential))
