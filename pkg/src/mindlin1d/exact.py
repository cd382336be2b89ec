"""Closed-form trigonometric solutions of the coupled wave system.

Separable solutions u = U(t)*trig(omega*x), chi = X(t)*trig(omega*x) reduce
the two coupled PDEs to a pair of linear ODEs whose characteristic equation
is the biquadratic

    lambda^4 + S*lambda^2 + P = 0,
    S = (a1 + a3)*omega^2 + a5,
    P = omega^2 * [a1*a3*omega^2 + (a1*a5 - a2*a4)].

For admissible parameters all four roots are purely imaginary, +-i*xi and
+-i*eta, so every mode oscillates with the two frequencies xi > eta > 0.
Any finite superposition of modes is again a solution (the system is linear
and homogeneous).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .material import DerivedCoefficients

__all__ = [
    "Family",
    "ExactMode",
    "ExactSolution",
    "ExactFields",
    "characteristic_roots",
    "make_mode",
    "mode_time_amplitudes",
    "eval_solution",
]

_ROOT_RESIDUAL_TOL = 1e-10


class Family(Enum):
    """Spatial shape of a mode.

    SIN_COS: u ~ sin(omega*x), chi ~ cos(omega*x).
    COS_SIN: u ~ cos(omega*x), chi ~ sin(omega*x).
    """

    SIN_COS = "sincos"
    COS_SIN = "cossin"


def characteristic_roots(coeffs: DerivedCoefficients, omega: float) -> tuple[float, float]:
    """Temporal frequencies (xi, eta) of the mode biquadratic, xi >= eta > 0.

    Computed in the cancellation-safe form: the larger root from
    xi^2 = (S + sqrt(D))/2 and the smaller from the product eta^2 = P/xi^2.
    In the benchmark regime a2*a4 = 1e-4 makes D nearly the square of its
    leading part, so the naive (S - sqrt(D))/2 would lose most digits.
    """
    if omega == 0.0:
        raise ValueError("omega must be nonzero")
    omega2 = omega * omega
    s_coef = (coeffs.a1 + coeffs.a3) * omega2 + coeffs.a5
    p_coef = omega2 * (coeffs.a1 * coeffs.a3 * omega2 + (coeffs.a1 * coeffs.a5 - coeffs.a2 * coeffs.a4))
    disc = ((coeffs.a3 - coeffs.a1) * omega2 + coeffs.a5) ** 2 + 4.0 * coeffs.a2 * coeffs.a4 * omega2
    # a2*a4 > 0 for admissible parameters, so the roots cannot collide.
    assert disc > 0.0, "degenerate biquadratic: repeated temporal frequency"
    xi_sq = 0.5 * (s_coef + math.sqrt(disc))
    eta_sq = p_coef / xi_sq
    xi = math.sqrt(xi_sq)
    eta = math.sqrt(eta_sq)

    scale = xi_sq * xi_sq + s_coef * xi_sq + p_coef
    for root_sq in (xi_sq, eta_sq):
        residual = abs(root_sq * root_sq - s_coef * root_sq + p_coef)
        if residual > _ROOT_RESIDUAL_TOL * scale:
            raise ArithmeticError(
                f"characteristic root residual {residual / scale:.3e} exceeds tolerance"
            )
    return xi, eta


@dataclass(frozen=True)
class ExactMode:
    """A single trigonometric mode with cached roots and amplitude ratios.

    k1..k4 weight the four temporal basis functions cos(xi t), sin(xi t),
    cos(eta t), sin(eta t) in U(t).  `ratio_xi`/`ratio_eta` are the X/U
    amplitude ratios of the xi and eta branches for the SIN_COS family,
    (root^2 - a1*omega^2)/(a2*omega); the COS_SIN family uses their
    negatives (its amplitude relation carries the opposite sign).
    """

    family: Family
    omega: float
    k1: float
    k2: float
    k3: float
    k4: float
    xi: float
    eta: float
    ratio_xi: float
    ratio_eta: float


@dataclass(frozen=True)
class ExactSolution:
    """A superposition of modes sharing one coefficient set."""

    modes: tuple[ExactMode, ...]
    coeffs: DerivedCoefficients


def make_mode(
    family: Family,
    omega: float,
    k: tuple[float, float, float, float],
    coeffs: DerivedCoefficients,
) -> ExactMode:
    """Build a mode: compute its roots and cache the amplitude ratios."""
    xi, eta = characteristic_roots(coeffs, omega)
    a1w2 = coeffs.a1 * omega * omega
    a2w = coeffs.a2 * omega
    return ExactMode(
        family=family,
        omega=omega,
        k1=k[0], k2=k[1], k3=k[2], k4=k[3],
        xi=xi, eta=eta,
        ratio_xi=(xi * xi - a1w2) / a2w,
        ratio_eta=(eta * eta - a1w2) / a2w,
    )


def mode_time_amplitudes(mode: ExactMode, t: float) -> tuple[float, float, float, float]:
    """Temporal factors (U, X, U', X') of one mode at time t."""
    cos_xi = math.cos(mode.xi * t)
    sin_xi = math.sin(mode.xi * t)
    cos_eta = math.cos(mode.eta * t)
    sin_eta = math.sin(mode.eta * t)

    u_xi = mode.k1 * cos_xi + mode.k2 * sin_xi
    u_eta = mode.k3 * cos_eta + mode.k4 * sin_eta
    du_xi = mode.xi * (-mode.k1 * sin_xi + mode.k2 * cos_xi)
    du_eta = mode.eta * (-mode.k3 * sin_eta + mode.k4 * cos_eta)

    sign = 1.0 if mode.family is Family.SIN_COS else -1.0
    r_xi = sign * mode.ratio_xi
    r_eta = sign * mode.ratio_eta

    u_amp = u_xi + u_eta
    x_amp = r_xi * u_xi + r_eta * u_eta
    du_amp = du_xi + du_eta
    dx_amp = r_xi * du_xi + r_eta * du_eta
    return u_amp, x_amp, du_amp, dx_amp


@dataclass(frozen=True)
class ExactFields:
    """Pointwise field values and first derivatives of an exact solution."""

    u: np.ndarray
    chi: np.ndarray
    u_t: np.ndarray
    chi_t: np.ndarray
    u_x: np.ndarray
    chi_x: np.ndarray


def eval_solution(sol: ExactSolution, t: float, x: np.ndarray) -> ExactFields:
    """Evaluate u, chi and their exact t- and x-derivatives at time t.

    Sums over the modes of `sol`; derivatives are analytic term-wise
    derivatives, never finite differences.
    """
    x = np.asarray(x, dtype=float)
    u = np.zeros_like(x)
    chi = np.zeros_like(x)
    u_t = np.zeros_like(x)
    chi_t = np.zeros_like(x)
    u_x = np.zeros_like(x)
    chi_x = np.zeros_like(x)

    for mode in sol.modes:
        u_amp, x_amp, du_amp, dx_amp = mode_time_amplitudes(mode, t)
        sin_wx = np.sin(mode.omega * x)
        cos_wx = np.cos(mode.omega * x)
        if mode.family is Family.SIN_COS:
            u += u_amp * sin_wx
            u_t += du_amp * sin_wx
            u_x += u_amp * mode.omega * cos_wx
            chi += x_amp * cos_wx
            chi_t += dx_amp * cos_wx
            chi_x += -x_amp * mode.omega * sin_wx
        else:
            u += u_amp * cos_wx
            u_t += du_amp * cos_wx
            u_x += -u_amp * mode.omega * sin_wx
            chi += x_amp * sin_wx
            chi_t += dx_amp * sin_wx
            chi_x += x_amp * mode.omega * cos_wx

    return ExactFields(u=u, chi=chi, u_t=u_t, chi_t=chi_t, u_x=u_x, chi_x=chi_x)
