"""Built-in experiment definitions ex1..ex4.

Each preset fixes the initial data (with closed-form derivatives), the
transport system, the flux, and the horizon t = 1:

  ex1  scalar, a = 1, upwind, g = sin(x)^{2k+2}          (smooth, band-limited)
  ex2  scalar, a = 1, upwind, g = |sin(x)|^{2k+1}        (kinked at 0 and pi)
  ex3  scalar, a = 1, upwind, g = (x(2pi-x)/(2pi))^{2k+2} (full Fourier tail)
  ex4  linearized isothermal Euler, Lax-Friedrichs M = 6,
       rho = sin(x)^6, u = (x(2pi-x)/4)^8, rho0 = u0 = 1, c = 5
"""
from __future__ import annotations

import numpy as np

from .errors import Problem
from .fields import AbsSinPowerField, FactoredBumpField, TrigField
from .solver import AdvectionSystem, FluxSpec

PRESET_NAMES = ("ex1", "ex2", "ex3", "ex4")


def euler_matrix(rho0: float = 1.0, u0: float = 1.0, c: float = 5.0) -> np.ndarray:
    """Linearized isothermal Euler flux Jacobian in (rho, u) variables."""
    return np.array([[u0, rho0], [c**2 / rho0, u0]])


def make_preset(
    name: str,
    k: int,
    rho0: float = 1.0,
    u0: float = 1.0,
    c: float = 5.0,
    M: float = 6.0,
    a: float = 1.0,
) -> Problem:
    """Instantiate a named experiment at polynomial degree k."""
    if name == "ex1":
        return Problem(
            name="ex1",
            fields=[TrigField.sin_power(2 * k + 2)],
            system=AdvectionSystem.scalar(a),
            flux=FluxSpec("upwind"),
            description=f"smooth data sin(x)^{2 * k + 2}, unit-speed upwind transport",
        )
    if name == "ex2":
        return Problem(
            name="ex2",
            fields=[AbsSinPowerField(2 * k + 1)],
            system=AdvectionSystem.scalar(a),
            flux=FluxSpec("upwind"),
            description=f"kinked data |sin(x)|^{2 * k + 1}: localized order loss at x = 0, pi",
        )
    if name == "ex3":
        return Problem(
            name="ex3",
            fields=[FactoredBumpField(2 * k + 2, 2.0 * np.pi)],
            system=AdvectionSystem.scalar(a),
            flux=FluxSpec("upwind"),
            profile_kind="transient",
            description="polynomial bump with a full Fourier tail; shows the "
                        "initialization-dependent transient",
        )
    if name == "ex4":
        return Problem(
            name="ex4",
            fields=[TrigField.sin_power(6), FactoredBumpField(8, 4.0)],
            system=AdvectionSystem.from_matrix(euler_matrix(rho0, u0, c)),
            flux=FluxSpec("lax_friedrichs", M=M),
            description=f"linearized isothermal Euler (rho0={rho0}, u0={u0}, c={c}); "
                        f"waves at speeds {u0 + c:g} and {u0 - c:g}, Lax-Friedrichs M={M}",
        )
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
