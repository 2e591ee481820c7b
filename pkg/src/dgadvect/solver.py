"""Semi-discrete DG transport operator and explicit Runge-Kutta integration.

The right-hand side couples neighbouring cells only through interface
fluxes: the scalar upwind trace, or the Lax-Friedrichs flux

    F*(u-, u+) = (f(u-) + f(u+))/2 - (M/2)(u+ - u-)

for systems. Volume integrals of polynomial integrands are exact via the
precomputed stiffness pairing, so the operator is spectrally identical to
the per-mode amplification matrices in `symbol`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import stiffness_pairing
from .projections import DGState


class FluxConfigError(ValueError):
    """Flux specification incompatible with the problem."""


@dataclass(frozen=True)
class FluxSpec:
    """Numerical flux choice: 'upwind' (scalar only) or 'lax_friedrichs'."""

    kind: str
    M: float | None = None

    def __post_init__(self):
        if self.kind not in ("upwind", "lax_friedrichs"):
            raise FluxConfigError(f"unknown flux kind {self.kind!r}")
        if self.kind == "lax_friedrichs":
            if self.M is None or self.M <= 0:
                raise FluxConfigError("lax_friedrichs flux requires M > 0")


def upwind() -> FluxSpec:
    return FluxSpec("upwind")


def lax_friedrichs(M: float) -> FluxSpec:
    return FluxSpec("lax_friedrichs", M=M)


@dataclass(frozen=True)
class AdvectionSystem:
    """u_t + A u_x = 0 with real diagonalizable A.

    right_vectors columns are the characteristic directions; left_vectors
    is their inverse, so left @ u gives characteristic variables.
    """

    matrix: np.ndarray
    speeds: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray

    @property
    def n_components(self) -> int:
        return self.matrix.shape[0]

    @property
    def max_speed(self) -> float:
        return float(np.max(np.abs(self.speeds)))

    @staticmethod
    def scalar(a: float) -> "AdvectionSystem":
        return AdvectionSystem(
            matrix=np.array([[float(a)]]),
            speeds=np.array([float(a)]),
            right_vectors=np.array([[1.0]]),
            left_vectors=np.array([[1.0]]),
        )

    @staticmethod
    def from_matrix(A) -> "AdvectionSystem":
        A = np.asarray(A, dtype=float)
        vals, vecs = np.linalg.eig(A)
        scale = max(np.max(np.abs(vals)), 1.0)
        if np.max(np.abs(vals.imag)) > 1e-12 * scale:
            raise ValueError("system matrix is not hyperbolic (complex wave speeds)")
        vals = vals.real
        order = np.argsort(-vals)  # fastest right-going wave first
        vals, vecs = vals[order], vecs[:, order].real
        # deterministic normalization: largest entry of each column is +1
        for p in range(vecs.shape[1]):
            pivot = vecs[np.argmax(np.abs(vecs[:, p])), p]
            vecs[:, p] /= pivot
        left = np.linalg.inv(vecs)
        recon = vecs @ np.diag(vals) @ left
        if np.max(np.abs(recon - A)) > 1e-12 * max(np.max(np.abs(A)), 1.0):
            raise ValueError("eigen-decomposition of the system matrix failed")
        return AdvectionSystem(A, vals, vecs, left)


@dataclass(frozen=True)
class RKTableau:
    """Explicit Runge-Kutta tableau (a strictly lower triangular)."""

    name: str
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def validate(self):
        if np.max(np.abs(self.a.sum(axis=1) - self.c)) > 1e-13:
            raise ValueError(f"tableau {self.name}: row sums do not match c")
        for p in range(5):
            if abs(self.b @ self.c**p - 1.0 / (p + 1)) > 1e-13:
                raise ValueError(f"tableau {self.name}: quadrature condition p={p} fails")


def _fehlberg5() -> RKTableau:
    a = np.zeros((6, 6))
    a[1, 0] = 1 / 4
    a[2, :2] = [3 / 32, 9 / 32]
    a[3, :3] = [1932 / 2197, -7200 / 2197, 7296 / 2197]
    a[4, :4] = [439 / 216, -8.0, 3680 / 513, -845 / 4104]
    a[5, :5] = [-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40]
    b = np.array([16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55])
    c = np.array([0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2])
    return RKTableau("rkf45", a, b, c)


#: registered tableaus; the six-stage Fehlberg scheme propagated with its
#: fifth-order weights is the default
RK_SCHEMES: dict[str, RKTableau] = {"rkf45": _fehlberg5()}


def register_tableau(tab: RKTableau):
    tab.validate()
    RK_SCHEMES[tab.name] = tab


@dataclass(frozen=True)
class IntegratorConfig:
    t_final: float
    cfl: float = 0.1
    rk_scheme: str = "rkf45"


def _rhs_coeffs(
    coeffs: np.ndarray,
    system: AdvectionSystem,
    flux: FluxSpec,
    tables,
) -> np.ndarray:
    """Time derivative of the coefficient tensor (N, c, k+1)."""
    D, signs, fac, W_minus, W_plus = tables
    u_right = coeffs.sum(axis=2)  # u at x_{j+1/2}^-
    u_left = coeffs @ signs       # u at x_{j-1/2}^+
    u_plus = np.roll(u_left, -1, axis=0)  # u at x_{j+1/2}^+

    if flux.kind == "upwind":
        a = system.speeds[0]
        F = a * (u_right if a >= 0 else u_plus)
        Ac = a * coeffs
    else:
        # F* = W- u^- + W+ u^+ with W± = (A ± M I)/2; at M = |a| the scalar
        # W+ vanishes and the flux reduces to upwind exactly
        F = u_right @ W_minus.T + u_plus @ W_plus.T
        Ac = np.einsum("pc,jcn->jpn", system.matrix, coeffs)

    vol = np.einsum("sn,jpn->jps", D, Ac)
    F_minus = np.roll(F, 1, axis=0)
    out = vol + signs[None, None, :] * F_minus[:, :, None] - F[:, :, None]
    return out * fac[None, None, :]


def _operator_tables(k: int, h: float, system: AdvectionSystem, flux: FluxSpec):
    D = stiffness_pairing(k)
    signs = (-1.0) ** np.arange(k + 1)
    fac = (2.0 * np.arange(k + 1) + 1.0) / h
    if flux.kind == "lax_friedrichs":
        eye = np.eye(system.n_components)
        W_minus = 0.5 * (system.matrix + flux.M * eye)
        W_plus = 0.5 * (system.matrix - flux.M * eye)
    else:
        W_minus = W_plus = None
    return D, signs, fac, W_minus, W_plus


def rhs(state: DGState, system: AdvectionSystem, flux: FluxSpec) -> DGState:
    """Semi-discrete time derivative of a DG state."""
    _validate_flux(state, system, flux)
    tables = _operator_tables(state.degree, state.grid.h, system, flux)
    return DGState(state.grid, state.degree, _rhs_coeffs(state.coeffs, system, flux, tables))


def _validate_flux(state: DGState, system: AdvectionSystem, flux: FluxSpec):
    if state.n_components != system.n_components:
        raise ValueError("state and system component counts differ")
    if flux.kind == "upwind" and system.n_components > 1:
        raise FluxConfigError("upwind flux is only supported for scalar problems")


def max_wave_speed(system: AdvectionSystem, flux: FluxSpec) -> float:
    """Speed scale for the CFL condition; M bounds the flux Jacobian for LF."""
    s = system.max_speed
    if flux.kind == "lax_friedrichs":
        s = max(s, flux.M)
    return s


def integrate(
    state0: DGState,
    system: AdvectionSystem,
    flux: FluxSpec,
    config: IntegratorConfig,
    track_energy: bool = False,
):
    """Advance a DG state to config.t_final with fixed steps dt = cfl h / s.

    The final step is truncated to land exactly on t_final. Returns the
    final state, or (state, energy_trace) when track_energy is set; the
    trace holds the discrete L2 energy after every accepted step.
    """
    if config.t_final < 0:
        raise ValueError("t_final must be nonnegative")
    _validate_flux(state0, system, flux)
    tab = RK_SCHEMES[config.rk_scheme]
    tables = _operator_tables(state0.degree, state0.grid.h, system, flux)
    h = state0.grid.h
    dt0 = config.cfl * h / max_wave_speed(system, flux)
    mass = h / (2.0 * np.arange(state0.degree + 1) + 1.0)

    c = state0.coeffs.copy()
    energies = [float(np.einsum("jcn,n->", c**2, mass))] if track_energy else None
    t = 0.0
    n_stages = len(tab.b)
    while t < config.t_final - 1e-13:
        dt = min(dt0, config.t_final - t)
        stages = []
        for i in range(n_stages):
            ci = c
            for j in range(i):
                if tab.a[i, j] != 0.0:
                    ci = ci + (dt * tab.a[i, j]) * stages[j]
            stages.append(_rhs_coeffs(ci, system, flux, tables))
        for i in range(n_stages):
            if tab.b[i] != 0.0:
                c = c + (dt * tab.b[i]) * stages[i]
        t += dt
        if not np.all(np.isfinite(c)):
            raise RuntimeError(f"non-finite coefficients at t={t:.6g}; integration aborted")
        if track_energy:
            energies.append(float(np.einsum("jcn,n->", c**2, mass)))
    out = DGState(state0.grid, state0.degree, c)
    if track_energy:
        return out, np.array(energies)
    return out


def integrate_checkpoints(
    state0: DGState,
    system: AdvectionSystem,
    flux: FluxSpec,
    checkpoints,
    cfl: float = 0.1,
    rk_scheme: str = "rkf45",
) -> list[DGState]:
    """States at each requested time, sharing one trajectory."""
    times = list(checkpoints)
    if any(t1 < t0 for t0, t1 in zip(times, times[1:])):
        raise ValueError("checkpoints must be nondecreasing")
    out = []
    state = state0
    t_prev = 0.0
    for t in times:
        state = integrate(state, system, flux, IntegratorConfig(t_final=t - t_prev, cfl=cfl, rk_scheme=rk_scheme))
        t_prev = t
        out.append(state)
    return out


def discrete_energy(state: DGState) -> float:
    """sum_j sum_n coeffs^2 h/(2n+1), the discrete L2 norm squared."""
    mass = state.grid.h / (2.0 * np.arange(state.degree + 1) + 1.0)
    return float(np.einsum("jcn,n->", state.coeffs**2, mass))


def energy_rate(state: DGState, system: AdvectionSystem, flux: FluxSpec) -> float:
    """Instantaneous d/dt of the discrete energy, from the rhs."""
    dstate = rhs(state, system, flux)
    mass = state.grid.h / (2.0 * np.arange(state.degree + 1) + 1.0)
    return float(2.0 * np.einsum("jcn,jcn,n->", state.coeffs, dstate.coeffs, mass))


def interface_jumps(state: DGState) -> np.ndarray:
    """[u] = u+ - u- at every interface x_{j+1/2}, shape (N, c)."""
    return np.roll(state.left_traces(), -1, axis=0) - state.right_traces()


def characteristic_decompose(state: DGState, system: AdvectionSystem) -> list[DGState]:
    """Split a system state into one scalar DG state per characteristic wave."""
    waves = np.einsum("pc,jcn->jpn", system.left_vectors, state.coeffs)
    return [DGState(state.grid, state.degree, waves[:, p : p + 1, :]) for p in range(system.n_components)]


def characteristic_recompose(waves: list[DGState], system: AdvectionSystem) -> DGState:
    """Inverse of characteristic_decompose."""
    stacked = np.concatenate([w.coeffs for w in waves], axis=1)
    coeffs = np.einsum("cp,jpn->jcn", system.right_vectors, stacked)
    return DGState(waves[0].grid, waves[0].degree, coeffs)
