"""Error decomposition, norms, closed-form asymptotic error predictors, and
the convergence/transient study drivers.

Per cell the error e = u - u_h expands in the scaled Legendre basis with
coefficients e_{j,n}; the cell-average error (n = 0) and the downwind trace
error both decay at rate 2k+1, mode n at rate 2k+1-n. The predictors here
give the leading profiles these scaled errors converge to.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import Grid, gauss_rule, legendre_table, make_grid
from .fields import SmoothField
from .projections import (
    DEFAULT_QUAD_MARGIN,
    DGState,
    project_components,
    special_interpolant,
)
from .solver import AdvectionSystem, FluxSpec, IntegratorConfig, integrate, integrate_checkpoints
from .symbol import asymptotic_constant, dissipation_factor

TWO_PI = 2.0 * np.pi


# --------------------------------------------------------------------------
# exact solutions by characteristic advection


@dataclass
class ExactSolution:
    """Exact solution of the advection problem at any time.

    Characteristic initial data w_p advects rigidly at speed a_p; physical
    components are recombined through the right characteristic vectors.
    For scalar problems this is just g(x - a t).
    """

    wave_fields: list       # characteristic initial data, one SmoothField per wave
    speeds: np.ndarray
    right_vectors: np.ndarray

    @property
    def n_components(self) -> int:
        return self.right_vectors.shape[0]

    @staticmethod
    def scalar(g: SmoothField, a: float = 1.0) -> "ExactSolution":
        return ExactSolution([g], np.array([float(a)]), np.array([[1.0]]))

    @staticmethod
    def from_system(fields: list, system: AdvectionSystem) -> "ExactSolution":
        from .fields import LinearCombinationField

        waves = [
            LinearCombinationField(list(fields), list(system.left_vectors[p]))
            for p in range(system.n_components)
        ]
        return ExactSolution(waves, system.speeds, system.right_vectors)

    def component_values(self, x, t: float, p: int = 0) -> np.ndarray:
        """p-th spatial derivative of every component at time t, shape (c,) + x.shape."""
        x = np.asarray(x, dtype=float)
        waves = np.stack([f.eval(p, x - a * t) for f, a in zip(self.wave_fields, self.speeds)])
        return np.einsum("cp,p...->c...", self.right_vectors, waves)


# --------------------------------------------------------------------------
# error decomposition and norms


@dataclass
class ErrorDecomposition:
    """Legendre-mode and downwind-trace errors of a DG state at one time."""

    e_modes: np.ndarray     # (N, c, k+1)
    e_downwind: np.ndarray  # (N, c)
    time: float
    grid: Grid
    degree: int


def decompose_error(
    u_h: DGState, exact: ExactSolution, t: float, n_quad: int | None = None
) -> ErrorDecomposition:
    """Quadrature Legendre coefficients of u - u_h plus downwind trace errors.

    The downwind trace is taken at x_{j+1/2}^- (right interfaces); for
    left-going scalar problems flip via the exact solution's speed sign
    before interpreting pointwise superconvergence.
    """
    grid, k = u_h.grid, u_h.degree
    rule = gauss_rule(n_quad or k + DEFAULT_QUAD_MARGIN)
    X = grid.quad_points(rule)
    exact_vals = exact.component_values(X, t)          # (c, N, q)
    num_vals = u_h.cell_values(rule.nodes)             # (N, c, q)
    diff = np.moveaxis(exact_vals, 0, 1) - num_vals    # (N, c, q)
    table = legendre_table(k, rule.nodes)
    fac = (2.0 * np.arange(k + 1) + 1.0) / 2.0
    e_modes = np.einsum("jcq,q,nq->jcn", diff, rule.weights, table) * fac[None, None, :]

    x_right = grid.interfaces[1:]
    exact_right = exact.component_values(x_right, t)   # (c, N)
    e_down = exact_right.T - u_h.right_traces()
    return ErrorDecomposition(e_modes=e_modes, e_downwind=e_down, time=t, grid=grid, degree=k)


@dataclass(frozen=True)
class NormReport:
    """Mean-based norms over cells: l1 = mean |.|, l2 = rms, linf = max.

    With these conventions linf >= l2 >= l1 (power-mean inequality); each
    field has one entry per component.
    """

    l1: np.ndarray
    l2: np.ndarray
    linf: np.ndarray

    def __post_init__(self):
        eps = 1e-15 * (1.0 + float(np.max(self.linf)))
        if np.any(self.l2 > self.linf + eps) or np.any(self.l1 > self.l2 + eps):
            raise AssertionError("power-mean ordering linf >= l2 >= l1 violated")


def _norms_of(values: np.ndarray) -> NormReport:
    """values shape (N, c)."""
    return NormReport(
        l1=np.mean(np.abs(values), axis=0),
        l2=np.sqrt(np.mean(values**2, axis=0)),
        linf=np.max(np.abs(values), axis=0),
    )


def norms(dec: ErrorDecomposition, n: int) -> NormReport:
    """Norm report for Legendre mode n."""
    return _norms_of(dec.e_modes[:, :, n])


def downwind_norms(dec: ErrorDecomposition) -> NormReport:
    return _norms_of(dec.e_downwind)


def combined_l2(report: NormReport) -> float:
    """Root mean square of the per-component l2 norms."""
    return float(np.sqrt(np.mean(report.l2**2)))


# --------------------------------------------------------------------------
# discrete Fourier norms


@dataclass
class FourierNorms:
    """DFT with the 1/N forward convention over cell-center samples."""

    hat: np.ndarray
    n_samples: int

    def norm_s(self, s: float) -> float:
        """sum_m |f_m| m^s with the aliased index m = 0..N-1."""
        m = np.arange(self.n_samples, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(m > 0, m**s, 0.0 if s != 0 else 1.0)
        return float(np.sum(np.abs(self.hat) * w))

    def norm_s2(self, s: float) -> float:
        """sqrt(sum_m |f_m m^s|^2), aliased index."""
        m = np.arange(self.n_samples, dtype=float)
        w = np.where(m > 0, m ** s, 0.0 if s != 0 else 1.0)
        return float(np.sqrt(np.sum(np.abs(self.hat * w) ** 2)))

    def norm_s_symmetric(self, s: float) -> float:
        """Same sum with the symmetric index m in (-N/2, N/2]."""
        N = self.n_samples
        m = np.arange(N)
        m = np.where(m <= N // 2, m, m - N).astype(float)
        am = np.abs(m)
        w = np.where(am > 0, am**s, 0.0 if s != 0 else 1.0)
        return float(np.sum(np.abs(self.hat) * w))


def fourier_norms(samples: np.ndarray) -> FourierNorms:
    """Fourier coefficients of per-cell samples f_j at x_j = (j + 1/2) h.

    hat_m = (1/N) sum_j f_j e^{-i m x_j}; a pure grid mode e^{i m x_j}
    maps to the unit coordinate vector.
    """
    samples = np.asarray(samples)
    N = len(samples)
    h = TWO_PI / N
    phase = np.exp(-1j * np.arange(N) * h / 2.0)
    return FourierNorms(hat=phase * np.fft.fft(samples) / N, n_samples=N)


# --------------------------------------------------------------------------
# asymptotic error predictors


def _parse_init(init_kind) -> tuple[str, int]:
    """Accepts 'l2', 'gauss_radau', 'special:<l>', or ('special', l)."""
    if isinstance(init_kind, tuple):
        return "special", int(init_kind[1])
    if init_kind == "l2":
        return "l2", -1
    if init_kind == "gauss_radau":
        return "special", 0
    if isinstance(init_kind, str) and init_kind.startswith("special:"):
        return "special", int(init_kind.split(":", 1)[1])
    raise ValueError(f"unknown initialization kind {init_kind!r}")


@dataclass
class AsymptoticPrediction:
    """Leading error profiles, shapes (c, N).

    e0_scaled predicts e_{j,0}/h^{2k+1} at the cell centers;
    modes_scaled[n-1] predicts e_{j,n}/h^{2k+1-n} for n = 1..k.

    downwind_scaled predicts the trace error e_j^- / h^{2k+1} at the
    downwind points. Its g^{(2k+1)} weight is one unit larger than the
    cell average's: the average profile is damped by the interpolation
    residual's own mean while the trace sees the undamped evolution
    (verified numerically; the trace deviation from this profile halves
    per N doubling, whereas the equal-weight profile leaves a fixed gap).
    None for Lax-Friedrichs transport, whose trace error is only O(h^{k+1}).
    """

    cell_centers: np.ndarray
    e0_scaled: np.ndarray
    modes_scaled: list
    degree: int
    time: float
    downwind_scaled: np.ndarray | None = None


def asymptotic_error(
    g: SmoothField,
    t: float,
    k: int,
    init_kind="l2",
    a: float = 1.0,
    M: float | None = None,
    flux: FluxSpec | str = "upwind",
    grid: Grid | None = None,
    n_cells: int = 128,
) -> AsymptoticPrediction:
    """Scalar leading-order error profiles for one transported field.

    Cell-average prediction:

        e_{j,0}/h^{2k+1} -> sign(a) chi (-1)^k C_k
                            [kappa g^{(2k+1)}(x_j - a t) - a t g^{(2k+2)}(x_j - a t)]

    with kappa = k for L2 initial data and k - l - 1 for the level-l
    interpolant, chi = 1 for upwind and chi_M for Lax-Friedrichs. Mode n:

        e_{j,n}/h^{2k+1-n} -> sign(a) chi (-1)^{k+1-n} C_k (2n+1)!/n!
                              g^{(2k+1-n)}(x_j - a t).
    """
    if g.max_order < 2 * k + 2:
        raise ValueError(
            f"asymptotic prediction needs derivatives to order {2 * k + 2}, "
            f"field supports {g.max_order}"
        )
    flux = flux if isinstance(flux, FluxSpec) else (
        FluxSpec("upwind") if flux == "upwind" else FluxSpec(flux, M=M)
    )
    grid = grid or make_grid(n_cells)
    kind, level = _parse_init(init_kind)
    kappa = float(k) if kind == "l2" else float(k - level - 1)
    chi = 1.0 if flux.kind == "upwind" else dissipation_factor(k, flux.M, a)
    sgn = 1.0 if a >= 0 else -1.0
    Ck = asymptotic_constant(k)

    xs = grid.cell_centers
    arg = xs - a * t
    pref = sgn * chi * (-1.0) ** k * Ck
    e0 = pref * (kappa * g.eval(2 * k + 1, arg) - a * t * g.eval(2 * k + 2, arg))
    modes = []
    for n in range(1, k + 1):
        cn = sgn * chi * (-1.0) ** (k + 1 - n) * Ck * math.factorial(2 * n + 1) / math.factorial(n)
        modes.append(cn * g.eval(2 * k + 1 - n, arg)[None, :])
    downwind = None
    if flux.kind == "upwind":
        x_dw = (grid.interfaces[1:] if a >= 0 else grid.interfaces[:-1]) - a * t
        downwind = (
            pref * ((kappa + 1.0) * g.eval(2 * k + 1, x_dw) - a * t * g.eval(2 * k + 2, x_dw))
        )[None, :]
    return AsymptoticPrediction(
        cell_centers=xs, e0_scaled=e0[None, :], modes_scaled=modes, degree=k, time=t,
        downwind_scaled=downwind,
    )


def asymptotic_error_system(
    fields: list,
    system: AdvectionSystem,
    t: float,
    k: int,
    M: float,
    grid: Grid,
    init_kind="l2",
) -> AsymptoticPrediction:
    """Componentwise predictions for a system solved with Lax-Friedrichs:
    per-wave scalar predictions recombined through the right vectors."""
    from .fields import LinearCombinationField

    flux = FluxSpec("lax_friedrichs", M=M)
    wave_preds = []
    for p in range(system.n_components):
        w = LinearCombinationField(list(fields), list(system.left_vectors[p]))
        wave_preds.append(
            asymptotic_error(w, t, k, init_kind=init_kind, a=float(system.speeds[p]),
                             flux=flux, grid=grid)
        )
    R = system.right_vectors
    e0 = np.einsum("cp,pj->cj", R, np.concatenate([wp.e0_scaled for wp in wave_preds], axis=0))
    modes = []
    for n in range(1, k + 1):
        stack = np.concatenate([wp.modes_scaled[n - 1] for wp in wave_preds], axis=0)
        modes.append(np.einsum("cp,pj->cj", R, stack))
    return AsymptoticPrediction(
        cell_centers=grid.cell_centers, e0_scaled=e0, modes_scaled=modes, degree=k, time=t
    )


# --------------------------------------------------------------------------
# study drivers


@dataclass
class Problem:
    """A complete experiment: initial fields, transport system, flux, horizon."""

    name: str
    fields: list
    system: AdvectionSystem
    flux: FluxSpec
    t_final: float = 1.0
    profile_kind: str = "profile"  # what the headline figure of this setup shows
    description: str = ""

    @property
    def exact(self) -> ExactSolution:
        if self.system.n_components == 1:
            return ExactSolution.scalar(self.fields[0], float(self.system.speeds[0]))
        return ExactSolution.from_system(self.fields, self.system)


def initialize_state(problem: Problem, grid: Grid, k: int, init_kind="l2") -> DGState:
    """Build the initial DG state for a problem under the chosen projector."""
    kind, level = _parse_init(init_kind)
    if kind == "l2":
        return project_components(problem.fields, grid, k)
    if problem.system.n_components > 1:
        raise ValueError("Gauss-Radau / special initialization is scalar-only")
    a = float(problem.system.speeds[0])
    return special_interpolant(problem.fields[0], grid, k, level, speed=a)


def run_experiment(
    problem: Problem, n_cells: int, k: int, init_kind="l2", cfl: float = 0.1,
    t_final: float | None = None,
) -> ErrorDecomposition:
    """Project, integrate to the final time, and decompose the error."""
    grid = make_grid(n_cells)
    state0 = initialize_state(problem, grid, k, init_kind)
    t_end = problem.t_final if t_final is None else t_final
    state = integrate(state0, problem.system, problem.flux,
                      IntegratorConfig(t_final=t_end, cfl=cfl))
    return decompose_error(state, problem.exact, t_end)


@dataclass
class ConvergenceRow:
    n_cells: int
    mode: int               # 0..k, or -1 for the downwind trace
    component: int
    l1: float
    l2: float
    linf: float
    order_l1: float = math.nan
    order_l2: float = math.nan
    order_linf: float = math.nan


@dataclass
class ConvergenceTable:
    """Rows over a doubling N sequence with log2-ratio order columns."""

    problem: str
    degree: int
    init_kind: str
    rows: list = field(default_factory=list)
    combined_l2: dict = field(default_factory=dict)  # N -> rms-combined cell-average l2

    def rows_for(self, mode: int, component: int = 0) -> list:
        return [r for r in self.rows if r.mode == mode and r.component == component]


def convergence_study(
    problem: Problem, Ns, k: int, init_kind="l2", cfl: float = 0.1,
    decompositions: dict | None = None,
) -> ConvergenceTable:
    """Solve at each N and tabulate mode and downwind norms with orders.

    `decompositions` (N -> ErrorDecomposition) lets callers reuse solves.
    """
    Ns = list(Ns)
    table = ConvergenceTable(problem=problem.name, degree=k, init_kind=str(init_kind))
    prev: dict = {}
    for N in Ns:
        dec = (decompositions or {}).get(N) or run_experiment(problem, N, k, init_kind, cfl)
        c = dec.e_modes.shape[1]
        avg_report = norms(dec, 0)
        table.combined_l2[N] = combined_l2(avg_report)
        for mode in list(range(k + 1)) + [-1]:
            rep = downwind_norms(dec) if mode == -1 else norms(dec, mode)
            for comp in range(c):
                row = ConvergenceRow(
                    n_cells=N, mode=mode, component=comp,
                    l1=float(rep.l1[comp]), l2=float(rep.l2[comp]), linf=float(rep.linf[comp]),
                )
                key = (mode, comp)
                if key in prev:
                    pN, pr = prev[key]
                    ratio = math.log2(N / pN)
                    if pr.l1 > 0 and row.l1 > 0:
                        row.order_l1 = math.log2(pr.l1 / row.l1) / ratio
                    if pr.l2 > 0 and row.l2 > 0:
                        row.order_l2 = math.log2(pr.l2 / row.l2) / ratio
                    if pr.linf > 0 and row.linf > 0:
                        row.order_linf = math.log2(pr.linf / row.linf) / ratio
                prev[key] = (N, row)
                table.rows.append(row)
    return table


def fitted_order(errors, Ns) -> float:
    """Least-squares slope of log(error) against log(1/N)."""
    e = np.asarray(errors, dtype=float)
    n = np.asarray(Ns, dtype=float)
    slope = np.polyfit(np.log(1.0 / n), np.log(e), 1)[0]
    return float(slope)


# --------------------------------------------------------------------------
# transient profiles


@dataclass
class TransientSeries:
    init_kind: str
    times: np.ndarray
    scaled_linf: np.ndarray        # ||e_0||_inf / h^{2k+1}
    deviation_rms: np.ndarray      # rms_j of (scaled e0 - prediction)
    fitted_rate: float             # exponential decay rate of the deviation
    n_cells: int


def _fit_decay_rate(times: np.ndarray, dev: np.ndarray) -> float:
    """Exponential rate of a decaying, oscillating signal over a floor.

    Subtracts the late-time floor, keeps local maxima of the remainder
    (the oscillation envelope), and fits log-linearly from the global peak
    down to 4% of it.
    """
    floor = float(np.median(dev[int(0.75 * len(dev)):]))
    s = dev - floor
    i0 = int(np.argmax(s))
    peak = s[i0]
    if peak <= 0:
        return math.nan
    idx = [i0]
    for i in range(max(i0, 1), len(s) - 1):
        if s[i] >= s[i - 1] and s[i] >= s[i + 1] and s[i] > 0.04 * peak:
            if i != i0:
                idx.append(i)
    if len(idx) < 2:
        return math.nan
    tt = times[np.array(idx)]
    yy = np.log(s[np.array(idx)])
    return float(-np.polyfit(tt, yy, 1)[0])


def transient_profile(
    problem: Problem, n_cells: int, k: int, init_kinds, t_grid, cfl: float = 0.1
) -> list[TransientSeries]:
    """Scaled cell-average error along the trajectory per initialization.

    The fitted rate tracks how fast the deviation from the asymptotic
    profile dies out; compare against the damping scales alpha/(2h) and
    alpha/h from `spectral_gap`.
    """
    if problem.system.n_components != 1:
        raise ValueError("transient profiles are defined for scalar problems")
    grid = make_grid(n_cells)
    g = problem.fields[0]
    a = float(problem.system.speeds[0])
    t_grid = np.asarray(list(t_grid), dtype=float)
    out = []
    for init_kind in init_kinds:
        state0 = initialize_state(problem, grid, k, init_kind)
        states = integrate_checkpoints(state0, problem.system, problem.flux, t_grid, cfl=cfl)
        exact = problem.exact
        scaled, dev = [], []
        hpow = grid.h ** (2 * k + 1)
        for t, st in zip(t_grid, states):
            dec = decompose_error(st, exact, t)
            e0 = dec.e_modes[:, 0, 0] / hpow
            pred = asymptotic_error(
                g, t, k, init_kind=init_kind, a=a, flux=problem.flux,
                M=problem.flux.M, grid=grid,
            ).e0_scaled[0]
            scaled.append(float(np.max(np.abs(e0))))
            dev.append(float(np.sqrt(np.mean((e0 - pred) ** 2))))
        scaled = np.array(scaled)
        dev = np.array(dev)
        out.append(
            TransientSeries(
                init_kind=str(init_kind), times=t_grid, scaled_linf=scaled,
                deviation_rms=dev, fitted_rate=_fit_decay_rate(t_grid, dev),
                n_cells=n_cells,
            )
        )
    return out
