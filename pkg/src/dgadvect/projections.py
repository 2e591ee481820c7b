"""Initial-discretization operators: L2 and Gauss-Radau projections,
correction functions, and the truncated special interpolants built from them.

All projectors are per-cell and return coefficient tensors in the scaled
Legendre basis. The downwind interface of a cell is its right endpoint for
positive transport speed and its left endpoint for negative speed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import (
    Grid,
    QuadratureRule,
    gauss_rule,
    legendre_table,
    stiffness_pairing,
)
from .fields import DerivativeOrderError, SmoothField

#: extra quadrature points beyond the projected degree; exact for
#: polynomials of degree 2k+11 and gives smooth data plenty of headroom
DEFAULT_QUAD_MARGIN = 6


@dataclass
class DGState:
    """Piecewise polynomial of degree k as a coefficient tensor.

    coeffs has shape (N, n_components, k+1); coeffs[j, c, n] multiplies
    phi_{j,n} in component c, so coeffs[j, c, 0] is the cell average.
    """

    grid: Grid
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.ndim == 2:
            self.coeffs = self.coeffs[:, None, :]
        if self.coeffs.shape[0] != self.grid.n_cells:
            raise ValueError("coefficient tensor does not match the grid")
        if self.coeffs.shape[2] != self.degree + 1:
            raise ValueError("coefficient tensor does not match the degree")

    @property
    def n_components(self) -> int:
        return self.coeffs.shape[1]

    def copy(self) -> "DGState":
        return DGState(self.grid, self.degree, self.coeffs.copy())

    def right_traces(self) -> np.ndarray:
        """Values at x_{j+1/2}^- per cell and component, shape (N, c)."""
        return self.coeffs.sum(axis=2)

    def left_traces(self) -> np.ndarray:
        """Values at x_{j-1/2}^+ per cell and component, shape (N, c)."""
        signs = (-1.0) ** np.arange(self.degree + 1)
        return self.coeffs @ signs

    def cell_values(self, y) -> np.ndarray:
        """Evaluate on reference points y in [-1,1], shape (N, c, len(y))."""
        table = legendre_table(self.degree, y)
        return np.einsum("jcn,nq->jcq", self.coeffs, table)

    def eval_at(self, x) -> np.ndarray:
        """Point evaluation at arbitrary x, shape (c,) + x.shape.

        Points on an interface are attributed to the cell on the right.
        """
        x = np.atleast_1d(np.asarray(x, dtype=float))
        xm = np.mod(x, 2.0 * np.pi)
        j = np.clip((xm // self.grid.h).astype(int), 0, self.grid.n_cells - 1)
        y = 2.0 * (xm - self.grid.cell_centers[j]) / self.grid.h
        table = legendre_table(self.degree, y)  # (k+1,) + x.shape
        return np.einsum("...cn,n...->c...", self.coeffs[j], table)


def _field_coefficients(
    f: SmoothField, grid: Grid, k: int, rule: QuadratureRule, p: int = 0
) -> np.ndarray:
    """Scaled Legendre coefficients of f^{(p)} per cell, shape (N, k+1).

    coefficient n on cell j = (2n+1)/h * integral f^{(p)} phi_{j,n} dx.
    These are also the L2-projection coefficients for n <= k.
    """
    X = grid.quad_points(rule)
    F = f.eval(p, X)
    table = legendre_table(k, rule.nodes)
    fac = (2.0 * np.arange(k + 1) + 1.0) / 2.0
    return np.einsum("jq,q,nq->jn", F, rule.weights, table) * fac[None, :]


def l2_project(f: SmoothField, grid: Grid, k: int, n_quad: int | None = None) -> DGState:
    """Cellwise L2 projection of f onto polynomials of degree k."""
    rule = gauss_rule(n_quad or k + DEFAULT_QUAD_MARGIN)
    return DGState(grid, k, _field_coefficients(f, grid, k, rule))


def gauss_radau_project(
    f: SmoothField, grid: Grid, k: int, n_quad: int | None = None, speed: float = 1.0
) -> DGState:
    """Projection orthogonal to degree k-1 that interpolates f downwind.

    Realized as one (k+1)x(k+1) solve shared by all cells: rows 0..k-1
    impose the moment conditions, the last row the downwind interface value.
    For k = 0 only the interface condition remains.
    """
    rule = gauss_rule(n_quad or k + DEFAULT_QUAD_MARGIN)
    fc = _field_coefficients(f, grid, k, rule)
    downwind_right = speed >= 0.0
    if downwind_right:
        endpoint_row = np.ones(k + 1)
        f_end = f.eval(0, grid.interfaces[1:])  # x_{j+1/2}
    else:
        endpoint_row = (-1.0) ** np.arange(k + 1)
        f_end = f.eval(0, grid.interfaces[:-1])  # x_{j-1/2}

    A = np.zeros((k + 1, k + 1))
    rhs = np.zeros((k + 1, grid.n_cells))
    mass = grid.h / (2.0 * np.arange(k + 1) + 1.0)
    for n in range(k):
        A[n, n] = mass[n]
        rhs[n] = mass[n] * fc[:, n]
    A[k] = endpoint_row
    rhs[k] = f_end
    # provably nonsingular; LinAlgError here would mean an internal bug
    coeffs = np.linalg.solve(A, rhs).T
    return DGState(grid, k, coeffs)


@dataclass
class CorrectionSet:
    """Correction polynomials w_1..w_l, one DGState layer per level."""

    polys: list[DGState]
    level: int


def _correction_solve_matrix(k: int, downwind_right: bool) -> np.ndarray:
    """System matrix for one correction level.

    Unknowns c_0..c_k of w; rows 0..k-1 are the weak equations
    (w, phi_s') = (z, phi_s) for s = 1..k, the last row forces the
    downwind trace of w to vanish.
    """
    D = stiffness_pairing(k)
    A = np.zeros((k + 1, k + 1))
    A[: k, :] = D[1:, :]
    A[k] = np.ones(k + 1) if downwind_right else (-1.0) ** np.arange(k + 1)
    return A


def correction_functions(
    f: SmoothField,
    grid: Grid,
    k: int,
    l: int,
    speed: float = 1.0,
    n_quad: int | None = None,
) -> CorrectionSet:
    """Correction polynomials w_1..w_l for transport at the given speed.

    Level i solves (w_i, v_x) = (dt w_{i-1}, v) for v of degree up to k with
    vanishing downwind trace, where time derivatives at t = 0 reduce to
    spatial ones through dt^p u = (-speed * d/dx)^p f. Level 0 is the
    projection residual f - P_minus f, which never materializes directly:
    only its Legendre coefficients up to degree k enter.
    """
    if not 0 <= l <= k:
        raise ValueError("correction level must satisfy 0 <= l <= k")
    if f.max_order < k + l + 1:
        raise DerivativeOrderError(
            f"derivative order unavailable: corrections up to level {l} at degree {k} "
            f"need order {k + l + 1}, field supports {f.max_order}"
        )
    rule = gauss_rule(n_quad or k + DEFAULT_QUAD_MARGIN)
    downwind_right = speed >= 0.0
    A = _correction_solve_matrix(k, downwind_right)
    mass = grid.h / (2.0 * np.arange(k + 1) + 1.0)

    polys: list[DGState] = []
    for i in range(1, l + 1):
        # coefficients of dt^i w_0 = (I - P_minus)((-speed)^i f^(i))
        deriv_coeffs = (-speed) ** i * _field_coefficients(f, grid, k, rule, p=i)
        end_pts = grid.interfaces[1:] if downwind_right else grid.interfaces[:-1]
        end_vals = (-speed) ** i * f.eval(i, end_pts)
        proj = _gauss_radau_from_coeffs(deriv_coeffs, grid, k, downwind_right, end_vals)
        z = deriv_coeffs - proj
        # apply the weak solve i times: w_i = W^i[dt^i w_0]
        for _ in range(i):
            rhs = np.zeros((k + 1, grid.n_cells))
            rhs[: k, :] = mass[1:, None] * z[:, 1:].T
            z = np.linalg.solve(A, rhs).T
        polys.append(DGState(grid, k, z))
    return CorrectionSet(polys=polys, level=l)


def _gauss_radau_from_coeffs(
    fc: np.ndarray, grid: Grid, k: int, downwind_right: bool, boundary_values: np.ndarray
) -> np.ndarray:
    """Gauss-Radau projection of a field given by coefficients + endpoint data."""
    A = np.zeros((k + 1, k + 1))
    rhs = np.zeros((k + 1, grid.n_cells))
    mass = grid.h / (2.0 * np.arange(k + 1) + 1.0)
    for n in range(k):
        A[n, n] = mass[n]
        rhs[n] = mass[n] * fc[:, n]
    A[k] = np.ones(k + 1) if downwind_right else (-1.0) ** np.arange(k + 1)
    rhs[k] = boundary_values
    return np.linalg.solve(A, rhs).T


def special_interpolant(
    f: SmoothField,
    grid: Grid,
    k: int,
    l: int,
    speed: float = 1.0,
    n_quad: int | None = None,
) -> DGState:
    """The level-l interpolant: Gauss-Radau projection minus w_1..w_l.

    l = 0 returns the Gauss-Radau projection itself; l = k is the full
    special interpolant whose downwind trace matches f exactly.
    """
    proj = gauss_radau_project(f, grid, k, n_quad=n_quad, speed=speed)
    if l == 0:
        return proj
    corr = correction_functions(f, grid, k, l, speed=speed, n_quad=n_quad)
    coeffs = proj.coeffs.copy()
    for w in corr.polys:
        coeffs -= w.coeffs
    return DGState(grid, k, coeffs)


def project_components(
    fields: list[SmoothField], grid: Grid, k: int, n_quad: int | None = None
) -> DGState:
    """Stack per-component L2 projections into one multi-component state."""
    stacked = [l2_project(f, grid, k, n_quad=n_quad).coeffs[:, 0, :] for f in fields]
    return DGState(grid, k, np.stack(stacked, axis=1))
