"""Periodic initial-data fields with analytic derivatives of arbitrary order.

Projection accuracy checks run at the 1e-13 level, so derivative values
must be exact up to rounding; every concrete field here differentiates in
closed form (trigonometric rotation or polynomial coefficient shifts).
An FFT-based fallback covers data supplied only as a callable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import TWO_PI


class DerivativeOrderError(ValueError):
    """Requested derivative order exceeds what the field supports."""


class SmoothField:
    """A 2*pi-periodic function queryable for its p-th derivative.

    Subclasses implement ``_eval`` and may override ``max_order``.
    Construction spot-checks periodicity on 16 points.
    """

    max_order: float = math.inf

    def eval(self, p: int, x) -> np.ndarray:
        if p < 0:
            raise ValueError("derivative order must be nonnegative")
        if p > self.max_order:
            raise DerivativeOrderError(
                f"derivative order unavailable: need {p}, field supports {self.max_order}"
            )
        return self._eval(p, np.asarray(x, dtype=float))

    def __call__(self, x) -> np.ndarray:
        return self.eval(0, x)

    def _eval(self, p: int, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _check_periodic(self, orders=(0, 1, 2)) -> None:
        x = np.linspace(0.13, TWO_PI + 0.13, 16, endpoint=False)
        for p in orders:
            if p > self.max_order:
                continue
            a = self.eval(p, x)
            b = self.eval(p, x + TWO_PI)
            scale = max(np.max(np.abs(a)), 1.0)
            if np.max(np.abs(a - b)) > 1e-9 * scale:
                raise ValueError(f"field is not 2*pi periodic at derivative order {p}")


@dataclass
class TrigField(SmoothField):
    """Finite Fourier series sum_m c_m e^{imx} with real values.

    Coefficients are stored one-sided-free as a dict {m: c_m} over all
    integer modes present (conjugate symmetry is the caller's business;
    evaluation takes the real part).
    """

    coeffs: dict[int, complex]

    def __post_init__(self):
        self.coeffs = {int(m): complex(c) for m, c in self.coeffs.items() if c != 0}
        self._check_periodic()

    def _eval(self, p, x):
        out = np.zeros_like(x, dtype=complex)
        for m, c in self.coeffs.items():
            out += c * (1j * m) ** p * np.exp(1j * m * x)
        return out.real

    @staticmethod
    def sin_power(power: int) -> "TrigField":
        """Exact expansion of sin(x)**power via the binomial theorem."""
        if power < 0:
            raise ValueError("power must be nonnegative")
        coeffs: dict[int, complex] = {}
        pref = 1.0 / (2j) ** power
        for r in range(power + 1):
            m = 2 * r - power
            coeffs[m] = coeffs.get(m, 0.0) + pref * math.comb(power, r) * (-1) ** (power - r)
        return TrigField(coeffs)

    @staticmethod
    def cosine(m: int, amplitude: float = 1.0) -> "TrigField":
        return TrigField({m: amplitude / 2.0, -m: amplitude / 2.0})


@dataclass
class PeriodicPolyField(SmoothField):
    """Polynomial in x on [0, 2*pi), extended periodically.

    Derivatives come from coefficient differentiation of the polynomial
    piece; evaluation reduces x mod 2*pi, so values at the seam follow the
    left limit convention.
    """

    poly: np.ndarray  # ascending power-basis coefficients

    def __post_init__(self):
        self.poly = np.asarray(self.poly, dtype=float)
        self._derivs = {0: self.poly}

    def _eval(self, p, x):
        if p not in self._derivs:
            self._derivs[p] = np.polynomial.polynomial.polyder(self.poly, p)
        return np.polynomial.polynomial.polyval(np.mod(x, TWO_PI), self._derivs[p])

    @staticmethod
    def bump_power(power: int, scale: float) -> "PeriodicPolyField":
        """The field (x (2*pi - x) / scale)**power in expanded form.

        Prefer FactoredBumpField for high powers: the expanded power basis
        cancels catastrophically near the domain ends.
        """
        base = np.polynomial.polynomial.polymul([0.0, 1.0], [TWO_PI, -1.0]) / scale
        poly = np.array([1.0])
        for _ in range(power):
            poly = np.polynomial.polynomial.polymul(poly, base)
        return PeriodicPolyField(poly)


@dataclass
class FactoredBumpField(SmoothField):
    """(x (2*pi - x) / scale)**power evaluated in factored form.

    Keeps full relative accuracy near x = 0 and 2*pi where the expanded
    polynomial loses ~3 digits to cancellation. Derivatives follow a
    product-rule recursion over monomials u^a (u')^b with u'' constant.
    """

    power: int
    scale: float

    def __post_init__(self):
        if self.power < 1:
            raise ValueError("power must be positive")
        self._terms = {0: {(self.power, 0): 1.0}}

    def _deriv_terms(self, p: int) -> dict:
        u2 = -2.0 / self.scale  # u'' is constant
        while p not in self._terms:
            q = max(self._terms)
            nxt: dict = {}
            for (a, b), c in self._terms[q].items():
                if a > 0:
                    key = (a - 1, b + 1)
                    nxt[key] = nxt.get(key, 0.0) + c * a
                if b > 0:
                    key = (a, b - 1)
                    nxt[key] = nxt.get(key, 0.0) + c * b * u2
            self._terms[q + 1] = nxt
        return self._terms[p]

    def _eval(self, p, x):
        xm = np.mod(x, TWO_PI)
        u = xm * (TWO_PI - xm) / self.scale
        du = (TWO_PI - 2.0 * xm) / self.scale
        out = np.zeros_like(xm)
        for (a, b), c in self._deriv_terms(p).items():
            term = np.full_like(xm, c)
            if a:
                term = term * u**a
            if b:
                term = term * du**b
            out += term
        return out


@dataclass
class AbsSinPowerField(SmoothField):
    """|sin(x)|**power for odd power, differentiated piecewise.

    Away from the kinks at x = 0 and x = pi the field equals
    sign(sin x) * sin(x)**power, and so do all its derivatives.
    """

    power: int

    def __post_init__(self):
        if self.power % 2 == 0:
            raise ValueError("use TrigField.sin_power for even powers")
        self._series = TrigField.sin_power(self.power)

    def _eval(self, p, x):
        s = np.where(np.sin(x) >= 0.0, 1.0, -1.0)
        return s * self._series.eval(p, x)


@dataclass
class LinearCombinationField(SmoothField):
    """Weighted sum of fields; derivatives distribute over the sum."""

    fields: list
    weights: list

    def __post_init__(self):
        if len(self.fields) != len(self.weights):
            raise ValueError("fields and weights must pair up")

    @property
    def max_order(self):
        return min(f.max_order for f in self.fields)

    def _eval(self, p, x):
        out = np.zeros_like(x, dtype=float)
        for f, w in zip(self.fields, self.weights):
            out += w * f.eval(p, x)
        return out


@dataclass
class ShiftedField(SmoothField):
    """f(x - shift); used for exact characteristic advection."""

    base: SmoothField
    shift: float

    @property
    def max_order(self):
        return self.base.max_order

    def _eval(self, p, x):
        return self.base.eval(p, x - self.shift)


class SpectralField(SmoothField):
    """Fallback for user-supplied callables without analytic derivatives.

    Samples the function on a 4096-point uniform grid and differentiates
    spectrally. Noise amplification caps the usable derivative order, so
    max_order defaults to 8.
    """

    def __init__(self, func, n_samples: int = 4096, max_order: int = 8):
        x = np.arange(n_samples) * (TWO_PI / n_samples)
        fhat = np.fft.rfft(np.asarray(func(x), dtype=float)) / n_samples
        keep = np.abs(fhat) > 1e-13 * np.max(np.abs(fhat))
        self._modes = np.nonzero(keep)[0]
        self._coeffs = fhat[keep]
        self._n = n_samples
        self.max_order = max_order
        self._check_periodic()

    def _eval(self, p, x):
        m = self._modes
        # one-sided rfft spectrum: double everything except DC (and Nyquist,
        # which the magnitude cutoff discards for smooth data)
        amp = np.where(m == 0, 1.0, 2.0) * self._coeffs * (1j * m) ** p
        return (np.exp(1j * np.multiply.outer(x, m)) @ amp).real
