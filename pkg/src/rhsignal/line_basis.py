"""Sampled signals, coefficient vectors, and the Hermite analysis/synthesis pair.

Conventions are plain L²: ``f_n = ∫ psi_n(x) f(x) dx`` and
``f(x) = Σ f_n psi_n(x)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline

from .exceptions import BasisMismatchError, InsufficientGridError
from .specfun import (BasisSpec, default_order, gauss_hermite, gauss_laguerre,
                      hermite_rows, laguerre_rows, quadrature_rows)

__all__ = [
    "SampledSignal",
    "CoeffVector",
    "analyze",
    "synthesize",
    "reconstruction_error",
    "trapezoid_weights",
]

DOMAINS = ("full_line", "half_line")


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Complex samples of a signal on a strictly increasing grid."""

    grid: np.ndarray
    values: np.ndarray
    domain: str = "full_line"

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValueError(f"domain must be one of {DOMAINS}, got {self.domain!r}")
        grid = np.array(self.grid, dtype=float).ravel()
        values = np.array(self.values, dtype=complex).ravel()
        if grid.shape != values.shape:
            raise ValueError(f"grid has {grid.size} points but values has {values.size}")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if self.domain == "half_line" and grid.size and grid[0] <= 0:
            raise ValueError("half_line grids must be strictly positive")
        grid.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.grid.size

    def norm(self):
        """Trapezoidal L² norm."""
        return float(np.sqrt(trapezoid_weights(self.grid) @ np.abs(self.values) ** 2))


@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Coefficients ``c_0..c_{n_max}`` of a signal in the basis ``basis``."""

    basis: BasisSpec
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex).ravel()
        if coeffs.size != self.basis.size:
            raise ValueError(
                f"basis has n_max={self.basis.n_max} so expects {self.basis.size} "
                f"coefficients, got {coeffs.size}")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    def __len__(self):
        return self.coeffs.size

    def with_coeffs(self, coeffs):
        return CoeffVector(self.basis, coeffs)

    def norm(self):
        return float(np.linalg.norm(self.coeffs))


def trapezoid_weights(grid):
    grid = np.asarray(grid, dtype=float)
    w = np.zeros_like(grid)
    if grid.size < 2:
        return w
    h = np.diff(grid)
    w[:-1] += h / 2
    w[1:] += h / 2
    return w


@lru_cache(maxsize=64)
def _hermite_rule(order):
    return gauss_hermite(order)


@lru_cache(maxsize=64)
def _laguerre_rule(order, alpha):
    return gauss_laguerre(order, alpha)


def default_rule(spec):
    if spec.family == "hermite":
        return _hermite_rule(default_order(spec.n_max))
    return _laguerre_rule(default_order(spec.n_max), spec.alpha)


def _basis_rows(spec, grid):
    if spec.family == "hermite":
        return hermite_rows(spec.n_max, grid)
    return laguerre_rows(spec.n_max, spec.alpha, grid)


def _call(f, points):
    """Evaluate ``f`` at ``points``, vectorized when ``f`` allows it."""
    try:
        vals = np.asarray(f(points), dtype=complex)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != points.shape:
        vals = np.array([complex(f(p)) for p in points])
    return vals


def _extent_needed(spec):
    # classical turning point of the top basis function
    if spec.family == "hermite":
        return np.sqrt(2.0 * spec.n_max + 1.0)
    return 4.0 * spec.n_max + 2.0 * spec.alpha + 2.0


def _check_extent(f, spec):
    need = _extent_needed(spec)
    if f.domain == "full_line":
        lo, hi = (f.grid[0], f.grid[-1]) if len(f) else (0.0, 0.0)
        if lo > -need or hi < need:
            raise InsufficientGridError(
                f"grid [{lo:g}, {hi:g}] does not reach the turning point ±{need:.4g} "
                f"of the degree-{spec.n_max} Hermite function")
    else:
        hi = f.grid[-1] if len(f) else 0.0
        if hi < need:
            raise InsufficientGridError(
                f"half-line grid ends at {hi:g}, before the turning point {need:.4g} "
                f"of the degree-{spec.n_max} Laguerre function")


def _analyze(f, spec, rule=None, method="lstsq"):
    """Shared analysis for both families; see :func:`analyze`."""
    if isinstance(f, SampledSignal):
        expected = "full_line" if spec.family == "hermite" else "half_line"
        if f.domain != expected:
            raise BasisMismatchError(f"{spec.family} analysis needs a {expected} signal")
        _check_extent(f, spec)
        if method == "lstsq":
            w = np.sqrt(trapezoid_weights(f.grid))
            design = _basis_rows(spec, f.grid).T * w[:, None]
            coeffs, *_ = np.linalg.lstsq(design, w * f.values, rcond=None)
            return CoeffVector(spec, coeffs)
        if method != "spline":
            raise ValueError(f"method must be 'lstsq' or 'spline', got {method!r}")
        rule = default_rule(spec) if rule is None else rule
        x = rule.nodes
        inside = (x >= f.grid[0]) & (x <= f.grid[-1])
        vals = np.zeros(x.size, dtype=complex)
        vals[inside] = (CubicSpline(f.grid, f.values.real)(x[inside])
                        + 1j * CubicSpline(f.grid, f.values.imag)(x[inside]))
    elif callable(f):
        rule = default_rule(spec) if rule is None else rule
        vals = _call(f, np.asarray(rule.nodes))
    else:
        raise TypeError("f must be a callable or a SampledSignal")
    return CoeffVector(spec, quadrature_rows(spec, rule) @ vals)


def analyze(f, spec, rule=None, method="lstsq"):
    """Hermite coefficients ``f_n = ∫ psi_n(x) f(x) dx``.

    Parameters
    ----------
    f : callable or SampledSignal
        A callable is evaluated at the quadrature nodes, so the result is
        exact for ``f`` in the span of ``psi_0..psi_{2m-1-n_max}``.
    spec : BasisSpec
        Hermite basis and truncation order.
    rule : QuadratureRule, optional
        Gauss–Hermite rule; defaults to order ``2 * n_max + 32``.
    method : {'lstsq', 'spline'}
        How a SampledSignal is handled.  ``'lstsq'`` projects onto the basis
        in the trapezoidal inner product of the sample grid (exact for
        in-span samples); ``'spline'`` resamples onto the quadrature nodes
        with a cubic spline (zero outside the grid).

    Raises
    ------
    InsufficientGridError
        The sampled grid stops short of ``±sqrt(2 n_max + 1)``.
    """
    if spec.family != "hermite":
        raise BasisMismatchError("analyze works on the Hermite basis; use analyze_halfline")
    return _analyze(f, spec, rule, method)


def _synthesize(c, grid, domain):
    grid = np.asarray(grid, dtype=float).ravel()
    values = _basis_rows(c.basis, grid).T @ c.coeffs if grid.size else np.zeros(0, complex)
    return SampledSignal(grid, values, domain)


def synthesize(c, grid):
    """Evaluate ``Σ c_n psi_n`` on ``grid``."""
    if c.basis.family != "hermite":
        raise BasisMismatchError("synthesize works on the Hermite basis; use synthesize_halfline")
    return _synthesize(c, grid, "full_line")


def reconstruction_error(f, spec, rule=None, method="lstsq"):
    """Relative trapezoidal L² error of ``synthesize(analyze(f))`` on ``f.grid``."""
    c = _analyze(f, spec, rule, method)
    rec = _synthesize(c, f.grid, f.domain)
    w = trapezoid_weights(f.grid)
    num = w @ np.abs(f.values - rec.values) ** 2
    den = w @ np.abs(f.values) ** 2
    return float(np.sqrt(num / den)) if den > 0 else float(np.sqrt(num))

