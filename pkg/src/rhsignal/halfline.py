"""Generalized-Laguerre machinery on the half line ``(0, inf)``.

Covers Laguerre analysis/synthesis, the su(1,1) ladder algebra, the
Hermite–Laguerre bridge for ``alpha = ∓1/2``, and the two sine/cosine
half-line transforms whose eigenfunctions are ``M_n^{±1/2}`` with
eigenvalue ``(-1)**n``.
"""
from __future__ import annotations

from enum import Enum

import numpy as np
from scipy.interpolate import CubicSpline

from .exceptions import BasisMismatchError, DomainError
from .line_basis import CoeffVector, SampledSignal, _analyze, _call, _synthesize
from .line_operators import (OperatorMatrix, _uniform_step, anticommutator, commutator,
                             first_derivative_5pt, interior_residual, second_derivative_5pt)
from .line_transforms import phase_factors
from .specfun import BasisSpec, hermite_rows, laguerre_rows

__all__ = [
    "TransformKind",
    "analyze_halfline",
    "synthesize_halfline",
    "su11_ops",
    "su11_residuals",
    "laguerre_identity_residual",
    "bridge_hermite_laguerre",
    "transform_T",
    "frt_coeff",
    "frt_signal",
    "halfline_split",
]


class TransformKind(str, Enum):
    """Sine (``plus``, pairs with alpha = +1/2) or cosine (``minus``, alpha = -1/2) kernel."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def alpha(self):
        return 0.5 if self is TransformKind.PLUS else -0.5


def analyze_halfline(f, spec, rule=None, method="lstsq"):
    """Laguerre coefficients ``f_n = ∫_0^inf M_n^alpha(y) f(y) dy``.

    Callables are integrated with a Gauss–Laguerre rule (default order
    ``2 n_max + 32`` at the basis alpha) with the weight divided out once
    inside the recurrence.  Sampled half-line signals are projected as in
    :func:`rhsignal.line_basis.analyze`.
    """
    if spec.family != "laguerre":
        raise BasisMismatchError("analyze_halfline needs a Laguerre basis")
    return _analyze(f, spec, rule, method)


def synthesize_halfline(c, grid):
    """Evaluate ``Σ c_n M_n^alpha`` on a strictly positive grid."""
    if c.basis.family != "laguerre":
        raise BasisMismatchError("synthesize_halfline needs Laguerre coefficients")
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size and grid.min() <= 0:
        raise DomainError("half-line grids must be strictly positive")
    return _synthesize(c, grid, "half_line")


def su11_ops(alpha, n_max):
    """``(J_plus, J_minus, J_3)`` on the Laguerre basis of parameter ``alpha``.

    ``J_plus e_n = sqrt((n+1)(n+alpha+1)) e_{n+1}``, ``J_minus`` is its
    adjoint and ``J_3 = N + (alpha+1)/2``.
    """
    if alpha <= -1:
        raise DomainError(f"alpha must be > -1, got {alpha}")
    n = np.arange(n_max, dtype=float)
    jp = np.diag(np.sqrt((n + 1) * (n + alpha + 1)), -1)
    j3 = np.diag(np.arange(n_max + 1) + 0.5 * (alpha + 1))
    return OperatorMatrix(jp, 1), OperatorMatrix(jp.T, 1), OperatorMatrix(j3, 0)


def su11_residuals(alpha, n_max):
    """Interior residuals of the su(1,1) relations and the Casimir value.

    The interior block is rows/cols ``0..n_max-1``.  ``casimir_constant`` is
    the mean interior diagonal of ``J3² - {J+, J-}/2``; ``casimir`` is the
    max deviation of that block from ``(alpha² - 1)/4 · I``.
    """
    if n_max < 2:
        raise DomainError("su11_residuals needs n_max >= 2")
    jp, jm, j3 = su11_ops(alpha, n_max)
    size = n_max
    I = np.eye(n_max + 1)
    cas = (j3 @ j3 - anticommutator(jp, jm) * 0.5).entries
    target = 0.25 * (alpha * alpha - 1)
    return {
        "[J3,J+]-J+": interior_residual(commutator(j3, jp) - jp, size),
        "[J3,J-]+J-": interior_residual(commutator(j3, jm) + jm, size),
        "[J+,J-]+2J3": interior_residual(commutator(jp, jm) + j3 * 2, size),
        "casimir": interior_residual(cas - target * I, size),
        "casimir_constant": float(np.mean(np.diag(cas)[:size].real)),
        "casimir_expected": target,
    }


def laguerre_identity_residual(n, alpha, grid):
    """Max over interior points of the residual of the half-line number-operator identity.

    Evaluates ``|(-y f'' - f' - (alpha+1)/2 f + alpha²/(4y) f + y/4 f) - n f|``
    for ``f = M_n^alpha`` with five-point central differences.
    """
    grid, h = _uniform_step(grid)
    if grid[0] <= 0:
        raise DomainError("grid must stay strictly away from y = 0")
    f = laguerre_rows(int(n), alpha, grid)[n]
    d1 = first_derivative_5pt(f, h)
    d2 = second_derivative_5pt(f, h)
    y = grid[2:-2]
    m = f[2:-2]
    lhs = -y * d2 - d1 - 0.5 * (alpha + 1) * m + alpha ** 2 / (4 * y) * m + 0.25 * y * m
    return float(np.max(np.abs(lhs - n * m)))


def bridge_hermite_laguerre(n, x):
    """Both sides of the two Hermite–Laguerre relations at ``x > 0``.

    Returns ``(lhs_even, rhs_even, lhs_odd, rhs_odd)`` where
    ``lhs_even = psi_{2n}(x)``, ``rhs_even = (-1)^n (x²)^{1/4} M_n^{-1/2}(x²)``,
    ``lhs_odd = psi_{2n+1}(x)``, ``rhs_odd = (-1)^n x (x²)^{-1/4} M_n^{1/2}(x²)``.
    Scalars in, scalars out; arrays in, arrays out.
    """
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise DomainError("bridge relations are evaluated at x > 0")
    psi = hermite_rows(2 * n + 1, x)
    sign = -1.0 if n % 2 else 1.0
    y = x * x
    out = (psi[2 * n],
           sign * y ** 0.25 * laguerre_rows(n, -0.5, y)[n],
           psi[2 * n + 1],
           sign * x * y ** -0.25 * laguerre_rows(n, 0.5, y)[n])
    return tuple(float(v[0]) for v in out) if scalar else out


def _gauss_legendre_panels(upper, m, per_panel=20):
    n_panels = max(1, int(m) // per_panel)
    per = max(1, int(m) // n_panels)
    t, w = np.polynomial.legendre.leggauss(per)
    edges = np.linspace(0.0, upper, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _signal_in_u(f):
    """``u -> f(u²)`` for a sampled half-line signal, interpolated in ``u``.

    The spline is built on ``y^{1/4} f(y)`` against ``u = sqrt(y)``, the
    quantity that actually enters the substituted integral, and is zero
    past the last sample.
    """
    u = np.sqrt(f.grid)
    h = np.sqrt(u) * f.values
    re = CubicSpline(u, h.real)
    im = CubicSpline(u, h.imag)
    u_max = u[-1]

    def g(uu):
        uu = np.asarray(uu, dtype=float)
        val = (re(uu) + 1j * im(uu)) / np.sqrt(uu)
        return np.where(uu <= u_max, val, 0.0)

    return g


def transform_T(kind, f, out_grid, m=400, cutoff=12.0):
    """Half-line sine/cosine transform of ``f`` sampled at ``out_grid``.

    ``g(y') = (2 pi)^(-1/2) ∫_0^inf trig(sqrt(y y')) (y y')^(-1/4) f(y) dy``
    with ``trig = sin`` for ``kind='plus'`` and ``cos`` for ``kind='minus'``.
    After ``y = u²``, ``y' = v²`` this becomes
    ``(2/sqrt(2 pi)) ∫_0^U trig(u v) sqrt(u/v) f(u²) du``, integrated with
    ``m`` Gauss–Legendre nodes in panels of 20 on ``[0, U]``.

    Parameters
    ----------
    kind : TransformKind or {'plus', 'minus'}
    f : callable or SampledSignal
        A callable receives an array of ``y`` values.  A sampled signal is
        interpolated and taken as zero beyond its last sample.
    out_grid : array of positive reals
    m : int
        Total number of quadrature nodes.
    cutoff : float
        Upper limit ``U`` in ``u`` for callables (``u = 12`` puts the
        Gaussian tail of the low-order basis functions below 1e-14).
        For sampled signals ``U = sqrt(grid[-1])``.
    """
    kind = TransformKind(kind)
    v = np.sqrt(_positive(out_grid))
    if isinstance(f, SampledSignal):
        if f.domain != "half_line":
            raise BasisMismatchError("transform_T needs a half_line signal")
        g = _signal_in_u(f)
        upper = float(np.sqrt(f.grid[-1]))
        u, w = _gauss_legendre_panels(upper, m)
        fu = g(u)
    elif callable(f):
        u, w = _gauss_legendre_panels(float(cutoff), m)
        fu = _call(f, u * u)
    else:
        raise TypeError("f must be a callable or a SampledSignal")
    trig = np.sin if kind is TransformKind.PLUS else np.cos
    kernel = trig(np.outer(v, u)) * np.sqrt(np.outer(1.0 / v, u))
    vals = (2.0 / np.sqrt(2.0 * np.pi)) * kernel @ (w * fu)
    return SampledSignal(v * v, vals, "half_line")


def _positive(grid):
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size and grid.min() <= 0:
        raise DomainError("output grid must be strictly positive")
    return grid


def _require_kind_basis(kind, c):
    if c.basis.family != "laguerre" or c.basis.alpha != kind.alpha:
        raise BasisMismatchError(
            f"{kind.value} transform needs Laguerre coefficients with alpha={kind.alpha}")


def frt_coeff(kind, c, k):
    """Order-``k`` fractional half-line transform in coefficient space.

    Applies the pre-phase ``exp(2 pi i (1/k - 1/2) n)`` and then the
    transform eigenvalue ``(-1)^n``, which nets to ``exp(2 pi i n / k)``.
    """
    kind = TransformKind(kind)
    _require_kind_basis(kind, c)
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    n_max = c.basis.n_max
    sign = np.where(np.arange(n_max + 1) % 2, -1.0, 1.0)
    return c.with_coeffs(sign * phase_factors(2 * np.pi * (1.0 / k - 0.5), n_max) * c.coeffs)


def frt_signal(kind, f, k, n_max, out_grid=None, rule=None):
    """Fractional half-line transform of a signal via its ``M_n^{±1/2}`` expansion."""
    kind = TransformKind(kind)
    spec = BasisSpec.laguerre(n_max, kind.alpha)
    c = analyze_halfline(f, spec, rule)
    if out_grid is None:
        if not isinstance(f, SampledSignal):
            raise ValueError("out_grid is required when f is a callable")
        out_grid = f.grid
    return synthesize_halfline(frt_coeff(kind, c, k), out_grid)


def halfline_split(c, k):
    """Split ``c`` into ``k`` residue-class pieces; piece ``r`` keeps ``n ≡ r (mod k)``."""
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    n = np.arange(c.basis.n_max + 1)
    return [CoeffVector(c.basis, np.where(n % k == r, c.coeffs, 0)) for r in range(int(k))]
