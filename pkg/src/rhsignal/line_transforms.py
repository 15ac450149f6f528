"""Fourier and fractional Fourier transforms on the Hermite basis, and (k, r) splits.

Hermite functions diagonalize both transforms, so in coefficient space they
are pure phase multipliers: ``c_n -> i**n c_n`` for the Fourier transform and
``c_n -> exp(i alpha n) c_n`` for the fractional one.  The only integral
evaluated here is :func:`fourier_quadrature`, which exists as an independent
route for cross-checking the coefficient-space transform.
"""
from __future__ import annotations

import numpy as np

from .exceptions import BasisMismatchError
from .line_basis import SampledSignal, _call, analyze, synthesize
from .line_operators import SubalgebraIndex

__all__ = [
    "fourier_coeff",
    "fourier_quadrature",
    "frft_coeff",
    "frft_composed",
    "frft_signal",
    "project",
    "project_via_frft",
    "subspace_energy",
    "residue_mask",
    "phase_factors",
]


def _require_hermite(c):
    if c.basis.family != "hermite":
        raise BasisMismatchError(f"expected Hermite coefficients, got {c.basis.family}")


def _powers_of_i(n_max):
    # exact values, no exp() rounding
    return np.array([1, 1j, -1, -1j])[np.arange(n_max + 1) % 4]


def fourier_coeff(c):
    """Fourier transform in coefficient space: ``c_n -> i**n c_n``."""
    _require_hermite(c)
    return c.with_coeffs(_powers_of_i(c.basis.n_max) * c.coeffs)


def fourier_quadrature(f, p_grid, rule):
    """``(2 pi)^(-1/2) ∫ exp(i p x) f(x) dx`` at each ``p`` by Gauss–Hermite quadrature.

    The rule is applied in the variable ``t = x / sqrt 2`` so that for
    ``f = psi_n`` the weighted integrand ``exp(t²) psi_n(sqrt2 t)`` is a
    polynomial; the oscillatory factor then converges spectrally.
    """
    if rule.kind != "gauss_hermite":
        raise ValueError("fourier_quadrature needs a gauss_hermite rule")
    t = rule.nodes
    x = np.sqrt(2.0) * t
    fx = _call(f, x)
    # exp(t²) is folded into the weight in log space
    w = np.sqrt(2.0) * np.exp(np.log(rule.weights) + t * t)
    p = np.asarray(p_grid, dtype=float).ravel()
    vals = np.exp(1j * np.outer(p, x)) @ (w * fx) / np.sqrt(2.0 * np.pi)
    return SampledSignal(p, vals, "full_line")


def frft_coeff(c, alpha):
    """Fractional Fourier transform of angle ``alpha``: ``c_n -> exp(i alpha n) c_n``.

    ``alpha`` must be real; ``alpha = pi/2`` reproduces :func:`fourier_coeff`
    exactly (see :func:`phase_factors`).
    """
    _require_hermite(c)
    return c.with_coeffs(phase_factors(alpha, c.basis.n_max) * c.coeffs)


def phase_factors(alpha, n_max):
    """``exp(i alpha n)`` for ``n = 0..n_max``.

    The angle ``alpha * n`` is formed and reduced modulo ``2 pi`` in extended
    precision.  When ``alpha`` is (to within two ulps) a multiple of ``pi/2``
    the phases are returned as exact ``±1, ±i``.
    """
    a = float(alpha)
    half_pi = np.arccos(np.longdouble(-1)) / 2
    j = np.rint(np.longdouble(a) / half_pi)
    if abs(np.longdouble(a) - j * half_pi) <= 2 * abs(np.spacing(a)):
        return np.array([1, 1j, -1, -1j])[(int(j) * np.arange(n_max + 1)) % 4]
    n = np.arange(n_max + 1, dtype=np.longdouble)
    theta = np.mod(np.longdouble(a) * n, 4 * half_pi)
    return np.exp(1j * theta.astype(float))


def frft_composed(c, k):
    """``FT ∘ exp(2 pi i (1/k - 1/4) N)``: the order-``k`` transform built from the Fourier one."""
    _require_hermite(c)
    n = np.arange(c.basis.n_max + 1)
    pre = c.with_coeffs(np.exp(2j * np.pi * (1.0 / k - 0.25) * n) * c.coeffs)
    return fourier_coeff(pre)


def frft_signal(f, alpha, spec, rule=None, out_grid=None):
    """Fractional Fourier transform of a signal through its Hermite expansion.

    Analyzes ``f``, applies :func:`frft_coeff`, and synthesizes on
    ``out_grid`` (default: the input grid, or an error for callables).
    """
    c = analyze(f, spec, rule)
    if out_grid is None:
        if not isinstance(f, SampledSignal):
            raise ValueError("out_grid is required when f is a callable")
        out_grid = f.grid
    return synthesize(frft_coeff(c, alpha), out_grid)


def residue_mask(n_max, idx):
    return (np.arange(n_max + 1) % idx.k) == idx.r


def _as_index(idx):
    return idx if isinstance(idx, SubalgebraIndex) else SubalgebraIndex(*idx)


def project(c, idx):
    """Keep ``c_n`` with ``n ≡ r (mod k)`` and zero the rest."""
    idx = _as_index(idx)
    return c.with_coeffs(np.where(residue_mask(c.basis.n_max, idx), c.coeffs, 0))


def project_via_frft(c, idx):
    """Same projector as :func:`project`, as a phase average of fractional transforms.

    ``P_{k,r} = (1/k) Σ_j exp(-2 pi i j r / k) FrFT_{2 pi j / k}``.
    """
    idx = _as_index(idx)
    k, r = idx.k, idx.r
    acc = np.zeros_like(c.coeffs)
    for j in range(k):
        acc += np.exp(-2j * np.pi * j * r / k) * frft_coeff(c, 2 * np.pi * j / k).coeffs
    return c.with_coeffs(acc / k)


def subspace_energy(c, k):
    """Energy ``Σ_{n ≡ r} |c_n|²`` in each residue class ``r = 0..k-1``."""
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    k = int(k)
    e = np.abs(c.coeffs) ** 2
    return np.array([e[r::k].sum() for r in range(k)])

