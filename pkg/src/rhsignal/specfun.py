"""Hermite and generalized Laguerre functions, and Gaussian quadrature rules.

Both function families are evaluated with their *normalized* three-term
recurrences, carrying a per-point logarithmic scale so that neither the
Gaussian/exponential envelope nor the polynomial growth can overflow or
underflow along the way.  The same machinery gives the "weightless" rows
used by the quadrature routines: passing ``log_factor`` multiplies every
row by ``exp(log_factor)`` without ever forming that factor explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lgamma, pi, sqrt

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .exceptions import DomainError

__all__ = [
    "BasisSpec",
    "QuadratureRule",
    "hermite_function",
    "hermite_function_batch",
    "laguerre_function",
    "laguerre_function_batch",
    "gauss_hermite",
    "gauss_laguerre",
    "hermite_rows",
    "laguerre_rows",
    "quadrature_rows",
    "default_order",
    "hermite_derivatives",
    "laguerre_derivatives",
]

_PI_M14 = pi ** -0.25
# rescale threshold for the running recurrence values
_BIG = 1e100


@dataclass(frozen=True)
class BasisSpec:
    """Which orthonormal family and where it is truncated.

    Use :meth:`hermite` or :meth:`laguerre` rather than the raw constructor.
    """

    family: str
    n_max: int
    alpha: float | None = None

    def __post_init__(self):
        if self.family not in ("hermite", "laguerre"):
            raise ValueError(f"unknown basis family {self.family!r}")
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise ValueError(f"n_max must be a non-negative integer, got {self.n_max!r}")
        object.__setattr__(self, "n_max", int(self.n_max))
        if self.family == "laguerre":
            if self.alpha is None:
                raise ValueError("laguerre basis requires alpha")
            _check_alpha(self.alpha)
            object.__setattr__(self, "alpha", float(self.alpha))
        elif self.alpha is not None:
            raise ValueError("hermite basis takes no alpha")

    @classmethod
    def hermite(cls, n_max):
        return cls("hermite", n_max)

    @classmethod
    def laguerre(cls, n_max, alpha):
        return cls("laguerre", n_max, alpha)

    @property
    def size(self):
        return self.n_max + 1


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights for ``∫ g(x) w(x) dx ≈ Σ weights[i] g(nodes[i])``.

    ``kind`` is ``"gauss_hermite"`` (``w = exp(-x**2)`` on the line) or
    ``"gauss_laguerre"`` (``w = y**alpha * exp(-y)`` on the half line).
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    alpha: float | None = None
    order: int = field(init=False)

    def __post_init__(self):
        if self.kind not in ("gauss_hermite", "gauss_laguerre"):
            raise ValueError(f"unknown quadrature kind {self.kind!r}")
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise ValueError("nodes and weights must be equal-length non-empty 1-d arrays")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("quadrature nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "order", nodes.size)

    def __repr__(self):
        extra = f", alpha={self.alpha}" if self.kind == "gauss_laguerre" else ""
        return f"QuadratureRule(kind={self.kind!r}, order={self.order}{extra})"


def _check_alpha(alpha):
    if not np.isfinite(alpha) or alpha <= -1:
        raise DomainError(f"Laguerre parameter alpha must be > -1, got {alpha!r}")


def _finish(cur, log_scale):
    # cur * exp(log_scale) without forming exp(log_scale) on its own
    with np.errstate(divide="ignore"):
        mag = np.log(np.abs(cur)) + log_scale
    return np.where(cur == 0.0, 0.0, np.sign(cur) * np.exp(mag))


def hermite_rows(n_max, x, log_factor=0.0):
    """Rows ``psi_n(x) * exp(log_factor)`` for ``n = 0..n_max``.

    ``log_factor`` broadcasts against ``x``.  With ``log_factor = x**2 / 2``
    the rows are the normalized Hermite *polynomials*; quadrature code uses
    this to fold a weight in exactly once.
    """
    x = np.asarray(x, dtype=float).ravel()
    out = np.empty((n_max + 1, x.size))
    if x.size == 0:
        return out
    log_scale = -0.5 * x * x + np.broadcast_to(np.asarray(log_factor, dtype=float), x.shape)
    prev = np.zeros_like(x)
    cur = np.full_like(x, _PI_M14)
    out[0] = _finish(cur, log_scale)
    for n in range(n_max):
        nxt = sqrt(2.0 / (n + 1)) * x * cur - sqrt(n / (n + 1)) * prev
        prev, cur = cur, nxt
        s = np.maximum(np.abs(cur), np.abs(prev))
        big = s > _BIG
        if big.any():
            prev[big] /= s[big]
            cur[big] /= s[big]
            log_scale[big] += np.log(s[big])
        out[n + 1] = _finish(cur, log_scale)
    return out


def laguerre_rows(n_max, alpha, y, log_factor=0.0):
    """Rows ``M_n^alpha(y) * exp(log_factor)`` for ``n = 0..n_max``; ``y > 0``."""
    _check_alpha(alpha)
    y = np.asarray(y, dtype=float).ravel()
    out = np.empty((n_max + 1, y.size))
    if y.size == 0:
        return out
    if np.any(y <= 0):
        raise DomainError("Laguerre functions are evaluated on y > 0 only")
    log_scale = (0.5 * alpha * np.log(y) - 0.5 * y - 0.5 * lgamma(alpha + 1.0)
                 + np.broadcast_to(np.asarray(log_factor, dtype=float), y.shape))
    prev = np.zeros_like(y)
    cur = np.ones_like(y)
    out[0] = _finish(cur, log_scale)
    for n in range(n_max):
        nxt = ((2 * n + alpha + 1 - y) * cur - sqrt(n * (n + alpha)) * prev) / sqrt(
            (n + 1) * (n + alpha + 1))
        prev, cur = cur, nxt
        s = np.maximum(np.abs(cur), np.abs(prev))
        big = s > _BIG
        if big.any():
            prev[big] /= s[big]
            cur[big] /= s[big]
            log_scale[big] += np.log(s[big])
        out[n + 1] = _finish(cur, log_scale)
    return out


def hermite_function(n, x):
    """Normalized Hermite function ``exp(-x²/2) H_n(x) / sqrt(2^n n! sqrt(pi))``.

    Examples
    --------
    >>> round(hermite_function(0, 0.0), 10)
    0.7511255445
    """
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    return float(hermite_rows(int(n), [x])[n, 0])


def hermite_function_batch(n_max, xs):
    """Matrix with row ``n`` holding ``psi_n`` on ``xs``; shape ``(n_max + 1, len(xs))``."""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    return hermite_rows(int(n_max), xs)


def laguerre_function(n, alpha, y):
    """Normalized generalized Laguerre function ``M_n^alpha(y)``.

    ``sqrt(n!/Gamma(n+alpha+1)) y^(alpha/2) exp(-y/2) L_n^alpha(y)``, orthonormal
    on ``(0, inf)``.  Raises :class:`DomainError` for ``y <= 0`` or ``alpha <= -1``.
    """
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    if not y > 0:
        raise DomainError(f"y must be positive, got {y!r}")
    return float(laguerre_rows(int(n), alpha, [y])[n, 0])


def laguerre_function_batch(n_max, alpha, ys):
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    return laguerre_rows(int(n_max), alpha, ys)


def _eig_nodes(diag, off):
    try:
        return eigh_tridiagonal(diag, off, eigvals_only=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise RuntimeError(f"Jacobi-matrix eigensolve failed: {exc}") from exc


def gauss_hermite(m):
    """Gauss–Hermite rule with ``m`` points for the weight ``exp(-x**2)``.

    Nodes are eigenvalues of the symmetric Jacobi matrix (Golub–Welsch).
    Weights come from the Christoffel function ``1 / Σ_{n<m} h_n(x_i)²`` of the
    orthonormal polynomials, evaluated in log space, which keeps the tiny
    outer weights accurate to full relative precision.
    """
    m = int(m)
    if m < 1:
        raise DomainError(f"quadrature order must be >= 1, got {m}")
    off = np.sqrt(np.arange(1, m) / 2.0)
    x = np.sort(_eig_nodes(np.zeros(m), off))
    x = 0.5 * (x - x[::-1])
    rows = hermite_rows(m - 1, x)
    # Σψ_n² may be tiny far out; rescale before the log
    peak = np.max(np.abs(rows), axis=0)
    log_sum = 2.0 * np.log(peak) + np.log(np.sum((rows / peak) ** 2, axis=0))
    w = np.exp(-x * x - log_sum)
    w = 0.5 * (w + w[::-1])
    return QuadratureRule("gauss_hermite", x, w)


def gauss_laguerre(m, alpha=0.0):
    """Gauss–Laguerre rule with ``m`` points for the weight ``y**alpha exp(-y)``."""
    m = int(m)
    if m < 1:
        raise DomainError(f"quadrature order must be >= 1, got {m}")
    _check_alpha(alpha)
    n = np.arange(m)
    diag = 2.0 * n + alpha + 1.0
    off = np.sqrt(n[1:] * (n[1:] + alpha))
    y = np.sort(_eig_nodes(diag, off))
    rows = laguerre_rows(m - 1, alpha, y)
    peak = np.max(np.abs(rows), axis=0)
    log_sum = 2.0 * np.log(peak) + np.log(np.sum((rows / peak) ** 2, axis=0))
    w = np.exp(alpha * np.log(y) - y - log_sum)
    return QuadratureRule("gauss_laguerre", y, w, alpha=float(alpha))


def quadrature_rows(spec, rule):
    """Basis rows with the quadrature weight folded in.

    Returns ``B`` such that ``B @ f(rule.nodes)`` approximates
    ``∫ phi_n(t) f(t) dt`` for every basis function ``phi_n`` of ``spec``.
    """
    if spec.family == "hermite":
        if rule.kind != "gauss_hermite":
            raise ValueError("Hermite analysis needs a gauss_hermite rule")
        x = rule.nodes
        return hermite_rows(spec.n_max, x, np.log(rule.weights) + x * x)
    if rule.kind != "gauss_laguerre":
        raise ValueError("Laguerre analysis needs a gauss_laguerre rule")
    y = rule.nodes
    log_factor = np.log(rule.weights) + y - rule.alpha * np.log(y)
    return laguerre_rows(spec.n_max, spec.alpha, y, log_factor)


def default_order(n_max):
    return 2 * int(n_max) + 32


def hermite_derivatives(n, x):
    """``(psi_n, psi_n', psi_n'')`` on ``x`` from the ladder relations.

    ``psi_n' = sqrt(n/2) psi_{n-1} - sqrt((n+1)/2) psi_{n+1}``, applied twice.
    """
    x = np.asarray(x, dtype=float).ravel()
    rows = np.vstack([np.zeros((2, x.size)), hermite_rows(n + 2, x)])
    p = lambda j: rows[j + 2]  # noqa: E731  (psi_j, zero for j < 0)
    d1 = sqrt(n / 2) * p(n - 1) - sqrt((n + 1) / 2) * p(n + 1)
    d2 = 0.5 * (sqrt(n * (n - 1)) * p(n - 2) - (2 * n + 1) * p(n)
                + sqrt((n + 1) * (n + 2)) * p(n + 2))
    return p(n), d1, d2


def laguerre_derivatives(n, alpha, y):
    """``(M_n, M_n', M_n'')`` on ``y > 0`` from the su(1,1) raising relation.

    Uses ``y M_j' = sqrt((j+1)(j+alpha+1)) M_{j+1} - (j + 1 + (alpha - y)/2) M_j``
    and its derivative.
    """
    y = np.asarray(y, dtype=float).ravel()
    rows = laguerre_rows(n + 2, alpha, y)

    def d1(j):
        return (sqrt((j + 1) * (j + alpha + 1)) * rows[j + 1]
                - (j + 1 + 0.5 * (alpha - y)) * rows[j]) / y

    m, m1 = rows[n], d1(n)
    a = sqrt((n + 1) * (n + alpha + 1))
    b = n + 1 + 0.5 * (alpha - y)
    m2 = (a * d1(n + 1) - b * m1 + 0.5 * m - m1) / y
    return m, m1, m2
