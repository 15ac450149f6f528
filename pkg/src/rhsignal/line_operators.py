"""Truncated matrix representations of the oscillator / io(2) operators.

All matrices act on coefficient vectors in the Hermite basis ``{e_0..e_{n_max}}``.
Products of truncated matrices are wrong only in the last few rows/columns,
so every identity check restricts itself to an interior block.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .specfun import hermite_rows

__all__ = [
    "OperatorMatrix",
    "SubalgebraIndex",
    "ladder_ops",
    "canonical_ops",
    "commutator",
    "anticommutator",
    "casimir_matrix",
    "casimir_residual",
    "hermite_ode_residual",
    "index_ops",
    "subladder",
    "subladder_formula",
    "tower_indices",
    "verify_io2_subalgebra",
    "interior_residual",
]


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense square complex matrix with a declared bandwidth.

    ``entries[i, j]`` must vanish whenever ``|i - j| > bandwidth``.  The array
    is made read-only on construction.
    """

    entries: np.ndarray
    bandwidth: int

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {m.shape}")
        bw = int(self.bandwidth)
        if bw < 0:
            raise ValueError("bandwidth must be non-negative")
        bw = min(bw, max(m.shape[0] - 1, 0))
        i, j = np.indices(m.shape)
        if np.any(m[np.abs(i - j) > bw] != 0):
            raise ValueError(f"nonzero entries outside declared bandwidth {bw}")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "bandwidth", bw)

    @property
    def dim(self):
        return self.entries.shape[0]

    @property
    def n_max(self):
        return self.dim - 1

    def adjoint(self):
        return OperatorMatrix(self.entries.conj().T, self.bandwidth)

    def apply(self, vec):
        return self.entries @ np.asarray(vec, dtype=complex)

    def _check(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries + other.entries, max(self.bandwidth, other.bandwidth))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries - other.entries, max(self.bandwidth, other.bandwidth))

    def __neg__(self):
        return OperatorMatrix(-self.entries, self.bandwidth)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return OperatorMatrix(scalar * self.entries, self.bandwidth)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return OperatorMatrix(self.entries / scalar, self.bandwidth)

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries @ other.entries, self.bandwidth + other.bandwidth)

    def __repr__(self):
        return f"OperatorMatrix(dim={self.dim}, bandwidth={self.bandwidth})"


@dataclass(frozen=True)
class SubalgebraIndex:
    """Residue class ``r`` modulo ``k`` selecting the tower ``{e_{kq+r}}``."""

    k: int
    r: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        if int(self.r) != self.r or not 0 <= self.r < self.k:
            raise ValueError(f"r must satisfy 0 <= r < k={self.k}, got {self.r!r}")


def _check_n_max(n_max):
    if int(n_max) != n_max or n_max < 0:
        raise DomainError(f"n_max must be a non-negative integer, got {n_max!r}")
    return int(n_max)


def _identity(dim):
    return OperatorMatrix(np.eye(dim), 0)


def ladder_ops(n_max):
    """Lowering and raising operators ``(a, a_dag)``.

    ``a e_n = sqrt(n) e_{n-1}``; ``a_dag`` is the transpose of ``a``.
    """
    n_max = _check_n_max(n_max)
    a = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1)
    return OperatorMatrix(a, 1), OperatorMatrix(a.T, 1)


def canonical_ops(n_max):
    """Return ``(X, P, D_x, N, I)`` built from the ladder operators.

    ``X = (a + a_dag)/sqrt 2``, ``P = -i (a - a_dag)/sqrt 2``, ``D_x = i P``.
    """
    n_max = _check_n_max(n_max)
    a, ad = ladder_ops(n_max)
    s = 1.0 / np.sqrt(2.0)
    X = (a + ad) * s
    P = (a - ad) * (-1j * s)
    D = P * 1j
    N = OperatorMatrix(np.diag(np.arange(n_max + 1, dtype=float)), 0)
    return X, P, D, N, _identity(n_max + 1)


def commutator(A, B):
    """``AB - BA``; raises ValueError on a dimension mismatch."""
    return A @ B - B @ A


def anticommutator(A, B):
    return A @ B + B @ A


def interior_residual(M, size):
    """Max-abs entry of the leading ``size × size`` block of ``M`` (0 if empty)."""
    m = M.entries if isinstance(M, OperatorMatrix) else np.asarray(M)
    if size <= 0:
        return 0.0
    return float(np.max(np.abs(m[:size, :size])))


def casimir_matrix(n_max, form="ladder"):
    """The full truncated Casimir ``{a,a_dag}/2 - N - 1/2`` (or its X/D form).

    On the infinite matrix this is zero.  After truncation only the last
    diagonal entry survives, with value ``-(n_max + 1)/2``.
    """
    a, ad = ladder_ops(n_max)
    X, _, D, N, I = canonical_ops(n_max)
    if form == "ladder":
        C = anticommutator(a, ad) * 0.5
    elif form == "canonical":
        C = (X @ X - D @ D) * 0.5
    else:
        raise ValueError(f"form must be 'ladder' or 'canonical', got {form!r}")
    return C - N - I * 0.5


def casimir_residual(n_max):
    """Interior (rows/cols ``0..n_max-2``) residual of the io(2) Casimir, both forms."""
    n_max = _check_n_max(n_max)
    if n_max < 2:
        raise DomainError("casimir_residual needs n_max >= 2")
    size = n_max - 1
    return max(interior_residual(casimir_matrix(n_max, "ladder"), size),
               interior_residual(casimir_matrix(n_max, "canonical"), size))


def _uniform_step(grid, min_points=5):
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size < min_points:
        raise ValueError(f"need at least {min_points} grid points, got {grid.size}")
    d = np.diff(grid)
    h = d.mean()
    if h <= 0 or not np.allclose(d, h, rtol=1e-8, atol=0):
        raise ValueError("grid must be uniform and increasing")
    return grid, h


def second_derivative_5pt(f, h):
    """Five-point central second derivative at the interior points ``f[2:-2]``."""
    return (-f[4:] + 16 * f[3:-1] - 30 * f[2:-2] + 16 * f[1:-3] - f[:-4]) / (12 * h * h)


def first_derivative_5pt(f, h):
    return (-f[4:] + 8 * f[3:-1] - 8 * f[1:-3] + f[:-4]) / (12 * h)


def hermite_ode_residual(n, grid):
    """Max of ``|(x² psi_n - psi_n'')/2 - (n + 1/2) psi_n|`` over interior grid points.

    ``psi_n''`` comes from five-point central differences, so the result
    carries an ``O(h^4)`` truncation term on top of rounding.
    """
    grid, h = _uniform_step(grid)
    psi = hermite_rows(int(n), grid)[n]
    d2 = second_derivative_5pt(psi, h)
    x = grid[2:-2]
    p = psi[2:-2]
    return float(np.max(np.abs(0.5 * (x * x * p - d2) - (n + 0.5) * p)))


def index_ops(k, n_max):
    """Diagonal quotient and remainder operators: ``Q e_n = (n//k) e_n``, ``R e_n = (n%k) e_n``."""
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    n = np.arange(_check_n_max(n_max) + 1)
    return OperatorMatrix(np.diag(n // k), 0), OperatorMatrix(np.diag(n % k), 0)


def tower_indices(idx, n_max):
    return np.arange(idx.r, n_max + 1, idx.k)


def subladder(idx, n_max):
    """Tower ladder operators ``(A, A_dag)`` for the residue class ``idx``.

    ``A_dag e_{kq+r} = sqrt(q+1) e_{k(q+1)+r}`` inside the truncation; every
    basis vector outside the tower is sent to zero.  ``A`` is the transpose.
    """
    n_max = _check_n_max(n_max)
    k = idx.k
    if n_max < k:
        raise DomainError(f"subladder needs n_max >= k (= {k}), got {n_max}")
    Ad = np.zeros((n_max + 1, n_max + 1))
    for n in tower_indices(idx, n_max - k):
        Ad[n + k, n] = np.sqrt(n // k + 1)
    return OperatorMatrix(Ad.T, k), OperatorMatrix(Ad, k)


def subladder_formula(idx, n_max):
    """``(a_dag)^k sqrt(N+k-r) / sqrt(k prod_j (N+j))`` and its adjoint, unrestricted.

    This evaluates the defining operator expression by diagonal functional
    calculus on every basis vector.  On the tower it agrees with
    :func:`subladder`; off the tower it is generally nonzero.
    """
    n_max = _check_n_max(n_max)
    k, r = idx.k, idx.r
    _, ad = ladder_ops(n_max)
    n = np.arange(n_max + 1, dtype=float)
    prod = np.ones_like(n)
    for j in range(1, k + 1):
        prod *= n + j
    g = np.sqrt(n + k - r) / np.sqrt(k * prod)
    power = np.linalg.matrix_power(ad.entries, k)
    Ad = OperatorMatrix(power * g[None, :], k)
    return Ad.adjoint(), Ad


def _tower_block(M, rows):
    m = M.entries if isinstance(M, OperatorMatrix) else M
    return m[np.ix_(rows, rows)]


def verify_io2_subalgebra(idx, n_max):
    """Residuals of the io(2) relations for one tower.

    Returns a dict with the interior residuals of ``[Q, A_dag] - A_dag``,
    ``[Q, A] + A`` and ``[A, A_dag] - I`` (restricted to tower indices ``n``
    with ``n + k <= n_max``) and ``off_tower``, the largest entry of ``A`` or
    ``A_dag`` touching a basis vector outside the tower.
    """
    n_max = _check_n_max(n_max)
    A, Ad = subladder(idx, n_max)
    Q, _ = index_ops(idx.k, n_max)
    I = _identity(n_max + 1)
    inner = tower_indices(idx, n_max - idx.k)
    res = {
        "[Q,A_dag]-A_dag": commutator(Q, Ad) - Ad,
        "[Q,A]+A": commutator(Q, A) + A,
        "[A,A_dag]-I": commutator(A, Ad) - I,
    }
    out = {}
    for name, M in res.items():
        block = _tower_block(M, inner)
        out[name] = float(np.max(np.abs(block))) if block.size else 0.0
    off = np.ones(n_max + 1, dtype=bool)
    off[tower_indices(idx, n_max)] = False
    leak = 0.0
    for M in (A, Ad):
        m = M.entries
        if off.any():
            leak = max(leak, float(np.max(np.abs(m[off, :]))), float(np.max(np.abs(m[:, off]))))
    out["off_tower"] = leak
    return out
