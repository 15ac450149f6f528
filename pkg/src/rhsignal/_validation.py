"""Input checks for the estimator layer.

sklearn's ``check_array`` rejects complex data, so these are thin stand-ins
that keep complex dtype and raise ``ValueError`` on anything malformed.
"""
from __future__ import annotations

import numbers

import numpy as np


def check_signal_matrix(X, n_features=None, name="X"):
    """Return ``X`` as a 2-D finite complex array of shape ``(n_samples, n_features)``.

    A 1-D input is read as a single sample.
    """
    arr = np.asarray(X)
    if arr.dtype == object:
        raise ValueError(f"{name} must be numeric, got dtype=object")
    arr = arr.astype(complex, copy=False)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 1-D or 2-D, got {arr.ndim}-D")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{name} is empty (shape {arr.shape})")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinity")
    if n_features is not None and arr.shape[1] != n_features:
        raise ValueError(f"{name} has {arr.shape[1]} features, expected {n_features}")
    return arr


def check_grid(grid, domain="full_line"):
    """Strictly increasing finite 1-D grid; strictly positive on the half line."""
    if grid is None:
        raise ValueError("grid is required")
    g = np.asarray(grid, dtype=float).ravel()
    if g.size < 2:
        raise ValueError("grid needs at least two points")
    if not np.all(np.isfinite(g)):
        raise ValueError("grid contains NaN or infinity")
    if np.any(np.diff(g) <= 0):
        raise ValueError("grid must be strictly increasing")
    if domain == "half_line" and g[0] <= 0:
        raise ValueError("half-line grid must be strictly positive")
    return g


def check_int(value, name, low=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if low is not None and value < low:
        raise ValueError(f"{name} must be >= {low}, got {value}")
    return int(value)


def check_real(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise ValueError(f"{name} must be a finite real number, got {value!r}")
    return float(value)
