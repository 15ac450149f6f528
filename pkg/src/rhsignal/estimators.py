"""scikit-learn transformers over the functional core.

Rows of ``X`` are signals sampled on a shared grid (expansions) or
coefficient vectors (phase transforms and filters).  All of them keep complex
dtype, so they chain in a :class:`sklearn.pipeline.Pipeline`::

    pipe = make_pipeline(HermiteExpansion(grid, n_max=24),
                         FractionalFourier(angle=np.pi / 3),
                         ResidueClassFilter(k=3, keep=(1,)))
    coeffs = pipe.fit_transform(X)
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_grid, check_int, check_real, check_signal_matrix
from .line_basis import SampledSignal, _basis_rows, _check_extent, trapezoid_weights
from .line_transforms import phase_factors
from .specfun import BasisSpec

__all__ = ["HermiteExpansion", "LaguerreExpansion", "FractionalFourier", "ResidueClassFilter"]


class _Expansion(TransformerMixin, BaseEstimator):
    _domain = "full_line"

    def _spec(self):
        raise NotImplementedError

    def fit(self, X=None, y=None):
        """Precompute the analysis and synthesis matrices for ``grid``.

        ``X`` is optional; when given its width must match the grid.
        """
        grid = check_grid(self.grid, self._domain)
        spec = self._spec()
        # reuse the library's turning-point check on a dummy signal
        _check_extent(SampledSignal(grid, np.zeros(grid.size), self._domain), spec)
        if X is not None:
            check_signal_matrix(X, grid.size)
        rows = _basis_rows(spec, grid)
        w = np.sqrt(trapezoid_weights(grid))
        self.analysis_ = np.linalg.pinv(rows.T * w[:, None]) * w[None, :]
        self.synthesis_ = rows.T
        self.grid_ = grid
        self.basis_ = spec
        self.n_features_in_ = grid.size
        return self

    def transform(self, X):
        """Coefficients, shape ``(n_samples, n_max + 1)``."""
        check_is_fitted(self, "analysis_")
        X = check_signal_matrix(X, self.n_features_in_)
        return X @ self.analysis_.T

    def inverse_transform(self, C):
        """Signals on ``grid`` from coefficient rows."""
        check_is_fitted(self, "synthesis_")
        C = check_signal_matrix(C, self.basis_.size, name="C")
        return C @ self.synthesis_.T


class HermiteExpansion(_Expansion):
    """Least-squares Hermite expansion of signals sampled on a common grid.

    Parameters
    ----------
    grid : array-like
        Sample positions; must reach ``±sqrt(2 n_max + 1)``.
    n_max : int, default 16
    """

    def __init__(self, grid=None, n_max=16):
        self.grid = grid
        self.n_max = n_max

    def _spec(self):
        return BasisSpec.hermite(check_int(self.n_max, "n_max", 0))


class LaguerreExpansion(_Expansion):
    """Least-squares expansion in ``M_n^alpha`` on a positive grid."""

    _domain = "half_line"

    def __init__(self, grid=None, n_max=16, alpha=0.0):
        self.grid = grid
        self.n_max = n_max
        self.alpha = alpha

    def _spec(self):
        return BasisSpec.laguerre(check_int(self.n_max, "n_max", 0),
                                  check_real(self.alpha, "alpha"))


class FractionalFourier(TransformerMixin, BaseEstimator):
    """Multiply coefficient ``n`` by ``exp(i angle n)``; ``pi/2`` is the Fourier transform."""

    def __init__(self, angle=np.pi / 2):
        self.angle = angle

    def fit(self, X, y=None):
        X = check_signal_matrix(X)
        self.phases_ = phase_factors(check_real(self.angle, "angle"), X.shape[1] - 1)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "phases_")
        return check_signal_matrix(X, self.n_features_in_) * self.phases_

    def inverse_transform(self, X):
        check_is_fitted(self, "phases_")
        return check_signal_matrix(X, self.n_features_in_) * np.conj(self.phases_)


class ResidueClassFilter(TransformerMixin, BaseEstimator):
    """Zero every coefficient whose index mod ``k`` is not in ``keep``."""

    def __init__(self, k=4, keep=(0,)):
        self.k = k
        self.keep = keep

    def fit(self, X, y=None):
        k = check_int(self.k, "k", 1)
        keep = [check_int(r, "keep entry", 0) for r in np.atleast_1d(self.keep).tolist()]
        if any(r >= k for r in keep):
            raise ValueError(f"keep entries must lie in [0, {k}), got {self.keep!r}")
        X = check_signal_matrix(X)
        self.mask_ = np.isin(np.arange(X.shape[1]) % k, keep)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "mask_")
        return np.where(self.mask_, check_signal_matrix(X, self.n_features_in_), 0)
