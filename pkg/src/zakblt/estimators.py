"""scikit-learn style wrappers.

Each row of ``X`` is one time-domain signal sampled on ``[-T, T)`` at ``M``
samples per unit interval (``2*T*M`` columns, complex allowed).  The wrappers
only add parameter handling and validation on top of the functional API, so
they compose with ``Pipeline``, ``clone`` and ``get_params``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_positive_int, check_power_of_two, check_signal_matrix
from .blt import DEFAULT_SWEEP, KernelSpec, smooth, sweep_signal
from .fourier import fourier
from .riesz import DEFAULT_FLOOR, bounds_from_zak, is_riesz_basis
from .signals import SampledSignal
from .zak import ZakGrid, inverse_zak, zak_transform


class _SignalRows:
    """Shared ``T``/``M`` handling."""

    def _check_window(self):
        T = check_positive_int(self.T, "T")
        M = check_power_of_two(self.M, "M")
        return T, M

    def _signals(self, X, reset=False):
        T, M = self._check_window()
        X = check_signal_matrix(X, None if reset else getattr(self, "n_features_in_", None))
        if X.shape[1] != 2 * T * M:
            raise ValueError(f"rows must hold 2*T*M = {2 * T * M} samples, got {X.shape[1]}")
        if reset:
            self.n_features_in_ = X.shape[1]
        return [SampledSignal(float(-T), 1.0 / M, row) for row in X]


class ZakTransformer(_SignalRows, TransformerMixin, BaseEstimator):
    """Map signals to Zak grids of shape ``(M_x, N_y)``.

    ``transform`` returns a complex array ``(n_signals, M_x, N_y)``;
    ``inverse_transform`` goes back to rows on ``[-N_y/2, N_y/2)``.
    """

    def __init__(self, T=32, M=256, M_x=None, N_y=None):
        self.T = T
        self.M = M
        self.M_x = M_x
        self.N_y = N_y

    def fit(self, X, y=None):
        T, M = self._check_window()
        self._signals(X, reset=True)
        self.grid_shape_ = (self.M_x or M, self.N_y or 2 * T)
        return self

    def transform(self, X):
        check_is_fitted(self, "grid_shape_")
        return np.stack([zak_transform(s, self.M_x, self.N_y).values for s in self._signals(X)])

    def inverse_transform(self, Z):
        check_is_fitted(self, "grid_shape_")
        Z = np.asarray(Z)
        if Z.ndim == 2:
            Z = Z[np.newaxis]
        return np.stack([inverse_zak(ZakGrid(z)).samples for z in Z])


class SpectralSmoother(_SignalRows, TransformerMixin, BaseEstimator):
    """Convolve each row with ``φ(t) = Rρ(Rt)`` (spectrum times ``ρ̂(ξ/R)``)."""

    def __init__(self, scale=1.0, T=32, M=256):
        self.scale = scale
        self.T = T
        self.M = M

    def fit(self, X, y=None):
        self.kernel_ = KernelSpec(float(self.scale))
        self._signals(X, reset=True)
        return self

    def transform(self, X):
        check_is_fitted(self, "kernel_")
        return np.stack([smooth(s, self.kernel_).samples for s in self._signals(X)])


class RieszBoundEstimator(_SignalRows, BaseEstimator):
    """Zak-range Riesz bounds per signal; ``predict`` says which rows generate Riesz bases."""

    def __init__(self, T=32, M=256, M_x=None, N_y=None, floor=DEFAULT_FLOOR):
        self.T = T
        self.M = M
        self.M_x = M_x
        self.N_y = N_y
        self.floor = floor

    def _bounds(self, X, reset=False):
        return [bounds_from_zak(zak_transform(s, self.M_x, self.N_y)) for s in self._signals(X, reset)]

    def fit(self, X, y=None):
        self.bounds_ = self._bounds(X, reset=True)
        self.A_ = np.array([b.A for b in self.bounds_])
        self.B_ = np.array([b.B for b in self.bounds_])
        return self

    def predict(self, X):
        check_is_fitted(self, "bounds_")
        return np.array([is_riesz_basis(b, self.floor) for b in self._bounds(X)])


class TailSweepTransformer(_SignalRows, TransformerMixin, BaseEstimator):
    """Features ``R·L·lhs(R, L)`` over the ``Rs x Ls`` grid, R-major.

    ``fit`` also stores the per-row infimum as ``inf_normalized_``, the
    empirical constant of the two-sided tail bound.
    """

    def __init__(self, Rs=DEFAULT_SWEEP, Ls=DEFAULT_SWEEP, T=512, M=1024, strict=False):
        self.Rs = Rs
        self.Ls = Ls
        self.T = T
        self.M = M
        self.strict = strict

    def _reports(self, X, reset=False):
        out = []
        for s in self._signals(X, reset):
            out.append(sweep_signal(s, fourier(s), list(self.Rs), list(self.Ls), self.strict))
        return out

    def fit(self, X, y=None):
        self.reports_ = self._reports(X, reset=True)
        self.inf_normalized_ = np.array([min(r.normalized for r in rows) for rows in self.reports_])
        return self

    def transform(self, X):
        check_is_fitted(self, "reports_")
        return np.array([[r.normalized for r in rows] for rows in self._reports(X)])
