import math

import numpy as np

from .exceptions import ValidationError


def is_power_of_two(n):
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0


def check_power_of_two(n, name):
    if not is_power_of_two(n):
        raise ValidationError(f"{name} must be a positive power of two, got {n!r}")
    return int(n)


def check_positive_int(n, name, minimum=1):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < minimum:
        raise ValidationError(f"{name} must be an integer >= {minimum}, got {n!r}")
    return int(n)


def check_conjugate_exponents(p, q, tol=1e-12):
    """Return q, validated against 1/p + 1/q = 1 (q=None means derive it)."""
    p = float(p)
    if not 1.0 <= p <= 2.0:
        raise ValidationError(f"p must lie in [1, 2], got {p}")
    if q is None:
        q = math.inf if p == 1.0 else p / (p - 1.0)
    q = float(q)
    if p == 1.0 and math.isinf(q):
        return q
    if math.isinf(q) or abs(1.0 / p + 1.0 / q - 1.0) > tol:
        raise ValidationError(f"(p, q) = ({p}, {q}) are not conjugate exponents")
    return q


def as_integer(value, name, tol=1e-9):
    """Round ``value`` to an integer, refusing anything further than ``tol`` away."""
    r = round(value)
    if abs(value - r) > tol:
        raise ValidationError(f"{name}={value!r} is not an integer")
    return int(r)


def check_signal_matrix(X, n_features=None):
    """Coerce ``X`` to a 2-D complex array of signals, one per row.

    sklearn's ``check_array`` refuses complex input, hence this helper.
    """
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[np.newaxis, :]
    if X.ndim != 2:
        raise ValidationError(f"expected a 2-D array of signals, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValidationError("signal samples must be finite")
    X = X.astype(np.complex128, copy=False)
    if n_features is not None and X.shape[1] != n_features:
        raise ValidationError(
            f"X has {X.shape[1]} samples per row, expected {n_features}"
        )
    return X
