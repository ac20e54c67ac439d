"""Riesz-basis bounds of the integer-lattice Gabor system, estimated two ways."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.fft as sfft

from ._validation import check_positive_int
from .exceptions import ValidationError
from .signals import GeneratorSpec, default_window, sample
from .zak import ZakGrid

DEFAULT_FLOOR = 1e-6


@dataclass(frozen=True)
class RieszBounds:
    A: float
    B: float
    method: str
    resolution: dict = field(default_factory=dict)
    argmin: tuple[float, float] | None = None

    def __post_init__(self):
        if self.method not in ("zak_range", "gram_eigen"):
            raise ValidationError(f"unknown method {self.method!r}")


def bounds_from_zak(grid: ZakGrid) -> RieszBounds:
    """Grid extrema of ``|Zg|²`` as stand-ins for the essential inf and sup."""
    sq = np.abs(grid.values) ** 2
    m, l = np.unravel_index(int(np.argmin(sq)), sq.shape)
    return RieszBounds(
        float(sq.min()),
        float(sq.max()),
        "zak_range",
        {"M_x": grid.M_x, "N_y": grid.N_y},
        (float(m) / grid.M_x, float(l) / grid.N_y),
    )


def gram_matrix(spec: GeneratorSpec, P: int, T: int | None = None, M: int | None = None):
    """Gram matrix of ``e^{2πint} g(t - m)`` for ``|m|, |n| <= P``.

    Rows are ordered with ``m`` major and ``n`` minor.  Inner products use the
    cell quadrature on a window widened by ``P`` so every shift stays inside.
    """
    P = check_positive_int(P, "P", minimum=4)
    T0, M0 = default_window(spec)
    M = M0 if M is None else M
    T = T0 + P if T is None else check_positive_int(T, "T")
    if T <= P:
        raise ValidationError(f"window half-width T={T} cannot hold shifts up to P={P}")
    s = sample(spec, T, M)
    g = s.samples
    n = len(g)
    shifts = np.arange(-P, P + 1)
    shifted = np.zeros((shifts.size, n), dtype=np.complex128)
    for a, m in enumerate(shifts):
        k = m * M
        if k >= 0:
            shifted[a, k:] = g[: n - k]
        else:
            shifted[a, :k] = g[-k:]
    # c[a, b, d] = h Σ_t g(t - m_a) conj(g(t - m_b)) e^{2πi d t}, d mod M
    conj = np.conj(shifted)
    folded = np.empty((shifts.size, shifts.size, M), dtype=np.complex128)
    for a in range(shifts.size):
        folded[a] = (shifted[a] * conj).reshape(shifts.size, 2 * T, M).sum(axis=1)
    coeff = sfft.ifft(folded, axis=-1) * (M * s.step)
    d = (shifts[:, None] - shifts[None, :]) % M
    size = shifts.size
    G = coeff[:, :, d]  # (m, m', n, n')
    return G.transpose(0, 2, 1, 3).reshape(size * size, size * size)


def gram_bounds(spec: GeneratorSpec, P: int, T: int | None = None, M: int | None = None) -> RieszBounds:
    """Extreme eigenvalues of the finite Gram section."""
    G = gram_matrix(spec, P, T, M)
    G = 0.5 * (G + G.conj().T)
    eig = np.linalg.eigvalsh(G)
    return RieszBounds(max(float(eig[0]), 0.0), float(eig[-1]), "gram_eigen", {"P": P})


def is_riesz_basis(b: RieszBounds, floor: float = DEFAULT_FLOOR) -> bool:
    if floor <= 0:
        raise ValidationError("floor must be positive")
    return bool(b.A >= floor)
