"""Discrete Zak transform on the fundamental domain and its identities.

Grid nodes sit exactly on sample locations, so quasi-periodicity, unitarity
and the round trip are discrete identities rather than approximations.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft
from scipy.signal import fftconvolve

from ._validation import as_integer, check_positive_int
from .exceptions import ValidationError
from .fourier import fft_workers
from .signals import SampledSignal, unit_blocks


@dataclass(frozen=True, eq=False)
class ZakGrid:
    """``values[m, l] = Zg(m / M_x, l / N_y)`` on ``[0, 1)²``.

    ``quasi_periodic=False`` extends the stored values periodically in both
    variables instead; that only exists to exercise the diagnostics of the
    argument module on data that is not a Zak transform.
    """

    values: np.ndarray
    truncation_residual: float = 0.0
    source_window: tuple[int, int] | None = None
    quasi_periodic: bool = True

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128)
        if v.ndim != 2:
            raise ValidationError("Zak grid values must be a 2-D array")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def M_x(self) -> int:
        return self.values.shape[0]

    @property
    def N_y(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self):
        return self.values.shape


def zak_transform(s: SampledSignal, M_x: int | None = None, N_y: int | None = None) -> ZakGrid:
    """Sum ``Σ_k s(x - k) e^{2πiky}`` over every shift the window holds.

    ``M_x`` must divide the samples-per-unit of ``s``; ``N_y`` defaults to the
    number of unit intervals in the window, where the grid is exactly unitary.
    Smaller ``N_y`` folds the shift index, larger ``N_y`` zero-pads it.
    """
    ks, blocks = unit_blocks(s)
    k0 = int(ks[0])
    rate = s.rate
    M_x = rate if M_x is None else check_positive_int(M_x, "M_x")
    if rate % M_x:
        raise ValidationError(f"M_x={M_x} does not divide the sampling rate {rate}")
    n_shift = blocks.shape[0]
    N_y = n_shift if N_y is None else check_positive_int(N_y, "N_y")
    A = blocks[:, :: rate // M_x]
    # row j holds s(x + k0 + j), i.e. shift k = -(k0 + j)
    pad = (-n_shift) % N_y
    if pad:
        A = np.concatenate([A, np.zeros((pad, M_x), dtype=A.dtype)])
    folded = A.reshape(-1, N_y, M_x).sum(axis=0)
    spectrum = sfft.fft(folded, axis=0, workers=fft_workers())
    l = np.arange(N_y)
    phase = np.exp(2j * np.pi * np.mod(-k0 * l, N_y) / N_y)
    values = (spectrum * phase[:, None]).T
    edge = np.abs(blocks[[0, -1]]) ** 2
    residual = float(edge.sum() * s.step)
    return ZakGrid(values, residual, (n_shift // 2, rate))


def extend_nodes(grid: ZakGrid, ix, iy):
    """Values at integer node indices ``(ix / M_x, iy / N_y)`` anywhere in ℝ²."""
    ix = np.asarray(ix, dtype=np.int64)
    iy = np.asarray(iy, dtype=np.int64)
    q, m = np.divmod(ix, grid.M_x)
    l = np.mod(iy, grid.N_y)
    out = grid.values[m, l]
    if grid.quasi_periodic:
        out = out * np.exp(2j * np.pi * np.mod(q * l, grid.N_y) / grid.N_y)
    return out


def zak_extend(grid: ZakGrid, x: float, y: float) -> complex:
    """Fold ``(x, y)`` into ``[0, 1)²`` using ``Z(x+1, y) = e^{2πiy} Z(x, y)``
    and ``Z(x, y+1) = Z(x, y)``; the folded point must be a grid node.
    """
    try:
        ix = as_integer(x * grid.M_x, "x * M_x")
        iy = as_integer(y * grid.N_y, "y * N_y")
    except ValidationError as exc:
        raise ValidationError(f"({x}, {y}) does not fold onto a grid node: {exc}") from None
    return complex(extend_nodes(grid, ix, iy))


def check_fourier_zak(grid_g: ZakGrid, grid_ghat: ZakGrid) -> float:
    """Max residual of ``Zĝ(x, y) = e^{2πixy} Zg(-y, x)`` over the nodes."""
    if grid_g.shape != grid_ghat.shape or grid_g.M_x != grid_g.N_y:
        raise ValidationError("Fourier-Zak check needs two square grids of equal size")
    n = grid_g.M_x
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    rhs = np.exp(2j * np.pi * np.mod(a * b, n * n) / (n * n)) * extend_nodes(grid_g, -b, a)
    return float(np.max(np.abs(grid_ghat.values - rhs)))


def convolve(s: SampledSignal, kernel: SampledSignal) -> SampledSignal:
    """``(s ∗ kernel)(t_n) = h Σ_j s_j kernel(t_n - t_j)`` on the window of ``s``."""
    if abs(s.step - kernel.step) > 1e-15:
        raise ValidationError("signal and kernel must share a sample spacing")
    offset = as_integer(-kernel.start / s.step, "kernel offset")
    full = fftconvolve(s.samples, kernel.samples) * s.step
    if offset < 0:
        full = np.concatenate([np.zeros(-offset, dtype=full.dtype), full])
        offset = 0
    out = full[offset: offset + len(s)]
    if len(out) < len(s):
        out = np.concatenate([out, np.zeros(len(s) - len(out), dtype=out.dtype)])
    return s.with_samples(out)


def zak_convolution_sides(s: SampledSignal, kernel: SampledSignal, N_y: int | None = None):
    """Both sides of ``Z(g ∗ φ) = Zg ∗_x φ`` as ``(lhs, rhs)`` value arrays."""
    lhs = zak_transform(convolve(s, kernel), None, N_y).values
    grid = zak_transform(s, None, N_y)
    h = s.step
    offset = as_integer(-kernel.start / h, "kernel offset")
    nk = len(kernel)
    e_lo = offset - nk + 1
    e = e_lo + np.arange(grid.M_x + nk - 1)
    rows = extend_nodes(grid, e[:, None], np.arange(grid.N_y)[None, :])
    conv = fftconvolve(rows, kernel.samples[:, None], axes=0) * h
    rhs = conv[nk - 1: nk - 1 + grid.M_x]
    return lhs, rhs


def zak_convolution_check(s: SampledSignal, kernel: SampledSignal, N_y: int | None = None) -> float:
    lhs, rhs = zak_convolution_sides(s, kernel, N_y)
    return float(np.max(np.abs(lhs - rhs)))


def inverse_zak(grid: ZakGrid) -> SampledSignal:
    """Recover ``g(x - k) = ∫ Zg(x, y) e^{-2πiky} dy`` on ``[-N_y/2, N_y/2)``."""
    n_y = grid.N_y
    if n_y % 2:
        raise ValidationError("inverse_zak needs an even N_y")
    sign = np.where(np.arange(n_y) % 2, -1.0, 1.0)
    rows = sfft.ifft(grid.values * sign[None, :], axis=1, workers=fft_workers())
    samples = rows.T.reshape(-1)
    return SampledSignal(float(-(n_y // 2)), 1.0 / grid.M_x, samples, "time")


def grid_mean_square(grid: ZakGrid) -> float:
    return float(np.mean(np.abs(grid.values) ** 2))


def grid_to_rows(grid: ZakGrid):
    """Yield ``(m, l, re, im)`` tuples in row-major order."""
    v = grid.values
    for m in range(grid.M_x):
        for l in range(grid.N_y):
            z = v[m, l]
            yield m, l, float(z.real), float(z.imag)
