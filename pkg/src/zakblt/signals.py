"""Generator catalog, sampling, and real-line quadrature.

Every sampled signal lives on a uniform grid ``t_n = start + n * step`` whose
cells ``[t_n, t_n + step)`` tile the window.  With ``start`` an integer and
``1/step`` an integer, unit intervals ``[k, k+1)`` are unions of whole cells,
so the piecewise-constant cell quadrature used throughout integrates indicator
functions exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from ._validation import (
    check_conjugate_exponents,
    check_positive_int,
    check_power_of_two,
)
from .exceptions import ResourceError, TruncationError, ValidationError

GAUSSIAN_NORM = 2.0 ** 0.25
DEFAULT_SAMPLE_CAP = 1 << 26

KINDS = ("chi01", "gaussian", "blt_counterexample", "sum_with_fourier", "from_zak_grid")
CATALOG = ("chi01", "gaussian", "twisted_chi", "blt_counterexample", "sum_with_fourier")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)
    has_closed_form_fourier: bool = False
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown generator kind {self.kind!r}")
        if not self.name:
            object.__setattr__(self, "name", self.kind)
        if self.kind == "blt_counterexample":
            check_positive_int(self.params.get("kmax"), "kmax")
        elif self.kind == "sum_with_fourier":
            base = self.params.get("base")
            if not isinstance(base, GeneratorSpec) or not base.has_closed_form_fourier:
                raise ValidationError("sum_with_fourier needs a base with a closed-form transform")
        elif self.kind == "from_zak_grid":
            if "zak" not in self.params and "grid" not in self.params:
                raise ValidationError("from_zak_grid needs a 'zak' callable or a 'grid'")


@dataclass(frozen=True, eq=False)
class SampledSignal:
    start: float
    step: float
    samples: np.ndarray
    domain_tag: str = "time"
    generator: GeneratorSpec | None = None

    def __post_init__(self):
        if self.step <= 0:
            raise ValidationError("step must be positive")
        if self.domain_tag not in ("time", "frequency"):
            raise ValidationError(f"bad domain tag {self.domain_tag!r}")
        arr = np.asarray(self.samples, dtype=np.complex128)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self):
        return self.samples.shape[0]

    @property
    def rate(self) -> int:
        """Samples per unit interval."""
        return int(round(1.0 / self.step))

    @property
    def stop(self) -> float:
        return self.start + len(self) * self.step

    @property
    def half_width(self) -> float:
        """Largest ``W`` with ``[-W, W)`` inside the window."""
        return min(-self.start, self.stop)

    @property
    def grid(self) -> np.ndarray:
        return self.start + self.step * np.arange(len(self))

    def with_samples(self, samples, domain_tag=None) -> "SampledSignal":
        return SampledSignal(
            self.start, self.step, samples, domain_tag or self.domain_tag, None
        )


def twisted_phase(x, y):
    """Unimodular quasi-periodic-compatible phase ``exp(2 pi i sin(2 pi x) sin(2 pi y))``.

    It is 1-periodic in both variables and equals 1 on the boundary of the unit
    square, so multiplying the Zak transform of the indicator of [0, 1) by it
    yields another orthonormal-basis generator.
    """
    return np.exp(2j * np.pi * np.sin(2 * np.pi * np.asarray(x)) * np.sin(2 * np.pi * np.asarray(y)))


def make_generator(name: str, **params) -> GeneratorSpec:
    """Build a catalog generator by id."""
    if name == "chi01":
        return GeneratorSpec("chi01", {}, True)
    if name == "gaussian":
        return GeneratorSpec("gaussian", {}, True)
    if name == "blt_counterexample":
        return GeneratorSpec("blt_counterexample", {"kmax": int(params.get("kmax", 10))}, True)
    if name == "sum_with_fourier":
        base = params.get("base") or make_generator(
            "blt_counterexample", kmax=params.get("kmax", 10)
        )
        return GeneratorSpec("sum_with_fourier", {"base": base}, True)
    if name == "twisted_chi":
        return GeneratorSpec("from_zak_grid", {"zak": twisted_phase}, False, "twisted_chi")
    raise ValidationError(f"unknown generator id {name!r}; known: {', '.join(CATALOG)}")


def default_window(spec: GeneratorSpec) -> tuple[int, int]:
    """Default ``(T, M)``: the window is ``[-T, T)`` with ``M`` samples per unit."""
    if spec.kind == "blt_counterexample":
        return 2 ** (spec.params["kmax"] + 1), 8
    if spec.kind == "sum_with_fourier":
        return default_window(spec.params["base"])
    return 32, 256


def _counterexample(kmax, t):
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros(t.shape, dtype=np.float64)
    for k in range(1, kmax + 1):
        c = 2.0 ** k
        # np.sinc fills the removable singularity at t = 2^k with its limit
        out += np.sinc((t - c) / np.pi) ** 2 / (math.sqrt(k) * c)
    return out


def _counterexample_hat(kmax, xi):
    xi = np.asarray(xi, dtype=np.float64)
    tri = np.pi * np.clip(1.0 - np.pi * np.abs(xi), 0.0, None)
    acc = np.zeros(xi.shape, dtype=np.complex128)
    for k in range(1, kmax + 1):
        c = 2.0 ** k
        acc += np.exp(-2j * np.pi * xi * c) / (math.sqrt(k) * c)
    return acc * tri


def eval_generator(spec: GeneratorSpec, t):
    """Evaluate ``g(t)`` from its closed form (scalar or array ``t``)."""
    t_arr = np.asarray(t, dtype=np.float64)
    kind = spec.kind
    if kind == "chi01":
        out = ((t_arr >= 0.0) & (t_arr < 1.0)).astype(np.complex128)
    elif kind == "gaussian":
        out = (GAUSSIAN_NORM * np.exp(-np.pi * t_arr**2)).astype(np.complex128)
    elif kind == "blt_counterexample":
        out = _counterexample(spec.params["kmax"], t_arr).astype(np.complex128)
    elif kind == "sum_with_fourier":
        base = spec.params["base"]
        out = eval_generator(base, t_arr) + eval_fourier(base, t_arr)
    else:
        raise ValidationError(
            "from_zak_grid generators have no pointwise formula; sample them (inverse Zak)"
        )
    return out[()] if np.ndim(t) == 0 else out


def eval_fourier(spec: GeneratorSpec, xi):
    """Closed-form ``ĝ(ξ) = ∫ g(t) exp(-2πiξt) dt`` for generators that have one."""
    if not spec.has_closed_form_fourier:
        raise ValidationError(f"{spec.name} has no closed-form Fourier transform")
    xi_arr = np.asarray(xi, dtype=np.float64)
    kind = spec.kind
    if kind == "chi01":
        out = np.exp(-1j * np.pi * xi_arr) * np.sinc(xi_arr)
    elif kind == "gaussian":
        out = (GAUSSIAN_NORM * np.exp(-np.pi * xi_arr**2)).astype(np.complex128)
    elif kind == "blt_counterexample":
        out = _counterexample_hat(spec.params["kmax"], xi_arr)
    else:
        base = spec.params["base"]
        # the transform of ĝ is g(-ξ)
        out = eval_fourier(base, xi_arr) + eval_generator(base, -xi_arr)
    return out[()] if np.ndim(xi) == 0 else out


def sample(spec: GeneratorSpec, T: int, M: int, cap: int = DEFAULT_SAMPLE_CAP) -> SampledSignal:
    """Sample ``g`` at ``t = -T + n/M`` for ``n = 0 .. 2TM - 1``."""
    T = check_positive_int(T, "T")
    M = check_power_of_two(M, "M")
    if M < 2:
        raise ValidationError("M must be at least 2")
    n = 2 * T * M
    if n > cap:
        raise ResourceError(f"2TM = {n} samples exceeds the cap of {cap}")
    if spec.kind == "from_zak_grid":
        values = _sample_from_zak(spec, T, M)
    else:
        t = -T + np.arange(n) / M
        values = eval_generator(spec, t)
    return SampledSignal(float(-T), 1.0 / M, values, "time", spec)


def _sample_from_zak(spec, T, M):
    from .zak import ZakGrid, inverse_zak

    if "zak" in spec.params:
        x = np.arange(M) / M
        y = np.arange(2 * T) / (2 * T)
        values = spec.params["zak"](x[:, None], y[None, :])
        grid = ZakGrid(np.broadcast_to(values, (M, 2 * T)))
    else:
        grid = spec.params["grid"]
        if grid.M_x != M or grid.N_y < 2 * T:
            raise ValidationError(
                f"stored grid {grid.M_x}x{grid.N_y} cannot be sampled at T={T}, M={M}"
            )
    s = inverse_zak(grid)
    offset = (grid.N_y // 2 - T) * M
    return s.samples[offset: offset + 2 * T * M]


def energy(s: SampledSignal) -> float:
    return float(np.sum(np.abs(s.samples) ** 2) * s.step)


def tail_energy(s: SampledSignal, R: float, return_flag: bool = False):
    """``∫_{|t|>R} |s|²`` clipped to the window.

    With ``return_flag`` the result is ``(value, truncated)`` where ``truncated``
    says the window does not reach past ``R``.
    """
    if R < 0:
        raise ValidationError("R must be non-negative")
    truncated = R >= s.half_width
    if R == 0:
        value = energy(s)
    else:
        value = _tail_sum(np.abs(s.samples) ** 2, s.start, s.step, float(R))
    return (value, truncated) if return_flag else value


def _tail_sum(power, start, step, R):
    # only the two cells containing -R and R are split; the rest are whole
    n = power.shape[0]
    a = (-R - start) / step
    b = (R - start) / step
    total = 0.0
    ia = math.floor(a)
    if ia >= n:
        return float(np.sum(power) * step)
    if ia >= 0:
        total += np.sum(power[:ia]) + (a - ia) * power[ia]
    ib = math.floor(b)
    if ib < 0:
        return float(np.sum(power) * step)
    if ib < n:
        total += (1.0 - (b - ib)) * power[ib] + np.sum(power[ib + 1:])
    return float(total * step)


def tail_profile(s: SampledSignal, radii) -> np.ndarray:
    """``tail_energy`` at many radii at once."""
    return np.array([tail_energy(s, r) for r in radii])


def _power_antiderivative(t, p):
    return np.sign(t) * np.abs(t) ** (p + 1.0) / (p + 1.0)


def weighted_moment(s: SampledSignal, p: float = 2.0, outside: float | None = None) -> float:
    """``∫ |t|^p |s(t)|² dt`` over the window, optionally restricted to ``|t| > outside``.

    ``|t|^p`` is integrated exactly over each cell, so the indicator of [0, 1)
    gives exactly 1/(p+1).
    """
    if not 1.0 <= p <= 2.0:
        raise ValidationError(f"p must lie in [1, 2], got {p}")
    lo = s.grid
    hi = lo + s.step
    F = lambda a: _power_antiderivative(a, p)  # noqa: E731
    if outside is None:
        w = F(hi) - F(lo)
    else:
        R = float(outside)
        left_hi = np.minimum(hi, -R)
        right_lo = np.maximum(lo, R)
        w = np.where(left_hi > lo, F(left_hi) - F(lo), 0.0) + np.where(
            hi > right_lo, F(hi) - F(right_lo), 0.0
        )
    return float(np.sum(np.abs(s.samples) ** 2 * w))


def unit_blocks(s: SampledSignal) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(k, blocks)``: samples of each unit interval ``[k, k+1)`` as rows."""
    rate = s.rate
    if abs(rate * s.step - 1.0) > 1e-12 or abs(s.start - round(s.start)) > 1e-12:
        raise ValidationError("window is not aligned with unit intervals")
    n_units = len(s) // rate
    if n_units * rate != len(s):
        raise ValidationError("window length is not a whole number of unit intervals")
    k = int(round(s.start)) + np.arange(n_units)
    return k, s.samples.reshape(n_units, rate)


def local_norms(s: SampledSignal, q: float) -> tuple[np.ndarray, np.ndarray]:
    """``(k, ‖s‖_{L^q(k,k+1)})`` for every unit interval in the window."""
    k, blocks = unit_blocks(s)
    mag = np.abs(blocks)
    if math.isinf(q):
        return k, mag.max(axis=1)
    return k, (np.sum(mag**q, axis=1) * s.step) ** (1.0 / q)


def amalgam_norm(s: SampledSignal, q: float, p: float, exclude_radius: int = 0) -> float:
    """``Σ ‖s‖^p_{L^q(k,k+1)}`` over unit intervals lying outside ``[-R, R]``.

    An interval ``[k, k+1)`` counts when ``k >= R`` or ``k + 1 <= -R``, which
    for integer ``R`` makes the ``p = q = 2`` sum coincide with
    ``tail_energy(s, R)``.  ``exclude_radius = 0`` keeps every interval.
    """
    q = check_conjugate_exponents(p, q)
    R = check_positive_int(exclude_radius, "exclude_radius", minimum=0)
    if R >= s.half_width:
        raise TruncationError(f"window half-width {s.half_width} does not cover radius {R}")
    k, norms = local_norms(s, q)
    keep = (k >= R) | (k + 1 <= -R)
    return float(np.sum(norms[keep] ** p))
