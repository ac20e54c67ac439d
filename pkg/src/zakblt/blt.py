"""Quantitative Balian-Low estimates checked numerically.

The central quantity is the two-sided tail

    lhs(R, L) = ∫_{|t|>R} |g|² + ∫_{|ξ|>L} |ĝ|²,

which for a Gabor Riesz-basis generator on ℤ×ℤ stays above C/(RL).  Sweeps
report ``R·L·lhs`` on a grid; its infimum is the empirical constant.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ._validation import as_integer, check_conjugate_exponents
from .exceptions import TruncationError, ValidationError
from .fourier import fourier, inverse_fourier, multiply_spectrum
from .signals import (
    GeneratorSpec,
    SampledSignal,
    amalgam_norm,
    default_window,
    make_generator,
    sample,
    tail_energy,
    weighted_moment,
)
from .zak import zak_transform

DEFAULT_SWEEP = tuple(2**k for k in range(9))


def rho_hat(xi):
    """Symmetric taper: 1 on ``|ξ| <= 1``, 0 on ``|ξ| >= 2``, ``cos²`` in between."""
    a = np.abs(np.asarray(xi, dtype=np.float64))
    mid = np.cos(0.5 * np.pi * (a - 1.0)) ** 2
    out = np.where(a <= 1.0, 1.0, np.where(a >= 2.0, 0.0, mid))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class KernelSpec:
    """``φ(t) = Rρ(Rt)``, i.e. ``φ̂(ξ) = ρ̂(ξ/R)``."""

    scale: float
    taper: str = "raised_cosine"

    def __post_init__(self):
        if self.scale <= 0:
            raise ValidationError("kernel scale must be positive")
        if self.taper != "raised_cosine":
            raise ValidationError(f"unknown taper {self.taper!r}")

    def multiplier(self, xi):
        return rho_hat(np.asarray(xi) / self.scale)


def _as_kernel(kernel):
    return kernel if isinstance(kernel, KernelSpec) else KernelSpec(float(kernel))


def smooth(s: SampledSignal, kernel) -> SampledSignal:
    """Convolve with ``φ`` by multiplying the spectrum by ``ρ̂(ξ/R)``."""
    return multiply_spectrum(s, _as_kernel(kernel).multiplier)


def rho_kernel(kernel, T: int, M: int) -> SampledSignal:
    """Samples of ``φ(t) = Rρ(Rt)`` on ``[-T, T)`` at ``M`` samples per unit."""
    k = _as_kernel(kernel)
    n = 2 * T * M
    xi = -M / 2 + np.arange(n) / (2 * T)
    spectrum = SampledSignal(-M / 2, 1.0 / (2 * T), k.multiplier(xi), "frequency")
    return inverse_fourier(spectrum)


def known_time_support(spec: GeneratorSpec | None):
    """Radius beyond which ``g`` vanishes identically, when the catalog knows one."""
    if spec is not None and spec.kind == "chi01":
        return 1.0
    return None


def known_bandlimit(spec: GeneratorSpec | None):
    """Radius beyond which ``ĝ`` vanishes identically, when the catalog knows one."""
    if spec is not None and spec.kind == "blt_counterexample":
        return 1.0 / math.pi
    return None


def _next_pow2(x):
    return 1 << max(0, math.ceil(math.log2(x)))


def sweep_window(spec: GeneratorSpec, Rs, Ls) -> tuple[int, int]:
    """Smallest default-or-larger ``(T, M)`` whose window resolves every ``R`` and ``L``."""
    T, M = default_window(spec)
    r_max, l_max = max(Rs), max(Ls)
    support = known_time_support(spec)
    if support is None or r_max < support:
        T = max(T, _next_pow2(2 * r_max + 1))
    band = known_bandlimit(spec)
    if band is None or l_max < band:
        M = max(M, _next_pow2(4 * l_max + 1))
    return T, M


@dataclass(frozen=True)
class TailReport:
    R: float
    L: float
    time_tail: float
    freq_tail: float
    lhs: float
    normalized: float
    flags: tuple[str, ...] = ()

    def as_dict(self):
        return asdict(self)


def _side_tail(sig, radius, known, flag, strict):
    value, truncated = tail_energy(sig, radius, return_flag=True)
    if truncated and known is not None and known <= radius:
        truncated = False
    if truncated and strict:
        raise TruncationError(f"{flag}: radius {radius} is not resolved by the window")
    return value, (flag,) if truncated else ()


def tail_report(s, f, R, L, strict=False) -> TailReport:
    """Tail report from an already sampled signal ``s`` and its transform ``f``."""
    if R < 1 or L < 1:
        raise ValidationError("R and L must be at least 1")
    tt, f1 = _side_tail(s, R, known_time_support(s.generator), "time_truncated", strict)
    ft, f2 = _side_tail(f, L, known_bandlimit(s.generator), "freq_truncated", strict)
    lhs = tt + ft
    return TailReport(float(R), float(L), tt, ft, lhs, R * L * lhs, f1 + f2)


def _signal_pair(g, T, M, Rs, Ls):
    if T is None or M is None:
        T0, M0 = sweep_window(g, Rs, Ls)
        T = T0 if T is None else T
        M = M0 if M is None else M
    s = sample(g, T, M)
    return s, fourier(s)


def main_estimate_lhs(g: GeneratorSpec, R: float, L: float, T=None, M=None, strict=False) -> TailReport:
    """``∫_{|t|>R}|g|² + ∫_{|ξ|>L}|ĝ|²`` together with ``R·L·lhs``."""
    s, f = _signal_pair(g, T, M, [R], [L])
    return tail_report(s, f, R, L, strict)


def sweep(g: GeneratorSpec, Rs=DEFAULT_SWEEP, Ls=DEFAULT_SWEEP, T=None, M=None, strict=False):
    """Reports over the ``Rs x Ls`` grid (R-major) and the infimum of ``normalized``."""
    Rs, Ls = list(Rs), list(Ls)
    if not Rs or not Ls:
        raise ValidationError("sweep lists must be nonempty")
    s, f = _signal_pair(g, T, M, Rs, Ls)
    reports = sweep_signal(s, f, Rs, Ls, strict)
    return reports, min(r.normalized for r in reports)


def sweep_signal(s, f, Rs, Ls, strict=False):
    if min(Rs) < 1 or min(Ls) < 1:
        raise ValidationError("R and L must be at least 1")
    gen = s.generator
    time_side = {R: _side_tail(s, R, known_time_support(gen), "time_truncated", strict) for R in Rs}
    freq_side = {L: _side_tail(f, L, known_bandlimit(gen), "freq_truncated", strict) for L in Ls}
    reports = []
    for R in Rs:
        tt, f1 = time_side[R]
        for L in Ls:
            ft, f2 = freq_side[L]
            lhs = tt + ft
            reports.append(TailReport(float(R), float(L), tt, ft, lhs, R * L * lhs, f1 + f2))
    return reports


def sharpness_bound(R: float, L: float) -> float:
    """Comparison curve ``1/R² + log(L)/L²``."""
    if R < 1 or L < 1:
        raise ValidationError("R and L must be at least 1")
    return 1.0 / R**2 + math.log(L) / L**2


@dataclass(frozen=True)
class PQReport:
    R: float
    L: float
    p: float
    q: float
    time_sum: float
    freq_sum: float
    lhs: float
    normalized: float
    flags: tuple[str, ...] = ()

    def as_dict(self):
        return asdict(self)


def _amalgam_side(sig, q, p, radius, known, flag, strict):
    r = as_integer(radius, "radius")
    if r < sig.half_width:
        return amalgam_norm(sig, q, p, r), ()
    if known is not None and known <= r:
        return 0.0, ()
    if strict:
        raise TruncationError(f"{flag}: radius {r} is not resolved by the window")
    return 0.0, (flag,)


def pq_report(s, f, p, R, L, strict=False) -> PQReport:
    q = check_conjugate_exponents(p, None)
    gen = s.generator
    ts, f1 = _amalgam_side(s, q, p, R, known_time_support(gen), "time_truncated", strict)
    fs, f2 = _amalgam_side(f, q, p, L, known_bandlimit(gen), "freq_truncated", strict)
    lhs = ts + fs
    scale = 1.0 if math.isinf(q) else (R * L) ** (p / q)
    return PQReport(float(R), float(L), float(p), q, ts, fs, lhs, scale * lhs, f1 + f2)


def pq_lhs(g: GeneratorSpec, p: float, R: float, L: float, T=None, M=None, strict=False) -> PQReport:
    """Amalgam-norm tails ``Σ_{|k|>R}‖g‖^p_{L^q(k,k+1)} + Σ_{|k|>L}‖ĝ‖^p_{L^q(k,k+1)}``."""
    s, f = _signal_pair(g, T, M, [R], [L])
    return pq_report(s, f, p, R, L, strict)


def pq_sweep(g: GeneratorSpec, p: float, Rs=DEFAULT_SWEEP, Ls=DEFAULT_SWEEP, T=None, M=None, strict=False):
    Rs, Ls = list(Rs), list(Ls)
    s, f = _signal_pair(g, T, M, Rs, Ls)
    reports = [pq_report(s, f, p, R, L, strict) for R in Rs for L in Ls]
    return reports, min(r.normalized for r in reports)


def zak_lq_power(grid, p: float, q: float) -> float:
    """``‖Z‖^p_{L^q([0,1)²)}`` by grid quadrature."""
    mag = np.abs(grid.values)
    if math.isinf(q):
        return float(mag.max() ** p)
    return float(np.mean(mag**q) ** (p / q))


def interpolation_check(g: GeneratorSpec, p: float, T=None, M=None) -> float:
    """Slack ``Σ_k ‖g‖^p_{L^q(k,k+1)} - ‖Zg‖^p_{L^q(Q)}``; non-negative up to rounding."""
    q = check_conjugate_exponents(p, None)
    T0, M0 = default_window(g)
    s = sample(g, T or T0, M or M0)
    grid = zak_transform(s)
    return amalgam_norm(s, q, p, 0) - zak_lq_power(grid, p, q)


@dataclass(frozen=True)
class ClassicalDiagnostics:
    R: float
    time_moment: float
    freq_moment: float
    r2_tail_product: float
    liminf_proxy: float
    eps_tail_product: float
    chain_holds: bool

    def as_dict(self):
        return asdict(self)


def classical_diagnostics(g: GeneratorSpec, R: float, T=None, M=None, epsilon: float = 0.1):
    """Windowed second moments next to ``R²·lhs(R, R)``.

    ``liminf_proxy`` is the minimum of ``r²·lhs(r, r)`` over dyadic ``r >= R``
    still inside both windows; ``eps_tail_product`` is ``R^{2+ε}·lhs(R, R)``.
    """
    T0, M0 = default_window(g)
    s = sample(g, T or T0, M or M0)
    f = fourier(s)
    time_moment = weighted_moment(s, 2.0)
    freq_moment = weighted_moment(f, 2.0)
    lhs = tail_energy(s, R) + tail_energy(f, R)
    r2 = R * R * lhs
    limit = min(s.half_width, f.half_width)
    radii = [R * 2**k for k in range(64) if R * 2**k < limit] or [R]
    proxy = min(r * r * (tail_energy(s, r) + tail_energy(f, r)) for r in radii)
    chain = r2 <= (weighted_moment(s, 2.0, outside=R) + weighted_moment(f, 2.0, outside=R)) * (1 + 1e-12)
    return ClassicalDiagnostics(
        float(R), time_moment, freq_moment, r2, proxy, R ** (2 + epsilon) * lhs, bool(chain)
    )


@dataclass(frozen=True)
class Prop41Row:
    n: int
    R_n: float
    tail_at_Rn: float
    fitted_C: float
    moment_partial: float

    def as_dict(self):
        return asdict(self)


def prop41_check(kmax: int, n_range, M: int = 8, T: int | None = None):
    """Tail and second-moment growth of the band-limited counterexample.

    ``R_n = (2^n + 2^{n+1})/2`` sits midway between two bump centres;
    ``fitted_C = R_n² · tail(R_n)`` should stay bounded while the windowed
    second moment over ``[-2^n, 2^n]`` keeps growing.
    """
    n_range = list(n_range)
    if not n_range or kmax <= max(n_range):
        raise ValidationError("kmax must exceed every n in n_range")
    T = 2 ** (kmax + 1) if T is None else T
    if T < 2 ** (kmax + 1):
        raise ValidationError(f"window T={T} does not hold the bump at 2^{kmax}")
    s = sample(make_generator("blt_counterexample", kmax=kmax), T, M)
    total = weighted_moment(s, 2.0)
    rows = []
    for n in n_range:
        R_n = (2**n + 2 ** (n + 1)) / 2
        tail = tail_energy(s, R_n)
        inside = total - weighted_moment(s, 2.0, outside=2.0**n)
        rows.append(Prop41Row(n, R_n, tail, tail * R_n**2, inside))
    return rows


def prop41_summary(rows) -> dict:
    """Stability ratio of ``fitted_C`` and two growth constants for the moment.

    ``linear_c`` is the largest ``c`` with ``moment >= c·n`` on the rows;
    ``harmonic_c`` is the median of ``n·Δmoment``, constant under ``Σ 1/k`` growth.
    """
    C = np.array([r.fitted_C for r in rows])
    n = np.array([r.n for r in rows], dtype=float)
    mom = np.array([r.moment_partial for r in rows])
    inc = np.diff(mom) * n[:-1] if len(rows) > 1 else np.array([np.nan])
    return {
        "fitted_C_ratio": float(C.max() / C.min()),
        "linear_c": float(np.min(mom / n)),
        "harmonic_c": float(np.median(inc)),
        "moment_increasing": bool(np.all(np.diff(mom) > 0)),
    }


@dataclass(frozen=True)
class DiscrepancyReport:
    R: float
    L: float
    delta: float
    measure: float
    normalized: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "normalized", self.measure * self.R * self.L)


def smoothing_discrepancy(g: GeneratorSpec, R: float, L: float, delta: float = 0.01, n: int = 256):
    """Measure of ``{|Zg - Z(g∗ψ_L)| >= δ or |Zĝ - Z(ĝ∗φ_R)| >= δ}`` on an ``n x n`` grid.

    The window is ``T = n/2``, ``M = n`` so both ``g`` and ``ĝ`` have ``n``
    samples per unit and ``n`` unit intervals.
    """
    s = sample(g, n // 2, n)
    f = fourier(s)
    dz_time = np.abs(zak_transform(s).values - zak_transform(smooth(s, L)).values)
    dz_freq = np.abs(zak_transform(f).values - zak_transform(smooth(f, R)).values)
    hit = (dz_time >= delta) | (dz_freq >= delta)
    return DiscrepancyReport(float(R), float(L), float(delta), float(np.mean(hit)))
