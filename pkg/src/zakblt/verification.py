"""The identity suite behind ``zakblt verify``."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .blt import interpolation_check, rho_kernel
from .fourier import fourier
from .signals import CATALOG, default_window, energy, make_generator, sample
from .zak import (
    check_fourier_zak,
    grid_mean_square,
    inverse_zak,
    zak_convolution_check,
    zak_extend,
    zak_transform,
)

TOLERANCES = {
    "unitarity": 1e-6,
    "quasi_periodicity": 1e-12,
    "fourier_zak": 1e-3,
    "convolution": 1e-4,
    "round_trip": 1e-8,
    "interpolation": 1e-6,
}
INTERPOLATION_PS = (1.0, 4.0 / 3.0, 1.5, 2.0)


@dataclass(frozen=True)
class CheckResult:
    check: str
    generator: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self):
        return asdict(self)


def _upper(check, gen, value, detail=""):
    tol = TOLERANCES[check]
    return CheckResult(check, gen, float(value), tol, bool(value < tol), detail)


def quasi_periodicity_residual(grid, rng, count=1000, span=5):
    """Worst violation of both extension identities at random folded nodes."""
    m = rng.integers(0, grid.M_x, size=count)
    l = rng.integers(0, grid.N_y, size=count)
    a = rng.integers(-span, span + 1, size=count)
    b = rng.integers(-span, span + 1, size=count)
    worst = 0.0
    for mi, li, ai, bi in zip(m, l, a, b):
        x = mi / grid.M_x + ai
        y = li / grid.N_y + bi
        z = zak_extend(grid, x, y)
        worst = max(
            worst,
            abs(zak_extend(grid, x, y + 1) - z),
            abs(zak_extend(grid, x + 1, y) - np.exp(2j * np.pi * y) * z),
        )
    return worst


def fourier_zak_residual(name, n=256):
    s = sample(make_generator(name), n // 2, n)
    return check_fourier_zak(zak_transform(s, n, n), zak_transform(fourier(s), n, n))


def run_suite(seed: int = 0, generators=CATALOG):
    rng = np.random.default_rng(seed)
    results = []
    for name in generators:
        gen = make_generator(name)
        T, M = default_window(gen)
        s = sample(gen, T, M)
        grid = zak_transform(s)
        e = energy(s)
        results.append(_upper("unitarity", name, abs(grid_mean_square(grid) - e) / e))
        results.append(_upper("quasi_periodicity", name, quasi_periodicity_residual(grid, rng)))
        back = inverse_zak(grid)
        results.append(_upper("round_trip", name, np.max(np.abs(back.samples - s.samples))))
        for p in INTERPOLATION_PS:
            slack = interpolation_check(gen, p)
            tol = TOLERANCES["interpolation"]
            results.append(
                CheckResult("interpolation", name, slack, -tol, bool(slack >= -tol), f"p={p:.6g}")
            )
    for name in ("chi01", "gaussian", "twisted_chi"):
        if name in generators:
            results.append(_upper("fourier_zak", name, fourier_zak_residual(name), "256x256"))
    for name in ("gaussian", "twisted_chi"):
        if name in generators:
            s = sample(make_generator(name), 32, 256)
            kernel = rho_kernel(4.0, 32, 256)
            results.append(_upper("convolution", name, zak_convolution_check(s, kernel), "R=4"))
    return results
