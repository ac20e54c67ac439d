"""Argument jumps of quasi-periodic functions sampled on a coarse lattice.

No branch of the argument is ever built: a jump is measured as the mod-1
distance of principal-argument differences, which does not depend on the
branch.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from ._validation import as_integer, check_positive_int
from .exceptions import HypothesisError, NotQuasiPeriodicError, ValidationError
from .zak import ZakGrid, extend_nodes

DEFAULT_MODULUS_FLOOR = 1e-6
JUMP_THRESHOLD = 1.0 / 8.0
DIRECTIONS = ("x_step", "y_step")


@dataclass(frozen=True)
class JumpWitness:
    i: int
    j: int
    direction: str
    jump: float

    def as_dict(self):
        return asdict(self)


def mod1_dist(a):
    """Distance from ``a`` to the nearest integer, in ``[0, 1/2]``."""
    a = np.asarray(a, dtype=np.float64)
    out = np.abs(a - np.round(a))
    return float(out) if out.ndim == 0 else out


def _steps(grid, K, N):
    K = check_positive_int(K, "K", minimum=8)
    N = check_positive_int(N, "N", minimum=8)
    if grid.M_x % K or grid.N_y % N:
        raise ValidationError(f"grid {grid.M_x}x{grid.N_y} is not divisible by K={K}, N={N}")
    return grid.M_x // K, grid.N_y // N


def lattice_arguments(grid: ZakGrid, base, K: int, N: int, modulus_floor=DEFAULT_MODULUS_FLOOR):
    """``h[i, j] = arg Z(x + i/K, y + j/N) / 2π`` for ``0 <= i <= K``, ``0 <= j <= N``."""
    sx, sy = _steps(grid, K, N)
    bx = as_integer(base[0] * grid.M_x, "base x")
    by = as_integer(base[1] * grid.N_y, "base y")
    if not (0 <= bx < sx and 0 <= by < sy):
        raise ValidationError(f"base {base} is outside [0, 1/K) x [0, 1/N)")
    ix = bx + sx * np.arange(K + 1)
    iy = by + sy * np.arange(N + 1)
    z = extend_nodes(grid, ix[:, None], iy[None, :])
    low = np.abs(z).min()
    if low < modulus_floor:
        raise HypothesisError(
            f"|Z| = {low:.3g} falls below the modulus floor {modulus_floor:g}; the argument is undefined"
        )
    return np.angle(z) / (2 * np.pi)


def jump_table(h: np.ndarray):
    """Mod-1 jumps of all ``2KN`` adjacent pairs as ``(x_jumps, y_jumps)``, each ``K x N``."""
    K, N = h.shape[0] - 1, h.shape[1] - 1
    dx = mod1_dist(h[1:, :N] - h[:K, :N])
    dy = mod1_dist(h[:K, 1:] - h[:K, :N])
    return dx, dy


def find_jump(grid: ZakGrid, base, K: int, N: int, modulus_floor=DEFAULT_MODULUS_FLOOR) -> JumpWitness:
    """Return the largest lattice jump exceeding 1/8 (ties: direction, then i, then j).

    Raises :class:`NotQuasiPeriodicError` when every jump is at most 1/8,
    which cannot happen for a genuine Zak transform.
    """
    h = lattice_arguments(grid, base, K, N, modulus_floor)
    dx, dy = jump_table(h)
    jumps = np.stack([dx, dy])  # (direction, i, j); C-order is the tie-break order
    best = float(jumps.max())
    if best <= JUMP_THRESHOLD:
        raise NotQuasiPeriodicError(
            f"no lattice jump exceeds 1/8 (largest {best:.6f}); input is not quasi-periodic"
        )
    d, i, j = np.argwhere(jumps >= best - 1e-12)[0]
    return JumpWitness(int(i), int(j), DIRECTIONS[d], float(jumps[d, i, j]))


def random_bases(grid: ZakGrid, K: int, N: int, count: int, rng: np.random.Generator):
    """Random lattice base points on grid nodes inside ``[0, 1/K) x [0, 1/N)``."""
    sx, sy = _steps(grid, K, N)
    bx = rng.integers(0, sx, size=count)
    by = rng.integers(0, sy, size=count)
    return [(a / grid.M_x, b / grid.N_y) for a, b in zip(bx, by)]


def jump_differences(grid: ZakGrid, K: int, N: int) -> np.ndarray:
    """``max(|Z(x+1/K, y) - Z(x, y)|, |Z(x, y+1/N) - Z(x, y)|)`` at every node."""
    sx, sy = _steps(grid, K, N)
    m = np.arange(grid.M_x)[:, None]
    l = np.arange(grid.N_y)[None, :]
    z = grid.values
    dx = np.abs(extend_nodes(grid, m + sx, l) - z)
    dy = np.abs(extend_nodes(grid, m, l + sy) - z)
    return np.maximum(dx, dy)


def jump_set_measure(grid: ZakGrid, K: int, N: int, delta: float) -> float:
    """Node-counting estimate of the measure of the δ-jump set."""
    if delta <= 0:
        raise ValidationError("delta must be positive")
    return float(np.mean(jump_differences(grid, K, N) >= delta))


def max_delta_for_measure(grid: ZakGrid, K: int, N: int, target: float | None = None) -> float:
    """Largest sampled δ whose jump set still has measure at least ``target`` (default 1/NK)."""
    target = 1.0 / (N * K) if target is None else target
    d = np.sort(jump_differences(grid, K, N).ravel())[::-1]
    count = max(1, math.ceil(target * d.size - 1e-9))
    return float(d[count - 1])
