import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zakblt.argument import (
    JUMP_THRESHOLD,
    find_jump,
    jump_differences,
    jump_set_measure,
    jump_table,
    lattice_arguments,
    max_delta_for_measure,
    mod1_dist,
    random_bases,
)
from zakblt.exceptions import HypothesisError, NotQuasiPeriodicError, ValidationError
from zakblt.signals import twisted_phase
from zakblt.zak import ZakGrid, zak_transform

# 1/K · |{y : 2|sin πy| >= δ}| at K = 8, δ = 1/2, in closed form
CHI_MEASURE = (1 - 2 * math.asin(0.25) / math.pi) / 8


def closed_form_zak(name, x, y):
    z = np.exp(2j * np.pi * np.floor(x) * y)
    return z * twisted_phase(x, y) if name == "twisted_chi" else z


def enumerate_jumps(name, base, K, N):
    """Maximal jump over all 2KN pairs, ties broken by (direction, i, j)."""
    x0, y0 = base
    arg = lambda i, j: np.angle(closed_form_zak(name, x0 + i / K, y0 + j / N)) / (2 * np.pi)
    best = None
    for d, (di, dj) in enumerate(((1, 0), (0, 1))):
        for i in range(K):
            for j in range(N):
                jump = abs(arg(i + di, j + dj) - arg(i, j))
                jump = abs(jump - round(jump))
                if best is None or jump > best[3] + 1e-12:
                    best = (d, i, j, jump)
    return best


@pytest.fixture(scope="module")
def grids(chi, twisted):
    return {
        "chi01": zak_transform(chi, 256, 64),
        "twisted_chi": zak_transform(twisted, 256, 64),
    }


@given(st.floats(-1e6, 1e6), st.integers(-1000, 1000))
def test_mod1_dist_integer_invariance(a, k):
    assert mod1_dist(a + k) == pytest.approx(mod1_dist(a), abs=1e-6)
    assert 0 <= mod1_dist(a) <= 0.5


def test_mod1_dist_vector():
    assert np.allclose(mod1_dist([0.9, -0.2, 0.5]), [0.1, 0.2, 0.5])


def test_chi_witness(grids):
    w = find_jump(grids["chi01"], (1 / 32, 1 / 64), 8, 8)
    assert w.direction == "x_step" and w.i == 7
    assert w.jump > JUMP_THRESHOLD


@pytest.mark.parametrize("name", ["chi01", "twisted_chi"])
def test_find_jump_matches_enumeration(grids, name, rng):
    grid = grids[name]
    for _ in range(5):
        K = int(rng.choice([8, 16, 32]))
        N = int(rng.choice([8, 16, 32, 64]))
        (base,) = random_bases(grid, K, N, 1, rng)
        w = find_jump(grid, base, K, N)
        d, i, j, jump = enumerate_jumps(name, base, K, N)
        assert (w.direction, w.i, w.j) == (("x_step", "y_step")[d], i, j)
        assert w.jump == pytest.approx(jump, abs=1e-9)


def test_lattice_argument_shape(grids):
    h = lattice_arguments(grids["chi01"], (0.0, 0.0), 8, 16)
    assert h.shape == (9, 17)
    dx, dy = jump_table(h)
    assert dx.shape == dy.shape == (8, 16)


def test_modulus_floor(gauss):
    grid = zak_transform(gauss, 64, 64)
    with pytest.raises(HypothesisError):
        find_jump(grid, (0.0, 0.0), 8, 8)


def test_not_quasi_periodic():
    grid = ZakGrid(np.ones((64, 64)), quasi_periodic=False)
    with pytest.raises(NotQuasiPeriodicError):
        find_jump(grid, (0.0, 0.0), 8, 8)


def test_lattice_validation(grids):
    grid = grids["chi01"]
    with pytest.raises(ValidationError):
        find_jump(grid, (0.0, 0.0), 4, 8)
    with pytest.raises(ValidationError):
        find_jump(grid, (0.0, 0.0), 8, 128)
    with pytest.raises(ValidationError):
        find_jump(grid, (0.5, 0.0), 8, 8)


def test_random_bases_in_cell(grids, rng):
    for x, y in random_bases(grids["chi01"], 16, 8, 20, rng):
        assert 0 <= x < 1 / 16 and 0 <= y < 1 / 8


def test_jump_differences_chi(grids):
    d = jump_differences(grids["chi01"], 8, 8)
    assert d[:224].max() == 0
    assert d[224:].max() == pytest.approx(2.0, abs=1e-12)


def test_jump_set_measure_chi(chi):
    grid = zak_transform(chi, 256, 256)
    m = jump_set_measure(grid, 8, 8, 0.5)
    assert m == pytest.approx(CHI_MEASURE, rel=0.02)
    assert m >= 1 / 64


@pytest.mark.parametrize("name", ["chi01", "twisted_chi"])
def test_max_delta_bound(grids, name):
    grid = grids[name]
    delta = max_delta_for_measure(grid, 8, 8)
    assert jump_set_measure(grid, 8, 8, delta) >= 1 / 64
    assert delta > 1.9


def test_delta_positive(grids):
    with pytest.raises(ValidationError):
        jump_set_measure(grids["chi01"], 8, 8, 0)
