import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zakblt.blt import (
    KernelSpec,
    classical_diagnostics,
    interpolation_check,
    main_estimate_lhs,
    pq_lhs,
    pq_sweep,
    prop41_check,
    prop41_summary,
    rho_hat,
    rho_kernel,
    sharpness_bound,
    smooth,
    smoothing_discrepancy,
    sweep,
    sweep_window,
)
from zakblt.exceptions import TruncationError, ValidationError
from zakblt.signals import energy, make_generator

# 2∫_L^∞ sinc²(ξ)dξ = 1 - 2∫_0^L sinc², from scipy.integrate.quad, frozen
CHI_FREQ_TAIL = {1: 0.09717666641971934, 4: 0.02525154988436007, 10: 0.01012700085860907}


@given(st.floats(-10, 10))
def test_rho_hat_range_and_symmetry(xi):
    v = rho_hat(xi)
    assert 0.0 <= v <= 1.0
    assert v == rho_hat(-xi)


def test_rho_hat_plateau_and_support():
    assert rho_hat(np.array([0.0, 1.0, -0.5])).tolist() == [1.0, 1.0, 1.0]
    assert rho_hat(np.array([2.0, 3.5])).tolist() == [0.0, 0.0]
    assert rho_hat(1.5) == pytest.approx(0.5)


def test_kernel_spec_validation():
    with pytest.raises(ValidationError):
        KernelSpec(0.0)
    with pytest.raises(ValidationError):
        KernelSpec(1.0, "hann")


def test_rho_kernel_has_unit_mass():
    k = rho_kernel(2.0, 16, 64)
    assert np.sum(k.samples).real * k.step == pytest.approx(1.0, abs=1e-12)


def test_smoothing_keeps_band_limited_signal():
    # ĝ of the counterexample lives in |ξ| <= 1/π, where ρ̂(ξ/R) = 1 for R >= 1/π
    g = make_generator("blt_counterexample", kmax=5)
    from zakblt.signals import sample

    s = sample(g, 64, 8)
    assert np.max(np.abs(smooth(s, 1.0).samples - s.samples)) < 1e-3


def test_sweep_window():
    assert sweep_window(make_generator("gaussian"), [1, 100], [1, 100]) == (256, 512)
    assert sweep_window(make_generator("chi01"), [256], [4]) == (32, 256)


@pytest.mark.parametrize("L", sorted(CHI_FREQ_TAIL))
def test_chi_freq_tail_oracle(L):
    r = main_estimate_lhs(make_generator("chi01"), 1, L, T=32, M=1024)
    assert r.time_tail == 0.0
    assert r.freq_tail == pytest.approx(CHI_FREQ_TAIL[L], rel=0.01)
    assert r.normalized == pytest.approx(L * r.lhs)


def test_chi_tail_times_l_near_inverse_pi_squared():
    r = main_estimate_lhs(make_generator("chi01"), 4, 10, T=32, M=1024)
    assert r.normalized == pytest.approx(40 * CHI_FREQ_TAIL[10], rel=0.01)


def test_gaussian_lhs_is_tiny():
    r = main_estimate_lhs(make_generator("gaussian"), 3, 3)
    assert 0 < r.lhs < 1e-20


def test_lhs_rejects_small_radius():
    with pytest.raises(ValidationError):
        main_estimate_lhs(make_generator("chi01"), 0.5, 1)


def test_sweep_shape_and_inf():
    reports, inf = sweep(make_generator("gaussian"), [1, 2], [1, 2, 4])
    assert [(r.R, r.L) for r in reports][:3] == [(1, 1), (1, 2), (1, 4)]
    assert inf == min(r.normalized for r in reports)


def test_truncation_flag_and_strict():
    g = make_generator("gaussian")
    reports, _ = sweep(g, [1], [1, 512], T=32, M=256)
    assert reports[0].flags == ()
    assert reports[1].flags == ("freq_truncated",)
    with pytest.raises(TruncationError):
        sweep(g, [1], [512], T=32, M=256, strict=True)


def test_known_support_suppresses_flag():
    reports, _ = sweep(make_generator("chi01"), [64], [1], T=32, M=256, strict=True)
    assert reports[0].time_tail == 0.0 and reports[0].flags == ()


def test_sharpness_bound():
    assert sharpness_bound(10, 10) == pytest.approx(0.01 + math.log(10) / 100, abs=1e-15)
    assert sharpness_bound(1, 1) == 1.0
    with pytest.raises(ValidationError):
        sharpness_bound(0, 1)


@pytest.mark.parametrize("R,L", [(1, 1), (2, 8), (5, 3)])
def test_pq_two_two_is_main_estimate(R, L):
    g = make_generator("gaussian")
    a = pq_lhs(g, 2.0, R, L, T=32, M=256)
    b = main_estimate_lhs(g, R, L, T=32, M=256)
    assert a.q == 2.0
    assert a.lhs == pytest.approx(b.lhs, rel=1e-10, abs=1e-300)
    assert a.normalized == pytest.approx(b.normalized, rel=1e-10, abs=1e-300)


def test_pq_amalgam_case():
    r = pq_lhs(make_generator("chi01"), 1.0, 1, 4, T=32, M=256)
    assert math.isinf(r.q)
    assert r.time_sum == 0.0 and r.freq_sum > 0
    assert r.normalized == r.lhs


def test_pq_sweep_and_validation():
    g = make_generator("gaussian")
    reports, inf = pq_sweep(g, 1.5, [1, 2], [1, 2], T=32, M=256)
    assert len(reports) == 4 and inf == min(r.normalized for r in reports)
    with pytest.raises(ValidationError):
        pq_lhs(g, 3.0, 1, 1)
    with pytest.raises(ValidationError):
        pq_lhs(g, 2.0, 1.5, 1)


@pytest.mark.parametrize("name", ["chi01", "gaussian", "twisted_chi"])
@pytest.mark.parametrize("p", [1.0, 4 / 3, 1.5, 2.0])
def test_interpolation_slack(name, p):
    slack = interpolation_check(make_generator(name), p)
    assert slack >= -1e-6
    if p == 2.0:
        assert abs(slack) < 1e-6


def test_classical_diagnostics_gaussian():
    d = classical_diagnostics(make_generator("gaussian"), 1.0)
    assert d.time_moment == pytest.approx(1 / (4 * math.pi), rel=1e-4)
    # dual grid spacing is 1/64, so the frequency-side quadrature is coarser
    assert d.freq_moment == pytest.approx(1 / (4 * math.pi), rel=2e-3)
    assert d.chain_holds
    assert d.liminf_proxy <= d.r2_tail_product


def test_classical_diagnostics_chi_freq_moment_grows():
    g = make_generator("chi01")
    a = classical_diagnostics(g, 1.0, T=32, M=256).freq_moment
    b = classical_diagnostics(g, 1.0, T=32, M=512).freq_moment
    assert b > 1.8 * a


@pytest.fixture(scope="module")
def growth_rows():
    return prop41_check(12, range(5, 10))


def test_growth_rows(growth_rows):
    assert [r.n for r in growth_rows] == [5, 6, 7, 8, 9]
    assert growth_rows[0].R_n == 48.0
    for r in growth_rows:
        assert r.fitted_C == pytest.approx(r.tail_at_Rn * r.R_n**2)


def test_growth_summary(growth_rows):
    summary = prop41_summary(growth_rows)
    assert summary["fitted_C_ratio"] < 2
    assert summary["moment_increasing"]
    assert summary["linear_c"] > 0
    # Σ 1/(√k)² growth: increments n·Δmoment settle near a constant
    assert 1.5 < summary["harmonic_c"] < 2.5


def test_growth_validation():
    with pytest.raises(ValidationError):
        prop41_check(8, [8])
    with pytest.raises(ValidationError):
        prop41_check(8, [4], T=64)


def test_counterexample_energy_is_finite_and_band_limited():
    from zakblt.fourier import fourier
    from zakblt.signals import sample, tail_energy

    s = sample(make_generator("blt_counterexample", kmax=8), 512, 8)
    f = fourier(s)
    assert tail_energy(f, 1 / math.pi + 0.05) < 1e-3 * energy(f)


def test_smoothing_discrepancy_bounds():
    r = smoothing_discrepancy(make_generator("gaussian"), 4, 4, n=64)
    assert 0.0 <= r.measure <= 1.0
    assert r.normalized == r.measure * 16
    wide = smoothing_discrepancy(make_generator("gaussian"), 16, 16, n=64)
    assert wide.measure <= r.measure
