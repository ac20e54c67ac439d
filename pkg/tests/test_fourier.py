import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from zakblt.exceptions import ValidationError
from zakblt.fourier import THREADS_ENV, fft_workers, fourier, inverse_fourier, multiply_spectrum
from zakblt.signals import SampledSignal, energy, eval_fourier, make_generator, sample

finite = st.floats(-10, 10, allow_nan=False)


def test_dual_grid(chi):
    f = fourier(chi)
    assert f.domain_tag == "frequency"
    assert f.start == -128 and f.step == pytest.approx(1 / 64)
    assert len(f) == len(chi)


def test_plancherel_is_exact(chi, gauss):
    for s in (chi, gauss):
        assert energy(fourier(s)) == pytest.approx(energy(s), rel=1e-12)


def test_round_trip(gauss):
    back = inverse_fourier(fourier(gauss))
    assert back.start == gauss.start and back.step == gauss.step
    assert np.max(np.abs(back.samples - gauss.samples)) < 1e-13


@given(arrays(np.float64, 64, elements=finite), arrays(np.float64, 64, elements=finite))
def test_round_trip_random(re, im):
    s = SampledSignal(-4.0, 1 / 8, re + 1j * im)
    back = inverse_fourier(fourier(s))
    assert np.allclose(back.samples, s.samples, atol=1e-10)


@given(arrays(np.float64, 32, elements=finite))
def test_plancherel_random(re):
    s = SampledSignal(-2.0, 1 / 8, re)
    assert energy(fourier(s)) == pytest.approx(energy(s), rel=1e-10, abs=1e-12)


def test_gaussian_matches_closed_form(gauss):
    f = fourier(gauss)
    exact = eval_fourier(gauss.generator, f.grid)
    assert np.max(np.abs(f.samples - exact)) < 1e-12


def test_chi_matches_closed_form_after_sampling_phase(chi):
    # left-endpoint samples of the indicator equal h·Σ over [0, 1), whose
    # transform differs from the exact one by the half-cell phase e^{πiξh}
    f = fourier(chi)
    keep = np.abs(f.grid) <= 8
    xi = f.grid[keep]
    exact = eval_fourier(chi.generator, xi) * np.exp(1j * np.pi * xi * chi.step)
    assert np.max(np.abs(f.samples[keep] - exact)) < 1e-4


def test_closed_form_override(gauss):
    f = fourier(gauss, use_closed_form=True)
    assert np.array_equal(f.samples, eval_fourier(gauss.generator, f.grid))


def test_domain_checks(chi):
    with pytest.raises(ValidationError):
        fourier(fourier(chi))
    with pytest.raises(ValidationError):
        inverse_fourier(chi)
    with pytest.raises(ValidationError):
        fourier(SampledSignal(0.0, 1.0, np.zeros(6)))


def test_multiply_by_one_is_identity(gauss):
    out = multiply_spectrum(gauss, lambda xi: np.ones_like(xi))
    assert np.allclose(out.samples, gauss.samples, atol=1e-13)


def test_multiply_shift_phase():
    # ĝ(ξ)e^{-2πiξ} is the transform of g(t - 1)
    g = make_generator("gaussian")
    s = sample(g, 16, 32)
    out = multiply_spectrum(s, lambda xi: np.exp(-2j * np.pi * xi))
    assert np.allclose(out.samples, np.roll(s.samples, 32), atol=1e-12)


def test_threads_env(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)
    assert fft_workers() is None
    monkeypatch.setenv(THREADS_ENV, "3")
    assert fft_workers() == 3
    monkeypatch.setenv(THREADS_ENV, "many")
    with pytest.raises(ValidationError):
        fft_workers()
