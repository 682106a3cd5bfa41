import numpy as np
import pytest

from clifwave.algebra import Multivector
from clifwave.cft import cft_forward
from clifwave.cwt import MotherWavelet, admissibility_constant
from clifwave.errors import NotAdmissible
from clifwave.field import GridSpec, sample_closed_form
from clifwave.wavelets import (GaborParams, gabor_admissibility, gabor_eval, gabor_spectrum,
                               gabor_wavelet, quadrature_grid)

from oracles import gabor_admissibility_radial, gabor_scalar_formula

# scalar C for sigma = 1, omega0 = (pi, 0, ...), A = 1 (adaptive quadrature, see oracles)
C_RADIAL = {2: 0.05708895188823556, 3: 0.017210328155402414}


def test_params_validation():
    with pytest.raises(ValueError):
        GaborParams((1.0, -1.0), (1.0, 0.0), Multivector.scalar(2))
    with pytest.raises(ValueError):
        GaborParams((1.0, 1.0), (1.0, 0.0, 0.0), Multivector.scalar(2))
    with pytest.raises(NotAdmissible):
        GaborParams((1.0, 1.0), (1.0, 0.0), Multivector(2, [1, 1, 0, 0]))


def test_eval_matches_scalar_formula():
    p = GaborParams.default(2)
    x = np.random.default_rng(0).uniform(-3, 3, (50, 2))
    vals = gabor_eval(p, x)
    re, im = gabor_scalar_formula(x[:, 0], x[:, 1])
    assert np.allclose(vals[:, 0], re, atol=1e-15)
    assert np.allclose(vals[:, 3], im, atol=1e-15)
    assert np.allclose(vals[:, 1:3], 0.0)
    assert isinstance(gabor_eval(p, [0.1, 0.2]), Multivector)


@pytest.mark.parametrize("dim", [2, 3])
def test_zero_mean(dim):
    p = GaborParams.default(dim)
    assert np.abs(gabor_spectrum(p, np.zeros(dim)).coeffs).max() < 1e-14


def test_spectrum_matches_cft_of_samples():
    p = GaborParams((1.0, 0.7), (2.0, 1.0), Multivector(2, [1.0, 0, 0, 0.5]))
    g = GridSpec(2, 128, 10.0)
    num = cft_forward(sample_closed_form(g, lambda x: gabor_eval(p, x))).data
    ref = gabor_spectrum(p, g.freqs)
    assert np.abs(num - ref).max() < 1e-10


@pytest.mark.parametrize("dim", [2, 3])
def test_admissibility_against_radial_quadrature(dim):
    p = GaborParams.default(dim)
    c = gabor_admissibility(p, quadrature_grid(p))
    assert c.scalar_part == pytest.approx(C_RADIAL[dim], rel=1e-4)


def test_radial_oracle_small_carrier():
    # origin-dominated integrand: checks the treatment of the w = 0 cell
    p = GaborParams((1.0, 1.0), (0.5, 0.0), Multivector.scalar(2))
    c = gabor_admissibility(p, quadrature_grid(p))
    assert c.scalar_part == pytest.approx(gabor_admissibility_radial(1.0, 0.5, 2), rel=1e-3)


def test_amplitude_scales_constant():
    amp = Multivector(3, [1.0, 0.5, 0, 0, 0, 0, 0, 0])
    p = GaborParams((1.0,) * 3, (np.pi, 0, 0), amp)
    c = gabor_admissibility(p, quadrature_grid(p))
    assert c.isclose(amp.reverse() * amp * C_RADIAL[3], rtol=1e-4, atol=1e-8)
    assert abs(c[1]) > 0.1 * c.scalar_part


def test_odd_wavelet_has_negative_epsilon():
    assert gabor_wavelet(GaborParams.default(2, odd=True)).epsilon == -1
    assert gabor_wavelet(GaborParams.default(2)).epsilon == 1
    assert gabor_wavelet(GaborParams.default(3, odd=True)).epsilon == 1


def test_non_zero_mean_is_rejected():
    g = GridSpec(2, 32, 6.0)
    bump = MotherWavelet(2, lambda x: np.exp(-np.sum(x ** 2, -1))[..., None] * [1, 0, 0, 0],
                         radius=5.0, quadrature_grid=g)
    with pytest.raises(NotAdmissible):
        admissibility_constant(bump, g)


def test_mixed_parity_rejected_in_cl2():
    g = GridSpec(2, 16, 4.0)
    with pytest.raises(NotAdmissible):
        MotherWavelet(2, lambda x: np.ones(x.shape[:-1] + (4,)), radius=1.0, quadrature_grid=g)
