import numpy as np
import pytest

from clifwave.algebra import Multivector
from clifwave.analysis import (CSV_HEADER, UncertaintyReport, cft_uncertainty, frequency_spread,
                               integrated_variance, position_spread, wavelet_uncertainty)
from clifwave.field import GridSpec, MultivectorField, gaussian, random_bandlimited_field
from clifwave.simgroup import GroupGrid
from clifwave.wavelets import GaborParams, gabor_wavelet


@pytest.fixture(scope="module")
def grid():
    return GridSpec(2, 32, 8.0)


def test_spreads_of_gaussian(grid):
    # f = exp(-|x|^2/2): ||x f||^2 = pi * 1, ||w f^||^2 = (2 pi)^2 * pi
    f = gaussian(grid, 1.0)
    assert position_spread(f) == pytest.approx(np.pi, rel=1e-10)
    assert frequency_spread(f) == pytest.approx(4 * np.pi ** 3, rel=1e-10)


@pytest.mark.parametrize("n,N,L", [(2, 64, 10.0), (3, 32, 8.0)])
def test_gaussian_cft_ratio_equals_dimension(n, N, L):
    rep = cft_uncertainty(gaussian(GridSpec(n, N, L), 1.3))
    assert rep.ratio == pytest.approx(n, rel=1e-8)
    assert rep.satisfied


def test_random_fields_satisfy_cft_bound(grid):
    for s in range(10):
        f = random_bandlimited_field(grid, np.random.default_rng(s), center=1.0, envelope=2.0)
        assert cft_uncertainty(f).satisfied


def test_wavelet_principle_and_reduced_form(grid):
    psi = gabor_wavelet(GaborParams.default(2))
    gg = GroupGrid.build(grid, 6, 4)
    f = random_bandlimited_field(grid, np.random.default_rng(0), center=1.5, bandwidth=0.5,
                                 envelope=2.0)
    rep = wavelet_uncertainty(f, psi, gg)
    assert rep.satisfied
    assert rep.reduced_ratio == pytest.approx(rep.ratio, rel=1e-10)


def test_non_scalar_constant_has_no_reduced_form():
    g = GridSpec(3, 8, 3.0)
    amp = Multivector(3, [1, 0.5, 0, 0, 0, 0, 0, 0])
    psi = gabor_wavelet(GaborParams((1.0,) * 3, (np.pi, 0, 0), amp))
    gg = GroupGrid.build(g, 2, 2)
    f = random_bandlimited_field(g, np.random.default_rng(1), center=1.0, envelope=1.0)
    rep = wavelet_uncertainty(f, psi, gg)
    assert rep.reduced_lhs is None and rep.reduced_ratio is None
    assert np.isfinite(rep.ratio)


def test_integrated_variance_is_parity_independent(grid):
    gg = GroupGrid.build(grid, 4, 4)
    f = random_bandlimited_field(grid, np.random.default_rng(2), center=1.0)
    even = integrated_variance(f, gabor_wavelet(GaborParams.default(2)), gg)
    odd = integrated_variance(f, gabor_wavelet(GaborParams.default(2, odd=True)), gg)
    assert even == pytest.approx(odd, rel=1e-12)


def test_zero_field_rejected(grid):
    with pytest.raises(ValueError):
        cft_uncertainty(MultivectorField.zeros(grid))


def test_report_csv():
    rep = UncertaintyReport(2.0, 1.0)
    assert CSV_HEADER.split(",") == ["lhs", "rhs", "ratio", "satisfied"]
    assert rep.csv_row() == "2.0,1.0,2.0,true"
    assert not UncertaintyReport(0.9, 1.0, tau_up=0.05).satisfied
    assert UncertaintyReport(0.96, 1.0, tau_up=0.05).satisfied


def test_ratios_are_scale_invariant(grid):
    psi = gabor_wavelet(GaborParams.default(2))
    gg = GroupGrid.build(grid, 4, 4)
    f = random_bandlimited_field(grid, np.random.default_rng(4), center=1.5, envelope=2.0)
    lam = Multivector.scalar(2, -3.7)
    assert cft_uncertainty(lam * f).ratio == pytest.approx(cft_uncertainty(f).ratio, rel=1e-12)
    assert (wavelet_uncertainty(lam * f, psi, gg).ratio
            == pytest.approx(wavelet_uncertainty(f, psi, gg).ratio, rel=1e-12))


def test_wavelet_principle_holds_under_refinement(grid):
    psi = gabor_wavelet(GaborParams.default(2))
    gg = GroupGrid.build(grid, 4, 4)
    f = random_bandlimited_field(grid, np.random.default_rng(5), center=1.5, envelope=2.0)
    for _ in range(3):
        assert wavelet_uncertainty(f, psi, gg).satisfied
        gg = gg.refine()
