"""Uncertainty principles for the Clifford Fourier and wavelet transforms.

Run with ``python3 demos/03_uncertainty.py``.
"""

import numpy as np

from clifwave import (GaborParams, GridSpec, GroupGrid, cft_uncertainty, gabor_wavelet,
                      wavelet_uncertainty)
from clifwave.analysis import CSV_HEADER
from clifwave.field import gaussian, random_bandlimited_field

# Gaussians are the most concentrated signals. With the bound n (2 pi)^n / 4 ||f||^4
# they reach a ratio of exactly n, not 1: the bound is not tight for n > 1.
for n, N in ((2, 64), (3, 32)):
    rep = cft_uncertainty(gaussian(GridSpec(n, N, 8.0), width=1.0))
    print(f"n = {n}: gaussian lhs / rhs = {rep.ratio:.6f}")

# Random localized band-limited fields sit well above the bound.
g = GridSpec(2, 32, 8.0)
rng = np.random.default_rng(3)
print(CSV_HEADER)
for _ in range(5):
    f = random_bandlimited_field(g, rng, center=1.5, bandwidth=0.5, envelope=2.0)
    print(cft_uncertainty(f).csv_row())

# The wavelet version spreads the coefficients over translations instead of positions.
psi = gabor_wavelet(GaborParams.default(2))
gg = GroupGrid.build(g, 8, 8)
f = random_bandlimited_field(g, rng, center=1.5, bandwidth=0.5, envelope=2.0)
rep = wavelet_uncertainty(f, psi, gg)
print(f"wavelet principle: lhs = {rep.lhs:.4g}, rhs = {rep.rhs:.4g}, ratio = {rep.ratio:.3g}")
print(f"scalar-C form gives the same ratio: {rep.reduced_ratio:.3g}")
