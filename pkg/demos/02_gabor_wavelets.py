"""Gabor wavelets: admissibility, orientation selectivity and reconstruction.

Run with ``python3 demos/02_gabor_wavelets.py``. Takes a few seconds.
"""

import numpy as np

from clifwave import (GaborParams, GridSpec, GroupGrid, Multivector, analyze_spectral,
                      gabor_wavelet, inner_product_relation, sample_closed_form, synthesize)
from clifwave.cwt import relative_error
from clifwave.field import random_bandlimited_field

# A spinor (even) Gabor wavelet in Cl_2: sigma = 1, carrier omega0 = (pi, 0).
p = GaborParams.default(2)
psi = gabor_wavelet(p)
print(psi)
print("admissibility constant C =", psi.admissibility)

# An odd amplitude changes the sign convention of the spectral transform but
# gives the same scalar constant, since e1~ e1 = 1.
odd = gabor_wavelet(GaborParams.default(2, odd=True))
print("odd wavelet: epsilon =", odd.epsilon, " C =", odd.admissibility)

# A plane wave along the direction at 60 degrees, windowed by a wide Gaussian.
g = GridSpec(2, 64, 16.0)
k = 1.5 * np.array([np.cos(np.pi / 3), np.sin(np.pi / 3)])


def wave(x):
    env = np.exp(-np.sum(x ** 2, axis=-1) / (2 * 6.0 ** 2))
    return (env * np.cos(x @ k))[..., None] * [1.0, 0.0, 0.0, 0.0]


f = sample_closed_form(g, wave)
gg = GroupGrid.build(g, n_scales=16, n_angles=16)
w = analyze_spectral(f, psi, gg)

# Energy per rotation: the largest response sits where the rotated carrier
# lines up with the wave (60 or 240 degrees).
energy = np.sum(w.data ** 2, axis=(0, 2, 3, 4))
for theta, en in zip(np.degrees(gg.angles[:, 0]), energy / energy.max()):
    print(f"  theta = {theta:6.1f} deg  relative energy {en:.3f}  " + "#" * int(40 * en))

# Energy per scale, weighted by the Haar measure da / a^3, peaks near a = |omega0| / |k|.
per_scale = np.sum(w.data ** 2, axis=(1, 2, 3, 4)) * gg.scale_weights
print("best scale:", gg.scales[np.argmax(per_scale)], " expected about", np.pi / 1.5)

# Norm relation and reconstruction on a band-limited random field, and what a
# refined group grid buys.
f = random_bandlimited_field(g, np.random.default_rng(1), center=1.5, bandwidth=0.5)
for grid in (gg, gg.refine()):
    lhs, rhs = inner_product_relation(f, f, psi, grid)
    err = relative_error(synthesize(analyze_spectral(f, psi, grid), psi), f)
    print(f"{grid}: ||T f||^2 = {lhs.scalar_part:.5f}, C ||f||^2 = {rhs.scalar_part:.5f}, "
          f"reconstruction error {err:.2%}")

# A non-scalar constant in Cl_3: C = A~ A c with A = 1 + 0.5 e1.
p3 = GaborParams((1.0, 1.0, 1.0), (np.pi, 0.0, 0.0), Multivector(3, [1, 0.5, 0, 0, 0, 0, 0, 0]))
psi3 = gabor_wavelet(p3)
print("Cl_3 constant:", psi3.admissibility, " inverse:", psi3.admissibility_inverse)
