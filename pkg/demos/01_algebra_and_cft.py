"""Multivectors, the pseudoscalar and the Clifford Fourier transform.

Run with ``python3 demos/01_algebra_and_cft.py``.
"""

import numpy as np

from clifwave import (GridSpec, Multivector, basis, cft_forward, cft_inverse, even_odd_split,
                      l2_norm, plancherel_lhs_rhs, pseudoscalar, reverse)
from clifwave.field import gaussian

# Cl_3: three orthonormal vectors, eight blades.
e = basis(3)
a = 1 + 2 * e["e1"] - e["e23"]
b = e["e1"] + e["e2"]
print("a =", a)
print("b =", b)
print("a b =", a * b)
print("reverse(a b) == reverse(b) reverse(a):", reverse(a * b).isclose(reverse(b) * reverse(a)))

# The pseudoscalar squares to -1 in both algebras. It commutes with everything in
# Cl_3, while in Cl_2 it anticommutes with vectors.
for n in (2, 3):
    i = pseudoscalar(n)
    print(f"i_{n}^2 =", i * i)
m2 = Multivector(2, [1.0, 2.0, 3.0, 4.0])
even, odd = even_odd_split(m2)
i2 = pseudoscalar(2)
print("i_2 m == m_even i_2 - m_odd i_2:", (i2 * m2).isclose(even * i2 - odd * i2))

# The transform of a Gaussian with a multivector amplitude is a Gaussian with the
# same amplitude, because the amplitude sits to the left of the kernel.
g = GridSpec(2, 64, 8.0)
amp = Multivector(2, [1.0, 0.5, -0.25, 2.0])
f = gaussian(g, width=1.0, amplitude=amp)
spec = cft_forward(f)
peak = spec.at(g.origin_index)
print("F f(0) =", peak, " expected 2 pi A =", amp * (2 * np.pi))

# Round trip and Plancherel on a random field.
rng = np.random.default_rng(0)
h = f * Multivector(2, rng.standard_normal(4))
print("round-trip error:", l2_norm(cft_inverse(cft_forward(h)) - h) / l2_norm(h))
lhs, rhs = plancherel_lhs_rhs(f, h)
print("(f, h) =", lhs)
print("(2 pi)^-2 (F f, F h) =", rhs)
