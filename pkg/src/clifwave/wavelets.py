"""Clifford Gabor wavelets.

    psi(x) = A g(x) (exp(i_n w0.x) - exp(-1/2 sum_k sigma_k^2 w0_k^2)),
    g(x)   = exp(-1/2 sum_k x_k^2 / sigma_k^2) / ((2 pi)^(n/2) prod_k sigma_k)

with spectrum A phi(w), phi real. The constant term makes phi(0) = 0 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Multivector, check_dim, gp, pseudoscalar, rev
from .cwt import MotherWavelet, admissibility_sum
from .errors import NotAdmissible
from .field import GridSpec

# |psi| < exp(-40) beyond this many sigmas
RADIUS_SIGMAS = 9.0


@dataclass(frozen=True)
class GaborParams:
    sigma: tuple
    omega0: tuple
    amplitude: Multivector

    def __post_init__(self):
        sigma = tuple(float(s) for s in np.atleast_1d(self.sigma))
        omega0 = tuple(float(w) for w in np.atleast_1d(self.omega0))
        dim = check_dim(len(sigma))
        if len(omega0) != dim or self.amplitude.dim != dim:
            raise ValueError("sigma, omega0 and amplitude must share the dimension")
        if not all(s > 0 for s in sigma):
            raise ValueError(f"sigma must be positive, got {sigma}")
        if dim == 2 and self.amplitude.parity == "mixed":
            raise NotAdmissible("for n = 2 the amplitude must be even or odd")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "omega0", omega0)

    @property
    def dim(self) -> int:
        return len(self.sigma)

    @classmethod
    def default(cls, dim: int, odd: bool = False) -> "GaborParams":
        """sigma = 1, omega0 = (pi, 0, ...), A = 1 (or A = e1 when ``odd``)."""
        dim = check_dim(dim)
        amp = Multivector.blade(dim, "e1") if odd else Multivector.scalar(dim)
        return cls((1.0,) * dim, (np.pi,) + (0.0,) * (dim - 1), amp)

    @property
    def dc_term(self) -> float:
        s, w = np.array(self.sigma), np.array(self.omega0)
        return float(np.exp(-0.5 * np.sum(s ** 2 * w ** 2)))


def gabor_eval(p: GaborParams, x):
    """psi^c at one point (returns a Multivector) or at points of shape (..., n)."""
    x = np.asarray(x, dtype=float)
    s = np.array(p.sigma)
    env = np.exp(-0.5 * np.sum((x / s) ** 2, axis=-1))
    env = env / ((2 * np.pi) ** (p.dim / 2) * np.prod(s))
    phase = x @ np.array(p.omega0)
    a = p.amplitude.coeffs
    a_i = gp(a, pseudoscalar(p.dim).coeffs)
    out = (env * (np.cos(phase) - p.dc_term))[..., None] * a + (env * np.sin(phase))[..., None] * a_i
    return Multivector(p.dim, out) if x.ndim == 1 else out


def gabor_phi(p: GaborParams, omega) -> np.ndarray:
    omega = np.asarray(omega, dtype=float)
    s2 = np.array(p.sigma) ** 2
    w0 = np.array(p.omega0)
    return (np.exp(-0.5 * np.sum(s2 * (omega - w0) ** 2, axis=-1))
            - np.exp(-0.5 * np.sum(s2 * (omega ** 2 + w0 ** 2), axis=-1)))


def gabor_spectrum(p: GaborParams, omega):
    """A phi(omega) at one frequency (Multivector) or at an array of them."""
    omega = np.asarray(omega, dtype=float)
    out = gabor_phi(p, omega)[..., None] * p.amplitude.coeffs
    return Multivector(p.dim, out) if omega.ndim == 1 else out


def gabor_admissibility(p: GaborParams, grid: GridSpec) -> Multivector:
    """A~ A |S^(n-1)|^-1 int phi(w)^2 / |w|^n dw, on the frequency nodes of ``grid``."""
    phi2 = gabor_phi(p, grid.freqs) ** 2
    integral = float(admissibility_sum(phi2[..., None], grid)[0])
    a = p.amplitude
    return Multivector(p.dim, rev(a.coeffs)) * a * integral


def quadrature_grid(p: GaborParams) -> GridSpec:
    """Frequency grid resolving phi: Nyquist past |w0| + 9/sigma_min.

    The frequency step is 1/(8 sigma_max) for n = 2 and 1/(4 sigma_max) for
    n = 3, where the grid is capped at 64^3 nodes.
    """
    s = np.array(p.sigma)
    reach = np.linalg.norm(p.omega0) + RADIUS_SIGMAS / s.min()
    dx = np.pi / reach
    L = (8 if p.dim == 2 else 4) * np.pi * s.max()
    N = 1 << int(np.ceil(np.log2(2 * L / dx)))
    if p.dim == 3:
        N = min(N, 64)
    return GridSpec(p.dim, N, L)


def gabor_wavelet(p: GaborParams | None = None, dim: int = 2, grid: GridSpec | None = None) -> MotherWavelet:
    """Wrap Gabor parameters as a :class:`MotherWavelet`."""
    p = GaborParams.default(dim) if p is None else p
    parity = p.amplitude.parity
    return MotherWavelet(
        p.dim,
        lambda x: gabor_eval(p, x),
        lambda w: gabor_spectrum(p, w),
        radius=RADIUS_SIGMAS * max(p.sigma),
        quadrature_grid=grid or quadrature_grid(p),
        parity=parity,
        name=f"gabor(sigma={p.sigma}, omega0={tuple(round(w, 4) for w in p.omega0)})",
    )
