"""Clifford Fourier transform with the pseudoscalar as imaginary unit.

    F{f}(w) = int f(x) exp(-i_n w.x) d^n x,     i_n = e1...en,

with the exponential multiplied from the right. Right multiplication by i_n
maps the blade pair (e_A, e_A i_n) onto itself like multiplication by the
complex unit, so the transform of a Cl_n field is 2**(n-1) ordinary complex
FFTs, one per pair.
"""

from __future__ import annotations

import numpy as np
import scipy.fft

from .algebra import Multivector, right_pseudoscalar_pairs
from .field import GridSpec, MultivectorField, inner_product


class Spectrum(MultivectorField):
    """CFT samples at the frequency nodes ``grid.freqs``."""

    domain = "frequency"

    @property
    def cell(self) -> float:
        return self.grid.domega ** self.dim


def to_complex(data: np.ndarray, n: int) -> np.ndarray:
    """Pack (..., 2**n) coefficients into (..., 2**(n-1)) complex planes."""
    pairs = right_pseudoscalar_pairs(n)
    out = np.empty(data.shape[:-1] + (len(pairs),), dtype=complex)
    for p, (A, D, s) in enumerate(pairs):
        out[..., p] = data[..., A] + 1j * s * data[..., D]
    return out


def from_complex(z: np.ndarray, n: int) -> np.ndarray:
    pairs = right_pseudoscalar_pairs(n)
    out = np.empty(z.shape[:-1] + (1 << n,))
    for p, (A, D, s) in enumerate(pairs):
        out[..., A] = z[..., p].real
        out[..., D] = s * z[..., p].imag
    return out


def _alternating(grid: GridSpec) -> np.ndarray:
    # exp(+-i pi k) for k in [-N/2, N/2): absorbs the -L grid offset
    k = np.arange(-grid.N // 2, grid.N // 2)
    s = np.where(k % 2 == 0, 1.0, -1.0)
    out = s
    for _ in range(grid.dim - 1):
        out = np.multiply.outer(out, s)
    return out


def forward_array(data: np.ndarray, grid: GridSpec) -> np.ndarray:
    """CFT of raw (grid.shape + (2**n,)) samples; returns spectrum samples."""
    axes = tuple(range(grid.dim))
    z = to_complex(data, grid.dim)
    zh = scipy.fft.fftshift(scipy.fft.fftn(z, axes=axes), axes=axes)
    zh *= (_alternating(grid) * grid.dx ** grid.dim)[..., None]
    return from_complex(zh, grid.dim)


def inverse_array(data: np.ndarray, grid: GridSpec) -> np.ndarray:
    axes = tuple(range(grid.dim))
    z = to_complex(data, grid.dim) * _alternating(grid)[..., None]
    zx = scipy.fft.ifftn(scipy.fft.ifftshift(z, axes=axes), axes=axes)
    return from_complex(zx / grid.dx ** grid.dim, grid.dim)


def cft_forward(f: MultivectorField) -> Spectrum:
    return Spectrum(f.grid, forward_array(f.data, f.grid))


def cft_inverse(s: Spectrum) -> MultivectorField:
    """Inverse CFT, (2 pi)^-n sum_k s(w_k) exp(+i_n w_k.x) dw^n."""
    return MultivectorField(s.grid, inverse_array(s.data, s.grid))


def plancherel_lhs_rhs(f: MultivectorField, g: MultivectorField):
    """Both sides of (f, g) = (2 pi)^-n (F f, F g)."""
    lhs = inner_product(f, g)
    rhs = inner_product(cft_forward(f), cft_forward(g)) * (2 * np.pi) ** -f.dim
    return lhs, rhs


def negate_frequencies(data: np.ndarray, dim: int) -> np.ndarray:
    """Samples at -w_k (or -x_j), using periodicity for the k = -N/2 row."""
    for ax in range(dim):
        data = np.roll(np.flip(data, axis=ax), 1, axis=ax)
    return data


def shift_phase(grid: GridSpec, x0) -> Spectrum:
    """exp(-i_n w.x0) on the frequency grid, the CFT image of a shift by x0."""
    lam = grid.freqs @ np.asarray(x0, dtype=float)
    data = np.zeros(grid.shape + (grid.blades,))
    data[..., 0] = np.cos(lam)
    data[..., -1] = -np.sin(lam)
    return Spectrum(grid, data)


def pseudoscalar_exp(dim: int, angle: float) -> Multivector:
    """exp(i_n * angle) = cos(angle) + i_n sin(angle)."""
    c = np.zeros(1 << dim)
    c[0] = np.cos(angle)
    c[-1] = np.sin(angle)
    return Multivector(dim, c)
