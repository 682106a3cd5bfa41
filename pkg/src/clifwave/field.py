"""Multivector signals sampled on uniform periodic grids."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import Multivector, check_dim, contract, gp, rev
from .errors import DimensionError, GridMismatch


@dataclass(frozen=True)
class GridSpec:
    """N points per axis on [-L, L)**n with spacing dx = 2L/N.

    Sample j sits at x_j = -L + j*dx; the matching angular frequencies are
    omega_k = pi*k/L for k in [-N/2, N/2), stored in that (fft-shifted) order.
    """

    dim: int
    N: int
    L: float

    def __post_init__(self):
        object.__setattr__(self, "dim", check_dim(self.dim))
        N = int(self.N)
        if N != self.N or N < 2 or N & (N - 1):
            raise ValueError(f"points per axis must be a power of two >= 2, got {self.N!r}")
        object.__setattr__(self, "N", N)
        L = float(self.L)
        if not np.isfinite(L) or L <= 0:
            raise ValueError(f"half width must be positive, got {self.L!r}")
        object.__setattr__(self, "L", L)

    @property
    def blades(self) -> int:
        return 1 << self.dim

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.dim

    @property
    def dx(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def domega(self) -> float:
        return np.pi / self.L

    @cached_property
    def axis(self) -> np.ndarray:
        return -self.L + self.dx * np.arange(self.N)

    @cached_property
    def freq_axis(self) -> np.ndarray:
        return self.domega * np.arange(-self.N // 2, self.N // 2)

    @cached_property
    def coords(self) -> np.ndarray:
        """Sample locations, shape grid.shape + (n,)."""
        return _mesh(self.axis, self.dim)

    @cached_property
    def freqs(self) -> np.ndarray:
        """Frequency nodes, shape grid.shape + (n,)."""
        return _mesh(self.freq_axis, self.dim)

    @cached_property
    def origin_index(self) -> tuple:
        return (self.N // 2,) * self.dim


def _mesh(axis, dim):
    out = np.stack(np.meshgrid(*([axis] * dim), indexing="ij"), axis=-1)
    out.setflags(write=False)
    return out


class MultivectorField:
    """Samples of a Cl_n-valued function on a :class:`GridSpec`.

    ``data`` has shape ``grid.shape + (2**n,)``, axes in order (x_1, ..., x_n).
    """

    domain = "space"

    def __init__(self, grid: GridSpec, data):
        data = np.array(data, dtype=float)
        want = grid.shape + (grid.blades,)
        if data.shape != want:
            raise DimensionError(f"expected samples of shape {want}, got {data.shape}")
        if not np.all(np.isfinite(data)):
            bad = tuple(int(i) for i in np.argwhere(~np.isfinite(data))[0][:-1])
            raise ValueError(f"non-finite sample at node {bad}")
        data.setflags(write=False)
        self.grid = grid
        self.data = data

    @property
    def dim(self) -> int:
        return self.grid.dim

    @property
    def cell(self) -> float:
        """Quadrature weight of one node."""
        return self.grid.dx ** self.dim

    @classmethod
    def zeros(cls, grid: GridSpec):
        return cls(grid, np.zeros(grid.shape + (grid.blades,)))

    def _like(self, data):
        return type(self)(self.grid, data)

    def _check(self, other):
        if type(other) is not type(self) or other.grid != self.grid:
            raise GridMismatch("operands must share grid and domain")

    def __add__(self, other):
        self._check(other)
        return self._like(self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        return self._like(self.data - other.data)

    def __neg__(self):
        return self._like(-self.data)

    def __mul__(self, other):
        """Scalar scaling or right multiplication by a constant multivector."""
        if np.isscalar(other):
            return self._like(self.data * float(other))
        if isinstance(other, Multivector):
            return self._like(gp(self.data, other.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return self._like(self.data * float(other))
        if isinstance(other, Multivector):
            return self._like(gp(other.coeffs, self.data))
        return NotImplemented

    def reverse(self):
        return self._like(rev(self.data))

    def at(self, index) -> Multivector:
        return Multivector(self.dim, self.data[tuple(index)])

    def component(self, blade: int) -> np.ndarray:
        return self.data[..., blade]

    def __repr__(self):
        g = self.grid
        return f"{type(self).__name__}(n={g.dim}, N={g.N}, L={g.L})"


def inner_product(f: MultivectorField, g: MultivectorField) -> Multivector:
    """(f, g) = sum_j f(x_j) g(x_j)~ * cell, a multivector."""
    f._check(g)
    return Multivector(f.dim, contract(f.data, rev(g.data)) * f.cell)


def l2_norm(f: MultivectorField) -> float:
    return float(np.sqrt(np.sum(f.data ** 2) * f.cell))


def sample_closed_form(grid: GridSpec, fn) -> MultivectorField:
    """Evaluate ``fn`` at every node.

    ``fn`` is tried first as a vectorized callable taking an array of points of
    shape (..., n) and returning (..., 2**n) coefficients; if that does not
    produce the right shape it is called once per node and may return a
    :class:`Multivector`, a coefficient sequence or a real scalar.
    """
    want = grid.shape + (grid.blades,)
    try:
        data = np.asarray(fn(grid.coords), dtype=float)
    except Exception:
        data = None
    if data is None or data.shape != want:
        data = np.empty(want)
        for idx in np.ndindex(*grid.shape):
            data[idx] = _coeffs(fn(grid.coords[idx]), grid)
    if not np.all(np.isfinite(data)):
        bad = tuple(int(i) for i in np.argwhere(~np.isfinite(data))[0][:-1])
        raise ValueError(f"closed form is not finite at node {bad} (x = {grid.coords[bad]})")
    return MultivectorField(grid, data)


def _coeffs(value, grid):
    if isinstance(value, Multivector):
        if value.dim != grid.dim:
            raise DimensionError("closed form returned a multivector of the wrong algebra")
        return value.coeffs
    if np.isscalar(value):
        c = np.zeros(grid.blades)
        c[0] = value
        return c
    return np.asarray(value, dtype=float)


def gaussian(grid: GridSpec, width: float = 1.0, amplitude: Multivector | None = None,
             center=None) -> MultivectorField:
    """A * exp(-|x - c|^2 / (2 width^2)) sampled on ``grid``."""
    c = np.zeros(grid.dim) if center is None else np.asarray(center, dtype=float)
    amp = Multivector.scalar(grid.dim) if amplitude is None else amplitude
    r2 = np.sum((grid.coords - c) ** 2, axis=-1)
    return MultivectorField(grid, np.exp(-0.5 * r2 / width ** 2)[..., None] * amp.coeffs)


def random_bandlimited_field(grid: GridSpec, rng: np.random.Generator, *,
                             center: float = 0.0, bandwidth: float = 1.0,
                             envelope: float | None = None,
                             offset=None) -> MultivectorField:
    """Random smooth multivector field with spectrum near |omega| = ``center``.

    White noise per blade is filtered with exp(-(|omega| - center)^2 / (2 bandwidth^2))
    and optionally windowed by a spatial Gaussian of width ``envelope``
    centred at ``offset``. Normalized to unit L2 norm.
    """
    noise = rng.standard_normal(grid.shape + (grid.blades,))
    axes = tuple(range(grid.dim))
    k = np.fft.fftfreq(grid.N, d=grid.dx) * 2 * np.pi
    kk = np.sqrt(sum(g ** 2 for g in np.meshgrid(*([k] * grid.dim), indexing="ij")))
    taper = np.exp(-0.5 * ((kk - center) / bandwidth) ** 2)
    data = np.real(np.fft.ifftn(np.fft.fftn(noise, axes=axes) * taper[..., None], axes=axes))
    if envelope is not None:
        c = np.zeros(grid.dim) if offset is None else np.asarray(offset, dtype=float)
        r2 = np.sum((grid.coords - c) ** 2, axis=-1)
        data = data * np.exp(-0.5 * r2 / envelope ** 2)[..., None]
    f = MultivectorField(grid, data)
    return f * (1.0 / l2_norm(f))
