"""The similitude group SIM(n): elements, rotations, quadrature grids, daughters."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import Multivector, check_dim, contract, gp, rev
from .cft import Spectrum, cft_forward
from .field import GridSpec, MultivectorField

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class SimElement:
    """(a, theta, b): dilation a > 0, rotation angles, translation b.

    For n = 2 ``theta`` is one angle in [0, 2 pi). For n = 3 it is the z-y-z
    Euler triple (theta1, theta2, theta3) with theta1 in [0, pi] the polar
    (y) angle and theta2, theta3 in [0, 2 pi); the rotation is
    Rz(theta2) Ry(theta1) Rz(theta3).
    """

    a: float
    theta: tuple
    b: tuple

    def __post_init__(self):
        a = float(self.a)
        if not a > 0 or not np.isfinite(a):
            raise ValueError(f"dilation must be positive, got {self.a!r}")
        theta = tuple(float(t) for t in np.atleast_1d(self.theta))
        b = tuple(float(v) for v in np.atleast_1d(self.b))
        dim = check_dim(len(b))
        if dim == 2:
            if len(theta) != 1 or not 0 <= theta[0] < TWO_PI + 1e-12:
                raise ValueError(f"n=2 needs one angle in [0, 2pi), got {theta}")
        else:
            if len(theta) != 3:
                raise ValueError(f"n=3 needs three Euler angles, got {theta}")
            t1, t2, t3 = theta
            if not (0 <= t1 <= np.pi + 1e-12 and 0 <= t2 < TWO_PI + 1e-12 and 0 <= t3 < TWO_PI + 1e-12):
                raise ValueError(f"Euler angles out of range: {theta}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return len(self.b)

    @classmethod
    def identity(cls, dim: int) -> "SimElement":
        return cls(1.0, (0.0,) if check_dim(dim) == 2 else (0.0, 0.0, 0.0), (0.0,) * dim)


def wrap_angle(t: float) -> float:
    return float(np.mod(t, TWO_PI))


# -- rotations ---------------------------------------------------------------


def _plane_rotor(dim: int, plane: int, angle: float) -> Multivector:
    """Rotor exp(-B angle/2) for the unit bivector e_plane (bitmask)."""
    c = np.zeros(1 << dim)
    c[0] = np.cos(angle / 2)
    c[plane] = -np.sin(angle / 2)
    return Multivector(dim, c)


def rotor(dim: int, theta) -> Multivector:
    """Even multivector R with r_theta(x) = R x R~."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    if check_dim(dim) == 2:
        return _plane_rotor(2, 0b11, theta[0])
    t1, t2, t3 = theta
    rz2 = _plane_rotor(3, 0b011, t2)
    # e3 e1 = -e13, so the y rotation (e3 towards e1) uses +sin on e13
    ry1 = _plane_rotor(3, 0b101, -t1)
    rz3 = _plane_rotor(3, 0b011, t3)
    return rz2 * ry1 * rz3


def rotate_vector(theta, x) -> np.ndarray:
    """Apply r_theta to ``x`` by the rotor sandwich R x R~."""
    x = np.asarray(x, dtype=float)
    R = rotor(x.size, theta)
    v = Multivector.vector(x)
    out = R * v * R.reverse()
    return out.coeffs[[1 << k for k in range(x.size)]]


def rotation_matrix(dim: int, theta) -> np.ndarray:
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    if check_dim(dim) == 2:
        c, s = np.cos(theta[0]), np.sin(theta[0])
        return np.array([[c, -s], [s, c]])
    t1, t2, t3 = theta
    return _rz(t2) @ _ry(t1) @ _rz(t3)


def _rz(t):
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _ry(t):
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


# -- group quadrature --------------------------------------------------------


class GroupGrid:
    """Quadrature nodes for d lambda = da dtheta d^n b / a^(n+1).

    Scales use the midpoint rule in log a on [a_min, a_max], so the weight of
    scale a_i is dlog(a) * a_i**-n. Rotation weights approximate the
    normalized Haar measure on SO(n) and sum to one. Translations are the
    nodes of the signal grid with weight dx**n.
    """

    def __init__(self, grid: GridSpec, scales, scale_weights, angles, angle_weights,
                 a_range=None):
        self.grid = grid
        self.dim = grid.dim
        self.scales = np.asarray(scales, dtype=float).reshape(-1)
        self.scale_weights = np.asarray(scale_weights, dtype=float).reshape(-1)
        angles = np.asarray(angles, dtype=float)
        self.angles = angles.reshape(-1, 1) if self.dim == 2 else angles.reshape(-1, 3)
        self.angle_weights = np.asarray(angle_weights, dtype=float).reshape(-1)
        if self.scales.size != self.scale_weights.size or not np.all(self.scales > 0):
            raise ValueError("need one positive weight per positive scale")
        if len(self.angles) != self.angle_weights.size:
            raise ValueError("need one weight per rotation node")
        if abs(self.angle_weights.sum() - 1.0) > 1e-12:
            raise ValueError(f"rotation weights sum to {self.angle_weights.sum()!r}, not 1")
        self.a_range = a_range
        self.n_angles_axis = None

    @classmethod
    def build(cls, grid: GridSpec, n_scales: int = 16, n_angles: int | None = None,
              a_min: float | None = None, a_max: float | None = None) -> "GroupGrid":
        """Default discretization.

        ``n_angles`` counts plane angles for n = 2 (default 16) and nodes per
        Euler axis for n = 3 (default 8, giving 512 rotations). The default
        scale range is [dx/4, L/2].
        """
        a_min = grid.dx / 4 if a_min is None else float(a_min)
        a_max = grid.L / 2 if a_max is None else float(a_max)
        if not 0 < a_min < a_max:
            raise ValueError(f"bad scale range [{a_min}, {a_max}]")
        step = np.log(a_max / a_min) / n_scales
        scales = a_min * np.exp(step * (np.arange(n_scales) + 0.5))
        weights = step * scales ** -grid.dim
        if n_angles is None:
            n_angles = 16 if grid.dim == 2 else 8
        angles, aw = haar_nodes(grid.dim, n_angles)
        gg = cls(grid, scales, weights, angles, aw, a_range=(a_min, a_max))
        gg.n_angles_axis = n_angles
        return gg

    def refine(self) -> "GroupGrid":
        """Next member of a sequence converging to the continuous group integral.

        Doubles the scale count and the angle count (per axis) and widens the
        scale range by a factor 2 at both ends; the log-scale step shrinks
        whenever a_max / a_min > 4.
        """
        if self.a_range is None or self.n_angles_axis is None:
            raise ValueError("only grids made by GroupGrid.build can be refined")
        a_min, a_max = self.a_range
        return GroupGrid.build(self.grid, 2 * self.scales.size, 2 * self.n_angles_axis,
                               a_min / 2, a_max * 2)

    @property
    def n_scales(self) -> int:
        return self.scales.size

    @property
    def n_rotations(self) -> int:
        return len(self.angles)

    @cached_property
    def rotations(self) -> np.ndarray:
        return np.stack([rotation_matrix(self.dim, t) for t in self.angles])

    def slices(self):
        """Yield (i, j, a, theta, R, w_a * w_theta) for every (scale, rotation)."""
        for i, (a, wa) in enumerate(zip(self.scales, self.scale_weights)):
            for j, (t, wt) in enumerate(zip(self.angles, self.angle_weights)):
                yield i, j, a, t, self.rotations[j], wa * wt

    def element(self, i: int, j: int, index) -> SimElement:
        b = self.grid.coords[tuple(index)]
        return SimElement(self.scales[i], tuple(self.angles[j]), tuple(b))

    def to_config(self) -> str:
        g = self.grid
        lines = [f"n = {g.dim}", f"grid = {g.N}", f"half_width = {g.L!r}"]
        if self.a_range is not None:
            lines += [f"a_min = {self.a_range[0]!r}", f"a_max = {self.a_range[1]!r}",
                      f"n_scales = {self.n_scales}", f"n_angles = {self.n_angles_axis}"]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_config(cls, text: str) -> "GroupGrid":
        kv = parse_key_values(text)
        grid = GridSpec(int(kv["n"]), int(kv["grid"]), float(kv["half_width"]))
        return cls.build(grid, int(kv.get("n_scales", 16)),
                         int(kv["n_angles"]) if "n_angles" in kv else None,
                         float(kv["a_min"]) if "a_min" in kv else None,
                         float(kv["a_max"]) if "a_max" in kv else None)

    def __repr__(self):
        return (f"GroupGrid(n={self.dim}, N={self.grid.N}, L={self.grid.L}, "
                f"scales={self.n_scales}, rotations={self.n_rotations})")


def haar_nodes(dim: int, count: int):
    """Rotation nodes and weights for the normalized Haar measure.

    n = 2: ``count`` equispaced angles, weight 1/count each (exact for
    trigonometric polynomials of degree < count).
    n = 3: Gauss-Legendre in cos(theta1) times equispaced theta2, theta3,
    ``count`` nodes per axis; realizes sin(theta1) dtheta1 dtheta2 dtheta3 / (8 pi^2).
    """
    if check_dim(dim) == 2:
        return TWO_PI * np.arange(count) / count, np.full(count, 1.0 / count)
    u, wu = np.polynomial.legendre.leggauss(count)
    t1 = np.arccos(u)
    t = TWO_PI * np.arange(count) / count
    T1, T2, T3 = np.meshgrid(t1, t, t, indexing="ij")
    W = np.broadcast_to((wu / 2)[:, None, None] / count ** 2, T1.shape)
    return np.stack([T1, T2, T3], axis=-1).reshape(-1, 3), W.reshape(-1).copy()


def parse_key_values(text: str) -> dict:
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"expected key = value, got {raw!r}")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip()
    return out


# -- daughter wavelets -------------------------------------------------------


def image_offsets(grid: GridSpec, extent: float) -> np.ndarray:
    """Lattice translates 2L*m needed to periodize a function of radius ``extent``."""
    L = grid.L
    K = max(int(np.ceil((extent + L) / (2 * L))) - 1, 0)
    r = np.arange(-K, K + 1) * 2 * L
    return np.stack(np.meshgrid(*([r] * grid.dim), indexing="ij"), -1).reshape(-1, grid.dim)


def daughter_samples(psi, a: float, R: np.ndarray, b, grid: GridSpec,
                     periodic: bool = True) -> np.ndarray:
    """a^(-n/2) psi(r^-1((x - b)/a)) at the grid nodes, as a raw array.

    With ``periodic`` the daughter is summed over the lattice translates of
    the box, i.e. it is the daughter on the torus [-L, L)^n; that is the
    setting in which grid translations are exact.
    """
    d = grid.coords - np.asarray(b, dtype=float)
    if not periodic:
        return psi((d / a) @ R) * a ** (-grid.dim / 2)
    L = grid.L
    d = np.mod(d + L, 2 * L) - L
    out = np.zeros(grid.shape + (grid.blades,))
    for shift in image_offsets(grid, a * psi.radius):
        out += psi(((d + shift) / a) @ R)
    return out * a ** (-grid.dim / 2)


def daughter(psi, g: SimElement, grid: GridSpec, periodic: bool = True) -> MultivectorField:
    """The daughter wavelet psi_{a,theta,b} sampled on ``grid``."""
    R = rotation_matrix(grid.dim, g.theta)
    return MultivectorField(grid, daughter_samples(psi, g.a, R, g.b, grid, periodic))


def daughter_spectrum_samples(psi, a: float, R: np.ndarray, grid: GridSpec) -> np.ndarray:
    """a^(n/2) psi^(a r^-1 w) at the frequency nodes (translation b = 0)."""
    if psi.spectrum is None:
        return cft_forward(MultivectorField(grid, daughter_samples(psi, a, R, 0.0, grid))).data
    return psi.spectrum((a * grid.freqs) @ R) * a ** (grid.dim / 2)


def daughter_spectrum(psi, g: SimElement, grid: GridSpec) -> Spectrum:
    """CFT of psi_{a,theta,b}: a^(n/2) psi^(a r^-1 w) exp(-i_n b.w)."""
    R = rotation_matrix(grid.dim, g.theta)
    base = daughter_spectrum_samples(psi, g.a, R, grid)
    lam = grid.freqs @ np.asarray(g.b)
    phase = np.zeros(grid.shape + (grid.blades,))
    phase[..., 0] = np.cos(lam)
    phase[..., -1] = -np.sin(lam)
    return Spectrum(grid, gp(base, phase))


def group_inner_product(u: np.ndarray, v: np.ndarray, gg: GroupGrid) -> Multivector:
    """(U, V) over the group for coefficient arrays of shape (scales, rotations, *grid, m)."""
    w = np.multiply.outer(gg.scale_weights, gg.angle_weights) * gg.grid.dx ** gg.dim
    wv = rev(v) * w.reshape(w.shape + (1,) * (v.ndim - 2))
    return Multivector(gg.dim, contract(u, wv))
