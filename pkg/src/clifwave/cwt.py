"""The Clifford wavelet transform over SIM(n).

    T f(a, theta, b) = int f(x) psi_{a,theta,b}(x)~ d^n x

Two evaluation paths are provided: ``analyze_direct`` sums over space with
closed-form daughters (O(N^2n) per scale/rotation), ``analyze_spectral``
multiplies spectra and runs one inverse transform per scale/rotation. The
signal lives on the periodic box, so daughters are periodized in the direct
path and translations are exact grid shifts in both.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .algebra import (Multivector, check_dim, contract, gp, gram_to_mv,
                      invert_admissibility, parity_of, rev, tables)
from .cft import cft_forward, forward_array, inverse_array, negate_frequencies
from .errors import GridMismatch, NonInvertible, NotAdmissible, UnsupportedGrades
from .field import GridSpec, MultivectorField, inner_product, l2_norm
from .simgroup import (GroupGrid, SimElement, daughter, daughter_samples,
                       daughter_spectrum, daughter_spectrum_samples,
                       group_inner_product)

# area of the unit sphere S^(n-1): converts the frequency-space form of the
# admissibility integral to the group form with normalized Haar measure
SPHERE_AREA = {2: 2 * np.pi, 3: 4 * np.pi}

# integral of |w|^(2-n) over the unit cube centred at the origin
_ORIGIN_CELL = {2: 1.0, 3: 3 * np.log(2 + np.sqrt(3)) - np.pi / 2}


class MotherWavelet:
    """An admissible Cl_n-valued mother wavelet.

    Parameters
    ----------
    dim : int
        2 or 3.
    evaluate : callable
        Maps points of shape (..., n) to coefficients of shape (..., 2**n).
    spectrum : callable, optional
        Closed-form CFT with the same calling convention. Without it spectra
        are obtained by transforming sampled daughters.
    radius : float
        Distance beyond which |psi| is negligible (used to periodize).
    quadrature_grid : GridSpec
        Grid on which the admissibility constant is evaluated and cached.
    parity : {'even', 'odd', 'mixed'}, optional
        Inferred from samples on ``quadrature_grid`` when omitted. For n = 2
        only even (spinor) or odd wavelets are allowed.
    """

    def __init__(self, dim, evaluate, spectrum=None, *, radius, quadrature_grid,
                 parity=None, name="custom", tau_adm=1e-8):
        self.dim = check_dim(dim)
        self._evaluate = evaluate
        self.spectrum = spectrum
        self.radius = float(radius)
        self.quadrature_grid = quadrature_grid
        self.name = name
        self.tau_adm = tau_adm
        if parity is None:
            parity = parity_of(evaluate(quadrature_grid.coords), tol=1e-12)
        if parity not in ("even", "odd", "mixed"):
            raise ValueError(f"unknown parity {parity!r}")
        if self.dim == 2 and parity == "mixed":
            raise NotAdmissible("for n = 2 the mother wavelet must be even (spinor) or odd")
        self.parity = parity
        self._adm = None

    def __call__(self, points):
        return self._evaluate(np.asarray(points, dtype=float))

    @property
    def epsilon(self) -> int:
        """+1 for spinor (and all n = 3) wavelets, -1 for odd wavelets in Cl_2."""
        return -1 if (self.dim == 2 and self.parity == "odd") else 1

    @property
    def admissibility(self) -> Multivector:
        return self._admissibility()[0]

    @property
    def admissibility_inverse(self) -> Multivector:
        return self._admissibility()[1]

    def _admissibility(self):
        if self._adm is None:
            c = admissibility_constant(self, self.quadrature_grid)
            self._adm = (c, invert_admissibility(c))
        return self._adm

    def __repr__(self):
        return f"MotherWavelet({self.name}, n={self.dim}, parity={self.parity})"


class CoefficientVolume:
    """T f sampled on a :class:`GroupGrid`.

    ``data`` has shape (n_scales, n_rotations, *grid.shape, 2**n).
    """

    def __init__(self, group_grid: GroupGrid, data, epsilon: int = 1):
        data = np.asarray(data, dtype=float)
        gg = group_grid
        want = (gg.n_scales, gg.n_rotations) + gg.grid.shape + (gg.grid.blades,)
        if data.shape != want:
            raise ValueError(f"expected coefficients of shape {want}, got {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ValueError("coefficient volume has non-finite entries")
        self.group_grid = gg
        self.data = data
        self.epsilon = epsilon

    @property
    def grid(self) -> GridSpec:
        return self.group_grid.grid

    def slice(self, i: int, j: int) -> MultivectorField:
        return MultivectorField(self.grid, self.data[i, j])

    def at(self, i: int, j: int, index) -> Multivector:
        return Multivector(self.grid.dim, self.data[(i, j) + tuple(index)])

    def __repr__(self):
        return f"CoefficientVolume({self.group_grid!r})"


# -- admissibility -----------------------------------------------------------


def wavelet_spectrum(psi: MotherWavelet, grid: GridSpec) -> np.ndarray:
    if psi.spectrum is not None:
        return psi.spectrum(grid.freqs)
    return cft_forward(MultivectorField(grid, daughter_samples(
        psi, 1.0, np.eye(grid.dim), 0.0, grid))).data


def admissibility_sum(density: np.ndarray, grid: GridSpec) -> np.ndarray:
    """|S^(n-1)|^-1 int density(w) / |w|^n dw on the frequency nodes of ``grid``.

    ``density`` vanishes like |w|^2 at the origin, so the integrand tends to
    K(w/|w|) |w|^(2-n) there. The origin cell is integrated with that model,
    K estimated from the ring of neighbouring nodes.
    """
    n = grid.dim
    h = grid.domega
    r = np.linalg.norm(grid.freqs, axis=-1)
    o = grid.origin_index
    r[o] = 1.0
    total = np.tensordot(r ** -n, density, axes=n) - density[o]
    ring = tuple(slice(i - 1, i + 2) for i in o)
    k = (density[ring] / r[ring][..., None] ** 2).reshape(-1, density.shape[-1])
    k_mean = (k.sum(axis=0) - k[(3 ** n) // 2]) / (3 ** n - 1)
    return (total * h ** n + k_mean * _ORIGIN_CELL[n] * h ** 2) / SPHERE_AREA[n]


def admissibility_constant(psi: MotherWavelet, grid: GridSpec) -> Multivector:
    """C_psi by quadrature on the frequency nodes of ``grid``.

    C = |S^(n-1)|^-1 int psi^(w)~ psi^(w) / |w|^n dw, which equals
    int int a^n psi^(a r^-1 w)~ psi^(a r^-1 w) da dtheta / a^(n+1) with the
    normalized Haar measure dtheta.
    """
    if grid.dim != psi.dim:
        raise GridMismatch("wavelet and grid dimensions differ")
    spec = wavelet_spectrum(psi, grid)
    cell = grid.domega ** grid.dim
    norm = np.sqrt(np.sum(spec ** 2) * cell) * (2 * np.pi) ** (-grid.dim / 2)
    dc = spec[grid.origin_index]
    tau = psi.tau_adm
    if np.abs(dc).max() > tau * norm:
        raise NotAdmissible(f"component means {dc} are not zero (|psi| = {norm:.3g})")
    density = gp(rev(spec), spec)
    c = Multivector(grid.dim, admissibility_sum(density, grid))
    grades = tables(grid.dim)[1]
    scale = max(abs(c.scalar_part), 1.0)
    if c.scalar_part <= tau * scale:
        raise NotAdmissible(f"<C_psi>_0 = {c.scalar_part:.3e} is not positive")
    if np.abs(c.coeffs[grades > 1]).max(initial=0.0) > tau * scale:
        raise NotAdmissible(f"C_psi has grades {sorted(c.grades(tau * scale))} beyond 0 and 1")
    c = Multivector(grid.dim, np.where(grades <= 1, c.coeffs, 0.0))
    try:
        invert_admissibility(c)
    except (NonInvertible, UnsupportedGrades) as exc:
        raise NotAdmissible(str(exc)) from exc
    return c


def admissibility_group_estimate(psi: MotherWavelet, gg: GroupGrid, omega) -> Multivector:
    """Group-quadrature estimate of C_psi at the frequency ``omega``.

    sum_{a, theta} w_a w_theta a^n psi^(a r^-1 w)~ psi^(a r^-1 w); converges to
    C_psi as the scale range widens and the nodes refine.
    """
    if psi.spectrum is None:
        raise ValueError("needs a closed-form spectrum")
    omega = np.asarray(omega, dtype=float)
    pts = np.einsum("i,jkl,k->ijl", gg.scales, gg.rotations, omega)
    spec = psi.spectrum(pts)
    w = np.multiply.outer(gg.scale_weights * gg.scales ** gg.dim, gg.angle_weights)
    return Multivector(gg.dim, contract(rev(spec) * w[..., None], spec))


def _check_inputs(f: MultivectorField, psi: MotherWavelet, gg: GroupGrid):
    if type(f) is not MultivectorField:
        raise GridMismatch("expected a spatial MultivectorField")
    if f.grid != gg.grid:
        raise GridMismatch("signal grid and translation grid differ")
    if psi.dim != f.dim:
        raise GridMismatch("wavelet and signal dimensions differ")
    psi._admissibility()


def _threads(threads):
    if threads is None:
        threads = int(os.environ.get("CLIFWAVE_THREADS", "1") or 1)
    return max(1, int(threads))


def _run_slices(fn, gg: GroupGrid, threads):
    jobs = list(gg.slices())
    threads = _threads(threads)
    if threads == 1:
        return [fn(*job) for job in jobs]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(lambda job: fn(*job), jobs))


def _assemble(gg: GroupGrid, results):
    out = np.empty((gg.n_scales, gg.n_rotations) + gg.grid.shape + (gg.grid.blades,))
    for (i, j, *_), slab in zip(gg.slices(), results):
        out[i, j] = slab
    return out


# -- analysis ----------------------------------------------------------------


def _shift_index(grid: GridSpec, rows, sign: int = -1) -> np.ndarray:
    """idx[r, j] = flat index of x_j + sign * x_{rows[r]} + x_origin (periodic)."""
    N, n = grid.N, grid.dim
    j = np.indices(grid.shape).reshape(n, -1)
    m = np.unravel_index(rows, grid.shape)
    diff = [(j[d][None, :] + sign * np.asarray(m[d])[:, None] + N // 2) % N for d in range(n)]
    return np.ravel_multi_index(diff, grid.shape)


def _chunks(total, size):
    for start in range(0, total, size):
        yield np.arange(start, min(start + size, total))


def analyze_direct(f: MultivectorField, psi: MotherWavelet, gg: GroupGrid,
                   threads=None) -> CoefficientVolume:
    """Reference path: spatial quadrature against every daughter.

    T(b_r) = sum_j f(x_j) psi_{b_r}(x_j)~ dx^n. Writing x_j = b_r + y_d turns
    this into sum_d f(b_r + y_d) P(y_d)~, P the daughter centred at the
    origin, so one table of shifted signal samples serves every slice.
    """
    _check_inputs(f, psi, gg)
    grid = f.grid
    m = grid.blades
    total = int(np.prod(grid.shape))
    fflat = f.data.reshape(total, m)
    cell = grid.dx ** grid.dim
    slices = list(gg.slices())
    # (points, slices * blades)
    pr = np.stack([rev(daughter_samples(psi, a, R, 0.0, grid)).reshape(total, m)
                   for _, _, a, _, R, _ in slices], axis=1).reshape(total, -1)
    chunk = max(1, (1 << 24) // (total * m))

    def rows_block(rows):
        shifted = fflat[_shift_index(grid, rows, +1)]          # (r, d, a)
        gram = np.einsum("rda,dk->rak", shifted, pr, optimize=True)
        gram = gram.reshape(len(rows), m, len(slices), m).transpose(2, 0, 1, 3)
        return gram_to_mv(gram)

    blocks = list(_chunks(total, chunk))
    nthreads = _threads(threads)
    if nthreads == 1:
        parts = [rows_block(r) for r in blocks]
    else:
        with ThreadPoolExecutor(nthreads) as pool:
            parts = list(pool.map(rows_block, blocks))
    out = np.concatenate(parts, axis=1) * cell
    shape = (gg.n_scales, gg.n_rotations) + grid.shape + (m,)
    return CoefficientVolume(gg, out.reshape(shape), psi.epsilon)


def analyze_spectral(f: MultivectorField, psi: MotherWavelet, gg: GroupGrid,
                     threads=None) -> CoefficientVolume:
    """Fast path: T f(a, theta, .) is the inverse CFT of f^ a^(n/2) psi^(a r^-1 .)~,
    read at eps*b."""
    _check_inputs(f, psi, gg)
    grid = f.grid
    fhat = forward_array(f.data, grid)
    eps = psi.epsilon

    def one(i, j, a, theta, R, w):
        spec = daughter_spectrum_samples(psi, a, R, grid)
        t = inverse_array(gp(fhat, rev(spec)), grid)
        return negate_frequencies(t, grid.dim) if eps < 0 else t

    return CoefficientVolume(gg, _assemble(gg, _run_slices(one, gg, threads)), eps)


def transform_at(f: MultivectorField, psi: MotherWavelet, g: SimElement,
                 periodic: bool = True) -> Multivector:
    """One coefficient T f(g) by direct quadrature, for arbitrary g."""
    return inner_product(f, daughter(psi, g, f.grid, periodic))


# -- synthesis ---------------------------------------------------------------


def synthesize(w: CoefficientVolume, psi: MotherWavelet, method: str = "spectral",
               threads=None) -> MultivectorField:
    """Inverse transform by group quadrature.

    f(x) ~ sum_{a,theta,b} T(a,theta,b) psi_{a,theta,b}(x) C_psi^-1 w_a w_theta dx^n,
    with the products in exactly that order.
    """
    gg = w.group_grid
    grid = gg.grid
    cinv = psi.admissibility_inverse
    m = grid.blades
    if method == "spectral":
        eps = psi.epsilon

        def one(i, j, a, theta, R, wt):
            that = forward_array(w.data[i, j], grid)
            if eps < 0:
                that = negate_frequencies(that, grid.dim)
            return gp(that, daughter_spectrum_samples(psi, a, R, grid)) * wt

        acc = sum(_run_slices(one, gg, threads))
        out = inverse_array(acc, grid)
    elif method == "direct":
        total = int(np.prod(grid.shape))
        cell = grid.dx ** grid.dim
        chunk = max(1, (1 << 22) // (total * m))

        def one(i, j, a, theta, R, wt):
            # psi_b(x_r) = P(x_r - b); flipping P turns that into the analysis shift table
            p = negate_frequencies(daughter_samples(psi, a, R, 0.0, grid), grid.dim).reshape(-1, m)
            tflat = w.data[i, j].reshape(-1, m)
            res = np.empty((total, m))
            for rows in _chunks(total, chunk):
                gram = np.einsum("ja,rjb->rab", tflat, p[_shift_index(grid, rows)])
                res[rows] = gram_to_mv(gram)
            return res.reshape(grid.shape + (m,)) * (cell * wt)

        out = sum(_run_slices(one, gg, threads))
    else:
        raise ValueError(f"unknown method {method!r}")
    return MultivectorField(grid, gp(out, cinv.coeffs))


# -- relations ---------------------------------------------------------------


def inner_product_relation(f: MultivectorField, g: MultivectorField, psi: MotherWavelet,
                           gg: GroupGrid, threads=None):
    """((T f, T g) over the group, (f C_psi, g) over space)."""
    tf = analyze_spectral(f, psi, gg, threads)
    tg = tf if g is f else analyze_spectral(g, psi, gg, threads)
    lhs = group_inner_product(tf.data, tg.data, gg)
    rhs = inner_product(f * psi.admissibility, g)
    return lhs, rhs


def _kernel_daughter(psi: MotherWavelet, g: SimElement, grid: GridSpec,
                     band_limited: bool) -> np.ndarray:
    if band_limited:
        return inverse_array(daughter_spectrum(psi, g, grid).data, grid)
    return daughter(psi, g, grid).data


def reproducing_kernel(psi: MotherWavelet, g1: SimElement, g2: SimElement,
                       grid: GridSpec, band_limited: bool = True) -> Multivector:
    """K(g1; g2) = (psi_g1 C_psi^-1, psi_g2).

    With ``band_limited`` the daughters are taken from their sampled spectra,
    i.e. projected onto the signals the grid can represent. This is the
    kernel of the spectral analysis path; spatial samples of narrow
    daughters alias instead.
    """
    return Multivector(grid.dim, kernel_matrix(psi, [g1], [g2], grid, band_limited)[0, 0])


def kernel_matrix(psi: MotherWavelet, elements1, elements2, grid: GridSpec,
                  band_limited: bool = True) -> np.ndarray:
    """K(g1; g2) for all pairs, shape (len(elements1), len(elements2), 2**n)."""
    m = grid.blades
    cinv = psi.admissibility_inverse.coeffs
    d1 = np.stack([gp(_kernel_daughter(psi, g, grid, band_limited), cinv).reshape(-1, m)
                   for g in elements1])
    d2 = np.stack([rev(_kernel_daughter(psi, g, grid, band_limited)).reshape(-1, m)
                   for g in elements2])
    gram = np.einsum("pja,qjb->pqab", d1, d2)
    return gram_to_mv(gram) * grid.dx ** grid.dim


def reproduce(w: CoefficientVolume, psi: MotherWavelet, targets,
              band_limited: bool = True) -> np.ndarray:
    """sum_{g1} T(g1) K(g1; g2) w(g1) over every node g1 of ``w``, for each g2 in ``targets``.

    The group quadrature of the reproducing identity; for a valid volume this
    returns the coefficients at ``targets``. Shape (len(targets), 2**n).
    """
    gg = w.group_grid
    grid = gg.grid
    m = grid.blades
    targets = list(targets)
    out = np.zeros((len(targets), m))
    cell = grid.dx ** grid.dim
    for i, j, a, theta, R, wt in gg.slices():
        nodes = [gg.element(i, j, idx) for idx in np.ndindex(*grid.shape)]
        K = kernel_matrix(psi, nodes, targets, grid, band_limited)
        coeffs = w.data[i, j].reshape(-1, m)
        out += np.einsum("pqa->qa", gp(coeffs[:, None, :], K)) * (wt * cell)
    return out


def left_linearity_check(f, g, lam1: Multivector, lam2: Multivector, psi: MotherWavelet,
                         gg: GroupGrid, tol: float = 1e-10) -> bool:
    """T(lam1 f + lam2 g) == lam1 T f + lam2 T g to relative ``tol``."""
    lhs = analyze_spectral(lam1 * f + lam2 * g, psi, gg).data
    rhs = (gp(lam1.coeffs, analyze_spectral(f, psi, gg).data)
           + gp(lam2.coeffs, analyze_spectral(g, psi, gg).data))
    scale = max(np.abs(lhs).max(), np.abs(rhs).max(), 1e-300)
    return bool(np.abs(lhs - rhs).max() <= tol * scale)


def relative_error(f: MultivectorField, ref: MultivectorField) -> float:
    return l2_norm(f - ref) / l2_norm(ref)


def group_norm_squared(w: CoefficientVolume) -> float:
    return group_inner_product(w.data, w.data, w.group_grid).scalar_part
