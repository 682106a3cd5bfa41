"""Uncertainty principles for the CFT and the Clifford wavelet transform.

Both evaluators return an :class:`UncertaintyReport` holding the two sides
of the inequality lhs >= rhs. Integrals are Riemann sums on the signal grid
(space and frequency) and on the :class:`GroupGrid` (group), so a small
slack ``tau_up`` absorbs quadrature error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Multivector, gp, scalar_product
from .cft import Spectrum, forward_array
from .cwt import MotherWavelet, analyze_spectral
from .field import MultivectorField, inner_product, l2_norm
from .simgroup import GroupGrid

CSV_HEADER = "lhs,rhs,ratio,satisfied"


@dataclass(frozen=True)
class UncertaintyReport:
    """Both sides of an uncertainty inequality.

    ``satisfied`` is lhs >= rhs * (1 - tau_up). For the wavelet principle with
    a scalar admissibility constant the reduced (scalar) form is reported in
    ``reduced_lhs`` / ``reduced_rhs``.
    """

    lhs: float
    rhs: float
    tau_up: float = 0.05
    reduced_lhs: float | None = None
    reduced_rhs: float | None = None

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs

    @property
    def satisfied(self) -> bool:
        return bool(self.lhs >= self.rhs * (1.0 - self.tau_up))

    @property
    def reduced_ratio(self) -> float | None:
        if self.reduced_lhs is None:
            return None
        return self.reduced_lhs / self.reduced_rhs

    def csv_row(self) -> str:
        return f"{self.lhs!r},{self.rhs!r},{self.ratio!r},{str(self.satisfied).lower()}"


def _require_nonzero(f: MultivectorField):
    if not np.any(f.data):
        raise ValueError("uncertainty bounds need a nonzero field")


def frequency_spread(f: MultivectorField) -> float:
    """||w f^||^2 = int |w|^2 |f^(w)|^2 dw on the frequency nodes."""
    g = f.grid
    fhat = forward_array(f.data, g)
    r2 = np.sum(g.freqs ** 2, axis=-1)
    return float(np.sum(r2[..., None] * fhat ** 2) * g.domega ** g.dim)


def position_spread(f: MultivectorField) -> float:
    """||x f||^2 = int |x|^2 |f(x)|^2 dx on the sample nodes."""
    g = f.grid
    r2 = np.sum(g.coords ** 2, axis=-1)
    return float(np.sum(r2[..., None] * f.data ** 2) * g.dx ** g.dim)


def cft_uncertainty(f: MultivectorField, tau_up: float = 0.05) -> UncertaintyReport:
    """||x f||^2 ||w f^||^2 >= n (2 pi)^n / 4 ||f||^4."""
    _require_nonzero(f)
    n = f.dim
    lhs = position_spread(f) * frequency_spread(f)
    rhs = n * (2 * np.pi) ** n / 4 * l2_norm(f) ** 4
    return UncertaintyReport(lhs, rhs, tau_up)


def _vector_times(freqs: np.ndarray, data: np.ndarray) -> np.ndarray:
    """Pointwise geometric product w f^(w), w a grade-1 multivector."""
    n = freqs.shape[-1]
    w = np.zeros(data.shape)
    for k in range(n):
        w[..., 1 << k] = freqs[..., k]
    return gp(w, data)


def wavelet_uncertainty(f: MultivectorField, psi: MotherWavelet, gg: GroupGrid,
                        tau_up: float = 0.05, coefficients=None) -> UncertaintyReport:
    """Generalized wavelet uncertainty principle.

        ||b T f||^2_G  C * (w f^, w f^)  >=  n (2 pi)^n / 4 [C * (f, f)]^2

    with ``*`` the scalar product. When C is scalar the reduced form
    ||b T f||^2_G ||w f^||^2 >= n C (2 pi)^n / 4 ||f||^4 is reported as well.
    ``coefficients`` may pass a precomputed volume for ``f``.
    """
    _require_nonzero(f)
    g = f.grid
    n = g.dim
    w = analyze_spectral(f, psi, gg) if coefficients is None else coefficients
    weights = np.multiply.outer(gg.scale_weights, gg.angle_weights) * g.dx ** n
    b2 = np.sum(g.coords ** 2, axis=-1)
    m2 = np.sum(w.data ** 2, axis=-1)
    spread_b = float(np.sum(weights.reshape(weights.shape + (1,) * n) * b2 * m2))

    c = psi.admissibility
    fhat = forward_array(f.data, g)
    u = Spectrum(g, _vector_times(g.freqs, fhat)).reverse()
    lhs = spread_b * _star(c, inner_product(u, u))
    rhs = n * (2 * np.pi) ** n / 4 * _star(c, inner_product(f, f)) ** 2

    reduced_lhs = reduced_rhs = None
    if np.abs(c.coeffs[1:]).max() <= 1e-12 * abs(c.scalar_part):
        reduced_lhs = spread_b * frequency_spread(f)
        reduced_rhs = n * c.scalar_part * (2 * np.pi) ** n / 4 * l2_norm(f) ** 4
    return UncertaintyReport(lhs, rhs, tau_up, reduced_lhs, reduced_rhs)


def _star(a: Multivector, b: Multivector) -> float:
    """a * b = <a b>_0."""
    return scalar_product(a, b.reverse())


def integrated_variance(f: MultivectorField, psi: MotherWavelet, gg: GroupGrid,
                        coefficients=None) -> float:
    """sum_{a, theta} w_a w_theta ||w CFT{T f(a, theta, .)}||^2."""
    g = f.grid
    w = analyze_spectral(f, psi, gg) if coefficients is None else coefficients
    r2 = np.sum(g.freqs ** 2, axis=-1)
    total = 0.0
    for i, j, *_, wt in gg.slices():
        spec = forward_array(w.data[i, j], g)
        total += wt * float(np.sum(r2[..., None] * spec ** 2))
    return total * g.domega ** g.dim
