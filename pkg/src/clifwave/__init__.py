"""Real Clifford-algebra continuous wavelet transforms in two and three dimensions."""

from .algebra import (Multivector, basis, even_odd_split, geometric_product, invert_admissibility,
                      modulus, pseudoscalar, reverse, scalar_product)
from .analysis import UncertaintyReport, cft_uncertainty, integrated_variance, wavelet_uncertainty
from .cft import Spectrum, cft_forward, cft_inverse, plancherel_lhs_rhs
from .cwt import (CoefficientVolume, MotherWavelet, admissibility_constant, analyze_direct,
                  analyze_spectral, inner_product_relation, kernel_matrix, left_linearity_check,
                  reproduce, reproducing_kernel, synthesize, transform_at)
from .errors import (ClifwaveError, DimensionError, FormatError, GridMismatch, NonInvertible,
                     NotAdmissible, UnsupportedGrades)
from .field import GridSpec, MultivectorField, inner_product, l2_norm, sample_closed_form
from .simgroup import GroupGrid, SimElement, daughter, daughter_spectrum, rotate_vector
from .wavelets import GaborParams, gabor_admissibility, gabor_eval, gabor_spectrum, gabor_wavelet

__version__ = "0.1.0"

__all__ = [
    "Multivector",
    "basis",
    "even_odd_split",
    "geometric_product",
    "invert_admissibility",
    "modulus",
    "pseudoscalar",
    "reverse",
    "scalar_product",
    "UncertaintyReport",
    "cft_uncertainty",
    "integrated_variance",
    "wavelet_uncertainty",
    "Spectrum",
    "cft_forward",
    "cft_inverse",
    "plancherel_lhs_rhs",
    "CoefficientVolume",
    "MotherWavelet",
    "admissibility_constant",
    "analyze_direct",
    "analyze_spectral",
    "inner_product_relation",
    "kernel_matrix",
    "left_linearity_check",
    "reproduce",
    "reproducing_kernel",
    "synthesize",
    "transform_at",
    "ClifwaveError",
    "DimensionError",
    "FormatError",
    "GridMismatch",
    "NonInvertible",
    "NotAdmissible",
    "UnsupportedGrades",
    "GridSpec",
    "MultivectorField",
    "inner_product",
    "l2_norm",
    "sample_closed_form",
    "GroupGrid",
    "SimElement",
    "daughter",
    "daughter_spectrum",
    "rotate_vector",
    "GaborParams",
    "gabor_admissibility",
    "gabor_eval",
    "gabor_spectrum",
    "gabor_wavelet",
]
