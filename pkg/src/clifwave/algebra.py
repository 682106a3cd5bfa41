"""Arithmetic in the Euclidean Clifford algebras Cl_2 and Cl_3.

Blades are indexed by bitmask: bit k set means e_{k+1} is a factor, and the
factors of a blade are kept in ascending order, so index 0b101 is e13.
Multivector-valued arrays carry the 2**n blade coefficients on the last axis;
the array helpers (``gp``, ``rev``, ``contract``) are what the transforms use,
the :class:`Multivector` class wraps a single element for the public API.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DimensionError, NonInvertible, UnsupportedGrades

SUPPORTED_DIMS = (2, 3)


def check_dim(n) -> int:
    if isinstance(n, bool) or int(n) != n or int(n) not in SUPPORTED_DIMS:
        raise DimensionError(f"dimension must be 2 or 3, got {n!r}")
    return int(n)


def blade_sign(a: int, b: int) -> int:
    """Sign of e_a e_b relative to e_(a^b), counting transpositions."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(k + 1) for k in range(3) if mask >> k & 1)


@lru_cache(maxsize=None)
def tables(n: int):
    """Return (signs, grades, rev_signs) for Cl_n.

    ``signs[A, B]`` is the sign of e_A e_B, the product blade being A ^ B.
    """
    n = check_dim(n)
    m = 1 << n
    signs = np.array([[blade_sign(a, b) for b in range(m)] for a in range(m)], dtype=float)
    grades = np.array([bin(a).count("1") for a in range(m)])
    rev_signs = np.where((grades * (grades - 1) // 2) % 2 == 0, 1.0, -1.0)
    for arr in (signs, grades, rev_signs):
        arr.setflags(write=False)
    return signs, grades, rev_signs


def dim_of(m: int) -> int:
    try:
        return {4: 2, 8: 3}[m]
    except KeyError:
        raise DimensionError(f"blade axis of length {m} is not 4 or 8") from None


# -- array helpers -----------------------------------------------------------


def gp(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Geometric product of multivector arrays (broadcast over leading axes)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    m = a.shape[-1]
    if b.shape[-1] != m:
        raise DimensionError("operands belong to different algebras")
    signs, _, _ = tables(dim_of(m))
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape)
    idx = np.arange(m)
    for A in range(m):
        out[..., A ^ idx] += a[..., A : A + 1] * (b * signs[A])
    return out


def rev(a: np.ndarray) -> np.ndarray:
    """Reverse of multivector arrays."""
    a = np.asarray(a, dtype=float)
    return a * tables(dim_of(a.shape[-1]))[2]


def contract(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Sum of gp(a, b) over all leading axes, computed as one Gram matrix."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    m = a.shape[-1]
    if b.shape != a.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    gram = a.reshape(-1, m).T @ b.reshape(-1, m)
    return gram_to_mv(gram)


def gram_to_mv(gram: np.ndarray) -> np.ndarray:
    """Fold a (..., m, m) matrix of coefficient products into multivectors."""
    m = gram.shape[-1]
    signs, _, _ = tables(dim_of(m))
    out = np.zeros(gram.shape[:-2] + (m,))
    idx = np.arange(m)
    for A in range(m):
        # A ^ idx is a permutation, so fancy-index assignment has no collisions
        out[..., A ^ idx] += gram[..., A, :] * signs[A]
    return out


def parity_of(a: np.ndarray, tol: float = 0.0) -> str:
    """'even', 'odd' or 'mixed' for a multivector array (all samples jointly)."""
    a = np.asarray(a, dtype=float)
    grades = tables(dim_of(a.shape[-1]))[1]
    mags = np.abs(a).reshape(-1, a.shape[-1]).max(axis=0) if a.size else np.zeros(a.shape[-1])
    scale = tol * max(1.0, float(mags.max(initial=0.0)))
    odd = mags[grades % 2 == 1].max(initial=0.0) > scale
    even = mags[grades % 2 == 0].max(initial=0.0) > scale
    if odd and even:
        return "mixed"
    return "odd" if odd else "even"


def right_pseudoscalar_pairs(n: int):
    """Blade pairs (A, D, s) with e_A i_n = s e_D, for A < D = A ^ (2**n - 1).

    Right multiplication by i_n acts on c_A + j*s*c_D as multiplication by j,
    which is how the Fourier transform maps a multivector onto 2**(n-1)
    complex planes.
    """
    signs, _, _ = tables(n)
    full = (1 << n) - 1
    return [(A, A ^ full, signs[A, full]) for A in range(1 << n) if A < A ^ full]


# -- single elements ---------------------------------------------------------


class Multivector:
    """An immutable element of Cl_n, n in {2, 3}."""

    __slots__ = ("dim", "coeffs")
    __array_priority__ = 100

    def __init__(self, dim: int, coeffs=None):
        dim = check_dim(dim)
        m = 1 << dim
        if coeffs is None:
            c = np.zeros(m)
        else:
            c = np.array(coeffs, dtype=float).reshape(-1)
            if c.shape != (m,):
                raise DimensionError(f"Cl_{dim} needs {m} coefficients, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise ValueError("multivector coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def scalar(cls, dim: int, value: float = 1.0) -> "Multivector":
        c = np.zeros(1 << check_dim(dim))
        c[0] = value
        return cls(dim, c)

    @classmethod
    def blade(cls, dim: int, name, value: float = 1.0) -> "Multivector":
        """``blade(3, 'e13')`` or ``blade(3, 0b101)``."""
        dim = check_dim(dim)
        mask = name if isinstance(name, (int, np.integer)) else parse_blade(name, dim)
        c = np.zeros(1 << dim)
        c[mask] = value
        return cls(dim, c)

    @classmethod
    def vector(cls, v) -> "Multivector":
        v = np.asarray(v, dtype=float)
        dim = check_dim(v.size)
        c = np.zeros(1 << dim)
        c[[1 << k for k in range(dim)]] = v
        return cls(dim, c)

    def _coerce(self, other):
        if isinstance(other, Multivector):
            if other.dim != self.dim:
                raise DimensionError(f"Cl_{self.dim} vs Cl_{other.dim}")
            return other.coeffs
        if np.isscalar(other):
            return Multivector.scalar(self.dim, float(other)).coeffs
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return Multivector(self.dim, self.coeffs + c)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return Multivector(self.dim, self.coeffs - c)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Multivector(self.dim, -self.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return Multivector(self.dim, self.coeffs * float(other))
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Multivector(self.dim, self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return Multivector(self.dim, self.coeffs / float(other))
        return NotImplemented

    def __getitem__(self, blade):
        if isinstance(blade, str):
            blade = parse_blade(blade, self.dim)
        return float(self.coeffs[blade])

    def grade(self, k: int) -> "Multivector":
        grades = tables(self.dim)[1]
        return Multivector(self.dim, np.where(grades == k, self.coeffs, 0.0))

    def grades(self, tol: float = 0.0) -> set:
        grades = tables(self.dim)[1]
        return {int(g) for g, c in zip(grades, self.coeffs) if abs(c) > tol}

    @property
    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    @property
    def parity(self) -> str:
        return parity_of(self.coeffs)

    def reverse(self) -> "Multivector":
        return reverse(self)

    def norm(self) -> float:
        return modulus(self)

    def isclose(self, other, rtol: float = 1e-12, atol: float = 1e-12) -> bool:
        c = self._coerce(other)
        return bool(np.allclose(self.coeffs, c, rtol=rtol, atol=atol))

    def __repr__(self):
        terms = [f"{c:+.6g}*{blade_name(A)}" if A else f"{c:+.6g}"
                 for A, c in enumerate(self.coeffs) if c != 0.0]
        return f"Multivector(Cl_{self.dim}: {' '.join(terms) or '0'})"


def parse_blade(name: str, dim: int) -> int:
    if name in ("1", ""):
        return 0
    if not name.startswith("e") or not name[1:].isdigit():
        raise ValueError(f"bad blade name {name!r}")
    digits = [int(ch) for ch in name[1:]]
    if sorted(set(digits)) != digits or not all(1 <= d <= dim for d in digits):
        raise ValueError(f"blade {name!r} is not canonical in Cl_{dim}")
    return sum(1 << (d - 1) for d in digits)


def basis(dim: int) -> dict:
    """All 2**n unit blades of Cl_n keyed by name ('1', 'e1', ..., 'e123')."""
    dim = check_dim(dim)
    return {blade_name(A): Multivector.blade(dim, A) for A in range(1 << dim)}


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    if a.dim != b.dim:
        raise DimensionError(f"Cl_{a.dim} vs Cl_{b.dim}")
    return Multivector(a.dim, gp(a.coeffs, b.coeffs))


def reverse(m: Multivector) -> Multivector:
    return Multivector(m.dim, rev(m.coeffs))


def scalar_product(m: Multivector, n: Multivector) -> float:
    """M * N~ = <M N~>_0, which in Cl_{n,0} is sum_A M_A N_A."""
    if m.dim != n.dim:
        raise DimensionError(f"Cl_{m.dim} vs Cl_{n.dim}")
    return float(np.dot(m.coeffs, n.coeffs))


def modulus(m: Multivector) -> float:
    return float(np.sqrt(np.dot(m.coeffs, m.coeffs)))


def pseudoscalar(dim: int) -> Multivector:
    dim = check_dim(dim)
    return Multivector.blade(dim, (1 << dim) - 1)


def even_odd_split(m: Multivector):
    grades = tables(m.dim)[1]
    even = grades % 2 == 0
    return (Multivector(m.dim, np.where(even, m.coeffs, 0.0)),
            Multivector(m.dim, np.where(even, 0.0, m.coeffs)))


def invert_admissibility(c: Multivector, tol: float | None = None) -> Multivector:
    """Inverse of a scalar-plus-vector multivector.

    For c = c0 + v with v a vector, (c0 + v)(c0 - v) = c0**2 - |v|**2, so the
    inverse is (c0 - v) / (c0**2 - |v|**2).

    Raises
    ------
    UnsupportedGrades
        If grades other than 0 and 1 exceed ``tol``.
    NonInvertible
        If |c0**2 - |v|**2| <= ``tol``.
    """
    c0 = c.scalar_part
    if tol is None:
        tol = 1e-10 * (1.0 + abs(c0))
    grades = tables(c.dim)[1]
    higher = np.abs(c.coeffs[grades > 1])
    if higher.size and higher.max() > tol:
        raise UnsupportedGrades(f"admissibility constant has grades {sorted(c.grades(tol))}")
    v = c.grade(1)
    det = c0 * c0 - scalar_product(v, v)
    if abs(det) <= tol:
        raise NonInvertible(f"<C>_0^2 - <C>_1^2 = {det:.3e} is within {tol:.1e} of zero")
    return (Multivector.scalar(c.dim, c0) - v) / det
