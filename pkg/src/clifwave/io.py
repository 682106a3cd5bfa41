"""Binary containers for fields (CWF1) and coefficient volumes (CWC1).

All numbers are little-endian.

CWF1::

    b"CWF1", u32 n | flags, u32 N, f64 L, N**n * 2**n f64

Samples are row-major over (x_1, ..., x_n), blades in ascending bitmask
order. Bit 16 of the ``n`` word marks a spectrum (frequency-domain samples).

CWC1::

    b"CWC1", u32 n, u32 N, f64 L, u32 S, u32 R, i32 eps,
    f64 a_min, f64 a_max, u32 angles_per_axis,
    f64 scales[S], f64 scale_weights[S],
    f64 angles[R * (1 if n == 2 else 3)], f64 angle_weights[R],
    S * R * N**n * 2**n f64

Coefficients are scale-major, then rotation, then translation row-major,
then blade. ``a_min``/``a_max`` are NaN and ``angles_per_axis`` is 0 for
grids that were not made by :meth:`GroupGrid.build`.
"""

from __future__ import annotations

import os
import struct

import numpy as np

from .algebra import blade_name
from .cft import Spectrum
from .cwt import CoefficientVolume
from .errors import FormatError
from .field import GridSpec, MultivectorField
from .simgroup import GroupGrid

FREQUENCY_FLAG = 1 << 16
_FIELD_HEAD = struct.Struct("<4sIId")
_VOLUME_HEAD = struct.Struct("<4sIIdIIiddI")


def _read_bytes(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _atomic_write(path, payload: bytes):
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(payload)
    os.replace(tmp, path)


def _grid(n, N, L) -> GridSpec:
    try:
        return GridSpec(n, N, L)
    except ValueError as exc:
        raise FormatError(f"invalid grid in header: {exc}") from exc


def _floats(buf: bytes, offset: int, count: int) -> np.ndarray:
    end = offset + 8 * count
    if len(buf) < end:
        raise FormatError(f"truncated file: need {end} bytes, have {len(buf)}")
    return np.frombuffer(buf, dtype="<f8", count=count, offset=offset).astype(float)


def field_to_bytes(f: MultivectorField) -> bytes:
    g = f.grid
    word = g.dim | (FREQUENCY_FLAG if isinstance(f, Spectrum) else 0)
    return _FIELD_HEAD.pack(b"CWF1", word, g.N, g.L) + f.data.astype("<f8").tobytes()


def field_from_bytes(buf: bytes) -> MultivectorField:
    if len(buf) < _FIELD_HEAD.size or buf[:4] != b"CWF1":
        raise FormatError("bad magic: not a CWF1 field file")
    _, word, N, L = _FIELD_HEAD.unpack_from(buf)
    grid = _grid(word & 0xFFFF, N, L)
    count = grid.N ** grid.dim * grid.blades
    data = _floats(buf, _FIELD_HEAD.size, count)
    if len(buf) != _FIELD_HEAD.size + 8 * count:
        raise FormatError("trailing bytes after CWF1 payload")
    cls = Spectrum if word & FREQUENCY_FLAG else MultivectorField
    return cls(grid, data.reshape(grid.shape + (grid.blades,)))


def write_field(path, f: MultivectorField):
    _atomic_write(path, field_to_bytes(f))


def read_field(path) -> MultivectorField:
    return field_from_bytes(_read_bytes(path))


def volume_to_bytes(w: CoefficientVolume) -> bytes:
    gg = w.group_grid
    g = gg.grid
    a_min, a_max = gg.a_range if gg.a_range is not None else (np.nan, np.nan)
    head = _VOLUME_HEAD.pack(b"CWC1", g.dim, g.N, g.L, gg.n_scales, gg.n_rotations,
                             int(w.epsilon), a_min, a_max, gg.n_angles_axis or 0)
    parts = [gg.scales, gg.scale_weights, gg.angles.reshape(-1), gg.angle_weights, w.data.reshape(-1)]
    return head + b"".join(np.asarray(p, dtype="<f8").tobytes() for p in parts)


def volume_from_bytes(buf: bytes) -> CoefficientVolume:
    if len(buf) < _VOLUME_HEAD.size or buf[:4] != b"CWC1":
        raise FormatError("bad magic: not a CWC1 coefficient file")
    _, n, N, L, S, R, eps, a_min, a_max, per_axis = _VOLUME_HEAD.unpack_from(buf)
    grid = _grid(n, N, L)
    if eps not in (1, -1):
        raise FormatError(f"epsilon must be +1 or -1, got {eps}")
    per_angle = 1 if n == 2 else 3
    sizes = [S, S, R * per_angle, R, S * R * N ** n * grid.blades]
    offset = _VOLUME_HEAD.size
    arrays = []
    for count in sizes:
        arrays.append(_floats(buf, offset, count))
        offset += 8 * count
    if offset != len(buf):
        raise FormatError("trailing bytes after CWC1 payload")
    scales, sw, angles, aw, data = arrays
    a_range = None if np.isnan(a_min) else (a_min, a_max)
    try:
        gg = GroupGrid(grid, scales, sw, angles, aw, a_range=a_range)
    except ValueError as exc:
        raise FormatError(f"invalid group grid in header: {exc}") from exc
    gg.n_angles_axis = per_axis or None
    shape = (S, R) + grid.shape + (grid.blades,)
    return CoefficientVolume(gg, data.reshape(shape), eps)


def write_volume(path, w: CoefficientVolume):
    _atomic_write(path, volume_to_bytes(w))


def read_volume(path) -> CoefficientVolume:
    return volume_from_bytes(_read_bytes(path))


def slice_csv(w: CoefficientVolume, i: int, j: int, blades: bool = False) -> str:
    """|T f| over b for the (scale i, rotation j) slice.

    Columns b_1..b_n, modulus and, with ``blades``, one column per blade.
    """
    gg = w.group_grid
    if not (0 <= i < gg.n_scales and 0 <= j < gg.n_rotations):
        raise IndexError(f"slice ({i}, {j}) outside {gg.n_scales} scales x {gg.n_rotations} rotations")
    g = gg.grid
    coords = g.coords.reshape(-1, g.dim)
    coeffs = w.data[i, j].reshape(-1, g.blades)
    cols = [f"b_{k + 1}" for k in range(g.dim)] + ["modulus"]
    if blades:
        cols += [blade_name(A) for A in range(g.blades)]
    lines = [",".join(cols)]
    mod = np.sqrt(np.sum(coeffs ** 2, axis=-1))
    for r in range(coords.shape[0]):
        row = [repr(float(v)) for v in coords[r]] + [repr(float(mod[r]))]
        if blades:
            row += [repr(float(v)) for v in coeffs[r]]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
