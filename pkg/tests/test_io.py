import struct

import numpy as np
import pytest

from clifwave.cft import Spectrum, cft_forward
from clifwave.cwt import analyze_spectral
from clifwave.errors import FormatError
from clifwave.field import GridSpec, MultivectorField, random_bandlimited_field
from clifwave.io import (field_from_bytes, field_to_bytes, read_field, read_volume, slice_csv,
                         volume_from_bytes, volume_to_bytes, write_field, write_volume)
from clifwave.simgroup import GroupGrid
from clifwave.wavelets import GaborParams, gabor_wavelet


@pytest.fixture(scope="module")
def field():
    g = GridSpec(2, 8, 2.0)
    return random_bandlimited_field(g, np.random.default_rng(0), center=1.0)


def test_field_layout(field):
    buf = field_to_bytes(field)
    magic, n, N, L = struct.unpack_from("<4sIId", buf)
    assert (magic, n, N, L) == (b"CWF1", 2, 8, 2.0)
    assert len(buf) == 20 + 8 * 8 * 8 * 4
    assert np.frombuffer(buf, "<f8", offset=20)[5] == field.data.reshape(-1)[5]


def test_field_roundtrip(tmp_path, field):
    path = tmp_path / "f.cwf"
    write_field(path, field)
    back = read_field(path)
    assert type(back) is MultivectorField
    assert np.array_equal(back.data, field.data)
    spec = field_from_bytes(field_to_bytes(cft_forward(field)))
    assert isinstance(spec, Spectrum)


@pytest.mark.parametrize("mutate,msg", [
    (lambda b: b"XXXX" + b[4:], "bad magic"),
    (lambda b: b[:-8], "truncated"),
    (lambda b: b + b"\0", "trailing"),
    (lambda b: b[:4] + struct.pack("<I", 5) + b[8:], "invalid grid"),
])
def test_field_errors(field, mutate, msg):
    with pytest.raises(FormatError, match=msg):
        field_from_bytes(mutate(field_to_bytes(field)))


@pytest.mark.parametrize("n", [2, 3])
def test_volume_roundtrip(tmp_path, n):
    g = GridSpec(n, 8, 3.0)
    gg = GroupGrid.build(g, 2, 2)
    f = random_bandlimited_field(g, np.random.default_rng(1), center=1.0)
    w = analyze_spectral(f, gabor_wavelet(GaborParams.default(n, odd=(n == 2))), gg)
    path = tmp_path / "w.cwc"
    write_volume(path, w)
    back = read_volume(path)
    assert np.array_equal(back.data, w.data)
    assert back.epsilon == w.epsilon
    assert np.array_equal(back.group_grid.scales, gg.scales)
    assert np.array_equal(back.group_grid.angles, gg.angles)
    assert back.group_grid.a_range == pytest.approx(gg.a_range)
    assert back.group_grid.refine().n_scales == 4
    with pytest.raises(FormatError):
        volume_from_bytes(volume_to_bytes(w)[:-1])
    with pytest.raises(FormatError, match="bad magic"):
        volume_from_bytes(field_to_bytes(f))


def test_slice_csv(field):
    gg = GroupGrid.build(field.grid, 2, 2)
    w = analyze_spectral(field, gabor_wavelet(GaborParams.default(2)), gg)
    text = slice_csv(w, 1, 0, blades=True)
    lines = text.strip().split("\n")
    assert lines[0] == "b_1,b_2,modulus,1,e1,e2,e12"
    assert len(lines) == 1 + 64
    row = [float(v) for v in lines[1].split(",")]
    assert row[:2] == [-2.0, -2.0]
    assert row[2] == pytest.approx(np.linalg.norm(w.data[1, 0, 0, 0]))
    with pytest.raises(IndexError):
        slice_csv(w, 2, 0)
