import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clifwave.algebra import (Multivector, basis, contract, even_odd_split, geometric_product,
                              gp, invert_admissibility, modulus, parse_blade, pseudoscalar, rev,
                              reverse, scalar_product, tables)
from clifwave.errors import DimensionError, NonInvertible, UnsupportedGrades

from oracles import gp_oracle, reverse_oracle, sign_table

coef = st.floats(-10, 10, allow_nan=False)


def mv(dim):
    return st.lists(coef, min_size=1 << dim, max_size=1 << dim).map(lambda c: Multivector(dim, c))


@pytest.mark.parametrize("n", [2, 3])
def test_sign_table_matches_bubble_sort_oracle(n):
    assert np.array_equal(tables(n)[0], sign_table(n))


@pytest.mark.parametrize("n", [2, 3])
def test_reverse_signs_match_oracle(n):
    ones = np.ones(1 << n)
    assert np.array_equal(rev(ones), reverse_oracle(ones))


def test_basis_products():
    e = basis(2)
    assert (e["e1"] * e["e1"]).isclose(1.0)
    assert (e["e1"] * e["e2"]).isclose(e["e12"])
    assert (e["e2"] * e["e1"]).isclose(-e["e12"])
    prod = (e["e1"] + e["e2"]) * (e["e1"] - e["e2"])
    assert prod.isclose(-2 * e["e12"])


def test_blade_names_roundtrip():
    assert parse_blade("e13", 3) == 0b101
    assert Multivector.blade(3, "e13")[0b101] == 1.0
    with pytest.raises(ValueError):
        parse_blade("e31", 3)
    with pytest.raises(ValueError):
        parse_blade("e3", 2)


def test_dimension_guard():
    with pytest.raises(DimensionError):
        Multivector(4)
    with pytest.raises(DimensionError):
        Multivector(2, [1, 2, 3])
    with pytest.raises(DimensionError):
        geometric_product(Multivector.scalar(2), Multivector.scalar(3))


@pytest.mark.parametrize("n", [2, 3])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_product_matches_oracle(n, data):
    a = data.draw(mv(n))
    b = data.draw(mv(n))
    assert np.allclose((a * b).coeffs, gp_oracle(a.coeffs, b.coeffs), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_associativity_and_reverse_antiautomorphism(n, data):
    a, b, c = (data.draw(mv(n)) for _ in range(3))
    scale = 1 + a.norm() * b.norm() * c.norm()
    assert np.allclose(((a * b) * c).coeffs, (a * (b * c)).coeffs, atol=1e-12 * scale)
    assert np.allclose(reverse(a * b).coeffs, (reverse(b) * reverse(a)).coeffs,
                       atol=1e-12 * (1 + a.norm() * b.norm()))


def test_reverse_examples():
    assert reverse(Multivector.scalar(2, 3.0)).isclose(3.0)
    assert reverse(Multivector.blade(2, "e12")).isclose(-Multivector.blade(2, "e12"))
    assert reverse(Multivector.blade(3, "e123")).isclose(-Multivector.blade(3, "e123"))


def test_scalar_product_and_modulus():
    e = basis(3)
    assert scalar_product(1 + e["e1"], 1 + e["e1"]) == 2.0
    assert scalar_product(e["e1"], e["e2"]) == 0.0
    m, k = 2 * e["e12"], 3 * e["e12"]
    assert scalar_product(m, k) == pytest.approx((m * reverse(k)).scalar_part)
    assert scalar_product(m, k) == pytest.approx(6.0)
    assert modulus(Multivector(3)) == 0.0
    assert modulus(1 + e["e123"]) == pytest.approx(np.sqrt((( 1 + e["e123"]) * reverse(1 + e["e123"])).scalar_part))
    assert modulus(basis(2)["e1"] + basis(2)["e2"]) == pytest.approx(np.sqrt(2))


@pytest.mark.parametrize("n", [2, 3])
def test_pseudoscalar_squares_to_minus_one(n):
    i = pseudoscalar(n)
    assert (i * i).isclose(-1.0)


@settings(max_examples=50, deadline=None)
@given(m=mv(3))
def test_pseudoscalar_central_in_cl3(m):
    i = pseudoscalar(3)
    assert np.allclose((i * m).coeffs, (m * i).coeffs, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(m=mv(2))
def test_pseudoscalar_commutation_in_cl2(m):
    i = pseudoscalar(2)
    even, odd = even_odd_split(m)
    assert np.allclose((i * m).coeffs, (even * i - odd * i).coeffs, atol=1e-12)


def test_even_odd_split_examples():
    e = basis(2)
    even, odd = even_odd_split(1 + e["e1"] + e["e12"])
    assert even.isclose(1 + e["e12"]) and odd.isclose(e["e1"])
    even, odd = even_odd_split(Multivector.scalar(2, 5.0))
    assert even.isclose(5.0) and odd.isclose(0.0)


@settings(max_examples=50, deadline=None)
@given(m=mv(3))
def test_grade_projections_partition(m):
    parts = [m.grade(k) for k in range(4)]
    assert np.allclose(sum(p.coeffs for p in parts), m.coeffs)
    for k, p in enumerate(parts):
        assert np.array_equal(p.grade(k).coeffs, p.coeffs)
    assert modulus(m) ** 2 == pytest.approx(scalar_product(m, m), rel=1e-12, abs=1e-12)
    assert modulus(m) ** 2 == pytest.approx(np.sum(m.coeffs ** 2), rel=1e-12, abs=1e-12)


def test_invert_admissibility():
    assert invert_admissibility(Multivector.scalar(3, 2.0)).isclose(0.5)
    c = 1 + 0.5 * Multivector.blade(3, "e1")
    inv = invert_admissibility(c)
    assert inv.isclose((1 - 0.5 * Multivector.blade(3, "e1")) / 0.75)
    assert (c * inv).isclose(1.0)
    assert (inv * c).isclose(1.0)
    with pytest.raises(NonInvertible):
        invert_admissibility(1 + Multivector.blade(3, "e1"))
    with pytest.raises(UnsupportedGrades):
        invert_admissibility(1 + Multivector.blade(3, "e12"))


def test_array_helpers_broadcast():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((5, 8))
    b = rng.standard_normal((5, 8))
    out = gp(a, b)
    for k in range(5):
        assert np.allclose(out[k], gp_oracle(a[k], b[k]))
    assert np.allclose(contract(a, b), out.sum(axis=0))
