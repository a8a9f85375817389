import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatcode.errors import InvalidArgument, InvalidTower
from quatcode.galois import (
    GF2m,
    embedding,
    is_irreducible,
    is_primitive,
    make_field,
    primitive_polynomial,
    quaternary_tower,
    subfield_basis,
    tower,
    trace,
    trace_table,
    unity_roots,
)


def schoolbook_mul(a, b, modulus, degree):
    """Shift-and-add multiplication, reducing after every shift."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> degree & 1:
            a ^= modulus
    return acc


# Standard table of the least primitive trinomials/pentanomials.
KNOWN_PRIMITIVE = {2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011, 7: 0b10000011,
                   8: 0x11D, 9: 0x211, 10: 0x409}


@pytest.mark.parametrize("degree,poly", sorted(KNOWN_PRIMITIVE.items()))
def test_primitive_polynomial_matches_table(degree, poly):
    assert primitive_polynomial(degree) == poly
    assert is_primitive(poly)


def test_irreducible_but_not_primitive():
    # x^4 + x^3 + x^2 + x + 1 divides x^5 - 1
    assert is_irreducible(0b11111)
    assert not is_primitive(0b11111)
    # the AES polynomial is irreducible with a non-primitive x
    assert is_irreducible(0x11B)
    assert not is_primitive(0x11B)


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 8])
def test_mul_matches_schoolbook_exhaustively(degree):
    F = make_field(degree)
    for a in range(F.size):
        for b in range(F.size):
            assert F.mul(a, b) == schoolbook_mul(a, b, F.modulus, degree)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([6, 10, 12, 16]), st.data())
def test_mul_matches_schoolbook_large(degree, data):
    F = make_field(degree)
    a = data.draw(st.integers(0, F.size - 1))
    b = data.draw(st.integers(0, F.size - 1))
    assert F.mul(a, b) == schoolbook_mul(a, b, F.modulus, degree)


def test_table_free_degree_agrees_with_schoolbook():
    F = make_field(20)
    rng = np.random.default_rng(7)
    for a, b in rng.integers(0, F.size, size=(200, 2)):
        assert F.mul(int(a), int(b)) == schoolbook_mul(int(a), int(b), F.modulus, 20)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 255), st.integers(-600, 600))
def test_field_axioms_gf256(a, e):
    F = make_field(8)
    assert F.mul(a, F.inv(a)) == 1
    assert F.pow(a, e) == F.inv(F.pow(a, -e))
    assert F.pow(a, F.order) == 1
    assert F.frobenius(a, 8) == a


def test_x_is_primitive_element():
    for degree in (2, 4, 6, 8):
        F = make_field(degree)
        assert F.primitive_element == 2
        assert F.multiplicative_order(2) == F.order


def test_array_ops_match_scalar():
    F = make_field(4)
    a = np.arange(16)
    b = (a * 7) % 16
    assert F.mul_array(a, b).tolist() == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert F.inv_array(a[1:]).tolist() == [F.inv(int(x)) for x in a[1:]]
    assert F.pow_array(a, 3).tolist() == [F.pow(int(x), 3) for x in a]


def test_zero_has_no_inverse():
    with pytest.raises((ZeroDivisionError, InvalidArgument)):
        make_field(4).inv(0)


@pytest.mark.parametrize("small,big", [(1, 4), (2, 4), (2, 8), (4, 8), (3, 6), (2, 6)])
def test_embedding_is_a_ring_homomorphism(small, big):
    S, B = make_field(small), make_field(big)
    emb = embedding(S, B)
    for a in range(S.size):
        for b in range(S.size):
            assert emb(S.mul(a, b)) == B.mul(emb(a), emb(b))
            assert emb(a ^ b) == emb(a) ^ emb(b)
        assert emb.restrict(emb(a)) == a
    # the image is exactly the fixed field of z -> z^(2^small)
    image = {emb(a) for a in range(S.size)}
    assert image == {z for z in range(B.size) if B.frobenius(z, small) == z}


def test_embedding_needs_divisibility():
    with pytest.raises(InvalidTower):
        embedding(make_field(3), make_field(4))


def test_restrict_outside_image():
    emb = embedding(make_field(2), make_field(4))
    outside = next(z for z in range(16) if not emb.contains(z))
    with pytest.raises(InvalidTower):
        emb.restrict(outside)


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_tower_triangle_commutes(m):
    T = tower(m)
    for a in range(4):
        assert T.four_in_q2(a) == T.q_in_q2(T.four_in_q(a))


@pytest.mark.parametrize("h", [1, 2, 3])
def test_beta_is_primitive_root_of_unity(h):
    T = quaternary_tower(h)
    F = T.gfq2
    assert F.multiplicative_order(T.beta) == T.n
    U = T.unit_circle()
    assert len(U) == T.n and all(T.in_unit_circle(u) for u in U)
    assert sorted(U) == sorted(unity_roots(T.n, F))


def test_odd_m_has_no_quaternary_subfield():
    T = tower(3)
    assert T.gf4 is None
    with pytest.raises(InvalidArgument):
        T.h


@pytest.mark.parametrize("small,big", [(1, 4), (2, 4), (2, 8), (4, 8)])
def test_trace_is_sum_of_conjugates(small, big):
    S, B = make_field(small), make_field(big)
    emb = embedding(S, B)
    tab = trace_table(B, S, emb)
    for z in range(B.size):
        s, y = 0, z
        for _ in range(big // small):
            s ^= y
            y = B.frobenius(y, small)
        assert emb(int(tab[z])) == s
        assert trace(B, z, S, emb) == tab[z]
    # surjective and balanced
    assert np.bincount(tab, minlength=S.size).tolist() == [B.size // S.size] * S.size


def test_subfield_basis_spans():
    S, B = make_field(2), make_field(8)
    emb = embedding(S, B)
    basis = subfield_basis(emb, 4)
    span = set()
    for coeffs in itertools.product(range(4), repeat=4):
        z = 0
        for c, g in zip(coeffs, basis):
            z ^= B.mul(emb(c), g)
        span.add(z)
    assert len(span) == 256


def test_custom_modulus_and_equality():
    F = GF2m(4, 0b11001)  # x^4 + x^3 + 1, also primitive
    assert F != make_field(4)
    assert F.multiplicative_order(F.primitive_element) == 15
    with pytest.raises(InvalidArgument):
        GF2m(4, 0b10101)  # reducible
