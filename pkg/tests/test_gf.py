import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negaduadic import gf
from negaduadic.errors import DomainError, ParameterError

F3 = gf.make_field(3)
F5 = gf.make_field(5)
F9 = gf.make_field(3, 2)
F11 = gf.make_field(11)
F13 = gf.make_field(13)
FIELDS = [F3, F5, F9, F11, F13]


def test_make_field_validates_parameters():
    with pytest.raises(ParameterError):
        gf.make_field(4)
    with pytest.raises(ParameterError):
        gf.make_field(2)
    with pytest.raises(ParameterError):
        gf.make_field(5, 0)


def test_f5_generator_has_order_four():
    assert F5.generator in (2, 3)
    orders = {a: F5.element_order(a) for a in range(1, 5)}
    assert orders[F5.generator] == 4


def test_f3_generator_is_two():
    assert F3.generator == 2


def test_f9_has_a_primitive_element():
    assert F9.order == 9
    assert F9.element_order(F9.generator) == 8


def test_inverse_examples():
    assert F5.inv(3) == 2
    assert F11.inv(10) == 10
    with pytest.raises(DomainError):
        F5.inv(0)


def test_additive_identity_everywhere():
    for F in FIELDS:
        for a in F.elements():
            assert F.add(a, 0) == a


@settings(max_examples=60)
@given(st.sampled_from(FIELDS), st.data())
def test_inverse_and_power_laws(F, data):
    a = data.draw(st.integers(1, F.order - 1))
    i = data.draw(st.integers(0, 30))
    j = data.draw(st.integers(0, 30))
    assert F.mul(a, F.inv(a)) == 1
    assert F.mul(F.pow(a, i), F.pow(a, j)) == F.pow(a, i + j)


def test_generator_order_is_full():
    for F in FIELDS:
        n = F.order - 1
        assert F.pow(F.generator, n) == 1
        for ell in {p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))}:
            assert F.pow(F.generator, n // ell) != 1


def test_root_of_unity_examples():
    ext, delta = gf.root_of_unity(F5, 4)
    assert ext is F5 and delta == 2
    ext, delta = gf.root_of_unity(F5, 12)
    assert ext.deg == 2 and ext.element_order(delta) == 12
    ext, delta = gf.root_of_unity(F5, 1)
    assert ext is F5 and delta == 1
    with pytest.raises(ParameterError):
        gf.root_of_unity(F5, 10)


def test_root_of_unity_exact_order():
    for F, k in [(F3, 20), (F13, 12), (F9, 8), (F11, 52)]:
        ext, delta = gf.root_of_unity(F, k)
        assert ext.pow(delta, k) == 1
        for ell in {p for p in range(2, k + 1) if k % p == 0 and all(p % d for d in range(2, p))}:
            assert ext.pow(delta, k // ell) != 1


def test_embedding_is_a_ring_homomorphism():
    rng = random.Random(11)
    for F, k in [(F5, 24), (F9, 16), (F3, 44)]:
        ext, _ = gf.root_of_unity(F, k)
        emb = gf.embedding(F, ext)
        for _ in range(100):
            a, b = rng.randrange(F.order), rng.randrange(F.order)
            assert emb.map(F.add(a, b)) == ext.add(emb.map(a), emb.map(b))
            assert emb.map(F.mul(a, b)) == ext.mul(emb.map(a), emb.map(b))
        assert emb.map(1) == 1 and emb.map(0) == 0
        for a in F.elements():
            assert emb.descend(emb.map(a)) == a


def test_embedding_descend_rejects_outside_elements():
    ext, _ = gf.root_of_unity(F9, 16)
    emb = gf.embedding(F9, ext)
    images = {emb.map(a) for a in F9.elements()}
    outside = next(b for b in ext.elements() if b not in images)
    with pytest.raises(DomainError):
        emb.descend(outside)


def test_coeffs_roundtrip_and_serialization():
    for F in FIELDS:
        for a in F.elements():
            assert F.from_coeffs(F.coeffs(a)) == a
        d = F.to_dict()
        assert d["p"] == F.p and d["s"] == F.deg
        assert len(d["modulus"]) == F.deg + 1


def test_vector_ops_agree_with_scalar_ops():
    rng = random.Random(5)
    for F in [F5, F9, gf.extension_field(3, 4)]:
        a = F.varray(rng.randrange(F.order) for _ in range(50))
        b = F.varray(rng.randrange(F.order) for _ in range(50))
        assert all(int(x) == F.add(int(u), int(v)) for x, u, v in zip(F.vadd(a, b), a, b))
        assert all(int(x) == F.mul(int(u), int(v)) for x, u, v in zip(F.vmul(a, b), a, b))
        assert all(int(x) == F.neg(int(u)) for x, u in zip(F.vneg(a), a))
        total = 0
        for u in a:
            total = F.add(total, int(u))
        assert F.vsum(a) == total


def test_smallest_irreducible_is_deterministic():
    assert gf.smallest_irreducible(3, 2) == (1, 0, 1)  # w^2 + 1
    mod = gf.smallest_irreducible(5, 3)
    assert len(mod) == 4 and mod[-1] == 1
    assert gf.smallest_irreducible(5, 3) == mod
