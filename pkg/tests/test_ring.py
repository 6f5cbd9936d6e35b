import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negaduadic import gf
from negaduadic import negapoly as npoly
from negaduadic import ring as rg
from negaduadic.errors import ConsistencyError, ParameterError

F3 = gf.make_field(3)
F5 = gf.make_field(5)
F13 = gf.make_field(13)


def test_make_ring_examples():
    R = rg.make_ring(F5, (2, 4))
    assert R.etas[0] == npoly.Poly(F5, [2, 2])  # 2u + 2
    assert R.etas[1] == npoly.Poly(F5, [4, 3])  # 3u + 4
    R3 = rg.make_ring(F3, (0, 2))
    assert R3.etas[0] == npoly.Poly(F3, [1, 1])
    assert R3.etas[1] == npoly.Poly(F3, [0, 2])


def test_make_ring_rejects_bad_roots():
    with pytest.raises(ParameterError):
        rg.make_ring(F5, (2, 2))
    with pytest.raises(ParameterError):
        rg.make_ring(F5, (2,))


def _random_rings(rng, count=8):
    for _ in range(count):
        F = random.Random(rng.random()).choice([F3, F5, F13, gf.make_field(3, 2)])
        m = rng.randrange(2, min(F.order, 5) + 1)
        roots = tuple(rng.sample(range(F.order), m))
        yield rg.make_ring(F, roots)


def test_eta_identities_hold_exactly():
    # eta_i^2 = eta_i, eta_i eta_j = 0, sum eta_i = 1 as polynomials mod f(u)
    rng = random.Random(23)
    for R in _random_rings(rng, 12):
        total = npoly.Poly.zero(R.field)
        for i, eta in enumerate(R.etas):
            total = total + eta
            assert R._mod_f(eta * eta) == eta
            for j in range(i + 1, R.m):
                assert R._mod_f(eta * R.etas[j]).is_zero()
        assert total == npoly.Poly.one(R.field)


def test_crt_decompose_examples():
    R3 = rg.make_ring(F3, (0, 2))
    assert R3.embed_scalar(1).crt == (1, 1)
    eta1 = R3.from_u_coeffs(R3.etas[0].coeffs)
    assert eta1.crt == (1, 0)
    assert R3.from_u_coeffs([1, 2]).crt == (1, 2)  # 2u + 1 at (0, 2)


def test_compose_decompose_roundtrip():
    rng = random.Random(29)
    for R in _random_rings(rng, 6):
        for _ in range(100):
            crt = tuple(rng.randrange(R.field.order) for _ in range(R.m))
            r = rg.crt_compose(R, crt)
            assert rg.crt_decompose(r) == crt
            assert R.from_u_coeffs(r.u_coeffs) == r


def test_ring_element_arithmetic_matches_polynomial_arithmetic():
    rng = random.Random(31)
    R = rg.make_ring(F5, (1, 2, 3))
    for _ in range(50):
        a = R.from_u_coeffs([rng.randrange(5) for _ in range(3)])
        b = R.from_u_coeffs([rng.randrange(5) for _ in range(3)])
        pa, pb = npoly.Poly(F5, a.u_coeffs), npoly.Poly(F5, b.u_coeffs)
        assert (a + b).u_coeffs == tuple(list((pa + pb).coeffs) + [0] * (3 - len((pa + pb).coeffs)))
        prod = R._mod_f(pa * pb)
        assert (a * b).u_coeffs == tuple(list(prod.coeffs) + [0] * (3 - len(prod.coeffs)))


def _schoolbook_ring_mul(R, n, a, b):
    """Multiply two RingPolys coefficient by coefficient over R, folding x^n = -1."""
    coeffs = [R.embed_scalar(0) for _ in range(n)]
    acoef, bcoef = a.coefficients(), b.coefficients()
    for i in range(n):
        for j in range(n):
            term = acoef[i] * bcoef[j]
            t = i + j
            if t >= n:
                coeffs[t - n] = coeffs[t - n] - term
            else:
                coeffs[t] = coeffs[t] + term
    comps = [npoly.Poly(R.field, [c.crt[k] for c in coeffs]) for k in range(R.m)]
    return rg.RingPoly(R, n, comps)


def test_rpoly_mul_two_path_oracle():
    """Componentwise CRT products agree with schoolbook multiplication over R."""
    rng = random.Random(37)
    n = 6
    R = rg.make_ring(F5, (0, 2, 4))
    for _ in range(100):
        a = rg.RingPoly(R, n, [npoly.Poly(F5, [rng.randrange(5) for _ in range(n)]) for _ in range(3)])
        b = rg.RingPoly(R, n, [npoly.Poly(F5, [rng.randrange(5) for _ in range(n)]) for _ in range(3)])
        assert rg.rpoly_mul(a, b, n) == _schoolbook_ring_mul(R, n, a, b)


def test_rpoly_mul_identity_and_orthogonality():
    n = 10
    R = rg.make_ring(F3, (0, 2))
    one = rg.RingPoly.one(R, n)
    rng = random.Random(41)
    a = rg.RingPoly(R, n, [npoly.Poly(F3, [rng.randrange(3) for _ in range(n)]) for _ in range(2)])
    assert rg.rpoly_mul(one, a, n) == a
    # eta_1 * a times eta_2 * b has zero product in every component
    e1a = rg.RingPoly(R, n, [a.components[0], npoly.Poly.zero(F3)])
    e2b = rg.RingPoly(R, n, [npoly.Poly.zero(F3), a.components[1]])
    assert rg.rpoly_mul(e1a, e2b, n) == rg.RingPoly.zero(R, n)


def test_ring_poly_coefficient_view():
    n = 4
    R = rg.make_ring(F5, (2, 4))
    comps = [npoly.Poly(F5, [1, 2, 0, 3]), npoly.Poly(F5, [4, 0, 1, 1])]
    a = rg.RingPoly(R, n, comps)
    for j in range(n):
        want = tuple(c.coeffs[j] if j <= c.degree else 0 for c in comps)
        assert a.coefficient(j).crt == want
    rows = a.u_coefficient_rows()
    assert len(rows) == n and all(len(r) == R.m for r in rows)


@settings(max_examples=30)
@given(st.data())
def test_lemma6_lift_of_idempotents_is_idempotent(data):
    q, n = data.draw(st.sampled_from([(5, 6), (3, 10), (13, 6)]))
    F = gf.field_for_order(q)
    ctx = npoly.negacyclic_ring(F, n)
    m = data.draw(st.integers(2, 3))
    roots = tuple(data.draw(st.permutations(range(F.order)))[:m])
    R = rg.make_ring(F, roots)
    comps = []
    for _ in range(m):
        chosen = [c for c in ctx.cosets if data.draw(st.booleans())]
        T = frozenset().union(*chosen) if chosen else frozenset()
        comps.append(ctx.idempotent(T))
    lifted = rg.ring_idempotent_from(R, n, comps)
    assert lifted.is_idempotent()


def test_ring_serialization_shape():
    R = rg.make_ring(F5, (2, 4))
    d = R.to_dict()
    assert d["field"]["p"] == 5
    assert len(d["roots"]) == 2 and len(d["etas"]) == 2
