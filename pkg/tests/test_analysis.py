import random

import numpy as np
import pytest

from negaduadic import analysis as an
from negaduadic import duadic as dd
from negaduadic import gf
from negaduadic import negapoly as npoly
from negaduadic import ring as rg
from negaduadic import splittings as sp
from negaduadic.errors import BudgetError, DomainError, ParameterError

F3 = gf.make_field(3)
F5 = gf.make_field(5)
F9 = gf.make_field(3, 2)
F13 = gf.make_field(13)


def _negacyclic_code(F, n, T):
    ctx = npoly.negacyclic_ring(F, n)
    g = ctx.generator(T)
    coeffs = list(g.coeffs) + [0] * (n - len(g.coeffs))
    rows = [[0] * j + coeffs[: n - j] for j in range(n - g.degree)]
    return an.LinearCode.from_rows(F, n, rows), g, ctx


def _random_ring_code(rng, pool=((3, 10), (5, 6), (13, 6), (7, 10), (5, 18))):
    q, n = rng.choice(pool)
    F = gf.field_for_order(q)
    ctx = npoly.negacyclic_ring(F, n)
    m = rng.randrange(2, min(F.order, 4) + 1)
    roots = tuple(rng.sample(range(F.order), m))
    R = rg.make_ring(F, roots)
    comps = []
    for _ in range(m):
        chosen = [c for c in ctx.cosets if rng.random() < 0.5]
        T = frozenset().union(*chosen) if chosen else frozenset()
        comps.append(ctx.idempotent(T))
    return dd.code_from_idempotent(rg.RingPoly(R, n, comps)), R


def test_rref_and_kernel_roundtrip():
    rng = random.Random(2)
    for F in (F5, F9):
        for _ in range(20):
            rows = [[rng.randrange(F.order) for _ in range(8)] for _ in range(5)]
            M = np.array(rows, dtype=np.int64)
            R, pivots = an.rref(F, M)
            assert len(pivots) == R.shape[0]
            K = an.kernel(F, M)
            assert K.shape[0] == 8 - len(pivots)
            if K.shape[0]:
                prod = an.mat_mul(F, M, K.T)
                assert not prod.any()


def test_dual_examples():
    # full space -> zero code
    full = an.LinearCode.from_rows(F5, 3, np.eye(3, dtype=np.int64))
    assert full.dual().k == 0
    # <x+3> over F_5, n=2 is self-dual; kernel path agrees with reciprocal path
    C, g, _ = _negacyclic_code(F5, 2, frozenset({1}))
    Cd = C.dual()
    Cr, _, _ = _negacyclic_code(F5, 2, frozenset({3}))
    gd = npoly.dual_generator(g, 2)
    rows = [list(gd.coeffs) + [0] * (2 - len(gd.coeffs))]
    assert Cd == an.LinearCode.from_rows(F5, 2, rows[:2 - gd.degree])
    assert Cd == C


def test_dual_is_an_involution_on_random_codes():
    rng = random.Random(7)
    for F in (F3, F9):
        for _ in range(15):
            k, N = rng.randrange(1, 5), rng.randrange(5, 10)
            rows = [[rng.randrange(F.order) for _ in range(N)] for _ in range(k)]
            C = an.LinearCode.from_rows(F, N, rows)
            assert C.dual().dual() == C


def test_reciprocal_dual_agrees_with_kernel_dual_on_100_random_generators():
    rng = random.Random(11)
    pool = [(3, 10), (5, 6), (13, 6), (7, 10), (9, 4), (5, 18), (11, 10)]
    done = 0
    while done < 100:
        q, n = rng.choice(pool)
        F = gf.field_for_order(q)
        ctx = npoly.negacyclic_ring(F, n)
        chosen = [c for c in ctx.cosets if rng.random() < 0.5]
        T = frozenset().union(*chosen) if chosen else frozenset()
        if len(T) == n:
            continue
        C, g, _ = _negacyclic_code(F, n, T)
        gd = npoly.dual_generator(g, n)
        coeffs = list(gd.coeffs) + [0] * (n - len(gd.coeffs))
        rows = [[0] * j + coeffs[: n - j] for j in range(n - gd.degree)]
        recip = an.LinearCode.from_rows(F, n, rows)
        assert C.dual() == recip
        done += 1


def test_gray_matrix_validation():
    V = an.gray_matrix_from_ints(F3, [[1, 2], [-2, 1]])
    assert V.lam == 2
    V = an.gray_matrix_from_ints(F5, [[1, 0], [1, 1]])
    assert V.lam is None  # nonsingular but not lambda-orthogonal
    with pytest.raises(ParameterError):
        an.gray_matrix_from_ints(F5, [[1, 2], [2, 4]])


def test_gray_word_example():
    V = an.gray_matrix_from_ints(F3, [[1, 2], [-2, 1]])
    assert list(an.gray_word([(1, 2)], V)) == [0, 1]


def test_gray_identity_matrix_interleaves_components():
    n = 6
    R = rg.make_ring(F5, (2, 4))
    ctx = npoly.negacyclic_ring(F5, n)
    e = ctx.idempotent(frozenset({3}))
    code = dd.code_from_idempotent(rg.RingPoly(R, n, [e, npoly.Poly.one(F5)]))
    V = an.gray_matrix_from_ints(F5, [[1, 0], [0, 1]])
    C = an.gray_image(code, V)
    assert C.length == 2 * n and C.k == code.size_exponent
    # component 2 is the full space: odd Gray positions support the identity
    word = [0] * 12
    word[1] = 1
    assert C.contains(word)


def test_gray_image_dimension_matches_size_exponent():
    rng = random.Random(13)
    for _ in range(25):
        code, R = _random_ring_code(rng)
        V = an.orthogonal_gray_matrix(R.field, R.m, rng)
        C = an.gray_image(code, V)
        assert C.length == R.m * code.n
        assert C.k == code.size_exponent


def test_gray_map_preserves_weights_on_random_words():
    rng = random.Random(17)
    for _ in range(10):
        code, R = _random_ring_code(rng)
        V = an.orthogonal_gray_matrix(R.field, R.m, rng)
        # random element of the ambient module: weight of image counts nonzero blocks' images
        word = [tuple(rng.randrange(R.field.order) for _ in range(R.m)) for _ in range(code.n)]
        img = an.gray_word(word, V)
        nonzero_blocks = sum(1 for crt in word if any(crt))
        img_blocks = sum(
            1 for t in range(code.n) if img[t * R.m:(t + 1) * R.m].any()
        )
        assert nonzero_blocks == img_blocks  # V nonsingular: zero block iff zero input


def test_classify_duality_trivial_cases():
    zero = an.LinearCode.from_rows(F5, 4, [])
    flags = an.classify_duality(zero)
    assert flags.self_orthogonal and not flags.self_dual and flags.lcd
    full = an.LinearCode.from_rows(F5, 2, np.eye(2, dtype=np.int64))
    flags = an.classify_duality(full)
    assert flags.lcd and flags.self_dual is False
    with pytest.raises(DomainError):
        an.min_distance(zero)


def test_lcd_gram_criterion_matches_rank_test():
    rng = random.Random(19)
    for _ in range(30):
        F = rng.choice([F3, F5, F13])
        k, N = rng.randrange(1, 5), rng.randrange(4, 9)
        rows = [[rng.randrange(F.order) for _ in range(N)] for _ in range(k)]
        C = an.LinearCode.from_rows(F, N, rows)
        if C.k == 0:
            continue
        flags = an.classify_duality(C)
        stacked = np.vstack([C.generator, C.dual().generator])
        assert flags.lcd == (an.mat_rank(F, stacked) == C.length)


def test_min_distance_full_space_is_one():
    full = an.LinearCode.from_rows(F5, 4, np.eye(4, dtype=np.int64))
    rep = an.min_distance(full)
    assert rep.exact and rep.value == 1


def test_min_distance_methods_agree():
    rng = random.Random(23)
    for _ in range(15):
        q, n = rng.choice([(3, 10), (5, 6), (13, 6)])
        F = gf.field_for_order(q)
        ctx = npoly.negacyclic_ring(F, n)
        chosen = [c for c in ctx.cosets if rng.random() < 0.6]
        T = frozenset().union(*chosen) if chosen else frozenset()
        if not (0 < n - len(T) <= 6):
            continue
        C, _, _ = _negacyclic_code(F, n, T)
        by_enum = an.min_distance(C, enum_budget=1 << 26, column_budget=0)
        by_cols = an.min_distance(C, enum_budget=0, column_budget=1 << 20)
        assert by_enum.exact and by_cols.exact
        assert by_enum.value == by_cols.value


def test_min_distance_budget_zero_reports_bounds():
    C, _, ctx = _negacyclic_code(F5, 6, frozenset({1, 5}))
    rep = an.min_distance(C, enum_budget=0, column_budget=0)
    assert rep.method == "bounds"
    assert rep.lower >= 1 and rep.upper >= rep.lower


def test_weight_distribution_examples():
    zero = an.LinearCode.from_rows(F5, 4, [])
    assert an.weight_distribution(zero) == {0: 1}
    C, _, _ = _negacyclic_code(F5, 6, frozenset({1, 5}))
    wd = an.weight_distribution(C)
    assert wd[0] == 1 and sum(wd.values()) == 5 ** C.k
    assert min(w for w in wd if w) == an.min_distance(C).value
    with pytest.raises(BudgetError):
        an.weight_distribution(C, budget=10)


def test_equivalent_codes_share_weight_distribution():
    # multiplier images are monomially equivalent
    n = 10
    R = rg.make_ring(F3, (0, 2))
    split = sp.find_splittings(3, 10, sp.TYPE_II, multiplier=-1, max_count=1)[0]
    quint = dd.typeII_quintet(split, F3)
    S = dd.code_from_idempotent(dd.family_idempotent({1}, "E", R, quint, n))
    V = an.gray_matrix_from_ints(F3, [[1, 2], [-2, 1]])
    wd1 = an.weight_distribution(an.gray_image(S, V))
    wd2 = an.weight_distribution(an.gray_image(S.mu_image(split.s), V))
    assert wd1 == wd2


def test_gray_duality_on_fixed_self_dual_code():
    # Theorem-1 statement at matrix level: Phi(C dual) = Phi(C) dual
    n = 6
    split = sp.find_splittings(5, 6, sp.TYPE_I, multiplier=-1, max_count=1)[0]
    pair = dd.typeI_pair(split, F5)
    R = rg.make_ring(F5, (2, 4))
    code = dd.code_from_idempotent(dd.family_idempotent({1}, "F", R, pair, n))
    V = an.gray_matrix_from_ints(F5, [[2, 3], [-3, 2]])
    C = an.gray_image(code, V)
    assert an.gray_image(code.dual(), V) == C.dual()
    assert an.classify_duality(C).self_dual


def test_component_dual_decomposition():
    # dual of (eta-decomposed code) = eta-decomposition of component duals
    rng = random.Random(29)
    for _ in range(10):
        code, R = _random_ring_code(rng)
        V = an.gray_matrix_from_ints(R.field, np.eye(R.m, dtype=int).tolist())
        assert an.gray_image(code.dual(), V) == an.gray_image(code, V).dual()


def test_isodual_witness_requires_orthogonal_v():
    n = 6
    split = sp.find_splittings(13, 6, sp.TYPE_II, multiplier=5, mu_minus1="fixes", max_count=1)[0]
    quint = dd.typeII_quintet(split, F13)
    R = rg.make_ring(F13, (2, 3))
    Q = dd.code_from_idempotent(dd.family_idempotent({1}, "D", R, quint, n))
    ext = dd.extend_code(Q, 2)
    V_bad = an.gray_matrix_from_ints(F13, [[1, 0], [1, 1]])
    C = an.gray_image(ext, V_bad)
    with pytest.raises(ParameterError):
        an.classify_duality(C, witness=an.IsodualWitness(ext, V_bad, split.s))
