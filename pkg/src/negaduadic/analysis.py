"""Linear algebra over F_q: Gray images, duals, duality flags, distances.

Codes are held as reduced-row-echelon generator matrices (numpy arrays of
packed field elements) so serialized generators are canonical.  Distance
is exact either by full codeword enumeration (q^k within budget) or by a
column-dependency scan of the parity-check matrix: d is the smallest w
such that some w columns are dependent, certified by scanning all smaller
subsets.  Otherwise certified bounds are reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import gf
from .duadic import ExtendedCode, RingCode, p_poly
from .errors import BudgetError, DomainError, ParameterError

DEFAULT_ENUM_BUDGET = 1 << 26
ENUM_FAST_LIMIT = 1 << 20  # below this, enumeration is preferred over column scans
DEFAULT_SAMPLES = 2000


# ---------------------------------------------------------------------------
# matrix primitives over a field
# ---------------------------------------------------------------------------

def rref(field: gf.Field, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with left-to-right pivots; returns (R, pivots)."""
    M = np.array(M, dtype=np.int64)
    if M.ndim != 2:
        raise ParameterError("matrix expected")
    rows, cols = M.shape
    r, pivots = 0, []
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if M[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        if M[r, c] != 1:
            M[r] = field.vscale(field.inv(int(M[r, c])), M[r])
        col = M[:, c].copy()
        col[r] = 0
        if col.any():
            M = field.vsub(M, field.vmul(col[:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M[:r], pivots


def mat_rank(field: gf.Field, M: np.ndarray) -> int:
    return rref(field, M)[0].shape[0]


def kernel(field: gf.Field, M: np.ndarray) -> np.ndarray:
    """A basis (as rows) of the right kernel of M."""
    R, pivots = rref(field, M)
    n = M.shape[1]
    free = [c for c in range(n) if c not in pivots]
    out = np.zeros((len(free), n), dtype=np.int64)
    for idx, f in enumerate(free):
        out[idx, f] = 1
        for row, p_col in enumerate(pivots):
            out[idx, p_col] = field.neg(int(R[row, f]))
    return out


def mat_mul(field: gf.Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if field.deg == 1:
        return (A.astype(np.int64) @ B.astype(np.int64)) % field.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        out = field.vadd(out, field.vmul(A[:, t][:, None], B[t, :][None, :]))
    return out


def gram_matrix(field: gf.Field, G: np.ndarray) -> np.ndarray:
    return mat_mul(field, G, G.T)


# ---------------------------------------------------------------------------
# linear codes
# ---------------------------------------------------------------------------

class LinearCode:
    """A linear code over F_q held by its RREF generator matrix."""

    def __init__(self, field: gf.Field, length: int, generator: np.ndarray):
        self.field = field
        self.length = length
        generator = np.array(generator, dtype=np.int64).reshape(-1, length)
        self.generator = generator

    @classmethod
    def from_rows(cls, field: gf.Field, length: int, rows: Iterable[Sequence[int]]) -> "LinearCode":
        rows = list(rows)
        if not rows:
            return cls(field, length, np.zeros((0, length), dtype=np.int64))
        M = np.array(rows, dtype=np.int64).reshape(len(rows), length)
        R, _ = rref(field, M)
        return cls(field, length, R)

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field is other.field
            and self.length == other.length
            and self.generator.shape == other.generator.shape
            and bool((self.generator == other.generator).all())
        )

    def __repr__(self) -> str:
        return f"LinearCode[{self.length},{self.k}] over {self.field!r}"

    def dual(self) -> "LinearCode":
        return LinearCode.from_rows(self.field, self.length, kernel(self.field, self.generator))

    def parity_check(self) -> np.ndarray:
        return self.dual().generator

    def contains(self, word: Sequence[int]) -> bool:
        stacked = np.vstack([self.generator, np.array(word, dtype=np.int64)])
        return mat_rank(self.field, stacked) == self.k

    def to_dict(self) -> dict:
        F = self.field
        return {
            "length": self.length,
            "dimension": self.k,
            "generator": [[list(F.coeffs(int(v))) for v in row] for row in self.generator],
        }


# ---------------------------------------------------------------------------
# the Gray map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrayMatrix:
    """A nonsingular m x m matrix V; lam is set when V V^T = lam * I."""

    field: gf.Field
    V: np.ndarray
    lam: int | None

    @property
    def m(self) -> int:
        return self.V.shape[0]

    def to_dict(self) -> dict:
        F = self.field
        return {"V": [[list(F.coeffs(int(v))) for v in row] for row in self.V],
                "lambda": list(F.coeffs(self.lam)) if self.lam is not None else None}


def gray_matrix(field: gf.Field, rows: Sequence[Sequence[int]]) -> GrayMatrix:
    V = np.array(rows, dtype=np.int64)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise ParameterError("V must be square")
    if mat_rank(field, V) != V.shape[0]:
        raise ParameterError("V must be nonsingular")
    gram = gram_matrix(field, V)
    lam = int(gram[0, 0])
    if lam != 0 and (gram == lam * np.eye(V.shape[0], dtype=np.int64)).all():
        return GrayMatrix(field, V, lam)
    return GrayMatrix(field, V, None)


def gray_matrix_from_ints(field: gf.Field, rows: Sequence[Sequence[int]]) -> GrayMatrix:
    """Rows with plain integer entries, reduced into the prime subfield."""
    return gray_matrix(field, [[v % field.p for v in row] for row in rows])


def orthogonal_gray_matrix(field: gf.Field, m: int, rng) -> GrayMatrix:
    """A pseudo-random V with V V^T = lam I: scaled monomial times rotations."""
    F = field
    units = [(a, b) for a in range(F.order) for b in range(F.order)
             if F.add(F.mul(a, a), F.mul(b, b)) == 1]
    c = rng.randrange(1, F.order)
    V = np.zeros((m, m), dtype=np.int64)
    perm = list(range(m))
    rng.shuffle(perm)
    for i, j in enumerate(perm):
        sign = c if rng.random() < 0.5 else F.neg(c)
        V[i, j] = sign
    for _ in range(2 * m):
        i, j = rng.sample(range(m), 2) if m > 1 else (0, 0)
        if i == j:
            continue
        a, b = units[rng.randrange(len(units))]
        ri, rj = V[i].copy(), V[j].copy()
        V[i] = F.vadd(F.vscale(a, ri), F.vscale(b, rj))
        V[j] = F.vadd(F.vscale(F.neg(b), ri), F.vscale(a, rj))
    return gray_matrix(field, V)


def gray_word(crt_vectors: Sequence[Sequence[int]], V: GrayMatrix) -> np.ndarray:
    """Gray image of one word over R given coordinatewise evaluation vectors."""
    F = V.field
    out = np.zeros(len(crt_vectors) * V.m, dtype=np.int64)
    for t, crt in enumerate(crt_vectors):
        a = np.array(crt, dtype=np.int64)
        out[t * V.m:(t + 1) * V.m] = F.vsum(F.vmul(a[:, None], V.V), axis=0)
    return out


def _component_rows(gen, n: int, vrow: np.ndarray, field: gf.Field, tail=()):
    """Gray rows for one component: shifts of its generator, kron'd with a V row."""
    m = vrow.shape[0]
    k = n - gen.degree
    coeffs = list(gen.coeffs) + [0] * (n - len(gen.coeffs))
    for j in range(k):
        shifted = [0] * j + coeffs[: n - j]
        full = shifted + list(tail)
        row = np.array(full, dtype=np.int64)
        yield field.vmul(np.repeat(row, m), np.tile(vrow, len(full)))


def gray_image(code: RingCode | ExtendedCode, V: GrayMatrix) -> LinearCode:
    """Componentwise Gray map: each R-coordinate sum eta_i a_i becomes (a_1..a_m)V."""
    if isinstance(code, RingCode):
        ringR, n, even = code.ring, code.n, None
    elif isinstance(code, ExtendedCode):
        ringR, n, even = code.ring, code.n, code.even_code
    else:
        raise ParameterError("gray_image expects a RingCode or ExtendedCode")
    F = ringR.field
    if V.field is not F or V.m != ringR.m:
        raise ParameterError("Gray matrix does not match the ring")
    rows: list[np.ndarray] = []
    if even is None:
        for i, gen in enumerate(code.component_generators):
            rows.extend(_component_rows(gen, n, V.V[i], F))
        return LinearCode.from_rows(F, ringR.m * n, rows)
    # extension: even-like rows padded (0, 0), plus p(x), x*p(x) rows per component
    pw = p_poly(F, n)
    p_coeffs = list(pw.coeffs) + [0] * (n - len(pw.coeffs))
    xp_coeffs = [0] + p_coeffs[: n - 1]
    for i, gen in enumerate(even.component_generators):
        rows.extend(_component_rows(gen, n, V.V[i], F, tail=(0, 0)))
        for base in (p_coeffs, xp_coeffs):
            ev, od = code.extension_values(base)
            row = np.array(base + [ev, od], dtype=np.int64)
            rows.append(F.vmul(np.repeat(row, V.m), np.tile(V.V[i], n + 2)))
    return LinearCode.from_rows(F, ringR.m * (n + 2), rows)


# ---------------------------------------------------------------------------
# duality classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsodualWitness:
    """Multiplier context proving isoduality: dual(Phi(C)) = Phi(mu_s(C))."""

    source: RingCode | ExtendedCode
    V: GrayMatrix
    s: int


@dataclass(frozen=True)
class DualityFlags:
    self_dual: bool
    self_orthogonal: bool
    lcd: bool
    isodual_by_multiplier: bool | None

    def to_dict(self) -> dict:
        return {
            "self_dual": self.self_dual,
            "self_orthogonal": self.self_orthogonal,
            "lcd": self.lcd,
            "isodual_by_multiplier": self.isodual_by_multiplier,
        }


def classify_duality(C: LinearCode, witness: IsodualWitness | None = None) -> DualityFlags:
    """Self-dual / self-orthogonal / LCD flags; isodual only with a witness.

    LCD uses the nonsingular-Gram criterion; isodual checks that the dual of
    the Gray image equals the Gray image of the multiplier image of the
    source code over R, which exhibits the equivalence explicitly.
    """
    F = C.field
    gram = gram_matrix(F, C.generator)
    self_orth = not gram.any()
    self_dual = self_orth and 2 * C.k == C.length
    lcd = mat_rank(F, gram) == C.k
    iso = None
    if witness is not None:
        if witness.V.lam is None:
            raise ParameterError("isodual witness requires V V^T = lam I")
        mu_code = witness.source.mu_image(witness.s)
        iso = C.dual() == gray_image(mu_code, witness.V)
    return DualityFlags(self_dual, self_orth, lcd, iso)


# ---------------------------------------------------------------------------
# distance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceReport:
    method: str
    exact: bool
    value: int | None
    lower: int
    upper: int
    work: int

    def to_dict(self) -> dict:
        out = {"method": self.method, "exact": self.exact, "work": self.work}
        if self.exact:
            out["value"] = self.value
        else:
            out["lower"], out["upper"] = self.lower, self.upper
        return out


def _enumerate_weights(C: LinearCode, want_histogram: bool = False,
                       chunk: int = 1 << 16) -> tuple[int, np.ndarray | None, int]:
    F, G, k = C.field, C.generator, C.k
    q = F.order
    total = q ** k
    radix = q ** np.arange(k, dtype=np.int64)
    best = C.length + 1
    hist = np.zeros(C.length + 1, dtype=np.int64) if want_histogram else None
    if want_histogram:
        hist[0] = 1
    start = 1
    while start < total:
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        msgs = (idx[:, None] // radix) % q
        if F.deg == 1:
            words = (msgs @ G) % F.p
        else:
            words = np.zeros((len(idx), C.length), dtype=np.int64)
            for j in range(k):
                words = F.vadd(words, F.vmul(msgs[:, j][:, None], G[j][None, :]))
        weights = np.count_nonzero(words, axis=1)
        best = min(best, int(weights.min()))
        if want_histogram:
            hist += np.bincount(weights, minlength=C.length + 1)
        start = stop
    return best, hist, total - 1


class _Work:
    def __init__(self):
        self.work = 0


def _column_level_scan(field: gf.Field, cols: list[tuple[int, ...]], w: int, counter: _Work) -> int | None:
    """Scan every w-subset of columns (all smaller ones known independent).

    Returns the size of a dependent subset if one is found, else None.
    """
    N, r = len(cols), len(cols[0])
    prime = field.deg == 1
    p = field.p

    def reduce(col: list[int], basis: list[tuple[int, list[int]]]) -> list[int]:
        col = list(col)
        for prow, bcol in basis:
            c = col[prow]
            if c:
                if prime:
                    for i in range(prow, r):
                        if bcol[i]:
                            col[i] = (col[i] - c * bcol[i]) % p
                else:
                    for i in range(prow, r):
                        if bcol[i]:
                            col[i] = field.sub(col[i], field.mul(c, bcol[i]))
        return col

    found: list[int] = []

    def rec(start: int, basis: list[tuple[int, list[int]]], depth: int) -> bool:
        for j in range(start, N - (w - depth) + 1):
            col = reduce(cols[j], basis)
            nz = next((i for i, v in enumerate(col) if v), None)
            if depth + 1 == w:
                counter.work += 1
                if nz is None:
                    found.append(w)
                    return True
            else:
                if nz is None:  # dependency below the current level (possible only with a wrong hint)
                    found.append(depth + 1)
                    return True
                inv = field.inv(col[nz])
                norm = [field.mul(inv, v) if v else 0 for v in col]
                basis.append((nz, norm))
                if rec(j + 1, basis, depth + 1):
                    return True
                basis.pop()
        return False

    return found[0] if rec(0, [], 0) else None


def _column_search(C: LinearCode, level_budget: int) -> tuple[int | None, int, int]:
    """(d or None, certified_lower, work): subset sizes in increasing order.

    The budget caps the number of same-size column subsets a single level
    may scan; a level whose C(N, w) exceeds it is not attempted and the
    certified lower bound from the completed levels is reported instead.
    """
    H = C.parity_check()
    cols = [tuple(int(v) for v in H[:, j]) for j in range(C.length)]
    if not cols or H.shape[0] == 0:
        return 1, 1, 0  # dual is trivial: C is the full space
    counter = _Work()
    max_w = C.length - C.k + 1
    lower = 1
    for w in range(1, max_w + 1):
        if comb(C.length, w) > level_budget:
            return None, lower, counter.work
        dep = _column_level_scan(C.field, cols, w, counter)
        if dep is not None:
            return dep, dep, counter.work
        lower = w + 1
    return max_w, max_w, counter.work  # pragma: no cover (dependency certain at max_w)


def _sample_upper(C: LinearCode, samples: int, seed: int = 0) -> int:
    F, G, k = C.field, C.generator, C.k
    rng = np.random.default_rng(seed)
    best = int(np.count_nonzero(G, axis=1).min())
    if samples <= 0 or k == 0:
        return best
    msgs = rng.integers(0, F.order, size=(samples, k), dtype=np.int64)
    if F.deg == 1:
        words = (msgs @ G) % F.p
    else:
        words = np.zeros((samples, C.length), dtype=np.int64)
        for j in range(k):
            words = F.vadd(words, F.vmul(msgs[:, j][:, None], G[j][None, :]))
    weights = np.count_nonzero(words, axis=1)
    weights = weights[weights > 0]
    if weights.size:
        best = min(best, int(weights.min()))
    return best


def min_distance(
    C: LinearCode,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    column_budget: int | None = None,
    lower_hint: int = 1,
    samples: int = DEFAULT_SAMPLES,
) -> DistanceReport:
    """Exact minimum distance within budget, otherwise certified bounds.

    Enumeration handles q^k up to the enumeration budget; the column scan
    certifies d = w by checking all subsets of < w parity-check columns
    independent and exhibiting a dependent w-subset (column_budget caps the
    subsets scanned per level, default C(N, 7)).  When neither completes,
    the report carries the best certified lower bound and the lightest
    codeword weight found by deterministic sampling.
    """
    if C.k == 0:
        raise DomainError("minimum distance of the zero code is undefined")
    total = C.field.order ** C.k
    if column_budget is None:
        column_budget = comb(C.length, min(7, C.length))
    if enum_budget > 0 and total <= min(enum_budget, ENUM_FAST_LIMIT):
        best, _, work = _enumerate_weights(C)
        return DistanceReport("enumeration", True, best, best, best, work)
    if column_budget > 0:
        d, lower, work = _column_search(C, column_budget)
        if d is not None:
            return DistanceReport("column-dependency", True, d, d, d, work)
    else:
        lower, work = 1, 0
    if enum_budget > 0 and total <= enum_budget:
        best, _, ework = _enumerate_weights(C)
        return DistanceReport("enumeration", True, best, best, best, work + ework)
    lower = max(lower, lower_hint)
    upper = _sample_upper(C, samples)
    if upper == lower:
        return DistanceReport("bounds", True, lower, lower, upper, work)
    return DistanceReport("bounds", False, None, lower, upper, work)


def weight_distribution(C: LinearCode, budget: int = DEFAULT_ENUM_BUDGET) -> dict[int, int]:
    """Histogram of Hamming weights over all q^k codewords."""
    if C.field.order ** C.k > budget:
        raise BudgetError(f"q^k = {C.field.order ** C.k} exceeds the enumeration budget {budget}")
    if C.k == 0:
        return {0: 1}
    _, hist, _ = _enumerate_weights(C, want_histogram=True)
    return {w: int(c) for w, c in enumerate(hist) if c}
