"""Polynomials over F_q and the quotient F_q[x]/<x^n + 1> for even n.

The factor structure of x^n + 1 is driven entirely by cyclotomic cosets:
its roots are the odd powers of a primitive 2n-th root of unity delta, and
each q-coset of odd residues mod 2n yields one irreducible factor.  The
`NegacyclicRing` context caches delta, the cosets and their minimal
polynomials for a given (field, n) and builds idempotent generators from
defining sets via the Bezout identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import gf, splittings
from .errors import ConsistencyError, DomainError, ParameterError


class Poly:
    """Dense polynomial over a Field; coefficients packed, lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: gf.Field, coeffs: Iterable[int]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, field: gf.Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: gf.Field) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def monomial(cls, field: gf.Field, k: int, c: int = 1) -> "Poly":
        return cls(field, [0] * k + [c])

    @classmethod
    def from_ints(cls, field: gf.Field, ints: Iterable[int]) -> "Poly":
        """Coefficients given as integers, reduced into the prime subfield."""
        return cls(field, (v % field.p for v in ints))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.field), self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self.field!r}, {list(self.coeffs)})"

    def _check_same(self, other: "Poly") -> None:
        if self.field is not other.field:
            raise ParameterError("operands live in different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same(other)
        F, a, b = self.field, self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, (F.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_same(other)
        F, a, b = self.field, self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        if F.deg == 1:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Poly(F, (c % p for c in out))
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, (F.mul(c, x) for x in self.coeffs))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return self if lead == 1 else self.scale(self.field.inv(lead))

    def evaluate(self, x: int) -> int:
        F, acc = self.field, 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def evaluate_in(self, emb: gf.Embedding, x: int) -> int:
        """Evaluate at a point of an extension field, mapping coefficients up."""
        E, acc = emb.ext, 0
        for c in reversed(self.coeffs):
            acc = E.add(E.mul(acc, x), emb.map(c))
        return acc

    def reciprocal(self) -> "Poly":
        return Poly(self.field, reversed(self.coeffs))

    def to_coeff_rows(self) -> list[list[int]]:
        """Serialized form: one base-p coordinate vector per coefficient."""
        return [list(self.field.coeffs(c)) for c in self.coeffs]


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a._check_same(b)
    if b.is_zero():
        raise DomainError("polynomial division by zero")
    F = a.field
    rem = list(a.coeffs)
    db, inv_lead = b.degree, F.inv(b.coeffs[-1])
    quot = [0] * max(len(rem) - db, 0)
    if F.deg == 1:
        p, bc = F.p, b.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = (c * inv_lead) % p
            quot[i - db] = q
            for j, bj in enumerate(bc):
                if bj:
                    rem[i - db + j] = (rem[i - db + j] - q * bj) % p
        return Poly(F, quot), Poly(F, rem)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        q = F.mul(c, inv_lead)
        quot[i - db] = q
        for j, bj in enumerate(b.coeffs):
            rem[i - db + j] = F.sub(rem[i - db + j], F.mul(q, bj))
    return Poly(F, quot), Poly(F, rem)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, u, v) with u*a + v*b = g, g monic.

    Runs on bare coefficient lists; the cofactor updates dominate idempotent
    construction, so the prime-field case inlines the modular arithmetic.
    """
    a._check_same(b)
    F = a.field
    prime, p = F.deg == 1, F.p

    def trim(x: list[int]) -> list[int]:
        while x and x[-1] == 0:
            x.pop()
        return x

    def submul(x: list[int], q: int, shift: int, y: list[int]) -> list[int]:
        # x -= q * y * X^shift
        need = shift + len(y)
        if len(x) < need:
            x.extend([0] * (need - len(x)))
        if prime:
            for j, yj in enumerate(y):
                if yj:
                    x[shift + j] = (x[shift + j] - q * yj) % p
        else:
            for j, yj in enumerate(y):
                if yj:
                    x[shift + j] = F.sub(x[shift + j], F.mul(q, yj))
        return x

    r0, r1 = trim(list(a.coeffs)), trim(list(b.coeffs))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        inv_lead = F.inv(r1[-1])
        d1 = len(r1) - 1
        quo: list[int] = [0] * max(len(r0) - d1, 1)
        while len(r0) - 1 >= d1 and r0:
            c = r0[-1]
            shift = len(r0) - 1 - d1
            q = (c * inv_lead) % p if prime else F.mul(c, inv_lead)
            quo[shift] = q
            submul(r0, q, shift, r1)
            trim(r0)
        trim(quo)
        r0, r1 = r1, r0
        # (s0, s1) <- (s1, s0 - quo * s1); same for t
        new_s, new_t = list(s0), list(t0)
        for i, qc in enumerate(quo):
            if qc:
                submul(new_s, qc, i, s1)
                submul(new_t, qc, i, t1)
        s0, s1 = s1, trim(new_s)
        t0, t1 = t1, trim(new_t)
    if not r0:
        return Poly.zero(F), Poly(F, s0), Poly(F, t0)
    c = F.inv(r0[-1])
    gp, up, vp = Poly(F, r0), Poly(F, s0), Poly(F, t0)
    return gp.scale(c), up.scale(c), vp.scale(c)


def xn_plus_1(field: gf.Field, n: int) -> Poly:
    return Poly(field, [1] + [0] * (n - 1) + [1])


def nmod(a: Poly, n: int) -> Poly:
    """Reduce by the relation x^n = -1."""
    if a.degree < n:
        return a
    F = a.field
    out = [0] * n
    sign_flip = False
    for block_start in range(0, len(a.coeffs), n):
        block = a.coeffs[block_start:block_start + n]
        for i, c in enumerate(block):
            out[i] = F.sub(out[i], c) if sign_flip else F.add(out[i], c)
        sign_flip = not sign_flip
    return Poly(F, out)


def nmul(a: Poly, b: Poly, n: int) -> Poly:
    """Product in F_q[x]/<x^n + 1>."""
    a._check_same(b)
    if a.degree >= n or b.degree >= n:
        a, b = nmod(a, n), nmod(b, n)
    return nmod(a * b, n)


def apply_multiplier(a: Poly, s: int, n: int) -> Poly:
    """The substitution x -> x^s mod x^n + 1 (requires gcd(s, 2n) = 1)."""
    two_n = 2 * n
    s %= two_n
    if gcd(s, two_n) != 1:
        raise ParameterError(f"multiplier {s} is not coprime to {two_n}")
    a = nmod(a, n)
    F = a.field
    out = [0] * n
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        j = (s * i) % two_n
        if j < n:
            out[j] = F.add(out[j], c)
        else:
            out[j - n] = F.sub(out[j - n], c)
    return Poly(F, out)


def dual_generator(g: Poly, n: int) -> Poly:
    """Monic reciprocal of (x^n + 1)/g; generates the dual of <g>."""
    quot, rem = poly_divmod(xn_plus_1(g.field, n), g)
    if not rem.is_zero():
        raise ParameterError("generator does not divide x^n + 1")
    return quot.reciprocal().monic()


def alternating_sums(field: gf.Field, coeffs: Sequence[int]) -> tuple[int, int]:
    """(c0 - c2 + c4 - ..., c1 - c3 + c5 - ...) over all positions."""
    sums = [0, 0]
    for i, c in enumerate(coeffs):
        j = i // 2
        sums[i % 2] = field.add(sums[i % 2], c if j % 2 == 0 else field.neg(c))
    return sums[0], sums[1]


def even_like(c: Poly, n: int) -> bool:
    """True iff x^2 + 1 divides c, i.e. both alternating coordinate sums vanish."""
    if c.degree >= n:
        c = nmod(c, n)
    return alternating_sums(c.field, c.coeffs) == (0, 0)


@dataclass(frozen=True)
class DefiningSet:
    """A set of odd residues mod 2n marking the roots delta^i of a generator."""

    n: int
    elems: frozenset[int]

    def __post_init__(self):
        for i in self.elems:
            if i % 2 == 0 or not 0 < i < 2 * self.n:
                raise ParameterError(f"defining set element {i} is not an odd residue mod {2 * self.n}")

    def closed_under(self, q: int) -> bool:
        two_n = 2 * self.n
        return all((i * q) % two_n in self.elems for i in self.elems)


def bch_bound(T: DefiningSet | frozenset | set, n: int | None = None) -> int:
    """1 + the longest cyclic run of consecutive odd residues inside T."""
    if isinstance(T, DefiningSet):
        elems, n = T.elems, T.n
    else:
        if n is None:
            raise ParameterError("n required when T is a bare set")
        elems = frozenset(T)
    odds = list(range(1, 2 * n, 2))
    flags = [o in elems for o in odds]
    if all(flags):
        return n + 1
    best = cur = 0
    for f in flags + flags:  # doubled for the cyclic wrap
        cur = cur + 1 if f else 0
        best = max(best, cur)
    return 1 + min(best, n)


class NegacyclicRing:
    """Cached factorization context for F_q[x]/<x^n + 1>."""

    def __init__(self, field: gf.Field, n: int):
        if n < 2 or n % 2:
            raise ParameterError(f"length n = {n} must be even and >= 2")
        if n % field.p == 0:
            raise ParameterError(f"n = {n} is not coprime to q = {field.order}")
        self.field = field
        self.n = n
        self.odds = tuple(range(1, 2 * n, 2))
        table = splittings.cyclotomic_cosets(field.order, n)
        self.cosets = table.cosets
        self._coset_of = {i: idx for idx, cs in enumerate(self.cosets) for i in cs}
        self.ext, self.delta = gf.root_of_unity(field, 2 * n)
        self.emb = gf.embedding(field, self.ext)
        self.xn1 = xn_plus_1(field, n)
        self._minpolys: dict[int, Poly] = {}
        self._generators: dict[frozenset[int], Poly] = {frozenset(): Poly.one(field)}
        self._delta_powers: list[int] | None = None
        self._root_matrix: np.ndarray | None = None

    # -- factors -------------------------------------------------------------

    def minimal_polynomial(self, coset: Iterable[int]) -> Poly:
        """prod_{i in coset} (x - delta^i), coefficients descended to F_q."""
        coset = frozenset(coset)
        key = min(coset)
        if key in self._minpolys and self.cosets[self._coset_of[key]] == coset:
            return self._minpolys[key]
        two_n = 2 * self.n
        if any((i * self.field.order) % two_n not in coset for i in coset):
            raise ConsistencyError(f"{sorted(coset)} is not a q-cyclotomic coset mod {two_n}")
        E = self.ext
        prod = [1]
        for i in sorted(coset):
            root = E.pow(self.delta, i)
            nxt = [0] * (len(prod) + 1)
            for j, c in enumerate(prod):
                nxt[j] = E.sub(nxt[j], E.mul(c, root))
                nxt[j + 1] = E.add(nxt[j + 1], c)
            prod = nxt
        try:
            coeffs = [self.emb.descend(c) for c in prod]
        except DomainError:
            raise ConsistencyError("minimal polynomial does not descend to the base field") from None
        poly = Poly(self.field, coeffs)
        self._minpolys[key] = poly
        return poly

    def _split_into_cosets(self, T: Iterable[int]) -> list[frozenset[int]]:
        T = frozenset(T)
        used: list[frozenset[int]] = []
        remaining = set(T)
        while remaining:
            i = min(remaining)
            coset = self.cosets[self._coset_of.get(i, -1)] if i in self._coset_of else None
            if coset is None or not coset <= T:
                raise ConsistencyError(f"defining set is not a union of q-cyclotomic cosets: {sorted(T)}")
            used.append(coset)
            remaining -= coset
        return used

    def generator(self, T: Iterable[int]) -> Poly:
        """Monic generator polynomial with defining set T (a union of cosets)."""
        T = frozenset(T)
        cached = self._generators.get(T)
        if cached is not None:
            return cached
        cosets = self._split_into_cosets(T)
        rest = T - cosets[0]
        out = self.minimal_polynomial(cosets[0]) * self.generator(rest)
        self._generators[T] = out
        return out

    def idempotent(self, T: Iterable[int]) -> Poly:
        """The idempotent generator of the code with defining set T.

        Computed from the Bezout identity u*g + v*h = 1 with h = (x^n+1)/g;
        the result e = u*g satisfies e(delta^i) = 0 on T and 1 off T.
        """
        T = frozenset(T)
        if not T:
            return Poly.one(self.field)
        if T == frozenset(self.odds):
            return Poly.zero(self.field)
        g = self.generator(T)
        h = self.generator(frozenset(self.odds) - T)  # (x^n + 1)/g
        one, u, _ = poly_xgcd(g, h)
        if one != Poly.one(self.field):
            raise ConsistencyError("generator and cogenerator are not coprime")
        return nmod(u * g, self.n)

    # -- evaluation at the roots of x^n + 1 -----------------------------------

    def _powers(self) -> list[int]:
        if self._delta_powers is None:
            E, out, cur = self.ext, [1], 1
            for _ in range(2 * self.n - 1):
                cur = E.mul(cur, self.delta)
                out.append(cur)
            self._delta_powers = out
        return self._delta_powers

    def root_values(self, poly: Poly) -> dict[int, int]:
        """{i: poly(delta^i)} over all odd i; values are extension elements."""
        poly = nmod(poly, self.n)
        E, two_n = self.ext, 2 * self.n
        powers = self._powers()
        if E.order <= gf.LOG_TABLE_LIMIT:
            if self._root_matrix is None:
                expo = (np.array(self.odds)[:, None] * np.arange(self.n)[None, :]) % two_n
                self._root_matrix = np.array(powers, dtype=np.int64)[expo]
            ce = np.zeros(self.n, dtype=np.int64)
            for j, c in enumerate(poly.coeffs):
                ce[j] = self.emb.map(c)
            vals = E.vsum(E.vmul(self._root_matrix, ce[None, :]), axis=1)
            return {i: int(v) for i, v in zip(self.odds, vals)}
        out = {}
        for i in self.odds:
            acc = 0
            for j, c in enumerate(poly.coeffs):
                if c:
                    acc = E.add(acc, E.mul(self.emb.map(c), powers[(i * j) % two_n]))
            out[i] = acc
        return out

    def defining_set(self, idempotent: Poly) -> frozenset[int]:
        """Zeros of an idempotent among the delta^i; checks the 0/1 dichotomy."""
        vals = self.root_values(idempotent)
        bad = [i for i, v in vals.items() if v not in (0, 1)]
        if bad:
            raise ConsistencyError(f"polynomial is not an idempotent: value at delta^{bad[0]} is neither 0 nor 1")
        return frozenset(i for i, v in vals.items() if v == 0)


@lru_cache(maxsize=None)
def _ring_cached(p: int, deg: int, n: int) -> NegacyclicRing:
    return NegacyclicRing(gf.extension_field(p, deg), n)


def negacyclic_ring(field: gf.Field, n: int) -> NegacyclicRing:
    return _ring_cached(field.p, field.deg, n)


def minimal_polynomial(coset: Iterable[int], field: gf.Field, n: int) -> Poly:
    return negacyclic_ring(field, n).minimal_polynomial(coset)


def idempotent_from_defining_set(T: DefiningSet, field: gf.Field) -> Poly:
    if not T.closed_under(field.order):
        raise ConsistencyError("defining set is not closed under multiplication by q")
    return negacyclic_ring(field, T.n).idempotent(T.elems)
