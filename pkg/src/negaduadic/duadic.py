"""Duadic negacyclic codes over F_q and over the non-chain ring R.

Type I splittings give a complementary idempotent pair (f1, f2); Type II
splittings give even-like idempotents e1, e2, odd-like idempotents d1, d2
and the dimension-2 idempotent pbar = (2/n)(1 - x^2 + ... + x^(n-2)).
Family idempotents over R place one member of the pair on the components
selected by a subset of {1..m} and the other member elsewhere.  Extended
codes adjoin two coordinates carrying gamma-weighted alternating sums,
where gamma solves 2 + gamma^2 n = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import gf
from .errors import ConsistencyError, ParameterError
from .negapoly import (
    NegacyclicRing,
    Poly,
    alternating_sums,
    apply_multiplier,
    bch_bound,
    dual_generator,
    negacyclic_ring,
    nmul,
)
from .ring import NonChainRing, RingElement, RingPoly
from .splittings import TYPE_I, TYPE_II, Splitting


@dataclass(frozen=True)
class TypeIPair:
    """Idempotent generators of the two Type I duadic negacyclic codes."""

    f1: Poly
    f2: Poly
    splitting: Splitting


@dataclass(frozen=True)
class TypeIIQuintet:
    """Even-like (e1, e2), odd-like (d1, d2) idempotents and pbar, for Type II."""

    e1: Poly
    e2: Poly
    d1: Poly
    d2: Poly
    pbar: Poly
    splitting: Splitting


def p_poly(field: gf.Field, n: int) -> Poly:
    """(x^n + 1)/(x^2 + 1) = 1 - x^2 + x^4 - ... + x^(n-2)."""
    coeffs = [0] * (n - 1)
    for j in range(0, n, 2):
        coeffs[j] = 1 if (j // 2) % 2 == 0 else field.neg(1)
    return Poly(field, coeffs)


def pbar_poly(field: gf.Field, n: int) -> Poly:
    """(2/n) * p(x): the idempotent generator of the dimension-2 code <p(x)>."""
    scale = field.div(field.from_int(2), field.from_int(n))
    return p_poly(field, n).scale(scale)


def typeI_pair(split: Splitting, field: gf.Field) -> TypeIPair:
    if split.kind != TYPE_I:
        raise ParameterError("a Type I splitting is required")
    ctx = negacyclic_ring(field, split.n)
    f1, f2 = ctx.idempotent(split.A), ctx.idempotent(split.B)
    n, one = split.n, Poly.one(field)
    if not nmul(f1, f2, n).is_zero() or f1 + f2 != one:
        raise ConsistencyError("f1 f2 = 0 or f1 + f2 = 1 failed")
    if apply_multiplier(f1, split.s, n) != f2 or apply_multiplier(f2, split.s, n) != f1:
        raise ConsistencyError("mu_s does not swap f1 and f2")
    return TypeIPair(f1, f2, split)


def typeII_quintet(split: Splitting, field: gf.Field) -> TypeIIQuintet:
    if split.kind != TYPE_II:
        raise ParameterError("a Type II splitting is required")
    n = split.n
    if (n // 2) % 2 == 0:
        raise ParameterError("Type II needs n = 2 mod 4 (n/2 must be odd)")
    ctx = negacyclic_ring(field, n)
    e1 = ctx.idempotent(split.A | split.X)
    e2 = ctx.idempotent(split.B | split.X)
    d1 = ctx.idempotent(split.A)
    d2 = ctx.idempotent(split.B)
    pbar = pbar_poly(field, n)
    one = Poly.one(field)
    checks = [
        d1 == one - e2,
        d2 == one - e1,
        nmul(d1, e2, n).is_zero(),
        nmul(d2, e1, n).is_zero(),
        nmul(e1, e2, n).is_zero(),
        nmul(d1, d2, n) == pbar,
        e1 + e2 == one - pbar,
        d1 == e1 + pbar,
        d2 == e2 + pbar,
        d1 + d2 == one + pbar,
        nmul(pbar, pbar, n) == pbar,
    ]
    if not all(checks):
        raise ConsistencyError("Type II idempotent identities failed")
    return TypeIIQuintet(e1, e2, d1, d2, pbar, split)


_FAMILY_PAIRS = {
    "F": ("f1", "f2"),
    "F'": ("f2", "f1"),
    "D": ("d1", "d2"),
    "D'": ("d2", "d1"),
    "E": ("e1", "e2"),
    "E'": ("e2", "e1"),
}


def family_idempotent(
    subset: Iterable[int],
    kind: str,
    ring: NonChainRing,
    base: TypeIPair | TypeIIQuintet,
    n: int,
) -> RingPoly:
    """The idempotent carrying the first pair member on the chosen components.

    For subset S this is (sum_{i in S} eta_i) x1 + (1 - sum_{i in S} eta_i) x2
    where (x1, x2) is the pair selected by `kind`; in evaluation form that is
    simply x1 on the components in S and x2 elsewhere.
    """
    if kind not in _FAMILY_PAIRS:
        raise ParameterError(f"unknown family kind {kind!r}")
    first_name, second_name = _FAMILY_PAIRS[kind]
    if kind in ("F", "F'"):
        if not isinstance(base, TypeIPair):
            raise ParameterError(f"kind {kind} needs a Type I pair")
    elif not isinstance(base, TypeIIQuintet):
        raise ParameterError(f"kind {kind} needs a Type II quintet")
    first, second = getattr(base, first_name), getattr(base, second_name)
    subset = frozenset(subset)
    if not subset or not subset <= set(range(1, ring.m + 1)):
        raise ParameterError(f"subset must be a nonempty subset of 1..{ring.m}")
    comps = [first if i in subset else second for i in range(1, ring.m + 1)]
    return RingPoly(ring, n, comps)


@dataclass(frozen=True)
class RingCode:
    """A negacyclic code over R: m negacyclic component codes glued by the etas."""

    ring: NonChainRing
    n: int
    idempotent: RingPoly
    component_generators: tuple[Poly, ...]
    component_defining_sets: tuple[frozenset[int], ...]
    size_exponent: int

    @property
    def context(self) -> NegacyclicRing:
        return negacyclic_ring(self.ring.field, self.n)

    def dual(self) -> "RingCode":
        """Component duals: reciprocal cogenerators and 1 - mu_{-1}(e_i)."""
        n = self.n
        gens = tuple(dual_generator(g, n) for g in self.component_generators)
        one = Poly.one(self.ring.field)
        idem = RingPoly(
            self.ring, n,
            [one - apply_multiplier(e, -1, n) for e in self.idempotent.components],
        )
        sets = tuple(
            frozenset(self.context.odds) - frozenset((2 * n - 1) * i % (2 * n) for i in T)
            for T in self.component_defining_sets
        )
        return RingCode(self.ring, n, idem, gens, sets, self.ring.m * n - self.size_exponent)

    def mu_image(self, s: int) -> "RingCode":
        return code_from_idempotent(self.idempotent.apply_multiplier(s))

    def contains_pbar(self) -> bool:
        pb = RingPoly.lift(self.ring, self.n, pbar_poly(self.ring.field, self.n))
        return self.idempotent * pb == pb

    def bch_lower_bound(self) -> int:
        return min(bch_bound(T, self.n) for T in self.component_defining_sets)

    def to_dict(self, subset: Sequence[int] | None = None, kind: str | None = None) -> dict:
        out = {
            "ring": self.ring.to_dict(),
            "n": self.n,
            "idempotent": self.idempotent.u_coefficient_rows(),
            "component_generators": [g.to_coeff_rows() for g in self.component_generators],
            "size_exponent": self.size_exponent,
        }
        if subset is not None:
            out["subset"] = sorted(subset)
        if kind is not None:
            out["kind"] = kind
        return out


def code_from_idempotent(E: RingPoly) -> RingCode:
    """Read off component defining sets and generators from a ring idempotent."""
    if not E.is_idempotent():
        raise ConsistencyError("generator is not idempotent in R_n")
    ctx = negacyclic_ring(E.ring.field, E.n)
    sets, gens = [], []
    for comp in E.components:
        T = ctx.defining_set(comp)
        sets.append(T)
        gens.append(ctx.generator(T))
    exponent = E.ring.m * E.n - sum(g.degree for g in gens)
    return RingCode(E.ring, E.n, E, tuple(gens), tuple(sets), exponent)


def solve_gamma(field: gf.Field, n: int) -> int | None:
    """Smallest gamma (packed order) with 2 + gamma^2 n = 0, if one exists."""
    if n % field.p == 0:
        raise ParameterError("n must be coprime to q")
    two, nn = field.from_int(2), field.from_int(n)
    for g in range(1, field.order):
        if field.add(two, field.mul(field.mul(g, g), nn)) == 0:
            return g
    return None


@dataclass(frozen=True)
class ExtendedCode:
    """Length n+2 extension of an odd-like code over R (coordinates inf, inf')."""

    ring: NonChainRing
    n: int
    gamma: int
    odd_code: RingCode
    even_code: RingCode

    @property
    def length(self) -> int:
        return self.n + 2

    @property
    def size_exponent(self) -> int:
        return self.even_code.size_exponent + 2 * self.ring.m

    def extension_values(self, coeffs: Sequence[int]) -> tuple[int, int]:
        """(c_inf, c_inf') of an F_q codeword row: gamma-weighted alternating sums."""
        F = self.ring.field
        ev, od = alternating_sums(F, coeffs)
        return F.mul(self.gamma, ev), F.mul(self.gamma, od)

    def generator_rows(self) -> list[list[RingElement]]:
        """Generator rows over R: shifted even-like rows padded (0, 0), then
        the rows for p(x) and x p(x) carrying n*gamma/2 at inf and inf'."""
        F, ringR, n = self.ring.field, self.ring, self.n
        zero = ringR.embed_scalar(0)
        rows: list[list[RingElement]] = []
        k = max(n - gen.degree for gen in self.even_code.component_generators)
        cur = RingPoly(ringR, n, list(self.even_code.component_generators))
        xpoly = RingPoly(ringR, n, [Poly.monomial(F, 1)] * ringR.m)
        for _ in range(k):
            rows.append(cur.coefficients() + [zero, zero])
            cur = cur * xpoly
        for base in (p_poly(F, n), Poly.monomial(F, 1) * p_poly(F, n)):
            coeffs = [base.coeffs[j] if j <= base.degree else 0 for j in range(n)]
            ev, od = self.extension_values(coeffs)
            rows.append([ringR.embed_scalar(c) for c in coeffs] + [ringR.embed_scalar(ev), ringR.embed_scalar(od)])
        return rows

    def mu_image(self, s: int) -> "ExtendedCode":
        return extend_code(self.odd_code.mu_image(s), self.gamma)

    def bch_lower_bound(self) -> int:
        return self.odd_code.bch_lower_bound()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "length": self.length,
            "gamma": list(self.ring.field.coeffs(self.gamma)),
            "size_exponent": self.size_exponent,
            "ring": self.ring.to_dict(),
            "odd_code": self.odd_code.to_dict(),
            "even_code": self.even_code.to_dict(),
        }


def extend_code(Q: RingCode, gamma: int) -> ExtendedCode:
    """Theorem-9 style extension of an odd-like code Q (one containing <pbar>)."""
    F, n = Q.ring.field, Q.n
    lhs = F.add(F.from_int(2), F.mul(F.mul(gamma, gamma), F.from_int(n)))
    if lhs != 0:
        raise ParameterError("gamma does not satisfy 2 + gamma^2 n = 0")
    if not Q.contains_pbar():
        raise ParameterError("extension requires an odd-like code (one containing <pbar>)")
    pb = RingPoly.lift(Q.ring, n, pbar_poly(F, n))
    even_idem = RingPoly(
        Q.ring, n, [d - pb_c for d, pb_c in zip(Q.idempotent.components, pb.components)]
    )
    even_code = code_from_idempotent(even_idem)
    return ExtendedCode(Q.ring, n, gamma, Q, even_code)


def count_inequivalent(m: int) -> int:
    """Number of inequivalent duadic negacyclic code families over R."""
    if m < 2:
        raise ParameterError("m must be at least 2")
    return (1 << (m - 1)) - 1


def inequivalent_family_count(
    ring: NonChainRing,
    n: int,
    base: TypeIPair | TypeIIQuintet,
    kind: str,
) -> int:
    """Brute-force orbit count of the family idempotents over all nonempty
    proper subsets, identifying S with its mu_s image and its complement."""
    if kind not in ("F", "D", "E"):
        raise ParameterError("count families of kind F, D or E")
    m = ring.m
    s = base.splitting.s
    full = frozenset(range(1, m + 1))
    subsets = []
    for mask in range(1, (1 << m) - 1):
        subsets.append(frozenset(i + 1 for i in range(m) if mask >> i & 1))
    idems = {S: family_idempotent(S, kind, ring, base, n) for S in subsets}
    by_poly = {idems[S]: S for S in subsets}
    parent = {S: S for S in subsets}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for S in subsets:
        union(S, full - S)
        mu = idems[S].apply_multiplier(s)
        if mu not in by_poly:
            raise ConsistencyError("mu_s image of a family idempotent is not a family idempotent")
        union(S, by_poly[mu])
    return len({find(S) for S in subsets})
