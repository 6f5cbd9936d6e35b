"""q-cyclotomic cosets on the odd residues mod 2n and duadic splittings.

A splitting partitions the odd residues into A, B, X with a multiplier
mu_s swapping A and B and fixing X.  Type I has X empty; Type II has
X = {n/2, 3n/2} (which forces n = 2 mod 4).  The search enumerates every
unit s mod 2n in ascending order and, for each, walks candidate coset
bipartitions in binary-counter order, so the first splitting reported is
the same on every run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .errors import BudgetError, ParameterError

TYPE_I = "I"
TYPE_II = "II"

MAX_BIPARTITION_COSETS = 20  # 2^20 subset cap for the bipartition walk


def odd_residues(n: int) -> tuple[int, ...]:
    return tuple(range(1, 2 * n, 2))


@dataclass(frozen=True)
class CosetTable:
    """The q-cyclotomic cosets partitioning the odd residues mod 2n."""

    q: int
    n: int
    cosets: tuple[frozenset[int], ...]

    def coset_of(self, a: int) -> frozenset[int]:
        for cs in self.cosets:
            if a in cs:
                return cs
        raise ParameterError(f"{a} is not an odd residue mod {2 * self.n}")


def cyclotomic_cosets(q: int, n: int) -> CosetTable:
    """Orbits of multiplication by q on the odd residues mod 2n."""
    if n < 2 or n % 2:
        raise ParameterError(f"n = {n} must be even and >= 2")
    if q % 2 == 0:
        raise ParameterError("q must be odd")
    if gcd(n, q) != 1:
        raise ParameterError(f"gcd(n, q) = {gcd(n, q)} must be 1")
    two_n = 2 * n
    seen: set[int] = set()
    cosets: list[frozenset[int]] = []
    for a in range(1, two_n, 2):
        if a in seen:
            continue
        orbit, x = [], a
        while x not in orbit:
            orbit.append(x)
            x = (x * q) % two_n
        cs = frozenset(orbit)
        seen |= cs
        cosets.append(cs)
    return CosetTable(q, n, tuple(cosets))


def multiplier_image(S: Iterable[int], s: int, n: int) -> frozenset[int]:
    two_n = 2 * n
    return frozenset((s * i) % two_n for i in S)


@dataclass(frozen=True)
class Splitting:
    """A partition O_2n = A | B | X with mu_s(A) = B, mu_s(B) = A, mu_s(X) = X."""

    q: int
    n: int
    s: int
    kind: str
    A: frozenset[int] = field(repr=False)
    B: frozenset[int] = field(repr=False)
    X: frozenset[int] = field(repr=False)

    def __post_init__(self):
        n, two_n = self.n, 2 * self.n
        odds = set(odd_residues(n))
        if self.A | self.B | self.X != odds or (self.A & self.B) or (self.A & self.X) or (self.B & self.X):
            raise ParameterError("A, B, X must partition the odd residues")
        if multiplier_image(self.A, self.s, n) != self.B or multiplier_image(self.X, self.s, n) != self.X:
            raise ParameterError(f"mu_{self.s} does not give this splitting")
        if self.kind == TYPE_I and self.X:
            raise ParameterError("Type I requires X empty")
        if self.kind == TYPE_II and self.X != {n // 2, 3 * n // 2}:
            raise ParameterError("Type II requires X = {n/2, 3n/2}")

    @property
    def mu_minus1_class(self) -> str:
        """How mu_{-1} interacts with the halves: 'swaps', 'fixes' or 'mixed'."""
        img = multiplier_image(self.A, 2 * self.n - 1, self.n)
        if img == self.B:
            return "swaps"
        if img == self.A:
            return "fixes"
        return "mixed"

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "kind": self.kind,
            "s": self.s,
            "A": sorted(self.A),
            "B": sorted(self.B),
            "X": sorted(self.X),
        }


def find_splittings(
    q: int,
    n: int,
    kind: str,
    multiplier: int | None = None,
    mu_minus1: str | None = None,
    max_count: int | None = None,
) -> list[Splitting]:
    """All splittings of the requested kind, in canonical (s, partition) order.

    `multiplier` restricts the search to one s (values are taken mod 2n, so
    s = -1 means 2n - 1).  `mu_minus1` filters by how mu_{-1} acts on the
    halves ('swaps' or 'fixes').  A <-> B symmetry is removed by requiring
    min(A) < min(B).  An empty result is valid and means no splitting exists.
    """
    if kind not in (TYPE_I, TYPE_II):
        raise ParameterError(f"unknown splitting kind {kind!r}")
    table = cyclotomic_cosets(q, n)
    two_n = 2 * n
    if kind == TYPE_II:
        if (n // 2) % 2 == 0:
            return []  # n/2 even: n/2 is not an odd residue, no valid X
        x_set = frozenset({n // 2, 3 * n // 2})
        x_cosets = [cs for cs in table.cosets if cs & x_set]
        if frozenset().union(*x_cosets) != x_set:
            return []  # the coset of n/2 spills outside {n/2, 3n/2}
    else:
        x_set = frozenset()
        x_cosets = []
    free = [cs for cs in table.cosets if not (cs & x_set)]
    if not free:
        return []  # would force A = B = empty; not a genuine bipartition
    if len(free) > MAX_BIPARTITION_COSETS:
        raise BudgetError(f"{len(free)} cosets exceed the 2^{MAX_BIPARTITION_COSETS} bipartition cap")
    index_of = {min(cs): i for i, cs in enumerate(free)}
    reps = [min(cs) for cs in free]

    if multiplier is not None:
        mult = multiplier % two_n
        if gcd(mult, two_n) != 1:
            raise ParameterError(f"multiplier {multiplier} is not coprime to {two_n}")
        s_values = [mult]
    else:
        s_values = [s for s in range(1, two_n) if gcd(s, two_n) == 1]

    out: list[Splitting] = []
    c = len(free)
    full = (1 << c) - 1
    for s in s_values:
        # the action of mu_s on coset indices; skip s unless it fixes X setwise
        if multiplier_image(x_set, s, n) != x_set:
            continue
        perm = []
        ok = True
        for cs in free:
            img_rep = (s * min(cs)) % two_n
            target = index_of.get(min(table.coset_of(img_rep)))
            if target is None:
                ok = False
                break
            perm.append(target)
        if not ok:
            continue
        for mask in range(1, full):
            img = 0
            m = mask
            while m:
                low = m & -m
                img |= 1 << perm[low.bit_length() - 1]
                m ^= low
            if img != full ^ mask:
                continue
            # canonical representative: the half containing the smallest residue
            a_min = min(reps[i] for i in range(c) if mask >> i & 1)
            b_min = min(reps[i] for i in range(c) if not mask >> i & 1)
            if a_min > b_min:
                continue
            A = frozenset().union(*(free[i] for i in range(c) if mask >> i & 1))
            B = frozenset().union(*(free[i] for i in range(c) if not mask >> i & 1))
            sp = Splitting(q, n, s, kind, A, B, x_set)
            if mu_minus1 is not None and sp.mu_minus1_class != mu_minus1:
                continue
            out.append(sp)
            if max_count is not None and len(out) >= max_count:
                return out
    return out


def self_dual_exists(q: int, n: int) -> bool:
    """Existence of a self-dual negacyclic code of length n over F_q.

    Writing n = 2^a * n' with n' odd, such a code exists iff
    q is not congruent to -1 mod 2^(a+1).
    """
    if n % 2:
        raise ParameterError("n must be even")
    a, rest = 0, n
    while rest % 2 == 0:
        a += 1
        rest //= 2
    mod = 1 << (a + 1)
    return q % mod != mod - 1
