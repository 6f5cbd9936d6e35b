"""The non-chain ring R = F_q[u]/<f(u)> with f a product of m distinct linear factors.

R is isomorphic to m copies of F_q through the orthogonal idempotents
eta_i (the Lagrange interpolation kernels at the roots alpha_i).  Elements
carry their evaluation (CRT) form as the primary representation; the
u-coefficient form is recovered as sum eta_i * a_i on demand.  Polynomials
over R of degree < n are stored componentwise, so every operation in
R[x]/<x^n + 1> reduces to m independent negacyclic operations over F_q.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import gf
from .errors import ConsistencyError, ParameterError
from .negapoly import Poly, apply_multiplier, nmod, nmul


class NonChainRing:
    """F_q[u]/<(u - a_1)...(u - a_m)> for distinct roots a_i."""

    def __init__(self, field: gf.Field, roots: Sequence[int]):
        roots = tuple(roots)
        if len(roots) < 2:
            raise ParameterError("the ring needs m >= 2 roots")
        if len(set(roots)) != len(roots):
            raise ParameterError("f(u) must split into distinct linear factors")
        for r in roots:
            if not 0 <= r < field.order:
                raise ParameterError(f"root {r} is not a field element")
        self.field = field
        self.roots = roots
        self.m = len(roots)
        f = Poly.one(field)
        for r in roots:
            f = f * Poly(field, [field.neg(r), 1])
        self.f = f
        self.etas = tuple(self._eta(i) for i in range(self.m))
        self._verify()

    def _eta(self, i: int) -> Poly:
        F = self.field
        num = Poly.one(F)
        denom = 1
        for j, r in enumerate(self.roots):
            if j == i:
                continue
            num = num * Poly(F, [F.neg(r), 1])
            denom = F.mul(denom, F.sub(self.roots[i], r))
        return num.scale(F.inv(denom))

    def _verify(self) -> None:
        F = self.field
        total = Poly.zero(F)
        for i, eta in enumerate(self.etas):
            total = total + eta
            for j, r in enumerate(self.roots):
                expected = 1 if i == j else 0
                if eta.evaluate(r) != expected:
                    raise ConsistencyError("eta evaluation table is wrong")
            if self._mod_f(eta * eta) != eta:
                raise ConsistencyError("eta_i^2 != eta_i")
            for j in range(i + 1, self.m):
                if not self._mod_f(eta * self.etas[j]).is_zero():
                    raise ConsistencyError("eta_i * eta_j != 0")
        if total != Poly.one(F):
            raise ConsistencyError("sum of etas != 1")

    def _mod_f(self, p: Poly) -> Poly:
        from .negapoly import poly_divmod
        return poly_divmod(p, self.f)[1]

    def __repr__(self) -> str:
        return f"NonChainRing({self.field!r}, roots={list(self.roots)})"

    # -- elements -------------------------------------------------------------

    def element(self, crt: Sequence[int]) -> "RingElement":
        return RingElement(self, tuple(crt))

    def from_u_coeffs(self, coeffs: Sequence[int]) -> "RingElement":
        """Element given by its u-coefficient vector (degree < m)."""
        p = Poly(self.field, coeffs)
        if p.degree >= self.m:
            p = self._mod_f(p)
        return RingElement(self, tuple(p.evaluate(r) for r in self.roots))

    def embed_scalar(self, a: int) -> "RingElement":
        return RingElement(self, (a,) * self.m)

    def to_dict(self) -> dict:
        return {
            "field": self.field.to_dict(),
            "roots": [list(self.field.coeffs(r)) for r in self.roots],
            "f": self.f.to_coeff_rows(),
            "etas": [eta.to_coeff_rows() for eta in self.etas],
        }


class RingElement:
    """An element of R in evaluation form: crt[i] = r(alpha_i)."""

    __slots__ = ("ring", "crt")

    def __init__(self, ring: NonChainRing, crt: tuple[int, ...]):
        if len(crt) != ring.m:
            raise ParameterError("evaluation vector has the wrong length")
        self.ring = ring
        self.crt = crt

    @property
    def u_coeffs(self) -> tuple[int, ...]:
        F = self.ring.field
        acc = Poly.zero(F)
        for eta, a in zip(self.ring.etas, self.crt):
            acc = acc + eta.scale(a)
        return acc.coeffs + (0,) * (self.ring.m - len(acc.coeffs))

    def _check(self, other: "RingElement") -> None:
        if self.ring is not other.ring:
            raise ParameterError("operands live in different rings")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        F = self.ring.field
        return RingElement(self.ring, tuple(F.add(a, b) for a, b in zip(self.crt, other.crt)))

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        F = self.ring.field
        return RingElement(self.ring, tuple(F.mul(a, b) for a, b in zip(self.crt, other.crt)))

    def __neg__(self) -> "RingElement":
        F = self.ring.field
        return RingElement(self.ring, tuple(F.neg(a) for a in self.crt))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingElement) and self.ring is other.ring and self.crt == other.crt

    def __hash__(self) -> int:
        return hash((id(self.ring), self.crt))

    def __repr__(self) -> str:
        return f"RingElement(crt={list(self.crt)})"


def make_ring(field: gf.Field, roots: Sequence[int]) -> NonChainRing:
    return NonChainRing(field, roots)


def crt_decompose(r: RingElement) -> tuple[int, ...]:
    """The evaluation vector (r(alpha_1), ..., r(alpha_m))."""
    return r.crt


def crt_compose(ring: NonChainRing, values: Sequence[int]) -> RingElement:
    """sum eta_i * a_i, the inverse of crt_decompose."""
    return ring.element(values)


class RingPoly:
    """A polynomial of degree < n over R, stored as m component polynomials."""

    __slots__ = ("ring", "n", "components")

    def __init__(self, ring: NonChainRing, n: int, components: Sequence[Poly]):
        if len(components) != ring.m:
            raise ParameterError("need one component polynomial per ring factor")
        self.ring = ring
        self.n = n
        self.components = tuple(nmod(c, n) for c in components)

    @classmethod
    def zero(cls, ring: NonChainRing, n: int) -> "RingPoly":
        return cls(ring, n, [Poly.zero(ring.field)] * ring.m)

    @classmethod
    def one(cls, ring: NonChainRing, n: int) -> "RingPoly":
        return cls(ring, n, [Poly.one(ring.field)] * ring.m)

    @classmethod
    def lift(cls, ring: NonChainRing, n: int, p: Poly) -> "RingPoly":
        """The scalar lift of an F_q[x] polynomial (same in every component)."""
        return cls(ring, n, [p] * ring.m)

    def _check(self, other: "RingPoly") -> None:
        if self.ring is not other.ring or self.n != other.n:
            raise ParameterError("operands live in different rings")

    def __add__(self, other: "RingPoly") -> "RingPoly":
        self._check(other)
        return RingPoly(self.ring, self.n, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "RingPoly") -> "RingPoly":
        self._check(other)
        return RingPoly(self.ring, self.n, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "RingPoly":
        return RingPoly(self.ring, self.n, [-a for a in self.components])

    def __mul__(self, other: "RingPoly") -> "RingPoly":
        self._check(other)
        return RingPoly(self.ring, self.n, [nmul(a, b, self.n) for a, b in zip(self.components, other.components)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingPoly)
            and self.ring is other.ring
            and self.n == other.n
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash((id(self.ring), self.n, self.components))

    def __repr__(self) -> str:
        return f"RingPoly(n={self.n}, components={list(self.components)})"

    def is_idempotent(self) -> bool:
        return all(nmul(c, c, self.n) == c for c in self.components)

    def apply_multiplier(self, s: int) -> "RingPoly":
        return RingPoly(self.ring, self.n, [apply_multiplier(c, s, self.n) for c in self.components])

    def coefficient(self, j: int) -> RingElement:
        crt = tuple(c.coeffs[j] if j <= c.degree else 0 for c in self.components)
        return RingElement(self.ring, crt)

    def coefficients(self) -> list[RingElement]:
        return [self.coefficient(j) for j in range(self.n)]

    def u_coefficient_rows(self) -> list[list[list[int]]]:
        """Serialized form: per x-power, the u-coefficient coordinate rows."""
        F = self.ring.field
        return [[list(F.coeffs(c)) for c in self.coefficient(j).u_coeffs] for j in range(self.n)]


def rpoly_mul(a: RingPoly, b: RingPoly, n: int) -> RingPoly:
    """Product in R[x]/<x^n + 1>: the CRT recombination of componentwise products."""
    if a.n != n or b.n != n:
        raise ParameterError("length mismatch")
    return a * b


def ring_idempotent_from(ring: NonChainRing, n: int, idempotents: Sequence[Poly]) -> RingPoly:
    """Lift a tuple of F_q[x] idempotents to the idempotent sum eta_i * E_i."""
    out = RingPoly(ring, n, idempotents)
    if not out.is_idempotent():
        raise ConsistencyError("components are not idempotent")
    return out
