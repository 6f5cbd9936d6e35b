"""Finite fields F_q for odd prime powers q = p^s.

Elements are packed integers in [0, p^s): the base-p digits of the packed
value are the coordinates in the power basis of the field modulus, lowest
power first.  This keeps elements hashable, cheap to compare and directly
usable as numpy array entries.

Three implementation tiers, chosen by field size:

* order <= SMALL_TABLE_LIMIT: full q x q add/mul tables (code fields);
* order <= LOG_TABLE_LIMIT: log/exp tables for multiplication, digit
  arithmetic for addition (evaluation fields for root-of-unity work);
* larger: raw polynomial arithmetic modulo the field modulus (only very
  large evaluation extensions end up here).
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import factorint, isprime

from .errors import ConsistencyError, DomainError, ParameterError

SMALL_TABLE_LIMIT = 1 << 8  # full q x q scalar tables, for the small code fields
LOG_TABLE_LIMIT = 1 << 20


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(n)))


# ---------------------------------------------------------------------------
# raw coefficient arithmetic over F_p (tuples, lowest degree first)
# ---------------------------------------------------------------------------

def _raw_mul(a: Sequence[int], b: Sequence[int], p: int, red: Sequence[Sequence[int]]) -> tuple[int, ...]:
    d = len(a)
    conv = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] += ai * bj
    for j in range(2 * d - 2, d - 1, -1):
        c = conv[j] % p
        if c:
            row = red[j - d]
            for i in range(d):
                conv[i] += c * row[i]
        conv[j] = 0
    return tuple(c % p for c in conv[:d])


def _raw_pow(a: Sequence[int], e: int, p: int, red: Sequence[Sequence[int]], one: tuple[int, ...]) -> tuple[int, ...]:
    result = one
    base = tuple(a)
    while e:
        if e & 1:
            result = _raw_mul(result, base, p, red)
        base = _raw_mul(base, base, p, red)
        e >>= 1
    return result


def _reduction_rows(modulus: Sequence[int], p: int) -> list[tuple[int, ...]]:
    """Rows giving x^(d+j) mod modulus for j = 0 .. d-2."""
    d = len(modulus) - 1
    rows = []
    cur = [(-modulus[i]) % p for i in range(d)]  # x^d
    rows.append(tuple(cur))
    for _ in range(d - 2):
        carry = cur[d - 1]
        cur = [0] + cur[: d - 1]
        if carry:
            for i in range(d):
                cur[i] = (cur[i] + carry * rows[0][i]) % p
        rows.append(tuple(cur))
    return rows


def _poly_is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p via Frobenius powers."""
    d = len(coeffs) - 1
    if d == 1:
        return True
    red = _reduction_rows(coeffs, p)
    one = tuple([1] + [0] * (d - 1))
    x = tuple([0, 1] + [0] * (d - 2))
    xq = _raw_pow(x, p ** d, p, red, one)
    if xq != x:
        return False
    for ell in _prime_factors(d):
        xe = _raw_pow(x, p ** (d // ell), p, red, one)
        diff = tuple((xe[i] - x[i]) % p for i in range(d))
        if _raw_gcd_nontrivial(diff, coeffs, p):
            return False
    return True


def _raw_gcd_nontrivial(a: Sequence[int], modulus: Sequence[int], p: int) -> bool:
    """True iff gcd(a, modulus) has positive degree (a given by its residue digits)."""
    f = [c % p for c in modulus]
    g = list(a)
    while any(g):
        while f and f[-1] == 0:
            f.pop()
        while g and g[-1] == 0:
            g.pop()
        if len(f) < len(g):
            f, g = g, f
        if not g:
            break
        inv_lead = pow(g[-1], p - 2, p)
        while len(f) >= len(g) and any(f):
            shift = len(f) - len(g)
            c = (f[-1] * inv_lead) % p
            for i in range(len(g)):
                f[shift + i] = (f[shift + i] - c * g[i]) % p
            while f and f[-1] == 0:
                f.pop()
        f, g = g, f
    while f and f[-1] == 0:
        f.pop()
    return len(f) > 1


def smallest_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of given degree over F_p.

    Candidates are ordered by the packed value of their non-leading
    coefficients (constant term least significant), so the choice is
    deterministic and recorded in output manifests.
    """
    if degree == 1:
        return (0, 1)
    for packed in range(p ** degree):
        coeffs = _unpack(packed, p, degree) + (1,)
        if coeffs[0] == 0:
            continue
        if _poly_is_irreducible(coeffs, p):
            return coeffs
    raise ParameterError(f"no irreducible polynomial of degree {degree} over F_{p}")


def _unpack(value: int, p: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        value, r = divmod(value, p)
        out.append(r)
    return tuple(out)


# ---------------------------------------------------------------------------
# the field class
# ---------------------------------------------------------------------------

class Field:
    """Arithmetic in F_{p^deg} on packed-integer elements."""

    def __init__(self, p: int, modulus: Sequence[int], generator: int | None = None):
        self.p = p
        self.modulus = tuple(c % p for c in modulus)
        self.deg = len(self.modulus) - 1
        self.order = p ** self.deg
        self._red = _reduction_rows(self.modulus, p) if self.deg > 1 else []
        self._one_raw = tuple([1] + [0] * (self.deg - 1))
        self._pow_vec = np.array([p ** i for i in range(self.deg)], dtype=np.int64)
        self._exp_list: list[int] | None = None
        self._log_list: list[int] | None = None
        self._exp_np: np.ndarray | None = None
        self._log_np: np.ndarray | None = None
        self._digits_np: np.ndarray | None = None
        self._add_tab: np.ndarray | None = None
        self._mul_tab: np.ndarray | None = None
        self._inv_tab: list[int] | None = None
        self._neg_np: np.ndarray | None = None
        self.generator = self._find_generator() if generator is None else generator
        if self.order <= LOG_TABLE_LIMIT:
            self._build_log_tables()
        if self.order <= SMALL_TABLE_LIMIT:
            self._build_small_tables()

    # -- representation ----------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.deg})" if self.deg > 1 else f"GF({self.p})"

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Base-p coordinates of a packed element, lowest power first."""
        return _unpack(a, self.p, self.deg)

    def from_coeffs(self, coords: Iterable[int]) -> int:
        coords = list(coords)
        if len(coords) > self.deg:
            raise ParameterError("coordinate vector longer than field degree")
        value = 0
        for c in reversed(coords):
            value = value * self.p + (c % self.p)
        return value

    def from_int(self, v: int) -> int:
        """The field element v * 1 (image of an integer)."""
        return v % self.p

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "s": self.deg,
            "modulus": list(self.modulus),
            "generator": list(self.coeffs(self.generator)),
        }

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.deg == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return int(self._add_tab[a, b])
        da, db, p = _unpack(a, self.p, self.deg), _unpack(b, self.p, self.deg), self.p
        return self.from_coeffs((x + y) % p for x, y in zip(da, db))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.deg == 1:
            return (-a) % self.p
        if self._neg_np is not None:
            return int(self._neg_np[a])
        return self.from_coeffs((-x) % self.p for x in _unpack(a, self.p, self.deg))

    def mul(self, a: int, b: int) -> int:
        if self.deg == 1:
            return (a * b) % self.p
        if self._mul_tab is not None:
            return int(self._mul_tab[a, b])
        if a == 0 or b == 0:
            return 0
        if self._exp_list is not None:
            return self._exp_list[(self._log_list[a] + self._log_list[b]) % (self.order - 1)]
        raw = _raw_mul(_unpack(a, self.p, self.deg), _unpack(b, self.p, self.deg), self.p, self._red)
        return self.from_coeffs(raw)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative inverse")
        if self.deg == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_tab is not None:
            return self._inv_tab[a]
        if self._exp_list is not None:
            return self._exp_list[(self.order - 1 - self._log_list[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.deg == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        if self._exp_list is not None:
            return self._exp_list[(self._log_list[a] * e) % (self.order - 1)]
        raw = _raw_pow(_unpack(a, self.p, self.deg), e, self.p, self._red, self._one_raw)
        return self.from_coeffs(raw)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        n = self.order - 1
        for ell in _prime_factors(n):
            while n % ell == 0 and self.pow(a, n // ell) == 1:
                n //= ell
        return n

    def is_primitive(self, a: int) -> bool:
        if a == 0:
            return False
        n = self.order - 1
        return all(self.pow(a, n // ell) != 1 for ell in _prime_factors(n))

    # -- vectorized arithmetic on numpy arrays of packed elements ------------

    def varray(self, values: Iterable[int]) -> np.ndarray:
        return np.array(list(values), dtype=np.int64)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.deg == 1:
            return (a + b) % self.p
        dig = self._digit_table()
        return (((dig[a] + dig[b]) % self.p) @ self._pow_vec).astype(np.int64)

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.deg == 1:
            return (-a) % self.p
        return self._neg_table()[a]

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.deg == 1:
            return (a * b) % self.p
        exp_np, log_np = self._log_np_tables()
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = exp_np[(log_np[a[nz]] + log_np[b[nz]]) % (self.order - 1)]
        return out

    def vscale(self, c: int, a: np.ndarray) -> np.ndarray:
        if self.deg == 1:
            return (c * a) % self.p
        return self.vmul(np.asarray(c, dtype=np.int64), a)

    def vsum(self, a: np.ndarray, axis: int | None = None) -> np.ndarray | int:
        if self.deg == 1:
            out = a.sum(axis=axis) % self.p
            return int(out) if axis is None else out
        dig = self._digit_table()[a]  # a.shape + (deg,)
        if axis is None:
            summed = dig.reshape(-1, self.deg).sum(axis=0) % self.p
            return int(summed @ self._pow_vec)
        summed = dig.sum(axis=axis if axis >= 0 else a.ndim + axis) % self.p
        return (summed @ self._pow_vec).astype(np.int64)

    # -- table construction ---------------------------------------------------

    def _digit_table(self) -> np.ndarray:
        if self._digits_np is None:
            if self.order > LOG_TABLE_LIMIT:
                raise DomainError(f"{self!r} too large for vectorized arithmetic")
            radix = self.p ** np.arange(self.deg, dtype=np.int64)
            self._digits_np = (np.arange(self.order, dtype=np.int64)[:, None] // radix) % self.p
        return self._digits_np

    def _neg_table(self) -> np.ndarray:
        if self._neg_np is None:
            dig = self._digit_table()
            self._neg_np = (((-dig) % self.p) @ self._pow_vec).astype(np.int64)
        return self._neg_np

    def _log_np_tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self._exp_np is None:
            raise DomainError(f"{self!r} too large for vectorized arithmetic")
        return self._exp_np, self._log_np

    def _build_log_tables(self) -> None:
        if self.deg == 1:
            return
        n = self.order - 1
        # multiplication by g^B is linear over F_p: march blocks with numpy
        block = 1 << 10
        dig = self._digit_table()
        exps = np.empty(n, dtype=np.int64)
        cur = self._one_raw
        first = min(block, n)
        vals = []
        for _ in range(first):
            vals.append(self.from_coeffs(cur))
            cur = _raw_mul(cur, _unpack(self.generator, self.p, self.deg), self.p, self._red)
        exps[:first] = vals
        if n > block:
            gb_raw = _raw_pow(_unpack(self.generator, self.p, self.deg), block, self.p, self._red, self._one_raw)
            mat = np.empty((self.deg, self.deg), dtype=np.int64)
            basis = self._one_raw
            for j in range(self.deg):
                col = _raw_mul(basis, gb_raw, self.p, self._red)
                mat[:, j] = col
                basis = tuple(1 if i == j + 1 else 0 for i in range(self.deg))
            pos = block
            prev = dig[exps[:block]].T  # deg x block
            while pos < n:
                take = min(block, n - pos)
                prev = (mat @ prev) % self.p
                exps[pos:pos + take] = (prev[:, :take].T @ self._pow_vec)
                pos += take
        logs = np.empty(self.order, dtype=np.int64)
        logs[exps] = np.arange(n, dtype=np.int64)
        logs[0] = 0  # never consulted for zero
        self._exp_np, self._log_np = exps, logs
        self._exp_list = exps.tolist()
        self._log_list = logs.tolist()

    def _build_small_tables(self) -> None:
        idx = np.arange(self.order, dtype=np.int64)
        if self.deg == 1:
            self._add_tab = (idx[:, None] + idx[None, :]) % self.p
            self._mul_tab = (idx[:, None] * idx[None, :]) % self.p
        else:
            self._add_tab = self.vadd(idx[:, None], idx[None, :])
            self._mul_tab = self.vmul(idx[:, None], idx[None, :])
        inv = [0] * self.order
        for a in range(1, self.order):
            inv[a] = self.inv(a)
        self._inv_tab = inv

    def _find_generator(self) -> int:
        for a in range(2, self.order):
            if self.is_primitive(a):
                return a
        raise ParameterError(f"no primitive element found in {self!r}")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def extension_field(p: int, degree: int) -> Field:
    """F_{p^degree} with the canonical modulus and generator (cached)."""
    return Field(p, smallest_irreducible(p, degree))


def make_field(p: int, s: int = 1) -> Field:
    """F_q for q = p^s, p an odd prime.

    The modulus is the lexicographically smallest monic irreducible of
    degree s and the generator the smallest element of full multiplicative
    order, so repeated runs agree.
    """
    if not isinstance(p, int) or not isprime(p):
        raise ParameterError(f"p = {p} is not prime")
    if p == 2:
        raise ParameterError("characteristic 2 is out of scope (q must be odd)")
    if not isinstance(s, int) or s < 1:
        raise ParameterError(f"extension degree s = {s} must be a positive integer")
    return extension_field(p, s)


def field_for_order(q: int) -> Field:
    """The canonical field with q elements; q must be an odd prime power."""
    fac = factorint(q)
    if len(fac) != 1:
        raise ParameterError(f"q = {q} is not a prime power")
    (p, s), = fac.items()
    return make_field(p, s)


class Embedding:
    """The canonical ring embedding of a base field into one of its extensions."""

    def __init__(self, base: Field, ext: Field):
        if base.p != ext.p:
            raise ParameterError("embedding requires equal characteristic")
        if ext.deg % base.deg != 0:
            raise ParameterError(f"{ext!r} does not contain {base!r}")
        self.base = base
        self.ext = ext
        self._fwd: dict[int, int] = {0: 0}
        self._bwd: dict[int, int] = {0: 0}
        if base is ext or (base.deg == ext.deg and base.modulus == ext.modulus):
            self._rho = None
            return
        if base.deg == 1:
            self._rho = None  # prime subfield: packed constants coincide
            return
        self._rho = self._find_root()
        for a in range(base.order):
            img = self._image(a)
            self._fwd[a] = img
            self._bwd[img] = a

    def _find_root(self) -> int:
        ext, base = self.ext, self.base
        h = ext.pow(ext.generator, (ext.order - 1) // (base.order - 1))
        cand = 1
        for _ in range(base.order - 1):
            acc = 0
            for c in reversed(base.modulus):
                acc = ext.add(ext.mul(acc, cand), c % base.p)
            if acc == 0:
                return cand
            cand = ext.mul(cand, h)
        raise ConsistencyError("base modulus has no root in the extension")  # pragma: no cover

    def _image(self, a: int) -> int:
        acc = 0
        for c in reversed(self.base.coeffs(a)):
            acc = self.ext.add(self.ext.mul(acc, self._rho), c)
        return acc

    def map(self, a: int) -> int:
        if self._rho is None:
            return a
        return self._fwd[a]

    def descend(self, b: int) -> int:
        if self._rho is None:
            if b < self.base.order:
                return b
            raise DomainError("element does not lie in the base field")
        try:
            return self._bwd[b]
        except KeyError:
            raise DomainError("element does not lie in the base field") from None


@lru_cache(maxsize=None)
def _embedding_cached(p: int, base_deg: int, ext_deg: int) -> Embedding:
    return Embedding(extension_field(p, base_deg), extension_field(p, ext_deg))


def embedding(base: Field, ext: Field) -> Embedding:
    if base is ext:
        return Embedding(base, ext)
    return _embedding_cached(base.p, base.deg, ext.deg)


def root_of_unity(field: Field, k: int) -> tuple[Field, int]:
    """Smallest extension of the field containing an element of exact order k.

    Returns (extension, delta) with delta = G^((|ext|-1)/k) for the canonical
    generator G, so delta is deterministic.
    """
    if k < 1:
        raise ParameterError("k must be positive")
    if gcd(k, field.p) != 1:
        raise ParameterError(f"k = {k} is divisible by the characteristic {field.p}")
    if k == 1:
        return field, 1
    t, qt = 1, field.order
    while (qt - 1) % k != 0:
        t += 1
        qt *= field.order
    ext = field if t == 1 else extension_field(field.p, field.deg * t)
    delta = ext.pow(ext.generator, (ext.order - 1) // k)
    return ext, delta
