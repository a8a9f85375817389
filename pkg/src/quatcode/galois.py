"""Arithmetic in binary extension fields GF(2^k) and towers of them.

Field elements are plain Python ints (or numpy integer arrays for the
vectorised helpers).  Bit ``i`` of an element is the coefficient of ``x^i``
in its residue-class representative modulo the field's modulus polynomial.

The modulus of each degree is the numerically smallest primitive polynomial,
so the residue class of ``x`` is always a primitive element.  For degrees up
to 16 multiplication goes through log/antilog tables; above that it falls
back to carry-less multiplication followed by reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .errors import InvalidArgument, InvalidTower

MAX_DEGREE = 32
TABLE_DEGREE = 16


# ---------------------------------------------------------------------------
# GF(2)[x] helpers, polynomials packed into ints
# ---------------------------------------------------------------------------

def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def gf2_mulmod(a: int, b: int, m: int) -> int:
    return gf2_mod(clmul(a, b), m)


def gf2_powmod(a: int, e: int, m: int) -> int:
    r = 1
    a = gf2_mod(a, m)
    while e:
        if e & 1:
            r = gf2_mulmod(r, a, m)
        a = gf2_mulmod(a, a, m)
        e >>= 1
    return gf2_mod(r, m)


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(poly: int) -> bool:
    """Rabin's irreducibility test for a GF(2)[x] polynomial packed in an int."""
    k = poly.bit_length() - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = 2
    if gf2_powmod(x, 1 << k, poly) != gf2_mod(x, poly):
        return False
    for p in prime_factors(k):
        t = gf2_powmod(x, 1 << (k // p), poly) ^ x
        if gf2_gcd(poly, gf2_mod(t, poly)) != 1:
            return False
    return True


def is_primitive(poly: int) -> bool:
    """True when ``poly`` is irreducible and ``x`` generates the multiplicative group."""
    if not is_irreducible(poly):
        return False
    k = poly.bit_length() - 1
    order = (1 << k) - 1
    if gf2_powmod(2, order, poly) != 1:
        return False
    return all(gf2_powmod(2, order // r, poly) != 1 for r in prime_factors(order))


@lru_cache(maxsize=None)
def primitive_polynomial(degree: int) -> int:
    """Numerically smallest primitive polynomial of the given degree."""
    if degree < 1 or degree > MAX_DEGREE:
        raise InvalidArgument(f"degree must be in [1, {MAX_DEGREE}], got {degree}")
    for cand in range((1 << degree) + 1, 1 << (degree + 1), 2):
        if is_primitive(cand):
            return cand
    raise AssertionError("unreachable: primitive polynomials exist in every degree")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

class GF2m:
    """The field GF(2^k) with a fixed modulus.

    Instances are immutable after construction and compare equal when degree
    and modulus agree.  Use :func:`make_field` to get the canonical instance.
    """

    def __init__(self, degree: int, modulus: int | None = None):
        if degree < 1 or degree > MAX_DEGREE:
            raise InvalidArgument(f"degree must be in [1, {MAX_DEGREE}], got {degree}")
        if modulus is None:
            modulus = primitive_polynomial(degree)
        if modulus.bit_length() - 1 != degree or not is_irreducible(modulus):
            raise InvalidArgument(f"modulus {modulus:#x} is not irreducible of degree {degree}")
        self.degree = degree
        self.modulus = modulus
        self.size = 1 << degree
        self.order = self.size - 1
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None
        self._mul_table: np.ndarray | None = None
        if degree <= TABLE_DEGREE:
            self._build_tables()
        self.primitive_element = self._find_primitive()

    def _build_tables(self) -> None:
        g = gf2_mod(2, self.modulus)
        if self.multiplicative_order_raw(g) != self.order:
            # non-primitive modulus: tables keyed on a searched generator
            g = next(a for a in range(2, self.size) if self.multiplicative_order_raw(a) == self.order)
        exp = np.zeros(2 * self.order + 1, dtype=np.int64)
        log = np.zeros(self.size, dtype=np.int64)
        x = 1
        for i in range(self.order):
            exp[i] = x
            log[x] = i
            x = gf2_mulmod(x, g, self.modulus)
        exp[self.order:2 * self.order] = exp[:self.order]
        exp[2 * self.order] = exp[0]
        self._exp, self._log = exp, log
        self._table_generator = g
        if self.degree <= 8:
            a = np.arange(self.size)
            self._mul_table = self._mul_logs(a[:, None], a[None, :])

    def multiplicative_order_raw(self, a: int) -> int:
        n = self.order
        for p in prime_factors(n):
            while n % p == 0 and gf2_powmod(a, n // p, self.modulus) == 1:
                n //= p
        return n

    def _find_primitive(self) -> int:
        g = gf2_mod(2, self.modulus)
        if self.multiplicative_order_raw(g) == self.order:
            return g
        return next(a for a in range(2, self.size) if self.multiplicative_order_raw(a) == self.order)

    # -- scalar arithmetic ---------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._exp[self._log[a] + self._log[b]])
        return gf2_mulmod(a, b, self.modulus)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) * e) % self.order])
        return gf2_powmod(a, e % self.order, self.modulus)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, -1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, times: int = 1) -> int:
        """``a`` raised to ``2^times``."""
        return self.pow(a, 1 << times) if a else 0

    def log(self, a: int) -> int:
        """Discrete log to the base of :attr:`primitive_element`."""
        if a == 0:
            raise InvalidArgument("log of zero")
        if self._log is not None and self._table_generator == self.primitive_element:
            return int(self._log[a])
        x, g = 1, self.primitive_element
        for i in range(self.order):
            if x == a:
                return i
            x = self.mul(x, g)
        raise AssertionError("unreachable")

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise InvalidArgument("zero has no multiplicative order")
        return self.multiplicative_order_raw(a)

    def elements(self) -> range:
        return range(self.size)

    def in_subfield(self, a: int, degree: int) -> bool:
        """True when ``a`` lies in the unique subfield GF(2^degree)."""
        if self.degree % degree:
            raise InvalidTower(f"GF(2^{degree}) is not a subfield of GF(2^{self.degree})")
        return self.frobenius(a, degree) == a

    # -- vectorised arithmetic ----------------------------------------------

    def _mul_logs(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def mul_array(self, a, b) -> np.ndarray:
        """Elementwise product of broadcastable integer arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._mul_table is not None:
            return self._mul_table[a, b]
        if self._log is not None:
            return self._mul_logs(a, b)
        f = np.frompyfunc(self.mul, 2, 1)
        return f(a, b).astype(np.int64)

    def pow_array(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self._log is None:
            f = np.frompyfunc(lambda x: self.pow(x, e), 1, 1)
            return f(a).astype(np.int64)
        r = self._exp[(self._log[a] * e) % self.order]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, r)

    def inv_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self.pow_array(a, -1 % self.order)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF2m) and (self.degree, self.modulus) == (other.degree, other.modulus)

    def __hash__(self) -> int:
        return hash((self.degree, self.modulus))

    def __repr__(self) -> str:
        return f"GF2m(degree={self.degree}, modulus={self.modulus:#x})"


@lru_cache(maxsize=None)
def make_field(degree: int) -> GF2m:
    """Canonical GF(2^degree) built on :func:`primitive_polynomial`."""
    if degree < 1:
        raise InvalidArgument(f"field degree must be positive, got {degree}")
    return GF2m(degree)


def eval_gf2_poly(field: GF2m, poly: int, x: int) -> int:
    """Evaluate a GF(2)[x] polynomial (packed int) at ``x`` in ``field``."""
    acc = 0
    for i in range(poly.bit_length() - 1, -1, -1):
        acc = field.mul(acc, x) ^ ((poly >> i) & 1)
    return acc


# ---------------------------------------------------------------------------
# Embeddings and traces
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Embedding:
    """Injective ring homomorphism GF(2^s) -> GF(2^k) fixed by the image of x."""

    small: GF2m
    big: GF2m
    image_of_small_generator: int
    table: np.ndarray = dc_field(repr=False)
    _inverse: dict = dc_field(repr=False)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def embed_array(self, a) -> np.ndarray:
        return self.table[np.asarray(a, dtype=np.int64)]

    def contains(self, z: int) -> bool:
        return z in self._inverse

    def restrict(self, z: int) -> int:
        """Preimage of ``z``; raises :class:`InvalidTower` if ``z`` is outside the image."""
        try:
            return self._inverse[z]
        except KeyError:
            raise InvalidTower(f"{z} is not in the image of {self.small} in {self.big}") from None

    def restrict_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        lut = self._lookup()
        out = lut[a]
        if np.any(out < 0):
            raise InvalidTower("array has entries outside the embedded subfield")
        return out

    def _lookup(self) -> np.ndarray:
        lut = self.__dict__.get("_lut")
        if lut is None:
            lut = np.full(self.big.size, -1, dtype=np.int64)
            lut[self.table] = np.arange(self.small.size)
            object.__setattr__(self, "_lut", lut)
        return lut

    def then(self, outer: "Embedding") -> "Embedding":
        """Composite embedding ``outer o self``."""
        if outer.small != self.big:
            raise InvalidTower("embeddings do not compose")
        return embedding_from_image(self.small, outer.big, outer(self.image_of_small_generator))


def embedding_from_image(small: GF2m, big: GF2m, gamma: int) -> Embedding:
    """Embedding sending the residue class of x in ``small`` to ``gamma``."""
    if big.degree % small.degree:
        raise InvalidTower(f"degree {small.degree} does not divide {big.degree}")
    if small.degree > 1 and eval_gf2_poly(big, small.modulus, gamma) != 0:
        raise InvalidTower(f"{gamma} is not a root of the modulus of {small}")
    powers = [1]
    for _ in range(small.degree - 1):
        powers.append(big.mul(powers[-1], gamma))
    table = np.zeros(small.size, dtype=np.int64)
    for x in range(1, small.size):
        acc = 0
        for i in range(small.degree):
            if (x >> i) & 1:
                acc ^= powers[i]
        table[x] = acc
    inverse = {int(z): x for x, z in enumerate(table)}
    if len(inverse) != small.size:
        raise InvalidTower("embedding is not injective")
    return Embedding(small, big, gamma if small.degree > 1 else 1, table, inverse)


@lru_cache(maxsize=None)
def embedding(small: GF2m, big: GF2m) -> Embedding:
    """Canonical embedding: x goes to the root of small's modulus with least exponent.

    Candidate roots are scanned as ``alpha^(r*j)`` for j = 0, 1, ... where
    ``alpha`` is big's primitive element and ``r = (2^k - 1)/(2^s - 1)``.
    """
    if big.degree % small.degree:
        raise InvalidTower(f"degree {small.degree} does not divide {big.degree}")
    if small.degree == 1:
        return embedding_from_image(small, big, 1)
    r = big.order // small.order
    base = big.pow(big.primitive_element, r)
    z = 1
    for _ in range(small.order):
        if eval_gf2_poly(big, small.modulus, z) == 0:
            return embedding_from_image(small, big, z)
        z = big.mul(z, base)
    raise AssertionError("unreachable: the subfield contains every root")


def _check_tower(field: GF2m, target: GF2m) -> None:
    if field.degree % target.degree:
        raise InvalidTower(f"GF(2^{target.degree}) is not a subfield of GF(2^{field.degree})")


def trace_in_place(field: GF2m, x: int, target_degree: int) -> int:
    """Relative trace to the subfield of degree ``target_degree``, left inside ``field``."""
    if field.degree % target_degree:
        raise InvalidTower(f"degree {target_degree} does not divide {field.degree}")
    acc, y = 0, x
    for _ in range(field.degree // target_degree):
        acc ^= y
        y = field.frobenius(y, target_degree)
    return acc


def trace(field: GF2m, x: int, target: GF2m, emb: Embedding | None = None) -> int:
    """Tr from ``field`` down to ``target``: sum of x^(2^(s*i)) for i < k/s.

    The result is returned in ``target``'s own coordinates, pulled back along
    ``emb`` (default: the canonical embedding).
    """
    _check_tower(field, target)
    if emb is None:
        emb = embedding(target, field)
    return emb.restrict(trace_in_place(field, x, target.degree))


def trace_table(field: GF2m, target: GF2m, emb: Embedding | None = None) -> np.ndarray:
    """Lookup table ``t`` with ``t[x] = trace(field, x, target)``."""
    _check_tower(field, target)
    if emb is None:
        emb = embedding(target, field)
    a = np.arange(field.size, dtype=np.int64)
    acc = a.copy()
    y = a
    step = 1 << target.degree
    for _ in range(field.degree // target.degree - 1):
        y = field.pow_array(y, step)
        acc ^= y
    return emb.restrict_array(acc)


def unity_roots(n: int, field: GF2m) -> list[int]:
    """``[beta^0, ..., beta^(n-1)]`` with ``beta = alpha^((2^k - 1)/n)``."""
    if n < 1 or field.order % n:
        raise InvalidArgument(f"{n} does not divide {field.order}")
    beta = field.pow(field.primitive_element, field.order // n)
    out = [1]
    for _ in range(n - 1):
        out.append(field.mul(out[-1], beta))
    return out


def subfield_basis(emb: Embedding, big_degree_over_small: int, gamma: int | None = None) -> list[int]:
    """Power basis ``1, g, ..., g^(d-1)`` of ``emb.big`` over ``emb.small``.

    ``g`` defaults to big's primitive element, which always works since it
    generates the whole field over every subfield.
    """
    big = emb.big
    g = big.primitive_element if gamma is None else gamma
    out = [1]
    for _ in range(big_degree_over_small - 1):
        out.append(big.mul(out[-1], g))
    return out


# ---------------------------------------------------------------------------
# The quaternary tower GF(2) < GF(4) < GF(q) < GF(q^2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Tower:
    """GF(q) < GF(q^2) with q = 2^m, plus GF(4) when m is even.

    Embeddings are chosen so that the triangle GF(4) -> GF(q) -> GF(q^2)
    commutes: GF(4) -> GF(q) and GF(q) -> GF(q^2) are canonical and the
    direct GF(4) -> GF(q^2) map is their composite.
    """

    m: int
    gfq: GF2m
    gfq2: GF2m
    q_in_q2: Embedding
    gf4: GF2m | None
    four_in_q: Embedding | None
    four_in_q2: Embedding | None
    beta: int

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def n(self) -> int:
        return self.q + 1

    @property
    def h(self) -> int:
        if self.m % 2:
            raise InvalidArgument(f"m = {self.m} is odd; there is no quaternary subfield")
        return self.m // 2

    def in_unit_circle(self, z: int) -> bool:
        """True when ``z`` is a (q+1)-th root of unity."""
        return z != 0 and self.gfq2.pow(z, self.n) == 1

    def unit_circle(self) -> list[int]:
        return unity_roots(self.n, self.gfq2)


@lru_cache(maxsize=None)
def tower(m: int) -> Tower:
    if m < 1:
        raise InvalidArgument(f"m must be positive, got {m}")
    gfq = make_field(m)
    gfq2 = make_field(2 * m)
    q_in_q2 = embedding(gfq, gfq2)
    gf4 = four_in_q = four_in_q2 = None
    if m % 2 == 0:
        gf4 = make_field(2)
        four_in_q = embedding(gf4, gfq)
        four_in_q2 = four_in_q.then(q_in_q2)
    beta = gfq2.pow(gfq2.primitive_element, (1 << m) - 1)
    return Tower(m, gfq, gfq2, q_in_q2, gf4, four_in_q, four_in_q2, beta)


def quaternary_tower(h: int) -> Tower:
    """Tower with q = 4^h."""
    if h < 1:
        raise InvalidArgument(f"h must be positive, got {h}")
    return tower(2 * h)
