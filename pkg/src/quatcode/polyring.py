"""Dense univariate polynomials over GF(2^k) and minimal polynomials."""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

from .cyclotomic import coset_of, coset_system
from .errors import InvalidArgument, InvalidTower
from .galois import Embedding, GF2m, embedding


class Poly:
    """Polynomial with coefficients ``coeffs[i]`` on ``x^i``.

    Trailing zero coefficients are stripped, so the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF2m, coeffs: Iterable[int]):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def zero(cls, field: GF2m) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: GF2m) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def monomial(cls, field: GF2m, degree: int, coeff: int = 1) -> "Poly":
        return cls(field, [0] * degree + [coeff])

    @classmethod
    def from_roots(cls, field: GF2m, roots: Iterable[int]) -> "Poly":
        """Monic polynomial prod(x - r)."""
        c = [1]
        for r in roots:
            # multiply by (x + r)
            nxt = [0] * (len(c) + 1)
            for i, a in enumerate(c):
                nxt[i + 1] ^= a
                nxt[i] ^= field.mul(a, r)
            c = nxt
        return cls(field, c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _same_field(self, other: "Poly") -> None:
        if not isinstance(other, Poly) or other.field != self.field:
            raise InvalidArgument("polynomials live over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(self.field, [x ^ (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __sub__ = __add__

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        f = self.field
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] ^= f.mul(a, b)
        return Poly(f, out)

    def scale(self, c: int) -> "Poly":
        return Poly(self.field, [self.field.mul(c, a) for a in self.coeffs])

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._same_field(other)
        if other.is_zero():
            raise InvalidArgument("division by the zero polynomial")
        f = self.field
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = f.inv(other.lead)
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            t = f.mul(c, inv_lead)
            quot[i - dq] = t
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] ^= f.mul(t, b)
        return Poly(f, quot), Poly(f, rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = self.field.mul(acc, x) ^ a
        return acc

    def reciprocal(self) -> "Poly":
        """x^deg * f(1/x), coefficients reversed."""
        return Poly(self.field, reversed(self.coeffs))

    def map_coeffs(self, fn, field: GF2m) -> "Poly":
        return Poly(field, [fn(a) for a in self.coeffs])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = [f"{a}*x^{i}" if i else str(a) for i, a in enumerate(self.coeffs) if a]
        return f"Poly({' + '.join(terms)} over GF(2^{self.field.degree}))"


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    f._same_field(g)
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def poly_lcm(f: Poly, g: Poly) -> Poly:
    f._same_field(g)
    if f.is_zero() or g.is_zero():
        return Poly.zero(f.field)
    return (f * g // poly_gcd(f, g)).monic()


def poly_arith(f: Poly, g: Poly, op: str):
    """Dispatch ``op`` in {add, mul, divmod, gcd, lcm}."""
    ops = {
        "add": lambda: f + g,
        "mul": lambda: f * g,
        "divmod": lambda: divmod(f, g),
        "gcd": lambda: poly_gcd(f, g),
        "lcm": lambda: poly_lcm(f, g),
    }
    if op not in ops:
        raise InvalidArgument(f"unknown polynomial operation {op!r}")
    return ops[op]()


def xn_minus_1(field: GF2m, n: int) -> Poly:
    return Poly(field, [1] + [0] * (n - 1) + [1])


def _root_of_unity(n: int, big: GF2m) -> int:
    if n < 1 or big.order % n:
        raise InvalidArgument(f"{n} does not divide {big.order}")
    return big.pow(big.primitive_element, big.order // n)


def _check_base(base: GF2m, big: GF2m, emb: Embedding | None) -> Embedding:
    if big.degree % base.degree:
        raise InvalidTower(f"GF(2^{base.degree}) is not a subfield of GF(2^{big.degree})")
    return embedding(base, big) if emb is None else emb


def descend(poly: Poly, emb: Embedding) -> Poly:
    """Re-express a polynomial with subfield coefficients in the small field.

    Every coefficient must be fixed by z -> z^|small|; anything else signals
    an embedding mismatch and raises :class:`InvalidTower`.
    """
    s = emb.small.degree
    for a in poly.coeffs:
        if emb.big.frobenius(a, s) != a:
            raise InvalidTower(f"coefficient {a} is not in GF(2^{s})")
    return poly.map_coeffs(emb.restrict, emb.small)


def ascend(poly: Poly, emb: Embedding) -> Poly:
    return poly.map_coeffs(emb, emb.big)


def minimal_polynomial(s: int, n: int, base: GF2m, big: GF2m, emb: Embedding | None = None) -> Poly:
    """Minimal polynomial of beta^s over ``base``, beta a primitive n-th root in ``big``.

    Computed as prod_{i in C_s} (x - beta^i) inside ``big`` and pulled back
    to ``base`` coordinates.
    """
    emb = _check_base(base, big, emb)
    if n % 2 == 0:
        raise InvalidArgument("length must be odd")
    beta = _root_of_unity(n, big)
    roots = [big.pow(beta, i) for i in coset_of(s % n, n, base.size)]
    return descend(Poly.from_roots(big, roots), emb)


def factor_xn_minus_1(n: int, base: GF2m, big: GF2m, emb: Embedding | None = None) -> list[Poly]:
    """Irreducible factors of x^n - 1 over ``base``, one per cyclotomic coset leader."""
    if n % 2 == 0:
        raise InvalidArgument("length must be odd")
    emb = _check_base(base, big, emb)
    cs = coset_system(n, base.size)
    return [minimal_polynomial(s, n, base, big, emb) for s in cs.leaders]


def poly_product(polys: Sequence[Poly], field: GF2m) -> Poly:
    return reduce(lambda a, b: a * b, polys, Poly.one(field))
