"""Linear and cyclic codes over GF(2^k), including the MDS family C_u.

``C_u`` is the cyclic code of length q + 1 over GF(q), q = 2^m, whose
generator polynomial is the product of the minimal polynomials of
beta^u, ..., beta^(q/2) over GF(q), beta a primitive (q+1)-th root of unity
in GF(q^2).  It has parameters [q+1, 2u-1, q-2u+3].

Two codes are equal exactly when their generator matrices in reduced row
echelon form agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cyclotomic import coset_system
from .errors import InvalidArgument
from .galois import Embedding, GF2m, embedding, make_field, tower
from .linalg import in_row_space, matmul, nullspace, rank, rref
from .polyring import Poly, minimal_polynomial, poly_lcm, xn_minus_1


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Row space of ``generator_matrix`` (kept in RREF, full row rank)."""

    field: GF2m
    generator_matrix: np.ndarray
    n: int

    @classmethod
    def from_rows(cls, field: GF2m, rows, n: int | None = None) -> "LinearCode":
        rows = np.asarray(rows, dtype=np.int64)
        if n is None:
            n = rows.shape[1]
        if rows.size == 0:
            return cls(field, np.zeros((0, n), dtype=np.int64), n)
        R, _ = rref(field, rows.reshape(-1, n))
        return cls(field, R, n)

    @classmethod
    def full_space(cls, field: GF2m, n: int) -> "LinearCode":
        return cls(field, np.eye(n, dtype=np.int64), n)

    @property
    def k(self) -> int:
        return int(self.generator_matrix.shape[0])

    @cached_property
    def pivots(self) -> list[int]:
        G = self.generator_matrix
        return [int(np.flatnonzero(row)[0]) for row in G]

    def encode(self, message) -> np.ndarray:
        m = np.asarray(message, dtype=np.int64).reshape(1, -1)
        return matmul(self.field, m, self.generator_matrix)[0]

    def contains(self, word) -> bool:
        return in_row_space(self.field, self.generator_matrix, self.pivots, word)

    def dual(self) -> "LinearCode":
        if self.k == 0:
            return LinearCode.full_space(self.field, self.n)
        return LinearCode(self.field, nullspace(self.field, self.generator_matrix, self.n), self.n)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.n == other.n
            and np.array_equal(self.generator_matrix, other.generator_matrix)
        )

    __hash__ = None  # type: ignore[assignment]

    def is_subcode_of(self, other: "LinearCode") -> bool:
        return all(other.contains(row) for row in self.generator_matrix)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over GF({self.field.size}))"


@dataclass(frozen=True, eq=False)
class CyclicCode:
    """Cyclic code <g(x)> of length ``n`` over ``field``.

    ``big`` is the splitting field holding beta, ``emb`` the embedding of
    ``field`` into it used for all minimal polynomials, and
    ``defining_set`` the exponents i with g(beta^i) = 0.
    """

    field: GF2m
    big: GF2m
    emb: Embedding
    n: int
    generator: Poly
    defining_set: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return self.n - self.generator.degree

    k = dimension

    @property
    def beta(self) -> int:
        return self.big.pow(self.big.primitive_element, self.big.order // self.n)

    @cached_property
    def check_polynomial(self) -> Poly:
        h, r = divmod(xn_minus_1(self.field, self.n), self.generator)
        assert r.is_zero()
        return h

    def generator_matrix(self) -> np.ndarray:
        """Rows are the cyclic shifts x^i g(x), i < k."""
        k, g = self.dimension, np.array(self.generator.coeffs, dtype=np.int64)
        G = np.zeros((k, self.n), dtype=np.int64)
        for i in range(k):
            G[i, i:i + g.size] = g
        return G

    @cached_property
    def linear(self) -> LinearCode:
        if self.dimension == 0:
            return LinearCode(self.field, np.zeros((0, self.n), dtype=np.int64), self.n)
        return LinearCode.from_rows(self.field, self.generator_matrix(), self.n)

    def contains(self, word) -> bool:
        return (Poly(self.field, word) % self.generator).is_zero()

    def to_json(self) -> dict:
        """Descriptor with coefficients as little-endian bit strings."""
        bits = lambda a, w: "".join(str((a >> i) & 1) for i in range(w))  # noqa: E731
        return {
            "field_degree": self.field.degree,
            "field_modulus": bits(self.field.modulus, self.field.degree + 1),
            "big_degree": self.big.degree,
            "n": self.n,
            "generator_coeffs": [bits(a, self.field.degree) for a in self.generator.coeffs],
            "defining_set": list(self.defining_set),
            "dimension": self.dimension,
        }

    @classmethod
    def from_json(cls, d: dict | str, emb: Embedding | None = None) -> "CyclicCode":
        if isinstance(d, str):
            d = json.loads(d)
        field = make_field(d["field_degree"])
        big = make_field(d["big_degree"])
        if "field_modulus" in d and int(d["field_modulus"][::-1], 2) != field.modulus:
            raise InvalidArgument("descriptor modulus differs from the canonical one")
        coeffs = [int(b[::-1], 2) for b in d["generator_coeffs"]]
        return cls(field, big, emb or embedding(field, big), d["n"], Poly(field, coeffs),
                   tuple(d["defining_set"]))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CyclicCode)
            and self.field == other.field
            and self.n == other.n
            and self.generator == other.generator
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"CyclicCode([{self.n}, {self.dimension}] over GF({self.field.size}))"


def as_linear(code: LinearCode | CyclicCode) -> LinearCode:
    return code.linear if isinstance(code, CyclicCode) else code


def splitting_degree(field: GF2m, n: int) -> int:
    """Degree over GF(2) of the smallest extension of ``field`` containing n-th roots of unity."""
    if n % 2 == 0 or n < 1:
        raise InvalidArgument(f"length must be odd and positive, got {n}")
    b, e = field.size % n, 1
    while b != 1 % n:
        b = (b * field.size) % n
        e += 1
    return field.degree * e


def cyclic_code_from_zeros(field: GF2m, n: int, zeros, big: GF2m | None = None,
                           emb: Embedding | None = None) -> CyclicCode:
    """Cyclic code whose defining set is the cyclotomic closure of ``zeros``."""
    if big is None:
        big = make_field(splitting_degree(field, n))
    if emb is None:
        emb = embedding(field, big)
    cs = coset_system(n, field.size)
    D = cs.closure(zeros)
    leaders = sorted({cs.coset(s)[0] for s in D})
    g = Poly.one(field)
    for s in leaders:
        g = g * minimal_polynomial(s, n, field, big, emb)
    return CyclicCode(field, big, emb, n, g, tuple(D))


def bch_code(base: GF2m, n: int, delta: int, offset: int = 1, big: GF2m | None = None,
             emb: Embedding | None = None) -> CyclicCode:
    """BCH code with designed distance ``delta``: g = lcm of M_{beta^offset..offset+delta-2}."""
    if not 2 <= delta <= n:
        raise InvalidArgument(f"designed distance must be in [2, {n}], got {delta}")
    if n % 2 == 0:
        raise InvalidArgument("length must be odd")
    if big is None:
        big = make_field(splitting_degree(base, n))
    if emb is None:
        emb = embedding(base, big)
    g = Poly.one(base)
    for i in range(offset, offset + delta - 1):
        g = poly_lcm(g, minimal_polynomial(i % n, n, base, big, emb))
    cs = coset_system(n, base.size)
    D = cs.closure(range(offset, offset + delta - 1))
    return CyclicCode(base, big, emb, n, g, tuple(D))


def _log2(q: int) -> int:
    m = q.bit_length() - 1
    if q < 2 or q != 1 << m:
        raise InvalidArgument(f"q must be a power of two, got {q}")
    return m


def mds_family_code(q: int, u: int) -> CyclicCode:
    """C_u over GF(q): generator M_{beta^u} ... M_{beta^{q/2}}."""
    m = _log2(q)
    if not 1 <= u <= q // 2:
        raise InvalidArgument(f"u must be in [1, {q // 2}], got {u}")
    T = tower(m)
    g = Poly.one(T.gfq)
    for i in range(u, q // 2 + 1):
        g = g * minimal_polynomial(i, q + 1, T.gfq, T.gfq2, T.q_in_q2)
    zeros = tuple(range(u, q + 2 - u))
    return CyclicCode(T.gfq, T.gfq2, T.q_in_q2, q + 1, g, zeros)


def mds_check_polynomial(q: int, u: int) -> Poly:
    """M_{beta^0} ... M_{beta^{u-1}}."""
    T = tower(_log2(q))
    h = Poly.one(T.gfq)
    for i in range(u):
        h = h * minimal_polynomial(i, q + 1, T.gfq, T.gfq2, T.q_in_q2)
    return h


def cyclic_dual(code: CyclicCode) -> CyclicCode:
    """Dual code; its defining set is {n - i : i not in D}."""
    n = code.n
    D = set(code.defining_set)
    zeros = [(n - i) % n for i in range(n) if i not in D]
    return cyclic_code_from_zeros(code.field, n, zeros, code.big, code.emb)


def dual(code: LinearCode | CyclicCode):
    if isinstance(code, CyclicCode):
        return cyclic_dual(code)
    return code.dual()


def bch_bound(code: CyclicCode) -> int:
    """1 + longest circular run of consecutive exponents in the defining set."""
    n = code.n
    D = set(code.defining_set)
    if not D:
        return 1
    if len(D) == n:
        return n + 1
    best = 0
    # start at a gap so circular runs are counted once
    start = next(i for i in range(n) if i not in D)
    run = 0
    for step in range(1, n + 1):
        if (start + step) % n in D:
            run += 1
            best = max(best, run)
        else:
            run = 0
    return best + 1


def singleton_bound(n: int, k: int) -> int:
    return n - k + 1


def is_lcd(code: LinearCode | CyclicCode) -> bool:
    """C intersect C^perp = {0}, decided by rank of the stacked generator matrices."""
    C = as_linear(code)
    D = C.dual()
    if C.k == 0 or D.k == 0:
        return True
    return rank(C.field, np.vstack([C.generator_matrix, D.generator_matrix])) == C.n


def is_reversible_defining_set(code: CyclicCode) -> bool:
    D = set(code.defining_set)
    return all((code.n - i) % code.n in D for i in D)
