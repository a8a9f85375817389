"""Subfield subcodes, subfield (trace) codes and the Delsarte duality between them.

All constructions take an explicit embedding ``emb`` of the small field
into the parent code's field.  For the quaternary family this is
``Tower.four_in_q``; the default is the canonical embedding.

Routes for the subfield subcode C|GF(r):

``defining_set``
    cyclic parents only; zeros are the r-cyclotomic closure of the parent's.
``component_filter``
    brute force over the parent codebook, keeping words with subfield entries.
``expansion``
    kernel over GF(r) of the parity-check matrix written in GF(r)-coordinates.

Routes for the subfield code C^(r):

``trace``
    row space of Tr(gamma * g) over generator rows g and a GF(r)-basis gamma.
``expansion``
    each entry of the generator matrix replaced by its coordinate column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .codes import CyclicCode, LinearCode, as_linear, cyclic_code_from_zeros, cyclic_dual, mds_family_code
from .enumeration import CodebookEnumerator
from .errors import InvalidArgument, ResourceLimit
from .galois import Embedding, GF2m, Tower, embedding, quaternary_tower, trace_table
from .linalg import rank, rref

DEFAULT_BUDGET = 1 << 24


def _emb_for(parent_field: GF2m, small: GF2m | None, emb: Embedding | None) -> Embedding:
    if emb is not None:
        return emb
    if small is None:
        raise InvalidArgument("need the subfield or an embedding")
    return embedding(small, parent_field)


def coordinate_table(emb: Embedding, basis: list[int]) -> np.ndarray:
    """``table[z]`` = coordinates of z in ``basis`` over the small field, shape (|big|, d)."""
    small, big = emb.small, emb.big
    d = big.degree // small.degree
    if len(basis) != d:
        raise InvalidArgument(f"basis must have {d} elements")
    table = np.full((big.size, d), -1, dtype=np.int64)
    for coeffs in itertools.product(range(small.size), repeat=d):
        z = 0
        for c, b in zip(coeffs, basis):
            z ^= big.mul(emb(c), b)
        table[z] = coeffs
    if (table < 0).any():
        raise InvalidArgument("basis elements are not linearly independent")
    return table


def power_basis(emb: Embedding) -> list[int]:
    big = emb.big
    d = big.degree // emb.small.degree
    out = [1]
    for _ in range(d - 1):
        out.append(big.mul(out[-1], big.primitive_element))
    return out


def random_basis(emb: Embedding, rng: np.random.Generator) -> list[int]:
    """A uniformly drawn ordered GF(small)-basis of the big field."""
    d = emb.big.degree // emb.small.degree
    ref = power_basis(emb)
    coords = coordinate_table(emb, ref)
    while True:
        cand = [int(x) for x in rng.integers(1, emb.big.size, size=d)]
        if rank(emb.small, coords[cand]) == d:
            return cand


# ---------------------------------------------------------------------------
# Subfield subcode
# ---------------------------------------------------------------------------

def subfield_subcode(parent: CyclicCode | LinearCode, small: GF2m | None = None,
                     emb: Embedding | None = None, route: str = "defining_set",
                     budget: int = DEFAULT_BUDGET):
    """Codewords of ``parent`` whose entries all lie in the small field.

    Returns a :class:`CyclicCode` for the ``defining_set`` route and a
    :class:`LinearCode` otherwise.
    """
    emb = _emb_for(parent.field, small, emb)
    if route == "defining_set":
        if not isinstance(parent, CyclicCode):
            raise InvalidArgument("the defining_set route needs a cyclic parent")
        small_in_big = emb.then(parent.emb)
        return cyclic_code_from_zeros(emb.small, parent.n, parent.defining_set, parent.big, small_in_big)
    if route == "component_filter":
        return _subcode_by_filter(as_linear(parent), emb, budget)
    if route == "expansion":
        return _subcode_by_expansion(as_linear(parent), emb)
    raise InvalidArgument(f"unknown route {route!r}")


def _subcode_by_filter(parent: LinearCode, emb: Embedding, budget: int) -> LinearCode:
    total = parent.field.size ** parent.k
    if total > budget:
        raise ResourceLimit(f"parent codebook has {total} words, budget is {budget}")
    lut = emb._lookup()
    small = emb.small
    basis = np.zeros((0, parent.n), dtype=np.int64)
    if parent.k == 0:
        return LinearCode(small, basis, parent.n)
    for words in CodebookEnumerator(parent.field, parent.generator_matrix).codewords():
        down = lut[words]
        hit = down[(down >= 0).all(axis=1)]
        if len(hit):
            basis = rref(small, np.vstack([basis, hit]))[0]
    return LinearCode(small, basis, parent.n)


def _subcode_by_expansion(parent: LinearCode, emb: Embedding) -> LinearCode:
    small = emb.small
    H = parent.dual().generator_matrix
    if H.shape[0] == 0:
        return LinearCode.full_space(small, parent.n)
    coords = coordinate_table(emb, power_basis(emb))
    # rows: one per (parity check, coordinate)
    expanded = coords[H].transpose(0, 2, 1).reshape(-1, parent.n)
    return LinearCode.from_rows(small, expanded, parent.n).dual()


# ---------------------------------------------------------------------------
# Subfield code
# ---------------------------------------------------------------------------

def subfield_code(parent: CyclicCode | LinearCode, small: GF2m | None = None,
                  emb: Embedding | None = None, basis: list[int] | None = None,
                  route: str = "trace") -> LinearCode:
    """The subfield code C^(r), equal to the trace code Tr(C)."""
    P = as_linear(parent)
    emb = _emb_for(P.field, small, emb)
    basis = power_basis(emb) if basis is None else list(basis)
    G = P.generator_matrix
    if P.k == 0:
        return LinearCode(emb.small, np.zeros((0, P.n), dtype=np.int64), P.n)
    if route == "trace":
        tr = trace_table(P.field, emb.small, emb)
        rows = [tr[P.field.mul_array(G, g)] for g in basis]
    elif route == "expansion":
        coords = coordinate_table(emb, basis)
        rows = [coords[G][:, :, j] for j in range(len(basis))]
    else:
        raise InvalidArgument(f"unknown route {route!r}")
    return LinearCode.from_rows(emb.small, np.vstack(rows), P.n)


# ---------------------------------------------------------------------------
# Delsarte duality
# ---------------------------------------------------------------------------

def _witness(a: LinearCode, b: LinearCode):
    for row in a.generator_matrix:
        if not b.contains(row):
            return [int(x) for x in row]
    for row in b.generator_matrix:
        if not a.contains(row):
            return [int(x) for x in row]
    return None


def verify_delsarte(parent: CyclicCode | LinearCode, small: GF2m | None = None,
                    emb: Embedding | None = None) -> dict:
    """Compare (C^(r))^perp with (C^perp)|GF(r) as reduced generator matrices."""
    emb = _emb_for(parent.field, small, emb)
    lhs = subfield_code(parent, emb=emb).dual()
    if isinstance(parent, CyclicCode):
        rhs_code = subfield_subcode(cyclic_dual(parent), emb=emb, route="defining_set")
        route = "defining_set"
    else:
        rhs_code = subfield_subcode(parent.dual(), emb=emb, route="expansion")
        route = "expansion"
    rhs = as_linear(rhs_code)
    ok = lhs == rhs
    return {
        "pass": bool(ok),
        "n": lhs.n,
        "dual_of_subfield_code_dim": lhs.k,
        "subfield_subcode_of_dual_dim": rhs.k,
        "subcode_route": route,
        "witness": None if ok else _witness(lhs, rhs),
    }


# ---------------------------------------------------------------------------
# Trace representation over the unit circle
# ---------------------------------------------------------------------------

def trace_representation_eval(coeffs: Mapping[int, int], j: int, T: Tower) -> int:
    """sum_i Tr_{q^2/4}(a_i beta^(i j)), an element of GF(4)."""
    F = T.gfq2
    acc = 0
    for i, a in coeffs.items():
        acc ^= F.mul(a, F.pow(T.beta, (i * j) % T.n))
    return _trace_q2_to_4(T)[acc]


def trace_representation_word(coeffs: Mapping[int, int], T: Tower) -> np.ndarray:
    return np.array([trace_representation_eval(coeffs, j, T) for j in range(T.n)], dtype=np.int64)


def _trace_q2_to_4(T: Tower) -> np.ndarray:
    cache = T.__dict__.get("_tr_q2_4")
    if cache is None:
        cache = trace_table(T.gfq2, T.gf4, T.four_in_q2)
        object.__setattr__(T, "_tr_q2_4", cache)
    return cache


def trace_representation_code(exponents, T: Tower) -> LinearCode:
    """Span over GF(4) of all words (Tr_{q^2/4}(a beta^(i j)))_j, i in ``exponents``.

    By linearity it suffices to let ``a`` run over a GF(4)-basis of GF(q^2).
    """
    F = T.gfq2
    tr = _trace_q2_to_4(T)
    basis = power_basis(T.four_in_q2)
    rows = []
    for i in exponents:
        pw = np.array([F.pow(T.beta, (i * j) % T.n) for j in range(T.n)], dtype=np.int64)
        for a in basis:
            rows.append(tr[F.mul_array(pw, a)])
    return LinearCode.from_rows(T.gf4, np.array(rows), T.n)


# ---------------------------------------------------------------------------
# The quaternary family
# ---------------------------------------------------------------------------

def quaternary_parent(h: int) -> CyclicCode:
    """C_{(q+4)/4} over GF(q), q = 4^h."""
    q = 4 ** h
    return mds_family_code(q, (q + 4) // 4)


def quaternary_code(h: int) -> CyclicCode:
    """(C_{(q+4)/4}^perp)|GF(4), the [4^h + 1, 2^h] quaternary cyclic code."""
    T = quaternary_tower(h)
    return subfield_subcode(cyclic_dual(quaternary_parent(h)), emb=T.four_in_q, route="defining_set")


def quaternary_dual(h: int) -> LinearCode:
    """C_{(q+4)/4}^(4), the subfield code of the parent."""
    T = quaternary_tower(h)
    return subfield_code(quaternary_parent(h), emb=T.four_in_q)


@dataclass(frozen=True, eq=False)
class SubfieldDerivation:
    parent: CyclicCode
    kind: str
    route: str
    result: LinearCode | CyclicCode

    def to_json(self) -> dict:
        res = self.result
        if isinstance(res, CyclicCode):
            d = res.to_json()
        else:
            d = {"field_degree": res.field.degree, "n": res.n, "dimension": res.k,
                 "generator_matrix": res.generator_matrix.tolist()}
        d["derivation"] = {"parent": self.parent.to_json(), "kind": self.kind, "route": self.route}
        return d
