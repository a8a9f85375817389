"""PGL_2 acting on the projective line, and the stabilizer of the unit circle.

Points of PG(1, GF(2^k)) are field elements plus the sentinel :data:`INF`.
A map x -> (ax + b)/(cx + d) is stored with its matrix normalized so that
the first nonzero entry of (a, b, c, d) is 1.

Coordinate j of a length-(q+1) codeword is the point beta^j of the unit
circle U = {u : u^(q+1) = 1} in GF(q^2).  Every stabilizer element
therefore induces a permutation of 0..q, and block sets of support designs
can be pushed through it directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .codes import _log2
from .cyclotomic import build_E
from .designs import SupportDesign
from .errors import InvalidArgument
from .galois import GF2m, Tower, make_field, quaternary_tower, tower
from .linalg import matmul

INF = -1


@dataclass(frozen=True)
class LinearFractionalMap:
    field: GF2m
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def make(cls, field: GF2m, a: int, b: int, c: int, d: int) -> "LinearFractionalMap":
        if field.mul(a, d) ^ field.mul(b, c) == 0:
            raise InvalidArgument("singular matrix")
        lead = next(x for x in (a, b, c, d) if x)
        s = field.inv(lead)
        return cls(field, *(field.mul(s, x) for x in (a, b, c, d)))

    @classmethod
    def identity(cls, field: GF2m) -> "LinearFractionalMap":
        return cls(field, 1, 0, 0, 1)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def __call__(self, x: int) -> int:
        return apply(self, x)

    def compose(self, other: "LinearFractionalMap") -> "LinearFractionalMap":
        """self o other, i.e. x -> self(other(x))."""
        F = self.field
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return LinearFractionalMap.make(
            F,
            F.mul(a, e) ^ F.mul(b, g), F.mul(a, f) ^ F.mul(b, h),
            F.mul(c, e) ^ F.mul(d, g), F.mul(c, f) ^ F.mul(d, h),
        )

    __matmul__ = compose

    def inverse(self) -> "LinearFractionalMap":
        # adjugate; signs vanish in characteristic 2
        return LinearFractionalMap.make(self.field, self.d, self.b, self.c, self.a)


def apply(m: LinearFractionalMap, x: int) -> int:
    """(ax + b)/(cx + d) with the usual conventions at infinity."""
    F = m.field
    if x == INF:
        return INF if m.c == 0 else F.div(m.a, m.c)
    den = F.mul(m.c, x) ^ m.d
    num = F.mul(m.a, x) ^ m.b
    return INF if den == 0 else F.div(num, den)


def _vec(F: GF2m, x: int) -> tuple[int, int]:
    return (1, 0) if x == INF else (x, 1)


def _det(F: GF2m, u: tuple[int, int], v: tuple[int, int]) -> int:
    return F.mul(u[0], v[1]) ^ F.mul(u[1], v[0])


def triple_map(field: GF2m, a: int, b: int, c: int) -> LinearFractionalMap:
    """The unique map sending (INF, 0, 1) to the distinct points (a, b, c)."""
    if len({a, b, c}) != 3:
        raise InvalidArgument("points must be distinct")
    F = field
    va, vb, vc = _vec(F, a), _vec(F, b), _vec(F, c)
    D = _det(F, va, vb)
    lam = F.div(_det(F, vc, vb), D)
    mu = F.div(_det(F, va, vc), D)
    return LinearFractionalMap.make(F, F.mul(lam, va[0]), F.mul(mu, vb[0]), F.mul(lam, va[1]), F.mul(mu, vb[1]))


def triple_map_closed_form(field: GF2m, a: int, b: int, c: int) -> LinearFractionalMap:
    """[[a(b-c), b(c-a)], [b-c, c-a]] for finite a, b, c."""
    F = field
    return LinearFractionalMap.make(F, F.mul(a, b ^ c), F.mul(b, c ^ a), b ^ c, c ^ a)


def projective_points(field: GF2m) -> list[int]:
    return [INF] + list(range(field.size))


def pgl2_maps(field: GF2m) -> list[LinearFractionalMap]:
    """Every normalized invertible map over ``field``."""
    F = field
    out = []
    for b, c, d in itertools.product(range(F.size), repeat=3):
        if d ^ F.mul(b, c):
            out.append(LinearFractionalMap(F, 1, b, c, d))
    for c, d in itertools.product(range(1, F.size), range(F.size)):
        out.append(LinearFractionalMap(F, 0, 1, c, d))
    return out


def verify_pgl2_order(q: int) -> dict:
    """Count PGL_2(GF(q)) by enumeration and check sharp 3-transitivity on triples.

    Every normalized invertible matrix is applied to (INF, 0, 1); the images
    must be pairwise distinct ordered triples covering all of them, and each
    must agree with :func:`triple_map` and, for finite triples, the closed form.
    """
    F = make_field(_log2(q))
    maps = pgl2_maps(F)
    images = {}
    clash = None
    formula_mismatch = None
    for m in maps:
        tri = (m(INF), m(0), m(1))
        if tri in images and clash is None:
            clash = list(tri)
        images[tri] = m
        if triple_map(F, *tri) != m and formula_mismatch is None:
            formula_mismatch = list(tri)
        if INF not in tri and triple_map_closed_form(F, *tri) != m and formula_mismatch is None:
            formula_mismatch = list(tri)
    n_triples = (q + 1) * q * (q - 1)
    ok = len(maps) == n_triples and len(images) == n_triples and clash is None and formula_mismatch is None
    return {"pass": ok, "q": q, "maps": len(maps), "expected": n_triples, "distinct_triples": len(images),
            "clash": clash, "formula_mismatch": formula_mismatch}


# ---------------------------------------------------------------------------
# The stabilizer of U_{q+1}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizerElement:
    kind: str
    u0: int
    c: int | None
    as_map: LinearFractionalMap

    def to_json(self, T: Tower | None = None) -> dict:
        d = {"kind": self.kind, "u0": self.u0, "c": self.c, "matrix": list(self.as_map.entries)}
        if T is not None and self.kind != "word":
            d["u0_index"] = unit_index(T, self.u0)
        return d


def unit_index(T: Tower, u: int) -> int:
    """j with u = beta^j."""
    F = T.gfq2
    lg = F.log(u)
    if lg % (T.q - 1):
        raise InvalidArgument(f"{u} is not on the unit circle")
    return lg // (T.q - 1)


def kind_I(T: Tower, u0: int) -> StabilizerElement:
    """u -> u0 u."""
    return StabilizerElement("I", u0, None, LinearFractionalMap.make(T.gfq2, u0, 0, 0, 1))


def kind_II(T: Tower, u0: int = 1) -> StabilizerElement:
    """u -> u0 / u."""
    return StabilizerElement("II", u0, None, LinearFractionalMap.make(T.gfq2, 0, u0, 1, 0))


def kind_III(T: Tower, c: int, u0: int = 1) -> StabilizerElement:
    """u -> (u + c^q u0)/(c u + u0), c nonzero and off the circle."""
    F = T.gfq2
    if c == 0 or T.in_unit_circle(c):
        raise InvalidArgument("c must be nonzero and not a (q+1)-th root of unity")
    cq = F.pow(c, T.q)
    return StabilizerElement("III", u0, c, LinearFractionalMap.make(F, 1, F.mul(cq, u0), c, u0))


def random_unit(T: Tower, rng: np.random.Generator) -> int:
    return T.gfq2.pow(T.beta, int(rng.integers(T.n)))


def random_off_circle(T: Tower, rng: np.random.Generator) -> int:
    while True:
        c = int(rng.integers(1, T.gfq2.size))
        if not T.in_unit_circle(c):
            return c


def unit_permutation(T: Tower, m: LinearFractionalMap) -> np.ndarray:
    """Index permutation j -> j' with m(beta^j) = beta^j'; raises if U is not preserved."""
    F = T.gfq2
    perm = np.empty(T.n, dtype=np.int64)
    for j in range(T.n):
        y = m(F.pow(T.beta, j))
        if y == INF or not T.in_unit_circle(y):
            raise InvalidArgument(f"map sends beta^{j} off the unit circle")
        perm[j] = unit_index(T, y)
    if len(np.unique(perm)) != T.n:
        raise InvalidArgument("map is not injective on the unit circle")
    return perm


def stabilizer_sample(q: int, count: int, seed: int = 0, kinds=("I", "II", "III"),
                      word_length: int = 0) -> list[StabilizerElement]:
    """``count`` random elements of each requested kind.

    With ``word_length > 0`` the kind "word" is also available: a product of
    that many random generators, recorded with kind "word".  Every returned
    element has been checked to permute U_{q+1}.
    """
    T = tower(_log2(q))
    rng = np.random.default_rng(seed)

    def draw(kind: str) -> StabilizerElement:
        if kind == "I":
            return kind_I(T, random_unit(T, rng))
        if kind == "II":
            return kind_II(T, random_unit(T, rng))
        if kind == "III":
            return kind_III(T, random_off_circle(T, rng), random_unit(T, rng))
        if kind == "word":
            if word_length < 1:
                raise InvalidArgument("kind 'word' needs word_length >= 1")
            parts = [draw(("I", "II", "III")[int(rng.integers(3))]) for _ in range(word_length)]
            return StabilizerElement("word", 0, None, reduce(lambda x, y: x @ y, (p.as_map for p in parts)))
        raise InvalidArgument(f"unknown kind {kind!r}")

    out = []
    for kind in kinds:
        for _ in range(count):
            el = draw(kind)
            unit_permutation(T, el.as_map)
            out.append(el)
    return out


def enumerate_stabilizer(T: Tower) -> list[StabilizerElement]:
    """All elements of the three kinds; pairwise distinct as maps when the classification is complete."""
    F = T.gfq2
    U = T.unit_circle()
    out = [kind_I(T, u) for u in U] + [kind_II(T, u) for u in U]
    for c in range(1, F.size):
        if not T.in_unit_circle(c):
            out.extend(kind_III(T, c, u) for u in U)
    return out


def generators(T: Tower, extra_c: int = 2, seed: int = 0) -> list[StabilizerElement]:
    """u -> beta u, u -> 1/u and a few u -> (u + c^q)/(cu + 1)."""
    rng = np.random.default_rng(seed)
    gens = [kind_I(T, T.beta), kind_II(T, 1)]
    gens += [kind_III(T, random_off_circle(T, rng)) for _ in range(extra_c)]
    return gens


def group_closure(perms: list[np.ndarray], limit: int = 1 << 20) -> set[tuple[int, ...]]:
    """All products of the given permutations (as tuples)."""
    n = len(perms[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [np.arange(n)]
    gens = [np.asarray(p) for p in perms]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                r = g[p]
                key = tuple(int(x) for x in r)
                if key not in seen:
                    seen.add(key)
                    nxt.append(r)
                    if len(seen) > limit:
                        raise InvalidArgument("group larger than the closure limit")
        frontier = nxt
    return seen


def verify_stabilizer_structure(h: int, seed: int = 0) -> dict:
    """Full check at small h: the three kinds give exactly (q+1)q(q-1) distinct maps,
    equal to the group generated by the generator families, acting sharply
    3-transitively on the unit circle."""
    T = quaternary_tower(h)
    q, n = T.q, T.n
    elems = enumerate_stabilizer(T)
    maps = {e.as_map for e in elems}
    perms_all = {tuple(int(x) for x in unit_permutation(T, e.as_map)) for e in elems}
    gens = generators(T, seed=seed)
    closure = group_closure([unit_permutation(T, g.as_map) for g in gens])
    base = (0, 1, 2)
    triples = {tuple(p[i] for i in base) for p in closure}
    order = (q + 1) * q * (q - 1)
    ok = len(maps) == order and perms_all == closure and len(triples) == order == n * (n - 1) * (n - 2)
    return {"pass": ok, "h": h, "order": order, "distinct_maps": len(maps),
            "closure_size": len(closure), "closure_equals_kinds": perms_all == closure,
            "triples_reached": len(triples)}


def triple_search(T: Tower, source, target, gens: list[StabilizerElement],
                  max_length: int = 64) -> list[int] | None:
    """Shortest generator word w (indices into ``gens``) with w(source) = target.

    Breadth-first over ordered triples of coordinate indices; returns the
    word in application order (first element applied first).
    """
    n = T.n
    perms = [unit_permutation(T, g.as_map) for g in gens]
    enc = lambda x, y, z: (x * n + y) * n + z  # noqa: E731
    size = n ** 3
    parent = np.full(size, -1, dtype=np.int64)
    via = np.full(size, -1, dtype=np.int64)
    start, goal = enc(*source), enc(*target)
    parent[start] = start
    frontier = np.array([start], dtype=np.int64)
    depth = 0
    while frontier.size and parent[goal] < 0 and depth < max_length:
        x, r = np.divmod(frontier, n * n)
        y, z = np.divmod(r, n)
        nxt = []
        for gi, p in enumerate(perms):
            img = (p[x] * n + p[y]) * n + p[z]
            fresh = parent[img] < 0
            img, src = img[fresh], frontier[fresh]
            img, first = np.unique(img, return_index=True)
            parent[img] = src[first]
            via[img] = gi
            nxt.append(img)
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.zeros(0, dtype=np.int64)
        depth += 1
    if parent[goal] < 0:
        return None
    word = []
    cur = goal
    while cur != start:
        word.append(int(via[cur]))
        cur = int(parent[cur])
    return word[::-1]


def verify_three_transitivity(h: int, trials: int = 100, seed: int = 0, max_length: int = 64) -> dict:
    """Random ordered triples of distinct unit-circle points are matched by generator words.

    Each found word is re-checked by composing its field maps and applying
    them to the source points directly.
    """
    T = quaternary_tower(h)
    F = T.gfq2
    rng = np.random.default_rng(seed)
    gens = generators(T, seed=seed)
    lengths = []
    failure = None
    for _ in range(trials):
        src = tuple(int(x) for x in rng.choice(T.n, 3, replace=False))
        dst = tuple(int(x) for x in rng.choice(T.n, 3, replace=False))
        word = triple_search(T, src, dst, gens, max_length)
        if word is None:
            failure = {"source": src, "target": dst, "reason": "no word within bound"}
            break
        m = LinearFractionalMap.identity(F)
        for gi in word:
            m = gens[gi].as_map @ m
        got = tuple(unit_index(T, m(F.pow(T.beta, j))) for j in src)
        if got != dst:
            failure = {"source": src, "target": dst, "reason": "word does not map source to target"}
            break
        lengths.append(len(word))
    return {"pass": failure is None, "h": h, "trials": trials,
            "generators": [g.to_json(T) for g in gens],
            "max_word_length": max(lengths) if lengths else None, "failure": failure}


# ---------------------------------------------------------------------------
# Block invariance
# ---------------------------------------------------------------------------

def _packed_rows(bits: np.ndarray) -> np.ndarray:
    """Sorted 1-D array of opaque row keys for a (b, n) boolean incidence matrix."""
    packed = np.ascontiguousarray(np.packbits(bits, axis=1))
    return np.sort(packed.view(f"V{packed.shape[1]}").ravel())


def verify_block_invariance(design: SupportDesign, elements: list[StabilizerElement], T: Tower) -> dict:
    """Check {sigma(B) : B in blocks} = blocks for every sigma, with coordinate j = beta^j."""
    if design.v != T.n:
        raise InvalidArgument("design points must be the q+1 coordinates")
    bits = np.zeros((design.b, T.n), dtype=bool)
    if design.b:
        bits[np.arange(design.b)[:, None], design.blocks] = True
    ref = _packed_rows(bits)
    ref_set = {tuple(r) for r in design.blocks.tolist()}
    violations = []
    for el in elements:
        perm = unit_permutation(T, el.as_map)
        img = np.zeros_like(bits)
        img[:, perm] = bits
        if not np.array_equal(_packed_rows(img), ref):
            bad = next(B for B in (tuple(sorted(int(perm[p]) for p in row)) for row in design.blocks.tolist())
                       if B not in ref_set)
            violations.append({"element": el.to_json(T), "image_block": list(bad)})
    return {"pass": not violations, "k": design.k, "blocks": design.b,
            "elements": len(elements), "violations": violations}


# ---------------------------------------------------------------------------
# Exponent lemmas behind the kind-III invariance
# ---------------------------------------------------------------------------

def lemma_weight(h: int) -> int:
    """sum_{i < 2h} 2 * 4^i."""
    return sum(2 * 4 ** i for i in range(2 * h))


def _spectrum_matrix(T: Tower) -> np.ndarray:
    """V[l, j] = beta^(-j l); with n odd, b = V g inverts evaluation on the unit circle."""
    F = T.gfq2
    n = T.n
    e = (-np.outer(np.arange(n), np.arange(n))) % n
    pw = np.array([F.pow(T.beta, i) for i in range(n)], dtype=np.int64)
    return pw[e]


def transformed_values(T: Tower, coeffs: dict[int, int], c: int, w: int) -> np.ndarray:
    """g(beta^j) = (c beta^j + 1)^w f((beta^j + c^q)/(c beta^j + 1))."""
    F = T.gfq2
    sigma = kind_III(T, c).as_map
    out = np.zeros(T.n, dtype=np.int64)
    for j in range(T.n):
        u = F.pow(T.beta, j)
        x = sigma(u)
        fx = 0
        for e, a in coeffs.items():
            fx ^= F.mul(a, F.pow(x, e))
        out[j] = F.mul(F.pow(F.mul(c, u) ^ 1, w), fx)
    return out


def spectrum(T: Tower, values: np.ndarray, V: np.ndarray | None = None) -> np.ndarray:
    V = _spectrum_matrix(T) if V is None else V
    return matmul(T.gfq2, V, np.asarray(values, dtype=np.int64).reshape(-1, 1))[:, 0]


def expansion_exponents(h: int, digits) -> tuple[set[int], set[int]]:
    """Monomial exponents of x^(q^2-1-qe)(x+1)^(w+(q-1)e-q^2+1) over GF(2).

    Returns (by Lucas' theorem, by the closed digit formula) for
    e = 1 + sum digits[i] 4^i.
    """
    q = 4 ** h
    w = lemma_weight(h)
    e = 1 + sum(d * 4 ** i for i, d in enumerate(digits))
    A = q * q - 1 - q * e
    B = w + (q - 1) * e - q * q + 1
    if A < 0 or B < 0:
        raise AssertionError("negative exponent in the expansion")
    lucas = {A + k for k in range(B + 1) if k & B == k}
    formula = set()
    ranges = [range(3 - d) for d in digits] + [range(d) for d in digits]
    for v in itertools.product(*ranges):
        lo, hi = v[:h], v[h:]
        formula.add(sum(vi * 4 ** i for i, vi in enumerate(lo))
                    + sum((3 - digits[i] + hi[i]) * 4 ** (h + i) for i in range(h)) - 1)
    return lucas, formula


def verify_expansion_lemmas(h: int) -> dict:
    """Binomial expansion and remainder-mod-(q+1) claims, for every e in E."""
    n = 4 ** h + 1
    E = set(build_E(h))
    bad_expansion = bad_remainder = None
    for digits in itertools.product((1, 2), repeat=h):
        lucas, formula = expansion_exponents(h, digits)
        if lucas != formula and bad_expansion is None:
            bad_expansion = list(digits)
        for ell in formula:
            if ell % n not in E and bad_remainder is None:
                bad_remainder = {"digits": list(digits), "ell": ell}
    return {"pass": bad_expansion is None and bad_remainder is None, "h": h,
            "expansion_counterexample": bad_expansion, "remainder_counterexample": bad_remainder}


def verify_spectrum_lemma(h: int, trials: int = 500, seed: int = 0, exhaustive: bool | None = None) -> dict:
    """Spectrum of the kind-III transform of f = sum_{e in E} a_e u^e stays inside E.

    At h = 1 (or with ``exhaustive``) every coefficient pair in GF(q^2) and
    every admissible c is tried; otherwise ``trials`` seeded random (f, c).
    The expansion and remainder lemmas are checked alongside.
    """
    if not 1 <= h <= 3:
        raise InvalidArgument("spectrum lemma check supports 1 <= h <= 3")
    T = quaternary_tower(h)
    F = T.gfq2
    E = build_E(h)
    in_E = np.zeros(T.n, dtype=bool)
    in_E[E] = True
    w = lemma_weight(h)
    V = _spectrum_matrix(T)
    pw = np.array([F.pow(T.beta, i) for i in range(T.n)], dtype=np.int64)
    inv_V = pw[np.outer(np.arange(T.n), np.arange(T.n)) % T.n]
    exhaustive = (h == 1) if exhaustive is None else exhaustive

    def cases():
        if exhaustive:
            cs = [c for c in range(1, F.size) if not T.in_unit_circle(c)]
            for coeffs in itertools.product(range(F.size), repeat=len(E)):
                for c in cs:
                    yield dict(zip(E, coeffs)), c
        else:
            rng = np.random.default_rng(seed)
            for _ in range(trials):
                coeffs = {e: int(a) for e, a in zip(E, rng.integers(0, F.size, len(E)))}
                yield coeffs, random_off_circle(T, rng)

    checked = 0
    failure = None
    for coeffs, c in cases():
        g = transformed_values(T, coeffs, c, w)
        b = spectrum(T, g, V)
        back = matmul(F, inv_V, b.reshape(-1, 1))[:, 0]
        checked += 1
        if not np.array_equal(back, g):
            failure = {"coeffs": coeffs, "c": c, "reason": "interpolation does not reproduce g"}
            break
        outside = np.flatnonzero((b != 0) & ~in_E)
        if outside.size:
            failure = {"coeffs": {str(k): v for k, v in coeffs.items()}, "c": c,
                       "exponent": int(outside[0])}
            break
    lemmas = verify_expansion_lemmas(h)
    return {"pass": failure is None and lemmas["pass"], "h": h, "mode": "exhaustive" if exhaustive else "random",
            "cases": checked, "seed": None if exhaustive else seed, "w": w, "E": E,
            "failure": failure, "expansion_lemmas": lemmas}
