"""Support designs of linear codes and exact t-design verification.

Points are coordinate indices 0..n-1.  A block is the sorted support of a
codeword; scalar multiples share a support, so blocks are deduplicated and
the number of codewords behind them is kept alongside.

t-subsets are ranked in the colexicographic combinatorial number system,
rank({b_0 < ... < b_{t-1}}) = sum_i C(b_i, i + 1), which makes the incidence
counters one flat integer array of length C(v, t).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from .codes import CyclicCode, LinearCode, as_linear
from .enumeration import blocks_to_masks, collect_support_masks, masks_to_blocks
from .errors import InvalidArgument, ResourceLimit
from .weights import WeightDistribution, default_budget

CHUNK_INCREMENTS = 1 << 22


@dataclass(frozen=True, eq=False)
class SupportDesign:
    v: int
    k: int
    blocks: np.ndarray
    source: dict = dc_field(default_factory=dict)
    codewords: int | None = None

    @property
    def b(self) -> int:
        return int(len(self.blocks))

    def block_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(x) for x in row) for row in self.blocks}

    def to_json(self, verdict: "DesignVerdict | None" = None, emit_blocks: bool = False) -> dict:
        d = {"v": self.v, "k": self.k, "b": str(self.b)}
        if self.codewords is not None:
            d["codewords"] = str(self.codewords)
        if verdict is not None:
            d["t"] = verdict.t
            d["lambda"] = None if verdict.lam is None else str(verdict.lam)
            d["counterexample"] = verdict.counterexample
        if self.source:
            d["source"] = self.source
        if emit_blocks:
            d["blocks"] = self.blocks.tolist()
        return d


@dataclass(frozen=True)
class DesignVerdict:
    t: int
    lam: int | None
    counterexample: list[int] | None = None

    @property
    def is_design(self) -> bool:
        return self.lam is not None

    def to_json(self) -> dict:
        return {"t": self.t, "lambda": None if self.lam is None else str(self.lam),
                "counterexample": self.counterexample}


def _canonical(blocks: np.ndarray, k: int) -> np.ndarray:
    blocks = np.asarray(blocks, dtype=np.int64).reshape(-1, k)
    if len(blocks) == 0:
        return blocks
    return np.unique(np.sort(blocks, axis=1), axis=0)


def design_from_blocks(v: int, blocks, k: int | None = None, source: dict | None = None) -> SupportDesign:
    blocks = np.asarray(blocks, dtype=np.int64)
    if k is None:
        if blocks.ndim != 2:
            raise InvalidArgument("cannot infer block size from an empty block list")
        k = blocks.shape[1]
    blocks = _canonical(blocks, k)
    if blocks.size and (blocks.min() < 0 or blocks.max() >= v):
        raise InvalidArgument("block points out of range")
    if blocks.size and (np.diff(blocks, axis=1) == 0).any():
        raise InvalidArgument("blocks must not repeat a point")
    return SupportDesign(v, k, blocks, source or {})


def all_supports(code: LinearCode | CyclicCode, weights=None, budget: int | None = None,
                 dist: WeightDistribution | None = None, label: str = "") -> dict[int, SupportDesign]:
    """Support designs for every weight (or the given ones) in one codebook pass."""
    C = as_linear(code)
    budget = default_budget() if budget is None else budget
    total = C.field.size ** C.k
    if total > budget:
        raise ResourceLimit(f"{total} codewords exceed the budget of {budget}")
    masks = collect_support_masks(C.field, C.generator_matrix, weights) if C.k else {}
    out = {}
    for w, m in masks.items():
        blocks = masks_to_blocks(m, C.n)
        cw = None if dist is None else dist.counts[w]
        out[w] = SupportDesign(C.n, w, blocks, {"code": label, "weight": w}, cw)
    if weights is not None:
        for w in weights:
            w = int(w)
            if w not in out:
                out[w] = SupportDesign(C.n, w, np.zeros((0, w), dtype=np.int64), {"code": label, "weight": w}, 0)
    return dict(sorted(out.items()))


def supports(code: LinearCode | CyclicCode, k: int, budget: int | None = None, label: str = "") -> SupportDesign:
    """Distinct supports of the weight-``k`` codewords; empty when A_k = 0."""
    return all_supports(code, [k], budget, label=label)[k]


# ---------------------------------------------------------------------------
# Incidence counting
# ---------------------------------------------------------------------------

def _binom_table(v: int, t: int) -> np.ndarray:
    tab = np.zeros((v + 1, t + 1), dtype=np.int64)
    for x in range(v + 1):
        for i in range(t + 1):
            tab[x, i] = comb(x, i)
    return tab


def rank_subsets(subsets: np.ndarray, v: int) -> np.ndarray:
    """Colex ranks of sorted t-subsets, shape (..., t) -> (...)."""
    subsets = np.asarray(subsets, dtype=np.int64)
    t = subsets.shape[-1]
    tab = _binom_table(v, t)
    return sum(tab[subsets[..., i], i + 1] for i in range(t))


def unrank_subset(r: int, t: int) -> list[int]:
    out = []
    for i in range(t, 0, -1):
        x = i - 1
        while comb(x + 1, i) <= r:
            x += 1
        out.append(x)
        r -= comb(x, i)
    return out[::-1]


def incidence_counts(design: SupportDesign, t: int) -> np.ndarray:
    """Number of blocks through each t-subset, indexed by colex rank."""
    v, k = design.v, design.k
    size = comb(v, t)
    counts = np.zeros(size, dtype=np.int64)
    if design.b == 0 or t == 0:
        counts[:] = design.b
        return counts
    tab = _binom_table(v, t)
    pos = np.array(list(itertools.combinations(range(k), t)), dtype=np.int64)
    per_block = len(pos)
    step = max(1, CHUNK_INCREMENTS // per_block)
    for s in range(0, design.b, step):
        blk = design.blocks[s:s + step]
        r = np.zeros((len(blk), per_block), dtype=np.int64)
        for i in range(t):
            r += tab[blk[:, pos[:, i]], i + 1]
        counts += np.bincount(r.ravel(), minlength=size)
    return counts


def verify_design(design: SupportDesign, t: int) -> DesignVerdict:
    """Exact check that every t-subset of points lies in the same number of blocks."""
    if not 0 <= t <= design.k <= design.v:
        raise InvalidArgument(f"need 0 <= t <= k <= v, got t={t}, k={design.k}, v={design.v}")
    counts = incidence_counts(design, t)
    bad = np.flatnonzero(counts != counts[0])
    if len(bad):
        return DesignVerdict(t, None, unrank_subset(int(bad[0]), t))
    lam = int(counts[0])
    if design.b * comb(design.k, t) != lam * comb(design.v, t):
        raise AssertionError("incidence count violates b*C(k,t) = lambda*C(v,t)")
    return DesignVerdict(t, lam, None)


def lambda_identity(design: SupportDesign, verdict: DesignVerdict) -> bool:
    """b * C(k, t) == lambda * C(v, t) in exact integers."""
    if verdict.lam is None:
        return False
    return design.b * comb(design.k, verdict.t) == verdict.lam * comb(design.v, verdict.t)


def design_sweep(code: LinearCode | CyclicCode, t: int = 3, max_weight: int | None = None,
                 budget: int | None = None, label: str = "",
                 dist: WeightDistribution | None = None) -> list[tuple[SupportDesign, DesignVerdict]]:
    """Verify the support design of every nonzero weight below ``max_weight``."""
    designs = all_supports(code, budget=budget, dist=dist, label=label)
    out = []
    for w, d in designs.items():
        if w < t or (max_weight is not None and w >= max_weight):
            continue
        out.append((d, verify_design(d, t)))
    return out


# ---------------------------------------------------------------------------
# Assmus-Mattson
# ---------------------------------------------------------------------------

def _am_bound(n: int, d: int, q: int) -> int:
    """Largest w <= n with w - floor((w + q - 2) / (q - 1)) < d."""
    best = 0
    for w in range(n + 1):
        if w - (w + q - 2) // (q - 1) < d:
            best = w
    return best


@dataclass(frozen=True)
class AssmusMattsonReport:
    t: int
    n: int
    d: int
    dual_d: int
    w: int
    dual_w: int
    s: int
    applicable: bool
    condition_holds: bool
    primal_weights: tuple[int, ...]
    dual_weights: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "t": self.t, "n": self.n, "d": self.d, "dual_d": self.dual_d, "w": self.w,
            "dual_w": self.dual_w, "s": self.s, "applicable": self.applicable,
            "condition_holds": self.condition_holds,
            "guaranteed_primal_weights": list(self.primal_weights),
            "guaranteed_dual_weights": list(self.dual_weights),
        }


def assmus_mattson(primal: WeightDistribution, dual: WeightDistribution, t: int) -> AssmusMattsonReport:
    """Evaluate the Assmus-Mattson hypothesis; a failure says nothing about the designs."""
    n, q = primal.n, primal.field_size
    d, dd = primal.min_distance, dual.min_distance
    w, ww = _am_bound(n, d, q), _am_bound(n, dd, q)
    s = sum(1 for i in range(1, n - t + 1) if dual.counts[i])
    applicable = 0 < t < d
    holds = applicable and s <= d - t
    pw = tuple(i for i in range(d, w + 1) if primal.counts[i]) if holds else ()
    dw = tuple(i for i in range(dd, min(n - t, ww) + 1) if dual.counts[i]) if holds else ()
    return AssmusMattsonReport(t, n, d, dd, w, ww, s, applicable, holds, pw, dw)


def complete_design(v: int, k: int) -> SupportDesign:
    blocks = np.array(list(itertools.combinations(range(v), k)), dtype=np.int64).reshape(-1, k)
    return SupportDesign(v, k, blocks, {"code": "complete"})


def design_masks(design: SupportDesign) -> np.ndarray:
    return blocks_to_masks(design.blocks, design.v)
