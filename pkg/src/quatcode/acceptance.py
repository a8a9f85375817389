"""The acceptance suite: one function per criterion, each returning a result record.

Reference values quoted from the literature live in :data:`PUBLISHED`;
everything else is recomputed here through a second path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb
from typing import Callable

import numpy as np

from .codes import bch_bound, is_lcd, mds_family_code, singleton_bound
from .cyclotomic import verify_partition
from .designs import SupportDesign, all_supports, lambda_identity, verify_design
from .enumeration import blocks_to_masks
from .galois import quaternary_tower
from .projective import (
    stabilizer_sample,
    verify_block_invariance,
    verify_pgl2_order,
    verify_spectrum_lemma,
    verify_stabilizer_structure,
    verify_three_transitivity,
)
from .subfield import quaternary_code, quaternary_dual, quaternary_parent, subfield_subcode, verify_delsarte
from .weights import WeightDistribution, macwilliams, weight_distribution

# Published weight enumerators of the [4^h + 1, 2^h] quaternary codes.
PUBLISHED = {
    1: {0: 1, 5: 15},
    2: {0: 1, 12: 204, 16: 51},
    3: {0: 1, 44: 18720, 48: 16380, 52: 30240, 64: 195},
    4: {0: 1, 172: 28422144, 176: 25794576, 180: 258365184, 184: 234877440, 188: 1160570880,
        192: 469178172, 196: 1348867584, 200: 301985280, 204: 394752000, 208: 41942400,
        212: 30198528, 240: 12336, 256: 771},
}
PUBLISHED_DUAL_PARAMS = {2: (17, 13, 4), 3: (65, 57, 5), 4: (257, 241, 8)}
PUBLISHED_LAMBDAS = {(2, 12): 22, (3, 44): 1892}
# Expected from the incidence oracle and the block-count identity.
EXPECTED_DESIGNS = {(2, 12): (68, 22), (3, 44): (6240, 1892), (3, 48): (5460, 2162), (3, 52): (10080, 5100)}

BIG_BUDGET = 1 << 27
LONG_BUDGET = 1 << 32


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool | None
    detail: dict = dc_field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]

    def line(self) -> str:
        return f"[{self.status}] criterion {self.number}: {self.title} ({self.elapsed:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "status": self.status,
                "elapsed": round(self.elapsed, 3), "detail": self.detail}


def _counts_dict(dist: WeightDistribution) -> dict[int, int]:
    return dist.as_dict()


class Context:
    """Shared, lazily computed artifacts so criteria do not redo enumerations."""

    def __init__(self, seed: int = 1, workers: int | None = None):
        self.seed = seed
        self.workers = workers
        self._dist: dict[int, WeightDistribution] = {}
        self._designs: dict[tuple[str, int], dict[int, SupportDesign]] = {}

    def primal_distribution(self, h: int) -> WeightDistribution:
        if h not in self._dist:
            budget = LONG_BUDGET if h == 4 else None
            self._dist[h] = weight_distribution(quaternary_code(h), budget, self.workers)
        return self._dist[h]

    def primal_designs(self, h: int) -> dict[int, SupportDesign]:
        key = ("primal", h)
        if key not in self._designs:
            self._designs[key] = all_supports(quaternary_code(h), dist=self.primal_distribution(h),
                                              label=f"quaternary h={h}")
        return self._designs[key]

    @cached_property
    def dual_distribution_h2(self) -> WeightDistribution:
        return weight_distribution(quaternary_dual(2), BIG_BUDGET, self.workers)

    def dual_designs_h2(self) -> dict[int, SupportDesign]:
        key = ("dual", 2)
        if key not in self._designs:
            self._designs[key] = all_supports(quaternary_dual(2), budget=BIG_BUDGET,
                                              dist=self.dual_distribution_h2, label="subfield code h=2")
        return self._designs[key]


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------

EXHAUSTIVE_LIMIT = 1 << 24


def criterion_mds(ctx: Context) -> tuple[bool, dict]:
    rows = []
    ok = True
    for m in (2, 3, 4):
        q = 1 << m
        for u in range(1, q // 2 + 1):
            C = mds_family_code(q, u)
            n, k, d = q + 1, 2 * u - 1, q - 2 * u + 3
            row = {"m": m, "u": u, "expected": [n, k, d], "dimension": C.dimension, "lcd": is_lcd(C),
                   "bch": bch_bound(C), "singleton": singleton_bound(C.n, C.dimension)}
            good = C.n == n and C.dimension == k and row["lcd"] and row["bch"] == row["singleton"] == d
            if q ** k <= EXHAUSTIVE_LIMIT:
                dist = weight_distribution(C, EXHAUSTIVE_LIMIT, ctx.workers)
                row["method"] = "exhaustive"
                row["min_distance"] = dist.min_distance
                good = good and dist.min_distance == d
            else:
                row["method"] = "bch=singleton"
            row["pass"] = bool(good)
            ok = ok and good
            rows.append(row)
    return ok, {"codes": rows}


def criterion_quaternary(ctx: Context) -> tuple[bool, dict]:
    out = {}
    ok = True
    for h in (2, 3):
        dist = ctx.primal_distribution(h)
        Q = quaternary_code(h)
        expected_d = 2 * (4 ** h + 2) // 3
        good = (Q.dimension == 2 ** h and dist.min_distance == expected_d
                and _counts_dict(dist) == PUBLISHED[h])
        out[h] = {"n": Q.n, "k": Q.dimension, "d": dist.min_distance, "expected_d": expected_d,
                  "enumerator": dist.enumerator(), "matches_published": _counts_dict(dist) == PUBLISHED[h]}
        ok = ok and good
    return ok, out


def criterion_duals(ctx: Context) -> tuple[bool, dict]:
    out = {}
    ok = True
    for h in (2, 3):
        primal = ctx.primal_distribution(h)
        n = 4 ** h + 1
        k = n - 2 ** h
        dual = macwilliams(primal, n, 2 ** h, 4)
        D = quaternary_dual(h)
        params = (n, D.k, dual.min_distance)
        good = params == PUBLISHED_DUAL_PARAMS[h] and dual.total == 4 ** k
        out[h] = {"params": list(params), "expected": list(PUBLISHED_DUAL_PARAMS[h])}
        if h == 2:
            exhaustive = ctx.dual_distribution_h2
            same = exhaustive.counts == dual.counts
            out[h]["exhaustive_cross_check"] = same
            out[h]["exhaustive_codewords"] = str(exhaustive.total)
            good = good and same
        ok = ok and good
    return ok, out


def criterion_h1_oracle(ctx: Context) -> tuple[bool, dict]:
    Q = quaternary_code(1)
    dist = ctx.primal_distribution(1)
    n, k = Q.n, Q.dimension
    d = n - k + 1
    # MDS weight formula for the lowest weight: A_d = C(n, d)(q - 1)
    mds_prediction = {0: 1, d: comb(n, d) * 3}
    oracle = _counts_dict(dist)
    ok = dist.total == 16 and (n, k) == (5, 2) and oracle == mds_prediction
    return ok, {
        "oracle_enumerator": dist.enumerator(),
        "published_enumerator": "1 + 15z^5",
        "discrepancy": oracle != PUBLISHED[1],
        "note": "a [5,2] code over GF(4) has d <= 4 by the Singleton bound, so weight 5 for all "
                "nonzero words is impossible; the exhaustive oracle gives weight 4",
    }


def criterion_delsarte(ctx: Context) -> tuple[bool, dict]:
    out = {}
    ok = True
    for h in (1, 2, 3, 4):
        r = verify_delsarte(quaternary_parent(h), emb=quaternary_tower(h).four_in_q)
        out[f"h={h}"] = r
        ok = ok and r["pass"]
    T = quaternary_tower(2)
    sub = subfield_subcode(quaternary_parent(2), emb=T.four_in_q)
    sub_dist = weight_distribution(sub, EXHAUSTIVE_LIMIT, ctx.workers)
    sup = quaternary_dual(2)
    sup_d = macwilliams(ctx.primal_distribution(2), 17, 4, 4).min_distance
    sub_params = (sub.n, sub.dimension, sub_dist.min_distance)
    sup_params = (sup.n, sup.k, sup_d)
    proper = sub.linear.is_subcode_of(sup) and sub.dimension < sup.k
    good = sub_params == (17, 5, 9) and sup_params == (17, 13, 4) and proper
    out["containment"] = {"subcode": list(sub_params), "supercode": list(sup_params), "proper": proper}
    return ok and good, out


def _sampled_incidence_oracle(design: SupportDesign, t: int, samples: int, rng) -> set[int]:
    """Block counts through random t-subsets, by direct mask containment."""
    masks = blocks_to_masks(design.blocks, design.v)
    seen = set()
    for _ in range(samples):
        pts = rng.choice(design.v, t, replace=False)
        m = blocks_to_masks(np.sort(pts)[None, :], design.v)[0]
        seen.add(int(((masks & m) == m).all(axis=1).sum()))
    return seen


def criterion_designs(ctx: Context) -> tuple[bool, dict]:
    rng = np.random.default_rng(ctx.seed)
    out = {"primal": [], "dual_h2": []}
    ok = True
    for h in (2, 3):
        q = 4 ** h
        for k, design in ctx.primal_designs(h).items():
            if not 1 <= k < q:
                continue
            v = verify_design(design, 3)
            oracle = _sampled_incidence_oracle(design, 3, 200, rng)
            row = {"h": h, "k": k, "b": design.b, "codewords": design.codewords,
                   "lambda": v.lam, "identity": lambda_identity(design, v), "oracle_values": sorted(oracle)}
            good = v.lam is not None and row["identity"] and oracle == {v.lam}
            if (h, k) in EXPECTED_DESIGNS:
                good = good and (design.b, v.lam) == EXPECTED_DESIGNS[(h, k)]
            if (h, k) in PUBLISHED_LAMBDAS:
                good = good and v.lam == PUBLISHED_LAMBDAS[(h, k)]
            row["pass"] = bool(good)
            ok = ok and good
            out["primal"].append(row)
    for k, design in ctx.dual_designs_h2().items():
        if not 3 <= k < 16:
            continue
        v = verify_design(design, 3)
        good = v.lam is not None and lambda_identity(design, v)
        out["dual_h2"].append({"k": k, "b": design.b, "lambda": v.lam, "pass": bool(good)})
        ok = ok and good
    return ok, out


def criterion_lemmas(ctx: Context) -> tuple[bool, dict]:
    out = {}
    ok = True
    for h in range(1, 9):
        checks = verify_partition(h)
        failed = [name for name, r in checks.items() if not r["pass"]]
        out[f"h={h}"] = {"checks": len(checks), "failed": failed}
        ok = ok and not failed
    return ok, out


def criterion_group(ctx: Context) -> tuple[bool, dict]:
    out = {"invariance": [], "spectrum": [], "pgl2": [], "transitivity": [], "structure": []}
    ok = True
    for h in (2, 3):
        T = quaternary_tower(h)
        elements = stabilizer_sample(T.q, 200, ctx.seed + h)
        designs = list(ctx.primal_designs(h).values())
        if h == 2:
            designs += [d for k, d in ctx.dual_designs_h2().items() if 3 <= k < 16]
        for d in designs:
            r = verify_block_invariance(d, elements, T)
            out["invariance"].append({"h": h, "k": d.k, "source": d.source.get("code"), "blocks": d.b,
                                      "elements": r["elements"], "pass": r["pass"],
                                      "violations": r["violations"][:3]})
            ok = ok and r["pass"]
    for h in (1, 2, 3):
        r = verify_spectrum_lemma(h, 500, ctx.seed)
        out["spectrum"].append({k: r[k] for k in ("h", "mode", "cases", "pass", "failure")})
        ok = ok and r["pass"]
    for q in (4, 16):
        r = verify_pgl2_order(q)
        out["pgl2"].append(r)
        ok = ok and r["pass"]
    for h in (2, 3):
        r = verify_three_transitivity(h, 100, ctx.seed)
        out["transitivity"].append({k: r[k] for k in ("h", "trials", "max_word_length", "pass", "failure")})
        ok = ok and r["pass"]
    for h in (1, 2):
        r = verify_stabilizer_structure(h, ctx.seed)
        out["structure"].append(r)
        ok = ok and r["pass"]
    return ok, out


def criterion_long(ctx: Context) -> tuple[bool, dict]:
    dist = ctx.primal_distribution(4)
    dual = macwilliams(dist, 257, 16, 4)
    match = _counts_dict(dist) == PUBLISHED[4]
    return match and dual.min_distance == 8, {
        "enumerator": dist.enumerator(), "matches_published": match,
        "dual_min_distance": dual.min_distance, "enumeration_seconds": round(dist.elapsed, 1),
    }


CRITERIA: list[tuple[int, str, Callable[[Context], tuple[bool, dict]]]] = [
    (1, "MDS family parameters and LCD property", criterion_mds),
    (2, "quaternary code parameters and weight enumerators", criterion_quaternary),
    (3, "dual parameters via MacWilliams with exhaustive cross-check", criterion_duals),
    (4, "h=1 exhaustive oracle and published-value discrepancy", criterion_h1_oracle),
    (5, "Delsarte duality and proper subcode containment", criterion_delsarte),
    (6, "support 3-designs on both sides", criterion_designs),
    (7, "T / T^c partition lemmas for h <= 8", criterion_lemmas),
    (8, "stabilizer action, spectrum lemma and PGL2 order", criterion_group),
    (9, "h=4 weight enumerator (long run)", criterion_long),
]


def run_acceptance(long: bool = False, seed: int = 1, workers: int | None = None,
                   only: list[int] | None = None,
                   on_result: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    """Run the criteria in order; criterion 9 is skipped unless ``long``."""
    ctx = Context(seed, workers)
    results = []
    for number, title, fn in CRITERIA:
        if only is not None and number not in only:
            continue
        if number == 9 and not long:
            res = CriterionResult(number, title, None, {"reason": "needs --long"})
        else:
            t0 = time.perf_counter()
            try:
                passed, detail = fn(ctx)
            except Exception as exc:  # a crash is a failed criterion, reported not raised
                passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
            res = CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t0)
        results.append(res)
        if on_result is not None:
            on_result(res)
    return results


def all_passed(results: list[CriterionResult]) -> bool:
    return all(r.passed is not False for r in results)
