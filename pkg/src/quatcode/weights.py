"""Weight distributions, minimum distances and the MacWilliams transform.

Counts are exact Python ints throughout; nothing passes through floats.
"""

from __future__ import annotations

import csv
import io
import os
import time
from dataclasses import dataclass, field as dc_field
from math import comb

from .codes import CyclicCode, LinearCode, as_linear, bch_bound, singleton_bound
from .enumeration import count_weights
from .errors import ResourceLimit

DEFAULT_BUDGET = 1 << 24


def default_budget() -> int:
    env = os.environ.get("QUATCODE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    field_size: int
    counts: tuple[int, ...]
    provenance: str = "exhaustive"
    elapsed: float = dc_field(default=0.0, compare=False)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def dimension(self) -> int:
        k, t = 0, 1
        while t < self.total:
            t *= self.field_size
            k += 1
        if t != self.total:
            raise ValueError("total is not a power of the field size")
        return k

    @property
    def min_distance(self) -> int | None:
        """Smallest positive weight present; None for the zero code."""
        return next((i for i, a in enumerate(self.counts) if i and a), None)

    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.counts) if a]

    def enumerator(self) -> str:
        """Weight enumerator as ``1 + 204z^12 + 51z^16``."""
        terms = []
        for i, a in enumerate(self.counts):
            if a:
                terms.append(str(a) if i == 0 else f"{a}z^{i}")
        return " + ".join(terms)

    def as_dict(self) -> dict[int, int]:
        return {i: a for i, a in enumerate(self.counts) if a}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field_size": self.field_size,
            "counts": {str(i): str(a) for i, a in enumerate(self.counts) if a},
            "provenance": self.provenance,
            "elapsed": round(self.elapsed, 6),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["weight", "count"])
        for i, a in enumerate(self.counts):
            if a:
                w.writerow([i, a])
        return buf.getvalue()


def weight_distribution(code: LinearCode | CyclicCode, budget: int | None = None,
                        workers: int | None = None) -> WeightDistribution:
    """Exact distribution by enumerating all codewords.

    Raises :class:`ResourceLimit` when |C| exceeds ``budget``; callers can then
    enumerate the dual and apply :func:`macwilliams`.
    """
    C = as_linear(code)
    budget = default_budget() if budget is None else budget
    total = C.field.size ** C.k
    if total > budget:
        raise ResourceLimit(f"{total} codewords exceed the budget of {budget}")
    t0 = time.perf_counter()
    if C.k == 0:
        counts = [1] + [0] * C.n
    else:
        counts = [int(x) for x in count_weights(C.field, C.generator_matrix, workers=workers)]
    return WeightDistribution(C.n, C.field.size, tuple(counts), "exhaustive", time.perf_counter() - t0)


def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum((-1) ** s * (q - 1) ** (j - s) * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams(dist: WeightDistribution, n: int | None = None, k: int | None = None,
                q: int | None = None) -> WeightDistribution:
    """Distribution of the dual code, A'_j = |C|^-1 sum_i A_i K_j(i).

    ``k`` is the dimension of the code described by ``dist`` (not of its
    dual); by default it is read off from sum A_i.
    """
    n = dist.n if n is None else n
    q = dist.field_size if q is None else q
    size = dist.total if k is None else q ** k
    t0 = time.perf_counter()
    out = []
    for j in range(n + 1):
        s = sum(a * krawtchouk(j, i, n, q) for i, a in enumerate(dist.counts) if a)
        if s % size:
            raise ValueError(f"non-integral dual count at weight {j}; input is not a linear code distribution")
        out.append(s // size)
    return WeightDistribution(n, q, tuple(out), "macwilliams", time.perf_counter() - t0)


@dataclass(frozen=True)
class MinDistance:
    """Exact value, or a (lower, upper) bracket when only bounds are available."""

    lower: int
    upper: int
    method: str

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None


def min_distance(code: LinearCode | CyclicCode, budget: int | None = None,
                 workers: int | None = None) -> MinDistance:
    """Exhaustive if |C| fits the budget, else MacWilliams from the dual, else BCH/Singleton."""
    C = as_linear(code)
    budget = default_budget() if budget is None else budget
    if C.k == 0:
        return MinDistance(C.n + 1, C.n + 1, "zero-code")
    q = C.field.size
    if q ** C.k <= budget:
        d = weight_distribution(C, budget, workers).min_distance
        return MinDistance(d, d, "exhaustive")
    if q ** (C.n - C.k) <= budget:
        dual = weight_distribution(C.dual(), budget, workers)
        d = macwilliams(dual, C.n, C.n - C.k, q).min_distance
        return MinDistance(d, d, "macwilliams")
    lower = bch_bound(code) if isinstance(code, CyclicCode) else 1
    return MinDistance(min(lower, C.n), singleton_bound(C.n, C.k), "analytic")
