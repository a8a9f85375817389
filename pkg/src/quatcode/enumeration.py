"""Exhaustive codeword enumeration on bit-packed symbol planes.

A codeword over GF(2^s) of length n is stored as ``s`` bit planes of
``ceil(n/64)`` uint64 words each: plane ``b`` holds bit ``b`` of every
symbol.  Addition is XOR plane by plane, and the Hamming weight is the
popcount of the OR of all planes.

The message space is split in two.  The low ``k_in`` message digits are
expanded once into an *inner book* of Q^k_in packed codewords.  The
remaining digits are walked in reflected Q-ary Gray order, so each outer
step XORs exactly one scaled generator row into the running outer word.
Every outer word is then combined with the whole inner book at once.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

import numpy as np

from .galois import GF2m, make_field

WORD_BITS = 64
DEFAULT_INNER_LIMIT = 1 << 16


def n_words(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


def pack(words, s: int) -> np.ndarray:
    """(N, n) symbol array -> (N, s, W) uint64 planes."""
    words = np.asarray(words, dtype=np.int64)
    N, n = words.shape
    W = n_words(n)
    out = np.zeros((N, s, W), dtype=np.uint64)
    buf = np.zeros((N, W * WORD_BITS), dtype=np.uint8)
    for b in range(s):
        buf[:, :n] = (words >> b) & 1
        out[:, b, :] = np.packbits(buf, axis=1, bitorder="little").view("<u8")
    return out


def unpack(packed: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`pack`."""
    N, s, W = packed.shape
    out = np.zeros((N, n), dtype=np.int64)
    for b in range(s):
        bits = np.unpackbits(packed[:, b, :].astype("<u8").view(np.uint8), axis=1, bitorder="little")
        out |= bits[:, :n].astype(np.int64) << b
    return out


def supports_of(packed: np.ndarray) -> np.ndarray:
    """(N, W) support bitmasks."""
    return np.bitwise_or.reduce(packed, axis=1)


def weights_of(packed: np.ndarray) -> np.ndarray:
    return np.bitwise_count(supports_of(packed)).sum(axis=-1, dtype=np.int64)


def mask_weight(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks).sum(axis=-1, dtype=np.int64)


def masks_to_blocks(masks: np.ndarray, n: int) -> np.ndarray:
    """(b, W) support masks of equal weight -> (b, k) sorted point indices."""
    masks = np.asarray(masks, dtype=np.uint64).reshape(len(masks), -1)
    if len(masks) == 0:
        return np.zeros((0, 0), dtype=np.int64)
    bits = np.unpackbits(masks.astype("<u8").view(np.uint8), axis=1, bitorder="little")[:, :n]
    k = int(bits[0].sum())
    rows, cols = np.nonzero(bits)
    return cols.reshape(len(masks), k).astype(np.int64)


def blocks_to_masks(blocks: np.ndarray, n: int) -> np.ndarray:
    blocks = np.asarray(blocks, dtype=np.int64)
    W = n_words(n)
    bits = np.zeros((len(blocks), W * WORD_BITS), dtype=np.uint8)
    if blocks.size:
        bits[np.arange(len(blocks))[:, None], blocks] = 1
    return np.packbits(bits, axis=1, bitorder="little").view("<u8").reshape(len(blocks), W)


# ---------------------------------------------------------------------------
# Reflected Q-ary Gray order
# ---------------------------------------------------------------------------

def gray_digits(t: int, Q: int, length: int) -> list[int]:
    """Digits (least significant first) of the t-th word in reflected Q-ary Gray order.

    For even Q a digit is reflected exactly when the next digit up of the
    plain base-Q counter is odd.
    """
    d = []
    for _ in range(length):
        d.append(t % Q)
        t //= Q
    d.append(0)
    return [d[i] if d[i + 1] % 2 == 0 else Q - 1 - d[i] for i in range(length)]


class CodebookEnumerator:
    """Walks every codeword of a linear code in packed form."""

    def __init__(self, field: GF2m, generator_matrix, inner_limit: int = DEFAULT_INNER_LIMIT):
        G = np.asarray(generator_matrix, dtype=np.int64)
        self.field = field
        self.k, self.n = G.shape
        self.Q = field.size
        self.s = field.degree
        self.W = n_words(self.n)
        k_in = 0
        while k_in < self.k and self.Q ** (k_in + 1) <= inner_limit:
            k_in += 1
        if self.k and not k_in:
            k_in = 1
        self.k_in = k_in
        self.k_out = self.k - k_in
        scalars = np.arange(self.Q, dtype=np.int64)[:, None]
        self.scaled = np.stack(
            [pack(field.mul_array(scalars, G[i][None, :]), self.s) for i in range(self.k)]
        ) if self.k else np.zeros((0, self.Q, self.s, self.W), dtype=np.uint64)
        book = np.zeros((1, self.s, self.W), dtype=np.uint64)
        for i in range(k_in):
            book = (self.scaled[i][:, None] ^ book[None, :]).reshape(-1, self.s, self.W)
        self.inner = book
        self.outer_count = self.Q ** self.k_out

    @property
    def total(self) -> int:
        return self.Q ** self.k

    def outer_word(self, t: int) -> np.ndarray:
        """Packed outer codeword of Gray index ``t``, computed from scratch."""
        w = np.zeros((self.s, self.W), dtype=np.uint64)
        for i, g in enumerate(gray_digits(t, self.Q, self.k_out)):
            w ^= self.scaled[self.k_in + i, g]
        return w

    def outer_message(self, t: int) -> list[int]:
        return gray_digits(t, self.Q, self.k_out)

    def walk(self, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, np.ndarray]]:
        """Yield ``(t, outer_word)`` for t in [start, stop), updated incrementally."""
        stop = self.outer_count if stop is None else stop
        if start >= stop:
            return
        digits = gray_digits(start, self.Q, self.k_out)
        w = self.outer_word(start)
        yield start, w.copy()
        for t in range(start + 1, stop):
            nxt = gray_digits(t, self.Q, self.k_out)
            for p, (a, b) in enumerate(zip(digits, nxt)):
                if a != b:
                    w ^= self.scaled[self.k_in + p, a ^ b]
            digits = nxt
            yield t, w.copy()

    def chunks(self, start: int = 0, stop: int | None = None) -> Iterator[np.ndarray]:
        """Packed codeword blocks, one per outer step."""
        for _, w in self.walk(start, stop):
            yield self.inner ^ w

    def count_weights(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        counts = np.zeros(self.n + 1, dtype=np.int64)
        buf = np.empty_like(self.inner)
        sup = np.empty((len(self.inner), self.W), dtype=np.uint64)
        for _, w in self.walk(start, stop):
            np.bitwise_xor(self.inner, w, out=buf)
            np.bitwise_or.reduce(buf, axis=1, out=sup)
            wt = np.bitwise_count(sup).sum(axis=1, dtype=np.int64)
            counts += np.bincount(wt, minlength=self.n + 1)
        return counts

    def codewords(self) -> Iterator[np.ndarray]:
        """Unpacked (N, n) symbol arrays."""
        for c in self.chunks():
            yield unpack(c, self.n)


# ---------------------------------------------------------------------------
# Parallel driver
# ---------------------------------------------------------------------------

_WORKER: CodebookEnumerator | None = None


def _init_worker(degree: int, G: np.ndarray, inner_limit: int) -> None:
    global _WORKER
    _WORKER = CodebookEnumerator(make_field(degree), G, inner_limit)


def _count_range(bounds: tuple[int, int]) -> np.ndarray:
    assert _WORKER is not None
    return _WORKER.count_weights(*bounds)


def default_workers() -> int:
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1)


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    edges = [total * i // parts for i in range(parts + 1)]
    return [(a, b) for a, b in zip(edges, edges[1:]) if a < b]


def count_weights(field: GF2m, G, workers: int | None = None,
                  inner_limit: int = DEFAULT_INNER_LIMIT, tasks_per_worker: int = 4) -> np.ndarray:
    """Exact weight counts over the whole code.

    The outer message range is split into intervals that are counted
    independently and summed, so the result does not depend on ``workers``.
    """
    G = np.asarray(G, dtype=np.int64)
    enum = CodebookEnumerator(field, G, inner_limit)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or enum.outer_count < 2:
        return enum.count_weights()
    ranges = split_range(enum.outer_count, workers * tasks_per_worker)
    total = np.zeros(enum.n + 1, dtype=np.int64)
    with ProcessPoolExecutor(workers, initializer=_init_worker,
                             initargs=(field.degree, G, inner_limit)) as pool:
        for part in pool.map(_count_range, ranges):
            total += part
    return total


def collect_support_masks(field: GF2m, G, weights=None,
                          inner_limit: int = DEFAULT_INNER_LIMIT) -> dict[int, np.ndarray]:
    """Distinct support masks of all nonzero codewords, grouped by weight.

    Returns ``{weight: (b, W) uint64 array}`` sorted lexicographically by
    mask words.  ``weights`` restricts which weights are kept.
    """
    enum = CodebookEnumerator(field, np.asarray(G, dtype=np.int64), inner_limit)
    n = enum.n
    keep = None if weights is None else set(int(w) for w in weights)
    if n <= 26:
        seen = np.zeros(1 << n, dtype=bool)
        for c in enum.chunks():
            seen[supports_of(c)[:, 0].astype(np.int64)] = True
        masks = np.flatnonzero(seen).astype(np.uint64)[:, None]
        masks = masks[1:] if len(masks) and masks[0, 0] == 0 else masks
        wts = mask_weight(masks)
        return {int(w): masks[wts == w] for w in np.unique(wts) if keep is None or int(w) in keep}
    found: dict[int, list[np.ndarray]] = {}
    for c in enum.chunks():
        sup = supports_of(c)
        wts = mask_weight(sup)
        for w in np.unique(wts):
            w = int(w)
            if w == 0 or (keep is not None and w not in keep):
                continue
            found.setdefault(w, []).append(np.unique(sup[wts == w], axis=0))
    return {w: np.unique(np.concatenate(parts), axis=0) for w, parts in sorted(found.items())}
