"""Cyclotomic cosets and the quaternary defining sets T and T^c.

For q = 4^h and n = q + 1, ``T`` is the union of the 4-cyclotomic cosets
mod n of 0, 1, ..., q/4 (the zeros of the quaternary subfield subcode), and
``T^c`` is the base-4 digit set {a_0 + a_1*4 + ... : a_0 in {2,3}, a_i in {1,2}}.
The two are built along unrelated code paths so :func:`verify_partition`
is a real cross-check rather than a restatement.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

import numpy as np

from .errors import InvalidArgument


def coset_of(s: int, n: int, b: int) -> list[int]:
    """The b-cyclotomic coset of ``s`` mod ``n``, in orbit order."""
    out = [s % n]
    x = (s * b) % n
    while x != out[0]:
        out.append(x)
        x = (x * b) % n
    return out


@dataclass(frozen=True)
class CosetSystem:
    n: int
    base: int
    cosets: tuple[tuple[int, ...], ...]

    @property
    def leaders(self) -> list[int]:
        return [c[0] for c in self.cosets]

    def coset(self, s: int) -> tuple[int, ...]:
        for c in self.cosets:
            if s % self.n in c:
                return c
        raise AssertionError("unreachable: cosets partition Z_n")

    def closure(self, exponents) -> list[int]:
        """Smallest union of cosets containing ``exponents``."""
        wanted = {e % self.n for e in exponents}
        return sorted(x for c in self.cosets if wanted.intersection(c) for x in c)


def coset_system(n: int, b: int) -> CosetSystem:
    """All b-cyclotomic cosets mod n, sorted by leader, each coset sorted."""
    if n < 1 or gcd(n, b) != 1:
        raise InvalidArgument(f"need gcd(n, b) = 1, got n={n}, b={b}")
    seen = np.zeros(n, dtype=bool)
    cosets = []
    for s in range(n):
        if seen[s]:
            continue
        c = coset_of(s, n, b)
        seen[c] = True
        cosets.append(tuple(sorted(c)))
    return CosetSystem(n, b, tuple(cosets))


def _check_h(h: int) -> None:
    if h < 1:
        raise InvalidArgument(f"h must be positive, got {h}")


def build_T(h: int) -> list[int]:
    """Union of the 4-cyclotomic cosets mod 4^h + 1 of 0, 1, ..., 4^(h-1)."""
    _check_h(h)
    n = 4 ** h + 1
    member = np.zeros(n, dtype=bool)
    for i in range(4 ** (h - 1) + 1):
        if not member[i]:
            member[coset_of(i, n, 4)] = True
    return np.flatnonzero(member).tolist()


def build_Tc(h: int) -> list[int]:
    """Base-4 digit strings with a_0 in {2, 3} and a_i in {1, 2} above."""
    _check_h(h)
    vals = []
    for high in product((1, 2), repeat=h - 1):
        for a0 in (2, 3):
            vals.append(a0 + sum(a * 4 ** (i + 1) for i, a in enumerate(high)))
    return sorted(vals)


def build_E(h: int) -> list[int]:
    """{1 + sum e_i 4^i : e_i in {1, 2}}; coincides with T^c."""
    _check_h(h)
    return sorted(1 + sum(e * 4 ** i for i, e in enumerate(es)) for es in product((1, 2), repeat=h))


def _first_violation(pred, items):
    for x in items:
        if not pred(x):
            return x
    return None


def verify_partition(h: int) -> dict:
    """Check the structural facts about T and T^c for one h.

    Returns a dict mapping check name to ``{"pass": bool, "counterexample": x}``;
    nothing here raises on failure.
    """
    _check_h(h)
    n = 4 ** h + 1
    q = 4 ** h
    T = build_T(h)
    Tc = build_Tc(h)
    in_T = np.zeros(n, dtype=bool)
    in_T[T] = True
    in_Tc = np.zeros(n, dtype=bool)
    in_Tc[Tc] = True
    delta = (q - 1) // 3
    checks = {}

    def record(name, bad):
        checks[name] = {"pass": bad is None, "counterexample": bad}

    record("disjoint", _first_violation(lambda i: not in_Tc[i], T))
    record("covers", _first_violation(lambda i: in_T[i] or in_Tc[i], range(n)))
    record("tc_size", None if len(Tc) == 2 ** h else len(Tc))
    record("tc_closed_x4", _first_violation(lambda a: in_Tc[(4 * a) % n], Tc))
    record("t_closed_x4", _first_violation(lambda a: in_T[(4 * a) % n], T))
    record("tc_min", None if Tc[0] == (q + 2) // 3 and (q + 2) % 3 == 0 else Tc[0])
    record("tc_max", None if Tc[-1] == (2 * q + 1) // 3 and (2 * q + 1) % 3 == 0 else Tc[-1])
    record("t_symmetric", _first_violation(lambda i: in_T[i] == in_T[(n - i) % n], range(n)))
    record("lemma_low_run", _first_violation(lambda i: in_T[i], range(4 ** (h - 1) + 1)))
    record("lemma_high_run", _first_violation(lambda i: in_T[n - i], range(1, 4 ** (h - 1) + 1)))
    record("lemma_mid_range", _first_violation(lambda i: in_T[i], range(4 ** (h - 1) + 1, delta + 1)))
    record("lemma_delta_runs", _first_violation(
        lambda i: in_T[i] and in_T[(n - i) % n], range(delta + 1)))
    neg = sorted((n - i) % n for i in Tc)
    record("negation_fixes_tc", None if neg == Tc else neg)
    record("E_equals_tc", None if build_E(h) == Tc else build_E(h))
    return checks
