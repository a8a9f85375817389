"""Row reduction, rank and null spaces over GF(2^k).

Matrices are 2-D ``int64`` numpy arrays of field elements.  Row operations
are vectorised through :meth:`GF2m.mul_array`; addition is XOR.
"""

from __future__ import annotations

import numpy as np

from .galois import GF2m


def rref(field: GF2m, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        piv = int(A[r, c])
        if piv != 1:
            A[r] = field.mul_array(A[r], field.inv(piv))
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] ^= field.mul_array(col[hit, None], A[r][None, :])
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(field: GF2m, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(field, M)[1])


def nullspace(field: GF2m, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows, in RREF) of {v : M v^T = 0}."""
    M = np.asarray(M, dtype=np.int64)
    if ncols is None:
        ncols = M.shape[1]
    if M.size == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(field, M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        # characteristic 2: -R[j, f] = R[j, f]
        basis[i, pivots] = R[:, f]
    if not len(free):
        return basis
    return rref(field, basis)[0]


def matmul(field: GF2m, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[1]):
        out ^= field.mul_array(A[:, i, None], B[None, i, :])
    return out


def in_row_space(field: GF2m, R: np.ndarray, pivots: list[int], v) -> bool:
    """Membership of ``v`` in the row space of an RREF matrix ``R``."""
    v = np.array(v, dtype=np.int64, copy=True)
    for row, c in zip(R, pivots):
        if v[c]:
            v ^= field.mul_array(row, int(v[c]))
    return not v.any()
