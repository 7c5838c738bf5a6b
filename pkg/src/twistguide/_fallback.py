"""Pure-numpy versions of the compiled kernels.

A symmetric matrix with half-bandwidth ``bw`` is block tridiagonal with
``bw x bw`` blocks, so inertia is accumulated over the Schur complements of
the block LDL^T recursion (Haynsworth additivity).
"""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _block_index(s, bw):
    r, c = np.meshgrid(np.arange(s), np.arange(s), indexing="ij")
    diag = r >= c
    sub = (s + r - c) <= bw
    return (r[diag], c[diag]), (r[sub], c[sub])


def band_inertia(kb, mb, sigma, pivot_tol):
    """Same contract as the compiled ``band_inertia``."""
    bw = kb.shape[0] - 1
    n = kb.shape[1]
    ab = np.asarray(kb) - sigma * np.asarray(mb)
    s = max(bw, 1)
    (dr, dc), (sr, sc) = _block_index(s, bw)
    neg = 0
    minpiv = np.inf
    prev_inv = None
    prev_sub = None
    for k0 in range(0, n, s):
        m = min(s, n - k0)
        D = np.zeros((s, s))
        D[dr, dc] = ab[dr - dc, k0 + dc] if k0 + s <= n else _gather(ab, dr - dc, k0 + dc, n)
        D = D[:m, :m]
        D = np.tril(D) + np.tril(D, -1).T
        if prev_inv is not None:
            C = prev_sub[:m]
            D = D - C @ prev_inv @ C.T
        w, V = np.linalg.eigh(D)
        aw = np.abs(w)
        minpiv = min(minpiv, float(aw.min()))
        if aw.min() <= pivot_tol:
            return neg, minpiv, k0 + int(np.argmin(aw))
        neg += int(np.count_nonzero(w < 0))
        prev_inv = (V / w) @ V.T
        if k0 + m < n:
            # coupling rows k0+s .. k0+2s-1 against columns k0 .. k0+s-1
            C = np.zeros((s, s))
            C[sr, sc] = _gather(ab, s + sr - sc, k0 + sc, n, rows=k0 + s + sr)
            prev_sub = C[:, :m]
    return neg, minpiv, -1


def _gather(ab, d, col, n, rows=None):
    rows = col + d if rows is None else rows
    ok = (col < n) & (rows < n)
    out = np.zeros(d.shape)
    out[ok] = ab[d[ok], col[ok]]
    return out
