"""Linear algebra over the local ring Z/p^K with numpy.

Used by the cochain-level cohomology oracle, where the matrices are too large
for the pure-Python lattice code.  Every routine works with int64 arrays whose
entries lie in [0, p^K).
"""

from __future__ import annotations

import numpy as np


def valuations(A, p, K):
    """Entrywise p-adic valuation, with 0 mapped to K."""
    v = np.zeros(A.shape, dtype=np.int64)
    cur = A.copy()
    alive = cur != 0
    v[~alive] = K
    for _ in range(K):
        div = alive & (cur % p == 0)
        if not div.any():
            break
        v[div] += 1
        cur[div] //= p
        alive = div
    return v


def _pivot(sub, p, K):
    """Position and valuation of an entry of minimal valuation, preferring column 0."""
    units = np.flatnonzero(sub[:, 0] % p)
    if units.size:
        return int(units[0]), 0, 0
    units = np.flatnonzero(sub % p)
    if units.size:
        i, j = divmod(int(units[0]), sub.shape[1])
        return i, j, 0
    val = valuations(sub, p, K)
    i, j = divmod(int(np.argmin(val)), sub.shape[1])
    return i, j, int(val[i, j])


def smith(M, p, K, track_cols=False):
    """Diagonalise M over Z/p^K by row and column operations.

    Returns (vals, V) where vals[j] is the valuation of the j-th pivot and V is
    the column transform (M V = U^{-1} D), or None when not tracked.
    """
    q = p ** K
    A = np.array(M, dtype=np.int64) % q
    nr, nc = A.shape
    V = np.eye(nc, dtype=np.int64) if track_cols else None
    vals = []
    for k in range(min(nr, nc)):
        sub = A[k:, k:]
        i, j, v = _pivot(sub, p, K)
        if v >= K:
            break
        i += k
        j += k
        if i != k:
            A[[k, i]] = A[[i, k]]
        if j != k:
            A[:, [k, j]] = A[:, [j, k]]
            if track_cols:
                V[:, [k, j]] = V[:, [j, k]]
        pk = p ** v
        unit = int(A[k, k]) // pk
        if unit != 1:
            A[k, k:] = (A[k, k:] * pow(unit, -1, q)) % q
        col = A[k + 1:, k] // pk
        hit = np.flatnonzero(col)
        if hit.size:
            rows = hit + k + 1
            A[rows, k:] = (A[rows, k:] - np.outer(col[hit], A[k, k:])) % q
        row = A[k, k + 1:] // pk
        if row.any():
            if track_cols:
                V[:, k + 1:] = (V[:, k + 1:] - np.outer(V[:, k], row)) % q
            A[k, k + 1:] = 0
        vals.append(v)
    return vals, V


def kernel(M, p, K):
    """Columns generating {x : M x = 0} over Z/p^K."""
    M = np.asarray(M, dtype=np.int64)
    nc = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(nc, dtype=np.int64)
    vals, V = smith(M, p, K, track_cols=True)
    q = p ** K
    cols = []
    for j, v in enumerate(vals):
        if v > 0:
            cols.append((V[:, j] * p ** (K - v)) % q)
    for j in range(len(vals), nc):
        cols.append(V[:, j] % q)
    if not cols:
        return np.zeros((nc, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def span_order_exponent(G, p, K):
    """log_p of the order of the column span of G."""
    G = np.asarray(G, dtype=np.int64)
    if G.size == 0:
        return 0
    vals, _ = smith(G, p, K)
    return sum(K - v for v in vals)


def quotient_invariants(big, small, p, K):
    """Invariants (descending prime powers) of (span big + span small) / span small."""
    big = np.asarray(big, dtype=np.int64)
    small = np.asarray(small, dtype=np.int64)
    t = big.shape[1]
    if t == 0:
        return []
    W = np.concatenate([big, small], axis=1) if small.size else big
    ker = kernel(W, p, K)
    coeff = ker[:t, :]
    if coeff.shape[1] == 0:
        vals = []
    else:
        vals, _ = smith(coeff, p, K)
    out = [p ** v for v in vals if v > 0]
    out += [p ** K] * (t - len(vals))
    return sorted(out, reverse=True)
