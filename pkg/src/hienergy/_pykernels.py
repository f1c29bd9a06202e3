"""Pure numpy fallback for the hot kernels.

Same contracts as the compiled module `_ckernels`: int64 inputs, caller has
already checked that intermediate values cannot overflow 2^62.
"""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "pure-python"


def _translate_matrix(group, values: np.ndarray) -> np.ndarray:
    """M[s, x] = values[x + s]; the work array behind correlations."""
    n = group.order
    if n <= 2048:
        return values[group.add_table]
    out = np.empty((n, n), dtype=values.dtype)
    for s in range(n):
        out[s] = values[group.translation(s)]
    return out


def correlate_int(group, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f o g)(t) = sum_x f(x) g(x + t), exact int64."""
    n = group.order
    f = np.asarray(f, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    if n <= 2048:
        return _translate_matrix(group, g) @ f
    out = np.empty(n, dtype=np.int64)
    for t in range(n):
        out[t] = int(np.dot(f, g[group.translation(t)]))
    return out


def correlate_float(group, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    n = group.order
    f = np.asarray(f, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    if n <= 2048:
        return _translate_matrix(group, g) @ f
    out = np.empty(n, dtype=np.float64)
    for t in range(n):
        out[t] = float(np.dot(f, g[group.translation(t)]))
    return out


def cprime_tensor_int(group, f: np.ndarray, arity: int) -> np.ndarray:
    """Pinned convolution: T[y_1..y_{arity-1}] = sum_z f(z) prod_i f(z+y_i).

    Flat output in row-major base-N order, length N^(arity-1).
    """
    return _cprime_tensor(group, np.asarray(f, dtype=np.int64), arity)


def cprime_tensor_float(group, f: np.ndarray, arity: int) -> np.ndarray:
    return _cprime_tensor(group, np.asarray(f, dtype=np.float64), arity)


def _cprime_tensor(group, f: np.ndarray, arity: int) -> np.ndarray:
    n = group.order
    if arity == 1:
        return np.array([f.sum()], dtype=f.dtype)
    m = _translate_matrix(group, f)
    if arity == 2:
        return m @ f
    # peel outer coordinates, keep the final one vectorized as a matvec
    out = np.empty(n ** (arity - 1), dtype=f.dtype)
    block = n
    prefix = np.ndindex(*([n] * (arity - 2)))
    for pos, ys in enumerate(prefix):
        w = f.copy()
        for y in ys:
            w *= m[y]
        out[pos * block : (pos + 1) * block] = m @ w
    return out


def az_card_hist(group, bits: np.ndarray, depth: int) -> np.ndarray:
    """Histogram of |A ∩ (A-w_1) ∩ ... ∩ (A-w_depth)| over w in G^depth.

    hist[c] counts the tuples w with intersection size exactly c.
    Python-int bitsets keep this allocation-free and exact.
    """
    n = group.order
    hist = np.zeros(n + 1, dtype=np.int64)
    base = 0
    for x in np.flatnonzero(bits):
        base |= 1 << int(x)
    if depth == 0:
        hist[int(bits.sum())] = 1
        return hist
    shifted = []
    for s in range(n):
        m = 0
        # (A - s)(x) = A(x + s)
        perm = group.translation(s)
        for x in np.flatnonzero(bits[perm]):
            m |= 1 << int(x)
        shifted.append(m)

    def rec(cur: int, level: int):
        if cur == 0:
            hist[0] += n**level
            return
        if level == 0:
            hist[cur.bit_count()] += 1
            return
        for s in range(n):
            rec(cur & shifted[s], level - 1)

    rec(base, depth)
    return hist
