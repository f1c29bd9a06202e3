"""Kernel dispatch: compiled extension when available, numpy fallback otherwise.

Exact integer work runs in int64 whenever a certain a-priori bound fits under
2^62, and falls back to arbitrary-precision Python integers above that.  Power
sums are always reduced in Python ints, so raw energies stay exact no matter
the path.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

if os.environ.get("HE_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

IMPLEMENTATION = _impl.IMPLEMENTATION
INT64_SAFE = 2**62


def _max_abs(values) -> int:
    if isinstance(values, np.ndarray) and values.dtype != object:
        return int(np.abs(values).max(initial=0))
    return max((abs(int(v)) for v in values), default=0)


def correlate_exact(group, f, g):
    """(f o g)(t) = sum_x f(x) g(x+t) on integer inputs, exact.

    Returns int64 ndarray on the fast path, list of Python ints otherwise.
    """
    n = group.order
    if n * max(1, _max_abs(f)) * max(1, _max_abs(g)) < INT64_SAFE:
        return _impl.correlate_int(
            group, np.asarray(f, dtype=np.int64), np.asarray(g, dtype=np.int64)
        )
    fi = [int(v) for v in f]
    gi = [int(v) for v in g]
    out = []
    for t in range(n):
        perm = group.translation(t)
        out.append(sum(fi[x] * gi[perm[x]] for x in range(n)))
    return out


def correlate_float(group, f, g):
    return _impl.correlate_float(
        group, np.asarray(f, dtype=np.float64), np.asarray(g, dtype=np.float64)
    )


def cprime_exact(group, f, arity: int):
    """Pinned convolution tensor sum_z f(z) prod_i f(z+y_i), exact.

    Flat length N^(arity-1); int64 ndarray or list of Python ints.
    """
    n = group.order
    if arity < 1:
        raise ValueError("arity must be >= 1")
    if n * max(1, _max_abs(f)) ** arity < INT64_SAFE:
        return _impl.cprime_tensor_int(group, np.asarray(f, dtype=np.int64), arity)
    return _cprime_big(group, [int(v) for v in f], arity)


def cprime_float(group, f, arity: int):
    return _impl.cprime_tensor_float(group, np.asarray(f, dtype=np.float64), arity)


def _cprime_big(group, f: list, arity: int) -> list:
    n = group.order
    if arity == 1:
        return [sum(f)]
    perms = [group.translation(s) for s in range(n)]
    out = []
    for flat in range(n ** (arity - 1)):
        ys = []
        rem = flat
        for _ in range(arity - 1):
            ys.append(rem % n)
            rem //= n
        ys.reverse()
        acc = 0
        for z in range(n):
            p = f[z]
            for y in ys:
                p *= f[perms[y][z]]
            acc += p
        out.append(acc)
    return out


def az_card_hist(group, bits: np.ndarray, depth: int) -> np.ndarray:
    """hist[c] = #{w in G^depth : |A ∩ (A-w_1) ∩ ... ∩ (A-w_depth)| = c}."""
    return _impl.az_card_hist(group, np.asarray(bits, dtype=bool), depth)


def power_sum(values, k: int) -> int:
    """sum v**k over an int64 ndarray or int list, as an exact Python int."""
    if isinstance(values, np.ndarray) and values.dtype != object:
        values = values.tolist()
    return sum(int(v) ** k for v in values)
