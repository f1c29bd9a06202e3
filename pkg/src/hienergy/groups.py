"""Finite abelian groups as products of cyclic factors.

Elements are canonical integers in [0, N) under mixed-radix encoding of
coordinates: with factors (m_1, ..., m_d) the element with coordinates
(x_1, ..., x_d) has index  x_1*m_2*...*m_d + x_2*m_3*...*m_d + ... + x_d
(row-major, first factor most significant).  This encoding is stable;
tensor indexing elsewhere relies on it.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass

import numpy as np

CYCLIC = "cyclic"
VECTOR_SPACE = "vector-space"
GENERAL = "general"

_ADD_TABLE_MAX_ORDER = 2048  # N x N int32 table tops out at 16 MiB


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Group:
    """A finite abelian group given as a product of cyclic factors."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a group needs at least one cyclic factor")
        if any(m < 2 for m in self.factors):
            raise ValueError(f"every cyclic factor must be >= 2, got {self.factors}")

    @functools.cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @functools.cached_property
    def kind(self) -> str:
        if len(self.factors) == 1:
            if _is_prime(self.factors[0]):
                # Z/p is also F_p^1; keep the cyclic tag, vector-space
                # behaviour is decided by is_vector_space below.
                return CYCLIC
            return CYCLIC
        if len(set(self.factors)) == 1 and _is_prime(self.factors[0]):
            return VECTOR_SPACE
        return GENERAL

    @property
    def is_vector_space(self) -> bool:
        """True when the group is F_p^n for a prime p (n >= 1)."""
        return len(set(self.factors)) == 1 and _is_prime(self.factors[0])

    @property
    def prime(self) -> int:
        if not self.is_vector_space:
            raise ValueError(f"{self} is not a vector space over a prime field")
        return self.factors[0]

    @property
    def dimension(self) -> int:
        if not self.is_vector_space:
            raise ValueError(f"{self} is not a vector space over a prime field")
        return len(self.factors)

    @functools.cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        s = 1
        for m in reversed(self.factors):
            strides.append(s)
            s *= m
        return tuple(reversed(strides))

    @functools.cached_property
    def coords_table(self) -> np.ndarray:
        """(N, d) array, row x = coordinates of element x."""
        n = self.order
        out = np.empty((n, len(self.factors)), dtype=np.int64)
        idx = np.arange(n, dtype=np.int64)
        for j, (m, s) in enumerate(zip(self.factors, self._strides)):
            out[:, j] = (idx // s) % m
        return out

    def coords(self, index: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.coords_table[index])

    def index_of(self, coords) -> int:
        coords = tuple(int(c) % m for c, m in zip(coords, self.factors))
        if len(coords) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates")
        return int(sum(c * s for c, s in zip(coords, self._strides)))

    def encode(self, coords_array: np.ndarray) -> np.ndarray:
        """Vectorized coords -> indices; rows may be unreduced integers."""
        coords_array = np.asarray(coords_array, dtype=np.int64)
        mods = np.array(self.factors, dtype=np.int64)
        strides = np.array(self._strides, dtype=np.int64)
        return ((coords_array % mods) * strides).sum(axis=-1)

    def add(self, a: int, b: int) -> int:
        return int(self.add_array(np.array([a]), b)[0])

    def neg(self, a: int) -> int:
        return int(self.neg_perm[a])

    def add_array(self, idx, b: int) -> np.ndarray:
        """Index array + single element b, vectorized."""
        return self.translation(b)[np.asarray(idx)]

    @functools.cached_property
    def neg_perm(self) -> np.ndarray:
        return self.encode(-self.coords_table)

    def translation(self, s: int) -> np.ndarray:
        """Permutation P with P[x] = index(x + s)."""
        return self._translation_cached(int(s))

    @functools.lru_cache(maxsize=None)  # noqa: B019 - Group is immutable
    def _translation_cached(self, s: int) -> np.ndarray:
        perm = self.encode(self.coords_table + self.coords_table[s])
        perm.setflags(write=False)
        return perm

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        """Full N x N addition table; only for small groups."""
        if self.order > _ADD_TABLE_MAX_ORDER:
            raise MemoryError(
                f"addition table for N={self.order} exceeds the cached-table cap"
            )
        rows = [self._translation_cached(s) for s in range(self.order)]
        table = np.vstack(rows)
        table.setflags(write=False)
        return table

    # -- characters ---------------------------------------------------------

    def character_values(self, r: int) -> np.ndarray:
        """chi_r evaluated at every x, as complex128."""
        phase = np.zeros(self.order, dtype=np.float64)
        rc = self.coords_table[r]
        for j, m in enumerate(self.factors):
            phase += (rc[j] * self.coords_table[:, j]) % m / m
        return np.exp(2j * np.pi * phase)

    def character(self, r: int, x: int) -> complex:
        total = 0.0
        rc, xc = self.coords_table[r], self.coords_table[x]
        for j, m in enumerate(self.factors):
            total += ((int(rc[j]) * int(xc[j])) % m) / m
        return complex(np.exp(2j * np.pi * total))

    def __str__(self) -> str:
        if len(self.factors) == 1:
            return f"Z{self.factors[0]}"
        if self.is_vector_space:
            return f"F{self.factors[0]}^{len(self.factors)}"
        return "x".join(f"Z{m}" for m in self.factors)

    def __repr__(self) -> str:
        return f"Group({self.factors!r})"


def make_group(factors) -> Group:
    """Build a group from a factor list; see Group for the element encoding."""
    if isinstance(factors, int):
        factors = (factors,)
    return Group(tuple(int(m) for m in factors))


_GROUP_RE_CYCLIC = re.compile(r"^z(\d+)$")
_GROUP_RE_VS = re.compile(r"^f(\d+)\^(\d+)$")


def parse_group(spec: str) -> Group:
    """Parse "Z<m>", "F<p>^<n>" or "Z<m1>xZ<m2>x..." (case-insensitive)."""
    s = spec.strip().lower()
    if not s:
        raise ValueError("empty group spec")
    m = _GROUP_RE_VS.match(s)
    if m:
        p, n = int(m.group(1)), int(m.group(2))
        if not _is_prime(p):
            raise ValueError(f"F{p}^{n}: {p} is not prime")
        if n < 1:
            raise ValueError(f"F{p}^{n}: exponent must be >= 1")
        return make_group((p,) * n)
    parts = s.split("x")
    factors = []
    for part in parts:
        mm = _GROUP_RE_CYCLIC.match(part)
        if not mm:
            raise ValueError(f"cannot parse group spec {spec!r}")
        factors.append(int(mm.group(1)))
    return make_group(factors)


# -- transforms on raw value arrays (group-indexed) --------------------------


def fourier_values(group: Group, values: np.ndarray) -> np.ndarray:
    """DFT: out[r] = sum_x values[x] * conj(chi_r(x)).

    Mixed-radix reshape + fftn matches the character convention exactly.
    """
    arr = np.asarray(values, dtype=np.complex128).reshape(group.factors)
    return np.fft.fftn(arr).ravel()


def inverse_fourier_values(group: Group, coeffs: np.ndarray) -> np.ndarray:
    """Inverse DFT: out[x] = N^{-1} sum_r coeffs[r] * chi_r(x)."""
    arr = np.asarray(coeffs, dtype=np.complex128).reshape(group.factors)
    return np.fft.ifftn(arr).ravel()
