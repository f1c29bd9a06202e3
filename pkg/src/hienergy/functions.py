"""Dense functions and sets on a group; generalized and pinned convolutions.

Exact mode stores Python ints / Fractions in object arrays so every identity
can be checked with zero tolerance; float mode is plain float64/complex128.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .config import check_budget
from .groups import Group, fourier_values, inverse_fourier_values

EXACT = "exact"
FLOAT = "float"


def _as_exact(v):
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return v
    raise TypeError(f"exact mode needs ints or Fractions, got {type(v)}")


@dataclass(frozen=True)
class DenseFunction:
    """A total map from a group to numbers."""

    group: Group
    values: np.ndarray
    mode: str

    def __post_init__(self):
        if len(self.values) != self.group.order:
            raise ValueError("value array length must equal the group order")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_values(group: Group, values, mode: str | None = None) -> "DenseFunction":
        vals = list(values)
        if mode is None:
            mode = (
                EXACT
                if all(isinstance(v, (int, np.integer, Fraction)) for v in vals)
                else FLOAT
            )
        if mode == EXACT:
            arr = np.empty(len(vals), dtype=object)
            for i, v in enumerate(vals):
                arr[i] = _as_exact(v)
        else:
            arr = np.asarray(
                vals,
                dtype=complex if any(isinstance(v, complex) for v in vals) else float,
            )
        arr.setflags(write=False)
        return DenseFunction(group, arr, mode)

    @staticmethod
    def constant(group: Group, c, mode: str = EXACT) -> "DenseFunction":
        return DenseFunction.from_values(group, [c] * group.order, mode)

    @staticmethod
    def delta(group: Group, at: int = 0, mode: str = EXACT) -> "DenseFunction":
        vals = [0] * group.order
        vals[at] = 1
        return DenseFunction.from_values(group, vals, mode)

    # -- basic algebra -------------------------------------------------------

    def __add__(self, other: "DenseFunction") -> "DenseFunction":
        self._compatible(other)
        mode = EXACT if self.mode == other.mode == EXACT else FLOAT
        if mode == FLOAT:
            return DenseFunction.from_values(
                self.group, self.as_float_array() + other.as_float_array(), FLOAT
            )
        return DenseFunction.from_values(
            self.group, [a + b for a, b in zip(self.values, other.values)], EXACT
        )

    def __sub__(self, other: "DenseFunction") -> "DenseFunction":
        return self + other.scale(-1)

    def scale(self, c) -> "DenseFunction":
        if self.mode == EXACT and isinstance(c, (int, Fraction)):
            return DenseFunction.from_values(
                self.group, [c * v for v in self.values], EXACT
            )
        return DenseFunction.from_values(self.group, self.as_float_array() * c, FLOAT)

    def shift(self, z: int) -> "DenseFunction":
        """x -> f(x + z)."""
        return DenseFunction(
            self.group, self.values[self.group.translation(z)], self.mode
        )

    def reverse(self) -> "DenseFunction":
        """x -> f(-x)."""
        return DenseFunction(self.group, self.values[self.group.neg_perm], self.mode)

    def total(self):
        return sum(self.values) if self.mode == EXACT else self.values.sum()

    def _compatible(self, other: "DenseFunction"):
        if self.group != other.group:
            raise ValueError("functions live on different groups")

    # -- numeric views -------------------------------------------------------

    def as_float_array(self) -> np.ndarray:
        if self.mode == FLOAT:
            return self.values
        return np.array([float(v) for v in self.values], dtype=float)

    def scaled_ints(self) -> tuple[list[int], int]:
        """Exact values as (numerators, common denominator)."""
        if self.mode != EXACT:
            raise ValueError("scaled_ints needs exact mode")
        den = 1
        for v in self.values:
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
        nums = [int(v * den) for v in self.values]
        return nums, den

    @property
    def is_integer_valued(self) -> bool:
        return self.mode == EXACT and all(
            isinstance(v, int) or v.denominator == 1 for v in self.values
        )


@dataclass(frozen=True)
class GroupSet:
    """A subset of a group stored as a bit-vector."""

    group: Group
    bits: np.ndarray

    def __post_init__(self):
        if self.bits.dtype != bool or len(self.bits) != self.group.order:
            raise ValueError("bits must be a bool array of length N")

    @staticmethod
    def from_indices(group: Group, indices) -> "GroupSet":
        bits = np.zeros(group.order, dtype=bool)
        for i in indices:
            bits[int(i)] = True
        bits.setflags(write=False)
        return GroupSet(group, bits)

    @staticmethod
    def full(group: Group) -> "GroupSet":
        return GroupSet(group, np.ones(group.order, dtype=bool))

    @staticmethod
    def empty(group: Group) -> "GroupSet":
        return GroupSet(group, np.zeros(group.order, dtype=bool))

    @functools.cached_property
    def cardinality(self) -> int:
        return int(self.bits.sum())

    def __len__(self) -> int:
        return self.cardinality

    @property
    def density(self) -> Fraction:
        return Fraction(self.cardinality, self.group.order)

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits[x])

    def shift(self, z: int) -> "GroupSet":
        """A + z (membership x <=> x - z in A)."""
        neg = self.group.neg(z)
        return GroupSet(self.group, self.bits[self.group.translation(neg)])

    def minus_shift(self, z: int) -> "GroupSet":
        """A - z (membership x <=> x + z in A)."""
        return GroupSet(self.group, self.bits[self.group.translation(z)])

    def __and__(self, other: "GroupSet") -> "GroupSet":
        return GroupSet(self.group, self.bits & other.bits)

    def __or__(self, other: "GroupSet") -> "GroupSet":
        return GroupSet(self.group, self.bits | other.bits)

    def complement(self) -> "GroupSet":
        return GroupSet(self.group, ~self.bits)

    def indicator(self) -> DenseFunction:
        return DenseFunction.from_values(
            self.group, [int(b) for b in self.bits], EXACT
        )


@dataclass(frozen=True)
class TensorFunction:
    """A total map from G^arity to numbers, flat row-major base-N storage."""

    group: Group
    arity: int
    values: np.ndarray
    mode: str

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be >= 0")
        if len(self.values) != self.group.order**self.arity:
            raise ValueError("tensor storage must have N^arity entries")

    @staticmethod
    def build(group: Group, arity: int, values, mode: str, budget=None):
        check_budget(group.order**arity, budget, what=f"arity-{arity} tensor")
        if mode == EXACT:
            arr = np.empty(group.order**arity, dtype=object)
            for i, v in enumerate(values):
                arr[i] = _as_exact(v)
        else:
            arr = np.asarray(values, dtype=float)
        return TensorFunction(group, arity, arr, mode)

    def flat_index(self, xs) -> int:
        n = self.group.order
        if len(xs) != self.arity:
            raise ValueError(f"expected {self.arity} coordinates")
        idx = 0
        for x in xs:
            idx = idx * n + int(x)
        return idx

    def value_at(self, xs):
        return self.values[self.flat_index(xs)]

    def max_abs(self):
        if self.mode == EXACT:
            return max(abs(v) for v in self.values)
        return float(np.abs(self.values).max())


# -- spec operations ---------------------------------------------------------


def balanced(a: GroupSet) -> DenseFunction:
    """Balanced function A(x) - |A|/N, exact rationals."""
    d = a.density
    vals = [(1 - d) if b else (0 - d) for b in a.bits]
    return DenseFunction.from_values(a.group, vals, EXACT)


def mu(a: GroupSet) -> DenseFunction:
    """Normalized measure A(x)/|A|."""
    if a.cardinality == 0:
        raise ValueError("mu of the empty set is undefined")
    c = Fraction(1, a.cardinality)
    return DenseFunction.from_values(
        a.group, [c if b else Fraction(0) for b in a.bits], EXACT
    )


def shifted_intersection(a: GroupSet, zs) -> GroupSet:
    """A_z = A ∩ (A - z_1) ∩ ... ∩ (A - z_{k-1})."""
    bits = a.bits.copy()
    for z in zs:
        bits &= a.bits[a.group.translation(int(z))]
    bits.setflags(write=False)
    return GroupSet(a.group, bits)


def minkowski_index(group: Group, *tuples) -> tuple[int, ...]:
    """Componentwise sums x_i + y_j (+ z_k ...) in lexicographic slot order."""
    if not tuples:
        return ()
    out = []
    for combo in _lex_product(tuples):
        s = 0
        for c in combo:
            s = group.add(s, int(c))
        out.append(s)
    return tuple(out)


def _lex_product(tuples):
    if len(tuples) == 1:
        for v in tuples[0]:
            yield (v,)
        return
    for v in tuples[0]:
        for rest in _lex_product(tuples[1:]):
            yield (v,) + rest


def generalized_conv(fs, budget=None) -> TensorFunction:
    """C_l(f_1..f_l)(x_1..x_l) = sum_z prod_j f_j(z + x_j)."""
    fs = [f.indicator() if isinstance(f, GroupSet) else f for f in fs]
    if not fs:
        raise ValueError("need at least one function")
    group = fs[0].group
    for f in fs:
        if f.group != group:
            raise ValueError("functions live on different groups")
    l = len(fs)
    n = group.order
    check_budget(n**l, budget, what=f"arity-{l} tensor")
    mode = EXACT if all(f.mode == EXACT for f in fs) else FLOAT
    if mode == FLOAT:
        acc = np.zeros((n,) * l, dtype=float)
        vals = [f.as_float_array() for f in fs]
    else:
        acc = np.zeros((n,) * l, dtype=object)
        vals = [f.values for f in fs]
    for z in range(n):
        perm = group.translation(z)
        term = vals[0][perm]
        for j in range(1, l):
            shifted = vals[j][perm]
            term = np.multiply.outer(term, shifted)
        acc = acc + term
    return TensorFunction(group, l, acc.ravel(), mode)


def reduced_conv(f: DenseFunction | GroupSet, l: int, budget=None) -> TensorFunction:
    """C'_l(f)(x_1..x_{l-1}) = sum_z f(z) f(z+x_1) ... f(z+x_{l-1}).

    Equals the arity-l generalized convolution pinned at first coordinate 0.
    """
    if isinstance(f, GroupSet):
        f = f.indicator()
    if l < 2:
        raise ValueError("reduced_conv needs arity l >= 2")
    group = f.group
    check_budget(group.order ** (l - 1), budget, what=f"arity-{l - 1} tensor")
    if f.mode == EXACT:
        nums, den = f.scaled_ints()
        raw = kernels.cprime_exact(group, nums, l)
        if den == 1:
            vals = [int(v) for v in raw]
        else:
            d = den**l
            vals = [Fraction(int(v), d) for v in raw]
        return TensorFunction.build(group, l - 1, vals, EXACT, budget)
    raw = kernels.cprime_float(group, f.as_float_array(), l)
    return TensorFunction.build(group, l - 1, raw, FLOAT, budget)


# -- transforms and convolutions on DenseFunction ----------------------------


def fourier(f: DenseFunction) -> DenseFunction:
    """f_hat(r) = sum_x f(x) conj(chi_r(x)); float path only."""
    coeffs = fourier_values(f.group, f.as_float_array())
    return DenseFunction(f.group, coeffs, FLOAT)


def inverse_fourier(f_hat: DenseFunction) -> DenseFunction:
    vals = inverse_fourier_values(f_hat.group, f_hat.values)
    return DenseFunction(f_hat.group, vals, FLOAT)


def fast_convolve(
    f: DenseFunction, g: DenseFunction, mode: str = "*", method: str = "auto"
) -> DenseFunction:
    """(f*g)(x) = sum_y f(y) g(x-y)  or  (f o g)(x) = sum_y f(y) g(y+x).

    Exact inputs use the definitional integer path; float inputs go through
    the transform.  `method` forces "direct" or "fft".
    """
    if f.group != g.group:
        raise ValueError("convolution needs both functions on one group")
    if mode in ("*", "star", "conv"):
        star = True
    elif mode in ("o", "circ", "corr", "∘"):
        star = False
    else:
        raise ValueError(f"unknown convolution mode {mode!r}")
    group = f.group
    exact = f.mode == EXACT and g.mode == EXACT
    if method == "auto":
        method = "direct" if exact else "fft"
    if method == "direct":
        if exact:
            fn, fd = f.scaled_ints()
            gn, gd = g.scaled_ints()
            if star:
                # (f*g)(x) = sum_y f(y) g(x-y) = (rev(f) o g)(x) with rev at
                # the end: use correlate on reversed f
                rev = [fn[group.neg_perm[i]] for i in range(group.order)]
                raw = kernels.correlate_exact(group, rev, gn)
            else:
                raw = kernels.correlate_exact(group, fn, gn)
            den = fd * gd
            vals = (
                [int(v) for v in raw]
                if den == 1
                else [Fraction(int(v), den) for v in raw]
            )
            return DenseFunction.from_values(group, vals, EXACT)
        fv, gv = f.as_float_array(), g.as_float_array()
        if star:
            rev = fv[group.neg_perm]
            return DenseFunction(group, kernels.correlate_float(group, rev, gv), FLOAT)
        return DenseFunction(group, kernels.correlate_float(group, fv, gv), FLOAT)
    # fft path: f*g via hat products; f o g = rev(f) * g
    fv = f.as_float_array()
    gv = g.as_float_array()
    if not star:
        fv = fv[group.neg_perm]
    out = inverse_fourier_values(
        group, fourier_values(group, fv) * fourier_values(group, gv)
    )
    if np.abs(out.imag).max(initial=0.0) < 1e-9 * max(1.0, np.abs(out.real).max()):
        out = out.real
    return DenseFunction(group, out, FLOAT)


def correlate(f: DenseFunction, g: DenseFunction) -> DenseFunction:
    return fast_convolve(f, g, mode="o")
