"""Box energies E_{k_1,...,k_r}, their norms, and epsilon-uniformity.

The r=2 shapes are the classical higher energies (shape (k, l) sums the k-th
power of the arity-l convolution over G^l); r=3 adds the two-box energies on
Minkowski-sum indices; general r gives the full family that also contains the
Gowers norms at shape (2, ..., 2).

Strategies evaluate the same sum by different routes and must agree exactly
on integer inputs:

  enumerate  - per-axis enumeration with one diagonally-fixed coordinate per
               sliced axis (each fix contributes a factor N)
  dual-swap  - permute the shape (the box sum is symmetric in its axes), then
               enumerate with the cheapest axis order
  set-fast   - indicators only: N * sum over w in G^(k-1) of |A_w|^l with
               A_w the intersection of shifted copies of A
  corr-fast  - trailing slot 2: N * sum_t (f o f)^k(t)
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .config import BudgetError, check_budget, tensor_budget
from .functions import EXACT, FLOAT, DenseFunction, GroupSet
from .groups import Group

STRATEGIES = ("auto", "enumerate", "dual-swap", "set-fast", "corr-fast")


@dataclass(frozen=True)
class EnergySpec:
    """An ordered shape (k_1, ..., k_r); K = prod, S = sum."""

    shape: tuple[int, ...]

    def __post_init__(self):
        if len(self.shape) < 1 or any(k < 1 for k in self.shape):
            raise ValueError(f"shape must list integers >= 1, got {self.shape}")

    @property
    def r(self) -> int:
        return len(self.shape)

    @property
    def K(self) -> int:
        return math.prod(self.shape)

    @property
    def S(self) -> int:
        return sum(self.shape)

    @property
    def norm_grade(self) -> bool:
        """True when the shape provably defines a norm (all axes even, r>=2)."""
        return self.r >= 2 and all(k >= 2 and k % 2 == 0 for k in self.shape)


@dataclass
class EnergyReport:
    shape: tuple[int, ...]
    group: str
    group_order: int
    raw: object  # int | Fraction | float
    normalized: object  # raw / N^S
    norm: float | None  # normalized^(1/K), None when raw < 0
    strategy: str
    seconds: float
    exact: bool
    norm_grade: bool
    notes: dict = field(default_factory=dict)


def _spec(shape) -> EnergySpec:
    if isinstance(shape, EnergySpec):
        return shape
    return EnergySpec(tuple(int(k) for k in shape))


# -- exact and float engines on raw arrays -----------------------------------


def _slice_product(group: Group, vals: np.ndarray, zs, exact: bool) -> np.ndarray:
    """f_z = f * f(.+z_2) * ... ; object dtype keeps big ints safe."""
    out = vals.astype(object if exact else float, copy=True)
    for z in zs:
        out = out * vals[group.translation(int(z))]
    return out


def _energy_recursive(group: Group, vals: np.ndarray, shape: tuple[int, ...], exact: bool):
    n = group.order
    if len(shape) == 1:
        total = sum(vals.tolist()) if exact else float(vals.sum())
        return total ** shape[0]
    if len(shape) == 2:
        k, l = shape
        cp = (
            kernels.cprime_exact(group, vals, l)
            if exact
            else kernels.cprime_float(group, vals, l)
        )
        if exact:
            return n * kernels.power_sum(cp, k)
        return n * float(np.add.reduce(np.asarray(cp, dtype=float) ** k))
    k_last = shape[-1]
    total = 0
    for zs in itertools.product(range(n), repeat=k_last - 1):
        fz = _slice_product(group, vals, zs, exact)
        total += _energy_recursive(group, fz, shape[:-1], exact)
    return n * total


def _enumerate_cost(group: Group, shape: tuple[int, ...]) -> int:
    """Number of enumerated states (drives both time and peak memory)."""
    n = group.order
    return n ** sum(k - 1 for k in shape[1:])


def _dual_order(shape: tuple[int, ...]) -> tuple[int, ...]:
    """Power axis = largest, base-tensor axis = smallest, rest in between."""
    s = sorted(shape, reverse=True)
    if len(s) >= 2:
        smallest = s.pop()
        return (s[0], smallest, *s[1:])
    return tuple(s)


class Infeasible(Exception):
    pass


def _strategy_compute(f, spec: EnergySpec, strategy: str, budget):
    """Return (raw_scaled_int_or_float, denominator, note) for one strategy."""
    group = f.group if isinstance(f, DenseFunction) else f.group
    n = group.order
    shape = spec.shape

    if strategy == "corr-fast":
        if spec.r != 2 or shape[1] != 2:
            raise Infeasible("corr-fast needs an r=2 shape with trailing slot 2")
        k = shape[0]
        if isinstance(f, GroupSet):
            nums, den = f.indicator().scaled_ints()
        elif f.mode == EXACT:
            nums, den = f.scaled_ints()
        else:
            c = kernels.correlate_float(group, f.values, f.values)
            return n * float(np.add.reduce(c**k)), 1, {}
        c = kernels.correlate_exact(group, nums, nums)
        return n * kernels.power_sum(c, k), den, {}

    if strategy == "set-fast":
        if spec.r != 2:
            raise Infeasible("set-fast needs an r=2 shape")
        if not isinstance(f, GroupSet):
            if not (isinstance(f, DenseFunction) and f.mode == EXACT):
                raise Infeasible("set-fast needs an indicator input")
            vals = set(int(v) for v in f.values) if f.is_integer_valued else None
            if vals is None or not vals <= {0, 1}:
                raise Infeasible("set-fast needs an indicator input")
            f = GroupSet(group, np.array([bool(v) for v in f.values]))
        k, l = shape
        check_budget(n ** (k - 1), budget, what=f"set-fast w-enumeration (k={k})")
        hist = kernels.az_card_hist(group, f.bits, k - 1)
        return n * sum(int(cnt) * c**l for c, cnt in enumerate(hist) if cnt), 1, {}

    if strategy in ("enumerate", "dual-swap"):
        use_shape = _dual_order(shape) if strategy == "dual-swap" else shape
        cost = _enumerate_cost(group, use_shape)
        check_budget(cost, budget, what=f"enumeration over shape {use_shape}")
        if isinstance(f, GroupSet):
            f = f.indicator()
        if f.mode == EXACT:
            nums, den = f.scaled_ints()
            raw = _energy_recursive(
                group, np.array(nums, dtype=object), use_shape, True
            )
            return raw, den, {"order": use_shape}
        raw = _energy_recursive(group, f.as_float_array(), use_shape, False)
        return raw, 1, {"order": use_shape}

    raise ValueError(f"unknown strategy {strategy!r}")


def energy(f, shape, strategy: str = "auto", budget=None) -> EnergyReport:
    """Evaluate the box energy of f (a DenseFunction or GroupSet)."""
    spec = _spec(shape)
    group = f.group
    t0 = time.perf_counter()
    notes: dict = {}
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    tried = []
    if strategy == "auto":
        order = ["corr-fast", "set-fast", "dual-swap", "enumerate"]
    else:
        order = [strategy]
    raw = den = None
    used = None
    last_err = None
    for s in order:
        try:
            raw, den, extra = _strategy_compute(f, spec, s, budget)
            used = s
            notes.update(extra)
            break
        except (Infeasible, BudgetError) as e:
            tried.append(f"{s}: {e}")
            last_err = e
    if used is None:
        if strategy == "auto":
            raise BudgetError(
                "no feasible strategy within the tensor budget: " + "; ".join(tried)
            )
        raise last_err
    exact = not isinstance(raw, float)
    if exact and den != 1:
        raw_val = Fraction(raw, den**spec.K)
        if raw_val.denominator == 1:
            raw_val = int(raw_val)
    else:
        raw_val = raw
    n = group.order
    if exact:
        normalized = Fraction(raw_val) / Fraction(n**spec.S)
        if normalized.denominator == 1:
            normalized = int(normalized)
        norm = None
        if raw_val >= 0:
            norm = float(Fraction(normalized)) ** (1.0 / spec.K)
        else:
            notes["negative"] = "raw energy negative (mixed parity); no norm value"
    else:
        normalized = raw_val / n**spec.S
        norm = normalized ** (1.0 / spec.K) if raw_val >= 0 else None
        if norm is None:
            notes["negative"] = "raw energy negative (mixed parity); no norm value"
    return EnergyReport(
        shape=spec.shape,
        group=str(group),
        group_order=n,
        raw=raw_val,
        normalized=normalized,
        norm=norm,
        strategy=used,
        seconds=time.perf_counter() - t0,
        exact=exact,
        norm_grade=spec.norm_grade,
        notes=notes,
    )


def raw_energy(f, shape, strategy: str = "auto", budget=None):
    return energy(f, shape, strategy, budget).raw


# -- multi-scalar product ----------------------------------------------------


def multi_scalar_product(family: dict, shape=None, budget=None):
    """<f^omega> over a box: sum over grids of prod_omega f^omega(grid sum).

    `family` maps 0-based box points (tuples) to DenseFunctions; it must
    cover the whole box. Exact when every member is exact.
    """
    if not family:
        raise ValueError("empty family")
    some_key = next(iter(family))
    r = len(some_key)
    if shape is None:
        shape = tuple(max(k[j] for k in family) + 1 for j in range(r))
    spec = _spec(shape)
    box = list(itertools.product(*[range(k) for k in spec.shape]))
    missing = [w for w in box if w not in family]
    if missing or len(family) != len(box):
        raise ValueError(f"family does not exactly cover the box {spec.shape}")
    group = family[some_key].group
    for fn in family.values():
        if fn.group != group:
            raise ValueError("family members live on different groups")
    exact = all(fn.mode == EXACT for fn in family.values())
    n = group.order

    # permute axes so the largest one factorizes (innermost products)
    axes = sorted(range(spec.r), key=lambda j: spec.shape[j])
    perm_shape = tuple(spec.shape[j] for j in axes)
    fam = {tuple(w[j] for j in axes): fn for w, fn in family.items()}

    if exact:
        value_arrays = {}
        dens = 1
        for w, fn in fam.items():
            nums, den = fn.scaled_ints()
            value_arrays[w] = np.array(nums, dtype=object)
            dens *= den
    else:
        value_arrays = {w: fn.as_float_array() for w, fn in fam.items()}
        dens = 1
    if spec.r == 1:
        total = 1
        for m in range(perm_shape[0]):
            s = value_arrays[(m,)].sum()
            total = total * (int(s) if exact else float(s))
        return Fraction(total, dens) if exact and dens != 1 else total

    tail_shape = perm_shape[:-1]
    k_last = perm_shape[-1]
    tail_box = list(itertools.product(*[range(k) for k in tail_shape]))
    cost = n ** (sum(tail_shape) - 1)
    check_budget(cost, budget, what=f"multi-scalar enumeration over {perm_shape}")

    # tail grids: axis 0 first coordinate pinned to 0 (diagonal shift), x N
    per_axis = []
    for j, kj in enumerate(tail_shape):
        if j == 0:
            per_axis.append(
                [(0,) + rest for rest in itertools.product(range(n), repeat=kj - 1)]
            )
        else:
            per_axis.append(list(itertools.product(range(n), repeat=kj)))
    total = 0
    for grids in itertools.product(*per_axis):
        prod_val = 1
        for m in range(k_last):
            acc = None
            for w in tail_box:
                y = 0
                for j, coord in enumerate(w):
                    y = group.add(y, grids[j][coord])
                row = value_arrays[w + (m,)][group.translation(y)]
                acc = row if acc is None else acc * row
            s = acc.sum()
            prod_val = prod_val * (int(s) if exact else float(s))
            if prod_val == 0:
                break
        total += prod_val
    total = n * total
    if exact and dens != 1:
        v = Fraction(total, dens)
        return int(v) if v.denominator == 1 else v
    return total


# -- uniformity --------------------------------------------------------------


@dataclass
class UniformityReport:
    epsilon: float
    epsilon_power: object  # Fraction: epsilon^(kl), exact
    shape: tuple[int, int]
    density: Fraction
    strategy: str
    raw_balanced_energy: object


def uniformity_report(a: GroupSet, k: int, l: int, budget=None) -> UniformityReport:
    """epsilon with epsilon^(kl) = E^k_l(f_A) / (delta^(kl) N^(k+l)), exact core."""
    if k < 2 or l < 2:
        raise ValueError("uniformity needs k, l >= 2")
    if k % 2 and l % 2:
        raise ValueError("k and l cannot both be odd (energy sign is indefinite)")
    n = a.group.order
    card = a.cardinality
    if card == 0:
        raise ValueError("uniformity of the empty set is undefined")
    if card == n:
        return UniformityReport(
            0.0, Fraction(0), (k, l), a.density, "trivial", 0
        )
    # g = N*A - |A| = N * f_A is integer-valued; E(f_A) = E(g) / N^(kl)
    g_vals = [n * int(b) - card for b in a.bits]
    g = DenseFunction.from_values(a.group, g_vals, EXACT)
    rep = energy(g, (k, l), strategy="auto", budget=budget)
    power = Fraction(rep.raw, card ** (k * l) * n ** (k + l))
    eps = float(power) ** (1.0 / (k * l)) if power > 0 else 0.0
    return UniformityReport(eps, power, (k, l), a.density, rep.strategy, rep.raw)


def uniformity_epsilon(a: GroupSet, k: int, l: int, budget=None) -> float:
    return uniformity_report(a, k, l, budget).epsilon
