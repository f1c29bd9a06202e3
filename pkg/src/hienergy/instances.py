"""Seeded planted-instance generators for scenarios and the increment engine.

Randomness uses the counter-based Philox generator so instances are
reproducible across platforms and insertion order.
"""

from __future__ import annotations

import numpy as np

from .functions import GroupSet
from .groups import Group


def _philox(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def random_set(group: Group, density: float, seed: int) -> GroupSet:
    rng = _philox(seed)
    bits = rng.random(group.order) < density
    bits.setflags(write=False)
    return GroupSet(group, bits)


def tail_subspace_set(group: Group, dim: int) -> GroupSet:
    """The subgroup spanned by the last `dim` coordinates.

    With row-major encoding its members are exactly the indices < B where
    B = prod of the last `dim` factors.
    """
    if dim < 0 or dim > len(group.factors):
        raise ValueError("subgroup dimension out of range")
    block = 1
    for m in group.factors[len(group.factors) - dim :]:
        block *= m
    bits = np.zeros(group.order, dtype=bool)
    bits[:block] = True
    bits.setflags(write=False)
    return GroupSet(group, bits)


def planted_direct_sum(
    group: Group, subgroup_dim: int, lambda_density: float, seed: int
) -> tuple[GroupSet, dict]:
    """A = H ⊕ Λ: H the tail-coordinate subgroup, Λ a random set of cosets.

    Each H-coset (indexed by the leading coordinates) joins A independently
    with probability lambda_density.
    """
    if not group.is_vector_space:
        raise ValueError("planted scenarios need a vector-space group")
    h = tail_subspace_set(group, subgroup_dim)
    block = h.cardinality
    n_cosets = group.order // block
    rng = _philox(seed)
    picks = rng.random(n_cosets) < lambda_density
    if not picks.any():
        picks[int(rng.integers(n_cosets))] = True
    bits = np.repeat(picks, block)
    bits.setflags(write=False)
    a = GroupSet(group, bits)
    meta = {
        "kind": "direct-sum",
        "subgroup_dim": subgroup_dim,
        "subgroup_size": block,
        "lambda_density": lambda_density,
        "cosets_selected": int(picks.sum()),
        "density": float(a.density),
        "seed": seed,
    }
    return a, meta


def planted_removal(
    group: Group, subgroup_dim: int, delta: float, seed: int
) -> tuple[GroupSet, dict]:
    """A = (H \\ Λ) ⊔ Λ = H ∪ Λ with Λ a random set of density delta."""
    if not group.is_vector_space:
        raise ValueError("planted scenarios need a vector-space group")
    h = tail_subspace_set(group, subgroup_dim)
    lam = random_set(group, delta, seed)
    a = h | lam
    h_tilde = h.cardinality - (h & lam).cardinality
    meta = {
        "kind": "removal",
        "subgroup_dim": subgroup_dim,
        "beta": float(h.density),
        "lambda_density": delta,
        "|H_tilde|": h_tilde,
        "density": float(a.density),
        "seed": seed,
    }
    return a, meta


def planted_biased_coset(
    group: Group, codim: int, delta: float, bias: float, seed: int
) -> tuple[GroupSet, dict]:
    """Union of random slices of the cosets of a codim-`codim` subspace, with
    one coset biased to density (1+bias)*delta and the rest rebalanced so the
    total density stays delta."""
    if not group.is_vector_space:
        raise ValueError("planted instances need a vector-space group")
    w = tail_subspace_set(group, len(group.factors) - codim)
    block = w.cardinality
    n_cosets = group.order // block
    total = round(delta * group.order)
    dense_count = round((1 + bias) * delta * block)
    if dense_count > block or n_cosets < 2:
        raise ValueError("bias does not fit the requested codimension")
    rest = total - dense_count
    base, extra = divmod(rest, n_cosets - 1)
    rng = _philox(seed)
    dense_idx = int(rng.integers(n_cosets))
    lean = [base + (1 if i < extra else 0) for i in range(n_cosets - 1)]
    counts = lean[:dense_idx] + [dense_count] + lean[dense_idx:]
    bits = np.zeros(group.order, dtype=bool)
    for c, cnt in enumerate(counts):
        members = rng.choice(block, size=cnt, replace=False)
        bits[c * block + members] = True
    bits.setflags(write=False)
    a = GroupSet(group, bits)
    meta = {
        "kind": "biased-coset",
        "codim": codim,
        "block": block,
        "dense_coset": dense_idx,
        "coset_counts": counts,
        "density": float(a.density),
        "bias": bias,
        "seed": seed,
    }
    return a, meta
