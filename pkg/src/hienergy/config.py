"""Resource guardrails shared across modules."""

from __future__ import annotations

import os

DEFAULT_TENSOR_BUDGET = 2**27  # max number of tensor entries


class BudgetError(Exception):
    """An operation refused to allocate past the tensor budget."""


def tensor_budget(override: int | None = None) -> int:
    """Current tensor-entry budget: explicit override > env > default."""
    if override is not None:
        return int(override)
    env = os.environ.get("HE_TENSOR_BUDGET")
    if env:
        return int(env)
    return DEFAULT_TENSOR_BUDGET


def check_budget(entries: int, override: int | None = None, what: str = "tensor") -> None:
    limit = tensor_budget(override)
    if entries > limit:
        raise BudgetError(
            f"{what} needs {entries} entries, over the budget of {limit}; "
            "raise HE_TENSOR_BUDGET or pass a larger budget to proceed"
        )
