"""Higher additive energies, box norms and density increments over finite
abelian groups."""

from .config import BudgetError, tensor_budget
from .energies import (
    EnergyReport,
    EnergySpec,
    energy,
    multi_scalar_product,
    raw_energy,
    uniformity_epsilon,
    uniformity_report,
)
from .functions import (
    DenseFunction,
    GroupSet,
    TensorFunction,
    balanced,
    fast_convolve,
    fourier,
    generalized_conv,
    inverse_fourier,
    minkowski_index,
    mu,
    reduced_conv,
    shifted_intersection,
)
from .groups import Group, make_group, parse_group

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "DenseFunction",
    "EnergyReport",
    "EnergySpec",
    "Group",
    "GroupSet",
    "TensorFunction",
    "balanced",
    "energy",
    "fast_convolve",
    "fourier",
    "generalized_conv",
    "inverse_fourier",
    "make_group",
    "minkowski_index",
    "mu",
    "multi_scalar_product",
    "parse_group",
    "raw_energy",
    "reduced_conv",
    "shifted_intersection",
    "tensor_budget",
    "uniformity_epsilon",
    "uniformity_report",
]
