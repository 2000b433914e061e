"""Exact minimization of sums of submodular terms by capacity scaling."""

from .instance import (BicardinalitySpec, CardinalitySpec, GeneralSpec, Instance, PairwiseSpec,
                       evaluate, validate)
from .solver import SolveResult, Solver, solve

__all__ = [
    "Instance", "PairwiseSpec", "CardinalitySpec", "BicardinalitySpec", "GeneralSpec",
    "evaluate", "validate", "Solver", "SolveResult", "solve",
]
