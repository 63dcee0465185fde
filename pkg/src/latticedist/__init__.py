"""Exact distance distributions of the integer lattice and its subsets."""
from .lattice import DistanceDistribution, LatticeSpec, PairClass, full_distribution
from .subset import ConfigKind, PointSet, generate
from .error import epsilon, closed_form_bound

__all__ = [
    "ConfigKind",
    "DistanceDistribution",
    "LatticeSpec",
    "PairClass",
    "PointSet",
    "closed_form_bound",
    "epsilon",
    "full_distribution",
    "generate",
]
