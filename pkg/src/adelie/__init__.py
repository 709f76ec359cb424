"""Exact Lie-theoretic computations for the simply-laced (ADE) series."""

from .roots import (
    Basis,
    LatticeVector,
    RootSystem,
    build,
    parse_type,
    root_vector,
    weight_vector,
)

__all__ = [
    "Basis",
    "LatticeVector",
    "RootSystem",
    "build",
    "parse_type",
    "root_vector",
    "weight_vector",
]

__version__ = "0.1.0"
