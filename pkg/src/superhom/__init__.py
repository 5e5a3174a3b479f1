"""Homological invariants of finite-dimensional supermodules over small
classical Lie superalgebras, computed in exact rational arithmetic."""

__version__ = "0.1.0"

from .linalg import (
    QQ,
    Complex,
    LinearAlgebraError,
    LinearMap,
    SuperSpace,
    homology_dims,
    kernel_basis,
    qq,
    rank,
    superspace,
)

__all__ = [
    "QQ",
    "Complex",
    "LinearAlgebraError",
    "LinearMap",
    "SuperSpace",
    "homology_dims",
    "kernel_basis",
    "qq",
    "rank",
    "superspace",
]
