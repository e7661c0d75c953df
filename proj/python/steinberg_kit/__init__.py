"""Python bindings for the steinberg_kit C++ core."""

from ._core import (
    SteinbergError,
    distinction_dimension,
    epsilon_G,
    graph,
    hilbert_symbol,
    orthogonal_type,
    poincare_gl3_so3,
    quadclass,
    rankone_orbits,
    shell_counts,
    square_class,
    sum_over_classes,
)

__all__ = [
    "SteinbergError",
    "distinction_dimension",
    "epsilon_G",
    "graph",
    "hilbert_symbol",
    "orthogonal_type",
    "poincare_gl3_so3",
    "quadclass",
    "rankone_orbits",
    "shell_counts",
    "square_class",
    "sum_over_classes",
]
