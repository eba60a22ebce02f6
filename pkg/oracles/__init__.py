"""
独立预言机包
精确电阻距离、矩阵树定理、暴力枚举与浮点谱，用来审计闭式公式
"""

from .base import GraphInput, OracleGraph
from .resistance import (
    GroundedSolver,
    ResistanceTable,
    foster_sum,
    kirchhoff_resistance,
    resistance_table,
)
from .spanning_trees import (
    spanning_trees_enumerate,
    spanning_trees_matrix_tree,
    spanning_trees_spectral,
)
from .spectra import (
    kirchhoff_decomposed_exact,
    kirchhoff_decomposed_numeric,
    kirchhoff_spectral,
    numeric_spectrum,
    spectrum_union_gap,
)

__all__ = [
    'GraphInput',
    'OracleGraph',
    'GroundedSolver',
    'ResistanceTable',
    'foster_sum',
    'kirchhoff_resistance',
    'resistance_table',
    'spanning_trees_enumerate',
    'spanning_trees_matrix_tree',
    'spanning_trees_spectral',
    'kirchhoff_decomposed_exact',
    'kirchhoff_decomposed_numeric',
    'kirchhoff_spectral',
    'numeric_spectrum',
    'spectrum_union_gap',
]
