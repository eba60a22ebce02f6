"""
谱预言机
numpy 浮点特征值：Kirchhoff 指数的特征值形式、谱并集匹配，以及基于精确特征多项式的 Vieta 形式
"""

from fractions import Fraction
from typing import Sequence, Tuple, Union

import numpy as np

from charpoly_engine import charpoly
from errors import DomainError
from exact_matrix import ExactMatrix
from models import SpectralSummary
from symmetry_decomposition import DecomposedPair, integerize_even_block

from .base import GraphInput, OracleGraph

RESIDUAL_SAMPLES = 8
UNION_TOLERANCE = 1e-8


def numeric_spectrum(matrix: Union[ExactMatrix, np.ndarray], samples: int = RESIDUAL_SAMPLES) -> SpectralSummary:
    """对称矩阵的升序特征值，并抽查若干特征对的残差 ‖Mv − λv‖"""
    dense = matrix.to_float() if isinstance(matrix, ExactMatrix) else np.asarray(matrix, dtype=np.float64)
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise DomainError(f"需要方阵，收到形状 {dense.shape}")
    if not np.allclose(dense, dense.T, rtol=0.0, atol=1e-12):
        raise DomainError("numeric_spectrum 只接受对称矩阵")

    eigenvalues, vectors = np.linalg.eigh(dense)
    size = eigenvalues.size
    picks = np.unique(np.linspace(0, size - 1, num=min(samples, size), dtype=int)) if size else []
    residual = 0.0
    for k in picks:
        v = vectors[:, k]
        residual = max(residual, float(np.linalg.norm(dense @ v - eigenvalues[k] * v)))

    nonzero = eigenvalues[np.abs(eigenvalues) >= 1e-9]
    return SpectralSummary(
        eigenvalues=[float(x) for x in eigenvalues],
        reciprocal_sum_nonzero=float(np.sum(1.0 / nonzero)) if nonzero.size else 0.0,
        max_residual=residual,
    )


def kirchhoff_spectral(source: GraphInput) -> float:
    """Kf(G) = |V|·Σ_{k≥2} 1/μ_k"""
    oracle = OracleGraph(source)
    oracle.require_connected()
    eigenvalues = np.linalg.eigvalsh(oracle.laplacian().to_float())
    return oracle.order * float(np.sum(1.0 / eigenvalues[1:]))


def kirchhoff_decomposed_numeric(pair: DecomposedPair) -> float:
    """(9n+2)·(Σ 1/α_s + Σ 1/β_t)，α 取 L_A 的非零特征值，β 取 L_S 的特征值"""
    alpha = np.linalg.eigvalsh(pair.even.to_float())
    beta = np.linalg.eigvalsh(pair.odd.to_float())
    return (9 * pair.n + 2) * float(np.sum(1.0 / alpha[1:]) + np.sum(1.0 / beta))


def kirchhoff_decomposed_exact(pair: DecomposedPair) -> Fraction:
    """(9n+2)·(e_{5n−1}/e_{5n}(L_A) + e_{4n}/e_{4n+1}(L_S))，由精确特征多项式的 Vieta 关系给出"""
    n = pair.n
    even = charpoly(integerize_even_block(pair))
    odd = charpoly(pair.odd)
    return (9 * n + 2) * (
        even.minor_sum(5 * n - 1) / even.minor_sum(5 * n)
        + odd.minor_sum(4 * n) / odd.minor_sum(4 * n + 1)
    )


def spectrum_union_gap(whole: Sequence[float], *parts: Sequence[float]) -> Tuple[bool, float]:
    """整体谱与各部分谱并集按升序逐一配对，返回 (是否在 1e−8 内, 最大偏差)"""
    merged = np.sort(np.concatenate([np.asarray(p, dtype=np.float64) for p in parts])) if parts else np.array([])
    target = np.sort(np.asarray(whole, dtype=np.float64))
    if merged.size != target.size:
        return False, float("inf")
    gap = float(np.max(np.abs(merged - target))) if target.size else 0.0
    return gap <= UNION_TOLERANCE, gap
