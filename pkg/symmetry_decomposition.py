"""
对称分解
按镜像自同构把 L(H_n) 正交相似到 diag(L_A, L_S)：
L_A 是偶块（Bar 与 Top/Bottom 的对称组合），L_S 是奇块（反对称组合）
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from chain_graph import HeptagonalChain, laplacian
from errors import DecompositionError
from exact_arith import QuadExt
from exact_matrix import ExactMatrix
from hepta_config import HeptaConfig

SQRT2 = QuadExt.sqrt(2)
HALF_SQRT2 = QuadExt(Fraction(0), Fraction(1, 2), 2)  # 1/√2


class BlockLaplacian(BaseModel):
    """L(H_n) 按 V_0 = Bar、V_1 = Top、V_2 = Bottom 分出的四个独立块"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int = Field(..., ge=1)
    bar_bar: ExactMatrix = Field(..., description="L_{V0V0}，n×n")
    bar_top: ExactMatrix = Field(..., description="L_{V0V1}，n×(4n+1)")
    top_top: ExactMatrix = Field(..., description="L_{V1V1}，(4n+1)×(4n+1)")
    top_bottom: ExactMatrix = Field(..., description="L_{V1V2}，(4n+1)×(4n+1)")

    def reassemble(self) -> ExactMatrix:
        """按 L_{V0V2}=L_{V0V1}、L_{V2V2}=L_{V1V1}、L_{V2V1}=L_{V1V2} 拼回整张拉普拉斯矩阵"""
        bt = self.bar_top
        return ExactMatrix.block([
            [self.bar_bar, bt, bt],
            [bt.T, self.top_top, self.top_bottom],
            [bt.T, self.top_bottom, self.top_top],
        ])


class DecomposedPair(BaseModel):
    """分解结果：偶块 L_A（ℚ(√2) 元素）与奇块 L_S（整数元素）"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int = Field(..., ge=1)
    even: ExactMatrix = Field(..., description="L_A，(5n+1)×(5n+1)")
    odd: ExactMatrix = Field(..., description="L_S，(4n+1)×(4n+1)")

    @property
    def block_diagonal(self) -> ExactMatrix:
        return ExactMatrix.block([
            [self.even, ExactMatrix.zeros(self.even.size, self.odd.size)],
            [ExactMatrix.zeros(self.odd.size, self.even.size), self.odd],
        ])


def extract_blocks(chain: HeptagonalChain) -> BlockLaplacian:
    """切出 L_{V0V0}、L_{V0V1}、L_{V1V1}、L_{V1V2}，并核对镜像关系与重组恒等式"""
    n = chain.n
    lap = laplacian(chain)
    bars, tops, bottoms = slice(0, n), slice(n, 5 * n + 1), slice(5 * n + 1, 9 * n + 2)

    blocks = BlockLaplacian(
        n=n,
        bar_bar=lap[bars, bars],
        bar_top=lap[bars, tops],
        top_top=lap[tops, tops],
        top_bottom=lap[tops, bottoms],
    )

    if lap[bars, bottoms] != blocks.bar_top or lap[bottoms, bottoms] != blocks.top_top:
        raise DecompositionError(f"H_{n} 的拉普拉斯矩阵不满足镜像块关系")
    if blocks.bar_bar != ExactMatrix.identity(n, 2):
        raise DecompositionError(f"H_{n} 的 L_{{V0V0}} 不是 2I")
    if blocks.reassemble() != lap:
        raise DecompositionError(f"H_{n} 的分块重组与拉普拉斯矩阵不一致")
    return blocks


def transform_matrix(n: int) -> ExactMatrix:
    """正交变换 T = [[I, 0, 0], [0, I/√2, I/√2], [0, I/√2, −I/√2]]"""
    m = 4 * n + 1
    half = ExactMatrix.identity(m, HALF_SQRT2)
    return ExactMatrix.block([
        [ExactMatrix.identity(n), ExactMatrix.zeros(n, m), ExactMatrix.zeros(n, m)],
        [ExactMatrix.zeros(m, n), half, half],
        [ExactMatrix.zeros(m, n), half, -half],
    ])


def _even_block(blocks: BlockLaplacian, corner: ExactMatrix) -> ExactMatrix:
    coupling = blocks.bar_top.scale(SQRT2)
    return ExactMatrix.block([
        [corner, coupling],
        [coupling.T, blocks.top_top + blocks.top_bottom],
    ])


def decompose(blocks: BlockLaplacian, config: Optional[HeptaConfig] = None) -> DecomposedPair:
    """
    构造 L_A = [[2I, √2·L_{V0V1}], [√2·L_{V1V0}, L_{V1V1}+L_{V1V2}]] 与 L_S = L_{V1V1} − L_{V1V2}
    n ≤ transform_check_n 时在 ℚ(√2) 中逐元素校验 T·L·T' = diag(L_A, L_S)，否则抽样若干行
    """
    config = config or HeptaConfig()
    n = blocks.n
    pair = DecomposedPair(
        n=n,
        even=_even_block(blocks, blocks.bar_bar),
        odd=blocks.top_top - blocks.top_bottom,
    )

    transform = transform_matrix(n)
    lap = blocks.reassemble()
    expected = pair.block_diagonal

    if n <= config.transform_check_n:
        if transform @ transform.T != ExactMatrix.identity(9 * n + 2):
            raise DecompositionError(f"H_{n} 的变换矩阵 T 不正交")
        if transform @ lap @ transform.T != expected:
            raise DecompositionError(f"H_{n} 的 T·L·T' 与 diag(L_A, L_S) 不一致")
        logging.debug(f"H_{n} 的 T·L·T' 已逐元素校验")
    else:
        rng = random.Random(config.seed)
        rows = sorted(rng.sample(range(9 * n + 2), min(config.transform_samples, 9 * n + 2)))
        right = lap @ transform.T
        for r in rows:
            if transform[r:r + 1, :] @ right != expected[r:r + 1, :]:
                raise DecompositionError(f"H_{n} 的 T·L·T' 第 {r + 1} 行与 diag(L_A, L_S) 不一致")
        logging.debug(f"H_{n} 的 T·L·T' 抽样校验了 {len(rows)} 行")
    return pair


def integerize_even_block(pair: DecomposedPair) -> ExactMatrix:
    """D·L_A·D⁻¹，D = diag(√2 在 Bar 块, 1 其余)；耦合元变为 −2（Bar 行）与 −1（Top 行）"""
    n = pair.n
    data = pair.even.to_array()
    size = data.shape[0]
    for i in range(size):
        for j in range(size):
            value = data[i, j]
            if value == 0:
                continue
            if i < n <= j:
                data[i, j] = value * SQRT2
            elif j < n <= i:
                data[i, j] = value / SQRT2
    return ExactMatrix(data).to_integer()


def published_odd_block(n: int) -> ExactMatrix:
    """按发表形式给出的奇块：奇数位置对角元 3，偶数位置 2，次对角 −1"""
    m = 4 * n + 1
    return ExactMatrix.tridiagonal([3 if i % 2 == 1 else 2 for i in range(1, m + 1)], [-1] * (m - 1))


def published_even_block(blocks: BlockLaplacian) -> ExactMatrix:
    """按发表形式给出的偶块，左上角印作 I_n"""
    return _even_block(blocks, ExactMatrix.identity(blocks.n))


def interior_rungs(n: int) -> List[int]:
    """内部横档在奇块中的位置 4z+1（1 起），1 ≤ z ≤ n−1"""
    return [4 * z + 1 for z in range(1, n)]


def odd_block_difference(pair: DecomposedPair) -> Dict[Tuple[int, int], int]:
    """图的奇块减去发表奇块后的非零元，键为 (行, 列)，1 起"""
    diff = pair.odd - published_odd_block(pair.n)
    return {
        (i + 1, j + 1): int(diff[i, j])
        for i, cols in enumerate(diff.nonzero_pattern())
        for j in cols
    }


def is_rung_diagonal_shift(pair: DecomposedPair) -> bool:
    """两种奇块是否恰好只在内部横档的对角元上相差 +1"""
    return odd_block_difference(pair) == {(i, i): 1 for i in interior_rungs(pair.n)}
