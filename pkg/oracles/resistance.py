"""
电阻距离预言机
接地拉普拉斯矩阵在逆 Cuthill-McKee 顺序下做稀疏 LU 分解（有理数上精确），
对每个单位向量求解得到接地逆 G，r(u,v) = G_uu + G_vv − 2G_uv
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from errors import DomainError
from exact_arith import format_exact

from .base import GraphInput, OracleGraph


class GroundedSolver:
    """对称正定接地拉普拉斯矩阵的稀疏 LDLᵀ 式分解，不换行"""

    def __init__(self, oracle: OracleGraph):
        ground = oracle.ground
        free = oracle.graph.subgraph(v for v in oracle.nodes if v != ground)
        order = list(nx.utils.reverse_cuthill_mckee_ordering(free)) if free.number_of_nodes() else []
        # RCM 逐分量排序，覆盖全部非接地点
        self.order: List[Any] = order
        self.position: Dict[Any, int] = {v: k for k, v in enumerate(order)}

        size = len(order)
        rows: List[Dict[int, Fraction]] = [dict() for _ in range(size)]
        for v in order:
            i = self.position[v]
            rows[i][i] = Fraction(oracle.graph.degree(v))
        for u, v in oracle.graph.edges:
            if u == ground or v == ground:
                continue
            i, j = self.position[u], self.position[v]
            rows[i][j] = rows[i].get(j, Fraction(0)) - 1
            rows[j][i] = rows[j].get(i, Fraction(0)) - 1

        lower: List[Dict[int, Fraction]] = [dict() for _ in range(size)]
        for k in range(size):
            pivot = rows[k].get(k, Fraction(0))
            if pivot == 0:
                raise DomainError("接地拉普拉斯矩阵奇异，图不连通")
            for i in [j for j in rows[k] if j > k]:
                factor = rows[i].pop(k, Fraction(0)) / pivot
                if factor == 0:
                    continue
                lower[i][k] = factor
                target = rows[i]
                for j, value in rows[k].items():
                    if j > k:
                        updated = target.get(j, Fraction(0)) - factor * value
                        if updated:
                            target[j] = updated
                        else:
                            target.pop(j, None)
        self._upper = rows
        self._lower = lower

    @property
    def size(self) -> int:
        return len(self.order)

    def determinant(self) -> Fraction:
        """主元之积，即任一余子式"""
        det = Fraction(1)
        for k, row in enumerate(self._upper):
            det *= row[k]
        return det

    def solve(self, rhs: List[Fraction]) -> List[Fraction]:
        """在 RCM 顺序下解 L_g·x = rhs"""
        size = self.size
        y = list(rhs)
        for i in range(size):
            acc = y[i]
            for k, factor in self._lower[i].items():
                acc -= factor * y[k]
            y[i] = acc
        x = [Fraction(0)] * size
        for i in range(size - 1, -1, -1):
            row = self._upper[i]
            acc = y[i]
            for j, value in row.items():
                if j > i:
                    acc -= value * x[j]
            x[i] = acc / row[i]
        return x


class ResistanceTable(BaseModel):
    """全部顶点对的精确电阻距离"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: Optional[int] = Field(default=None, description="H_n 的 n，一般图为空")
    nodes: List[str] = Field(..., description="顶点规范名，顺序与矩阵一致")
    grounded_inverse: List[List[Fraction]] = Field(..., description="接地点行列为 0 的接地逆")

    _index: Dict[str, int] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        self._index = {name: i for i, name in enumerate(self.nodes)}

    def resistance(self, u: Any, v: Any) -> Fraction:
        i, j = self._index[str(u)], self._index[str(v)]
        g = self.grounded_inverse
        return g[i][i] + g[j][j] - 2 * g[i][j]

    def pairs(self) -> List[Tuple[str, str, Fraction]]:
        g = self.grounded_inverse
        size = len(self.nodes)
        return [
            (self.nodes[i], self.nodes[j], g[i][i] + g[j][j] - 2 * g[i][j])
            for i in range(size)
            for j in range(i + 1, size)
        ]

    def kirchhoff_index(self) -> Fraction:
        """Σ_{u<v} r(u,v)"""
        return sum((r for _, _, r in self.pairs()), Fraction(0))

    def to_csv(self) -> str:
        lines = ["u,v,resistance"] + [f"{u},{v},{format_exact(r)}" for u, v, r in self.pairs()]
        return "\n".join(lines) + "\n"


def resistance_table(source: GraphInput) -> ResistanceTable:
    """对每个非接地点解一次单位向量方程，组装接地逆"""
    oracle = OracleGraph(source)
    oracle.require_connected()
    solver = GroundedSolver(oracle)
    size = oracle.order
    g = [[Fraction(0)] * size for _ in range(size)]

    free_index = [oracle.index[v] for v in solver.order]
    for k in range(solver.size):
        rhs = [Fraction(0)] * solver.size
        rhs[k] = Fraction(1)
        column = solver.solve(rhs)
        i = free_index[k]
        for m, value in enumerate(column):
            g[free_index[m]][i] = value

    logging.debug(f"电阻表: {size} 个顶点, 接地点 {oracle.ground}")
    return ResistanceTable(n=oracle.n, nodes=[str(v) for v in oracle.nodes], grounded_inverse=g)


def kirchhoff_resistance(source: GraphInput) -> Fraction:
    """Kf(G) = Σ_{u<v} r(u,v)，精确有理值"""
    return resistance_table(source).kirchhoff_index()


def foster_sum(source: GraphInput, table: Optional[ResistanceTable] = None) -> Fraction:
    """Σ_{边} r(u,v)，连通图上恒等于 |V| − 1"""
    oracle = OracleGraph(source)
    table = table or resistance_table(source)
    return sum((table.resistance(u, v) for u, v in oracle.edges), Fraction(0))
