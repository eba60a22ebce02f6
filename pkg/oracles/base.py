"""
预言机的公共输入处理
接受 HeptagonalChain 或任意 networkx 无向简单图，统一成 (图, 顶点顺序, 接地点)
"""

from typing import Any, Dict, List, Tuple, Union

import networkx as nx

from chain_graph import HeptagonalChain
from errors import DomainError
from exact_matrix import ExactMatrix
from models import top

GraphInput = Union[HeptagonalChain, nx.Graph]


class OracleGraph:
    """预言机统一使用的图视图"""

    def __init__(self, source: GraphInput):
        if isinstance(source, HeptagonalChain):
            self.graph = source.to_networkx()
            self.nodes: List[Any] = list(source.vertices)
            self.ground = top(1)
            self.n = source.n
        elif isinstance(source, nx.Graph):
            if source.is_directed() or source.is_multigraph():
                raise DomainError("预言机只接受无向简单图")
            if nx.number_of_selfloops(source):
                raise DomainError("预言机不接受自环")
            self.graph = source
            self.nodes = list(source.nodes)
            self.ground = self.nodes[0] if self.nodes else None
            self.n = None
        else:
            raise DomainError(f"不支持的图类型: {type(source).__name__}")

        self.index: Dict[Any, int] = {v: i for i, v in enumerate(self.nodes)}

    @property
    def order(self) -> int:
        return len(self.nodes)

    @property
    def edges(self) -> List[Tuple[Any, Any]]:
        return list(self.graph.edges)

    def require_connected(self) -> None:
        if self.order == 0 or not nx.is_connected(self.graph):
            raise DomainError("图不连通")

    def laplacian(self) -> ExactMatrix:
        """整数拉普拉斯矩阵，行列顺序与 self.nodes 一致"""
        size = self.order
        rows = [[0] * size for _ in range(size)]
        for u, v in self.graph.edges:
            i, j = self.index[u], self.index[v]
            rows[i][j] -= 1
            rows[j][i] -= 1
            rows[i][i] += 1
            rows[j][j] += 1
        return ExactMatrix(rows)

    def grounded_laplacian(self) -> ExactMatrix:
        """删去接地点所在的行与列"""
        return self.laplacian().delete([self.index[self.ground]])
