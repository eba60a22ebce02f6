"""
线性七边形网络 H_n
按 Bar 块、Top 块、Bottom 块的固定顺序给顶点编号，矩阵分块与此顺序一一对应
"""

import json
import logging
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from errors import DecompositionError, DomainError
from exact_matrix import ExactMatrix
from models import VertexId, VertexKind, bar, bottom, top

Edge = Tuple[VertexId, VertexId]


def expected_degree(n: int, v: VertexId) -> int:
    """按链结构给出顶点度数：Bar 为 2，路径端点 2，挂 Bar 的 4s−1 与内部横档 4z+1 为 3"""
    if v.kind == VertexKind.BAR:
        return 2
    i = v.index
    if i == 1 or i == 4 * n + 1:
        return 2
    if i % 4 == 3 or i % 4 == 1:
        return 3
    return 2


class HeptagonalChain(BaseModel):
    """H_n：9n+2 个顶点、11n+1 条边的简单连通图"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="七边形对数，共 2n 个七边形")
    vertices: Tuple[VertexId, ...] = Field(..., description="Bar(1..n)、Top(1..4n+1)、Bottom(1..4n+1)")
    edges: Tuple[Edge, ...] = Field(..., description="按顶点顺序规范化的无向边")

    _index: Dict[VertexId, int] = PrivateAttr(default_factory=dict)
    _adjacency: Dict[VertexId, List[VertexId]] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _check_structure(self) -> "HeptagonalChain":
        n = self.n
        if len(self.vertices) != 9 * n + 2 or len(set(self.vertices)) != len(self.vertices):
            raise DomainError(f"H_{n} 应有 {9 * n + 2} 个互异顶点")
        if len(self.edges) != 11 * n + 1:
            raise DomainError(f"H_{n} 应有 {11 * n + 1} 条边，收到 {len(self.edges)}")

        for v in self.vertices:
            limit = n if v.kind == VertexKind.BAR else 4 * n + 1
            if v.index > limit:
                raise DomainError(f"顶点 {v} 超出范围 [1, {limit}]")

        known = set(self.vertices)
        seen = set()
        for u, v in self.edges:
            if u == v or u not in known or v not in known:
                raise DomainError(f"非法边 {u}–{v}")
            key = frozenset((u, v))
            if key in seen:
                raise DomainError(f"重复边 {u}–{v}")
            seen.add(key)
        return self

    def model_post_init(self, __context) -> None:
        self._index = {v: i for i, v in enumerate(self.vertices)}
        adjacency: Dict[VertexId, List[VertexId]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        self._adjacency = adjacency

    # ---- 基本查询 ----

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def edge_set(self) -> FrozenSet[FrozenSet[VertexId]]:
        return frozenset(frozenset(e) for e in self.edges)

    def index_of(self, v: VertexId) -> int:
        try:
            return self._index[v]
        except KeyError as e:
            raise DomainError(f"H_{self.n} 中没有顶点 {v}") from e

    def neighbors(self, v: VertexId) -> List[VertexId]:
        self.index_of(v)
        return list(self._adjacency[v])

    def degree(self, v: VertexId) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return v in self._adjacency.get(u, ())

    # ---- 图论性质 ----

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph(n=self.n)
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def cycle_space_dimension(self) -> int:
        return len(self.edges) - self.order + 1

    def heptagon_count(self) -> int:
        """无弦 7 圈的个数"""
        cycles = nx.chordless_cycles(self.to_networkx(), length_bound=7)
        return sum(1 for c in cycles if len(c) == 7)

    # ---- 导出 ----

    def to_edge_list(self) -> str:
        """每行 'u v'，顶点用规范名"""
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "vertices": [str(v) for v in self.vertices],
            "edges": [[str(u), str(v)] for u, v in self.edges],
        }
        return json.dumps(payload, indent=2) + "\n"


def build_chain(n: int) -> HeptagonalChain:
    """构造 H_n"""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"n 必须是正整数，收到 {n!r}")

    length = 4 * n + 1
    vertices = (
        [bar(s) for s in range(1, n + 1)]
        + [top(i) for i in range(1, length + 1)]
        + [bottom(i) for i in range(1, length + 1)]
    )
    position = {v: k for k, v in enumerate(vertices)}

    raw: List[Edge] = []
    for i in range(1, length):
        raw.append((top(i), top(i + 1)))
        raw.append((bottom(i), bottom(i + 1)))
    for z in range(n + 1):
        raw.append((top(4 * z + 1), bottom(4 * z + 1)))
    for s in range(1, n + 1):
        raw.append((bar(s), top(4 * s - 1)))
        raw.append((bar(s), bottom(4 * s - 1)))

    edges = sorted(
        (tuple(sorted(e, key=position.__getitem__)) for e in raw),
        key=lambda e: (position[e[0]], position[e[1]]),
    )
    chain = HeptagonalChain(n=n, vertices=tuple(vertices), edges=tuple(edges))
    logging.debug(f"构造 H_{n}: {chain.order} 个顶点, {len(chain.edges)} 条边")
    return chain


def laplacian(chain: HeptagonalChain) -> ExactMatrix:
    """整数拉普拉斯矩阵 L = D − A，行列顺序与 chain.vertices 一致"""
    size = chain.order
    rows = [[0] * size for _ in range(size)]
    for u, v in chain.edges:
        i, j = chain.index_of(u), chain.index_of(v)
        rows[i][j] -= 1
        rows[j][i] -= 1
        rows[i][i] += 1
        rows[j][j] += 1
    return ExactMatrix(rows)


class Automorphism(BaseModel):
    """顶点置换"""
    model_config = ConfigDict(frozen=True)

    mapping: Dict[VertexId, VertexId] = Field(..., description="顶点 → 像")

    def __call__(self, v: VertexId) -> VertexId:
        return self.mapping[v]

    def image_of_edge(self, edge: Edge) -> Edge:
        return self(edge[0]), self(edge[1])

    def is_involution(self) -> bool:
        return all(self(self(v)) == v for v in self.mapping)

    def preserves(self, chain: HeptagonalChain) -> bool:
        if set(self.mapping) != set(chain.vertices) or set(self.mapping.values()) != set(chain.vertices):
            return False
        edges = chain.edge_set
        return all(frozenset(self.image_of_edge(e)) in edges for e in chain.edges)

    def fixed_points(self) -> List[VertexId]:
        return [v for v, w in self.mapping.items() if v == w]


def mirror_automorphism(chain: HeptagonalChain) -> Automorphism:
    """镜像自同构：固定全部 Bar，交换 Top(i) 与 Bottom(i)"""
    pi = Automorphism(mapping={v: v.mirrored() for v in chain.vertices})
    if not pi.preserves(chain) or not pi.is_involution():
        raise DecompositionError(f"H_{chain.n} 的镜像置换不是对合自同构")
    return pi
