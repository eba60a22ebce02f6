"""
生成树计数预言机
矩阵树定理（接地拉普拉斯矩阵的 Bareiss 行列式）、小图暴力枚举、特征值乘积
"""

import logging
import math
from itertools import combinations

import numpy as np
from networkx.utils import UnionFind

from charpoly_engine import determinant
from errors import ResourceGuardError

from .base import GraphInput, OracleGraph

ENUMERATE_MAX_EDGES = 25


def spanning_trees_matrix_tree(source: GraphInput) -> int:
    """τ(G) = 删去接地点行列后的拉普拉斯行列式"""
    oracle = OracleGraph(source)
    oracle.require_connected()
    if oracle.order == 1:
        return 1
    return int(determinant(oracle.grounded_laplacian()))


def spanning_trees_enumerate(source: GraphInput, max_edges: int = ENUMERATE_MAX_EDGES) -> int:
    """枚举全部 |V|−1 元边子集，用并查集判断无圈"""
    oracle = OracleGraph(source)
    edges = oracle.edges
    if len(edges) > max_edges:
        raise ResourceGuardError(f"暴力枚举只支持 |E| ≤ {max_edges}，当前 |E| = {len(edges)}")
    oracle.require_connected()

    count = 0
    for subset in combinations(edges, oracle.order - 1):
        forest = UnionFind(oracle.nodes)
        for u, v in subset:
            if forest[u] == forest[v]:
                break
            forest.union(u, v)
        else:
            count += 1
    logging.debug(f"枚举生成树: |E|={len(edges)}, 共 {count} 棵")
    return count


def spanning_trees_spectral(source: GraphInput) -> float:
    """τ(G) = (1/|V|)·Π_{k≥2} μ_k，按对数求和避免溢出"""
    oracle = OracleGraph(source)
    oracle.require_connected()
    eigenvalues = np.linalg.eigvalsh(oracle.laplacian().to_float())
    log_tau = float(np.sum(np.log(eigenvalues[1:]))) - math.log(oracle.order)
    try:
        return math.exp(log_tau)
    except OverflowError:
        return math.inf
