"""
特征多项式与主子式
det(xI − M) 的精确系数、行列式、顺序主子式，以及偶块删除主子式的闭式审计
"""

import json
import logging
import operator
import random
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from errors import DomainError, HeptaError, ResourceGuardError
from exact_arith import QuadExt, Scalar, as_fraction, format_exact
from exact_matrix import ExactMatrix
from hepta_config import HeptaConfig
from models import MinorAudit
from symmetry_decomposition import DecomposedPair, integerize_even_block

BRUTEFORCE_MAX_N = 7


class CharPoly(BaseModel):
    """det(xI − M) 的系数，按 x^N 到 x^0 降幂排列"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coefficients: Tuple[Fraction, ...] = Field(..., description="降幂系数，首项为 1")

    @field_validator("coefficients", mode="before")
    @classmethod
    def _monic(cls, value) -> Tuple[Fraction, ...]:
        coefficients = tuple(as_fraction(c) for c in value)
        if not coefficients or coefficients[0] != 1:
            raise DomainError("特征多项式必须是首一的")
        return coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def minor_sum(self, k: int) -> Fraction:
        """e_k = (−1)^k · [x^{N−k}]"""
        if not 0 <= k <= self.degree:
            raise DomainError(f"阶数 k 必须在 [0, {self.degree}] 内，收到 {k}")
        c = self.coefficients[k]
        return c if k % 2 == 0 else -c

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        product = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return CharPoly(coefficients=tuple(product))

    def evaluate(self, x: Scalar) -> Scalar:
        value: Scalar = 0
        for c in self.coefficients:
            value = value * x + c
        return value

    def to_json(self) -> str:
        return json.dumps([format_exact(c) for c in self.coefficients]) + "\n"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            power = self.degree - k
            mono = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_exact(abs(c)) + (f"*{mono}" if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign} {body}")
        text = " ".join(terms) if terms else "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


# ---- 行列式 ----

def _field_array(matrix: ExactMatrix) -> Tuple[np.ndarray, bool]:
    """可写副本；全整数时保持 int，否则把 int 升为 Fraction"""
    data = matrix.to_array()
    integral = all(type(v) is int for v in data.flat)
    if not integral:
        for idx, v in np.ndenumerate(data):
            if isinstance(v, int):
                data[idx] = Fraction(v)
    return data, integral


def _bareiss(matrix: ExactMatrix, pivoting: bool) -> Tuple[List[Scalar], Optional[Scalar]]:
    """
    Bareiss 无分数消元
    返回 (各步主元, 行列式)；不换行时第 k 个主元就是 k 阶顺序主子式。
    不换行且遇到零主元时返回 (已得主元, None)
    """
    matrix.require_square()
    a, integral = _field_array(matrix)
    size = a.shape[0]
    if size == 0:
        return [], 1
    divide = operator.floordiv if integral else operator.truediv

    sign, prev = 1, 1
    pivots: List[Scalar] = []
    for k in range(size):
        if a[k, k] == 0:
            if not pivoting:
                return pivots, None
            swap = next((i for i in range(k + 1, size) if a[i, k] != 0), None)
            if swap is None:
                return pivots + [0], 0
            a[[k, swap]] = a[[swap, k]]
            sign = -sign
        pivot = a[k, k]
        pivots.append(pivot)
        if k == size - 1:
            break
        trailing = a[k + 1:, k + 1:] * pivot - np.outer(a[k + 1:, k], a[k, k + 1:])
        a[k + 1:, k + 1:] = divide(trailing, prev)
        a[k + 1:, k] = 0
        prev = pivot
    return pivots, sign * a[size - 1, size - 1]


def determinant(matrix: ExactMatrix) -> Scalar:
    """精确行列式：整数矩阵走 Bareiss，其余在对应的域里消元"""
    _, det = _bareiss(matrix, pivoting=True)
    return det


def det_tridiagonal(diag: Sequence[Scalar], off: Sequence[Scalar]) -> Scalar:
    """对称三对角行列式，d_k = a_k·d_{k−1} − b_{k−1}²·d_{k−2}"""
    minors = tridiagonal_leading_minors(diag, [b * b for b in off])
    return minors[-1] if minors else 1


def tridiagonal_leading_minors(diag: Sequence[Scalar], couplings: Sequence[Scalar]) -> List[Scalar]:
    """三对角阵的顺序主子式；couplings[k] 是 M[k,k+1]·M[k+1,k]"""
    if len(couplings) != max(len(diag) - 1, 0):
        raise DomainError("次对角线长度必须比对角线少 1")
    minors: List[Scalar] = []
    before, current = 1, 1
    for k, a in enumerate(diag):
        nxt = a * current if k == 0 else a * current - couplings[k - 1] * before
        before, current = current, nxt
        minors.append(current)
    return minors


def leading_principal_minors(matrix: ExactMatrix) -> List[Scalar]:
    """m_1 … m_N"""
    matrix.require_square()
    size = matrix.size
    if matrix.is_tridiagonal():
        couplings = [matrix[k, k + 1] * matrix[k + 1, k] for k in range(size - 1)]
        return tridiagonal_leading_minors(matrix.diagonal_entries(), couplings)

    minors, _ = _bareiss(matrix, pivoting=False)
    for k in range(len(minors), size):
        # 零主元之后逐个直接计算
        minors.append(determinant(matrix.principal_submatrix(list(range(k + 1)))))
    return minors


def inverse(matrix: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan 精确求逆"""
    matrix.require_square()
    size = matrix.size
    aug = np.concatenate([matrix.to_array(), ExactMatrix.identity(size).to_array()], axis=1)
    for idx, v in np.ndenumerate(aug):
        if isinstance(v, int):
            aug[idx] = Fraction(v)
    for k in range(size):
        swap = next((i for i in range(k, size) if aug[i, k] != 0), None)
        if swap is None:
            raise DomainError("矩阵奇异，无法求逆")
        if swap != k:
            aug[[k, swap]] = aug[[swap, k]]
        aug[k] = aug[k] / aug[k, k]
        for i in range(size):
            if i != k and aug[i, k] != 0:
                aug[i] = aug[i] - aug[i, k] * aug[k]
    return ExactMatrix(aug[:, size:])


def schur_determinant(matrix: ExactMatrix, p: int) -> Scalar:
    """det(M_1)·det(M_4 − M_3·M_1⁻¹·M_2)，M_1 为左上 p×p 块"""
    size = matrix.size
    if not 0 <= p <= size:
        raise DomainError(f"分块大小 p 必须在 [0, {size}] 内，收到 {p}")
    if p == 0 or p == size:
        return determinant(matrix)
    m1, m2 = matrix[:p, :p], matrix[:p, p:]
    m3, m4 = matrix[p:, :p], matrix[p:, p:]
    det1 = determinant(m1)
    if det1 == 0:
        raise DomainError("左上块奇异，不能取 Schur 补")
    return det1 * determinant(m4 - m3 @ inverse(m1) @ m2)


# ---- 特征多项式 ----

def _bandwidth_order(matrix: ExactMatrix) -> List[int]:
    """按非零模式做逆 Cuthill-McKee 排序，缩小 Hessenberg 约化的填充"""
    graph = nx.Graph()
    graph.add_nodes_from(range(matrix.size))
    for i, cols in enumerate(matrix.nonzero_pattern()):
        graph.add_edges_from((i, j) for j in cols if j != i)
    return list(nx.utils.reverse_cuthill_mckee_ordering(graph))


def _hessenberg_charpoly(rows: List[List[Scalar]]) -> List[Scalar]:
    """上 Hessenberg 约化后按行递推，返回升幂系数"""
    size = len(rows)
    h = rows
    for m in range(1, size - 1):
        pivot_row = next((i for i in range(m, size) if h[i][m - 1] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != m:
            h[pivot_row], h[m] = h[m], h[pivot_row]
            for row in h:
                row[pivot_row], row[m] = row[m], row[pivot_row]
        t = h[m][m - 1]
        for i in range(m + 1, size):
            if h[i][m - 1] == 0:
                continue
            u = h[i][m - 1] / t
            source = h[m]
            target = h[i]
            for j in range(m - 1, size):
                if source[j] != 0:
                    target[j] = target[j] - u * source[j]
            for j in range(size):
                if h[j][i] != 0:
                    h[j][m] = h[j][m] + u * h[j][i]

    polys: List[List[Scalar]] = [[1]]
    for m in range(1, size + 1):
        prev = polys[m - 1]
        diag = h[m - 1][m - 1]
        poly: List[Scalar] = [0] * (m + 1)
        for k, c in enumerate(prev):
            poly[k + 1] = poly[k + 1] + c
            poly[k] = poly[k] - diag * c
        t: Scalar = 1
        for i in range(1, m):
            t = t * h[m - i][m - i - 1]
            if t == 0:
                break
            factor = t * h[m - i - 1][m - 1]
            if factor == 0:
                continue
            for k, c in enumerate(polys[m - i - 1]):
                poly[k] = poly[k] - factor * c
        polys.append(poly)
    return polys[size]


def _tridiagonal_charpoly(matrix: ExactMatrix) -> List[Scalar]:
    """p_k = (x − a_k)·p_{k−1} − b_{k−1}·p_{k−2}，升幂系数"""
    size = matrix.size
    before: List[Scalar] = [1]
    current: List[Scalar] = [1]
    for k in range(size):
        a = matrix[k, k]
        nxt: List[Scalar] = [0] * (len(current) + 1)
        for d, c in enumerate(current):
            nxt[d + 1] = nxt[d + 1] + c
            nxt[d] = nxt[d] - a * c
        if k > 0:
            b = matrix[k, k - 1] * matrix[k - 1, k]
            for d, c in enumerate(before):
                nxt[d] = nxt[d] - b * c
        before, current = current, nxt
    return current


def principal_minor_sums_bruteforce(matrix: ExactMatrix) -> List[Scalar]:
    """逐个枚举 C(N, k) 个主子式求 e_0 … e_N，仅用于小矩阵"""
    size = matrix.size
    if size > BRUTEFORCE_MAX_N:
        raise ResourceGuardError(f"暴力枚举主子式只支持 N ≤ {BRUTEFORCE_MAX_N}，收到 N={size}")
    sums: List[Scalar] = [1]
    for k in range(1, size + 1):
        total: Scalar = 0
        for keep in combinations(range(size), k):
            total = total + determinant(matrix.principal_submatrix(list(keep)))
        sums.append(total)
    return sums


def _to_rational(value: Scalar) -> Fraction:
    if isinstance(value, QuadExt) and not value.is_rational:
        raise DomainError(f"特征多项式系数 {value} 不是有理数")
    return as_fraction(value)


def charpoly(matrix: ExactMatrix) -> CharPoly:
    """det(xI − M) 的精确系数"""
    matrix.require_square()
    size = matrix.size
    if size == 0:
        return CharPoly(coefficients=(Fraction(1),))

    if matrix.is_tridiagonal():
        ascending = _tridiagonal_charpoly(matrix)
    else:
        ordered = matrix.permuted(_bandwidth_order(matrix))
        rows = ordered.rows()
        for row in rows:
            for j, v in enumerate(row):
                if isinstance(v, int):
                    row[j] = Fraction(v)
        ascending = _hessenberg_charpoly(rows)

    poly = CharPoly(coefficients=tuple(_to_rational(c) for c in reversed(ascending)))

    if size <= BRUTEFORCE_MAX_N:
        sums = principal_minor_sums_bruteforce(matrix)
        if any(poly.minor_sum(k) != sums[k] for k in range(size + 1)):
            raise HeptaError(f"特征多项式与主子式枚举不一致 (N={size})")
    logging.debug(f"特征多项式: N={size}")
    return poly


def even_minor_sum(pair: DecomposedPair, k: int) -> int:
    """e_k(L_A)，经整数化相似在整数上计算"""
    size = 5 * pair.n + 1
    if not 0 <= k <= size:
        raise DomainError(f"k 必须在 [0, {size}] 内，收到 {k}")
    value = charpoly(integerize_even_block(pair)).minor_sum(k)
    if value.denominator != 1:
        raise HeptaError(f"e_{k}(L_A) = {value} 不是整数")
    return value.numerator


# ---- 偶块删除主子式的闭式 ----

def deleted_minor_case(n: int, s: int, t: Optional[int] = None) -> str:
    """删去下标 s（和 t）后所属的公式分支，下标 1 起；无对应公式时为 'uncovered'"""
    size = 5 * n + 1
    if n < 1:
        raise DomainError(f"n 必须是正整数，收到 {n}")
    if not 1 <= s <= size or (t is not None and not s < t <= size):
        raise DomainError(f"删除下标越界: s={s}, t={t}, 需要 1 ≤ s < t ≤ {size}")

    if t is None:
        return "single_bar" if s <= n else "single_top"
    if t <= n:
        return "pair_bars"
    if s <= n:
        return "pair_bar_top"
    if s == n + 1 and t == size:
        return "uncovered"
    if s == n + 1:
        return "pair_first_top"
    if t == size:
        return "pair_last_top"
    return "pair_inner_tops"


def deleted_minor_formula(n: int, s: int, t: Optional[int] = None) -> Fraction:
    """发表的 det L_A[s] 与 det L_A[s,t] 闭式"""
    case = deleted_minor_case(n, s, t)
    two = Fraction(2)
    if case == "single_bar":
        return two ** (n - 1)
    if case == "single_top":
        return two ** n
    if case == "pair_bars":
        return (4 * (t - s) + 2) * two ** (n - 2)
    if case == "pair_bar_top":
        return (abs(t - 4 * s + 1 - n) + 1) * two ** (n - 1)
    if case == "pair_first_top":
        return (t - 1 - n) * two ** (n - 2)
    if case == "pair_last_top":
        return (5 * n - s + 1) * two ** n
    if case == "pair_inner_tops":
        return (t - s) * two ** n
    raise DomainError(f"删除 ({s}, {t}) 没有对应的闭式")


def _deletions(n: int, config: HeptaConfig) -> List[Tuple[int, ...]]:
    size = 5 * n + 1
    singles = [(s,) for s in range(1, size + 1)]
    pairs = list(combinations(range(1, size + 1), 2))
    if n <= config.minor_audit_full_n:
        return singles + pairs
    rng = random.Random(config.seed)
    picked = rng.sample(singles + pairs, min(config.minor_audit_samples, len(singles) + len(pairs)))
    return sorted(picked, key=lambda d: (len(d), d))


def audit_deleted_minors(pair: DecomposedPair, config: Optional[HeptaConfig] = None) -> List[MinorAudit]:
    """逐个对比删除主子式的闭式值与精确值；n 较大时按种子抽样"""
    config = config or HeptaConfig()
    n = pair.n
    matrix = integerize_even_block(pair)
    audits: List[MinorAudit] = []

    for deleted in _deletions(n, config):
        sub = matrix.delete(d - 1 for d in deleted)
        exact = determinant(sub)
        bars_left = n - sum(1 for d in deleted if d <= n)
        if 0 < bars_left < sub.size and schur_determinant(sub, bars_left) != exact:
            raise HeptaError(f"删除 {deleted} 的 Schur 补行列式与直接消元不一致")

        case = deleted_minor_case(n, *deleted)
        formula = None if case == "uncovered" else deleted_minor_formula(n, *deleted)
        audits.append(MinorAudit(
            deleted=list(deleted),
            case=case,
            formula_value=None if formula is None else format_exact(formula),
            exact_value=format_exact(exact),
            match=formula is not None and formula == exact,
        ))

    mismatched = sum(1 for a in audits if not a.match and a.case != "uncovered")
    if mismatched:
        logging.warning(f"H_{n} 删除主子式审计: {mismatched}/{len(audits)} 项与闭式不符")
    return audits
