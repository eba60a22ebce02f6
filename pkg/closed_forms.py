"""
闭式公式
按发表形式精确求值：偶块的 e_{5n}、e_{5n−1}，奇块的顺序主子式 m_s、行列式与 e_{4n}，
以及由此给出的 Kirchhoff 指数和生成树数。全部在 ℚ 或 ℚ(√3) 中计算

(√2 ± √6)² = 8 ± 4√3 与 ((√2 ± √6)/2)² = 2 ± √3 把所有幂次都收回 ℚ(√3)
"""

from fractions import Fraction
from typing import Dict, List

from errors import DomainError
from exact_arith import QuadExt, conjugate_pair_sum, quad_pow
from models import ClosedFormQuantity, ClosedFormValue

HALF_ROOT_SQUARED = QuadExt(Fraction(2), Fraction(1), 3)       # ((√2+√6)/2)² = 2+√3
ROOT_SQUARED = QuadExt(Fraction(8), Fraction(4), 3)            # (√2+√6)² = 8+4√3
TAU_COEFFICIENT = QuadExt(Fraction(3), Fraction(2), 3)         # 3+2√3
EVEN_M_COEFFICIENT = QuadExt(Fraction(1, 2), Fraction(1, 2), 3)  # (1+√3)/2
# (√6+3√2)/4 · (√2+√6)/2 = (3+2√3)/2
ODD_M_COEFFICIENT = QuadExt(Fraction(3, 2), Fraction(1), 3)
B4N_TAIL = QuadExt(Fraction(6), Fraction(7), 3)                # 6+7√3

FORMULA_SOURCES: Dict[ClosedFormQuantity, str] = {
    ClosedFormQuantity.A5N: "(9n+2)·2^(n-1)",
    ClosedFormQuantity.A5N_MINUS_1: "(108n^3+66n^2+7n+4)·2^(n-3)",
    ClosedFormQuantity.SUM_INV_ALPHA: "(108n^3+66n^2+7n+4)/(36n+8)",
    ClosedFormQuantity.M_SEQUENCE: "m_s = c·((√2+√6)/2)^s + c̄·((√2−√6)/2)^s, reported at s = 4n",
    ClosedFormQuantity.DET_ODD: "[(3+2√3)(√2+√6)^(4n) + (3−2√3)(√2−√6)^(4n)] / 2^(4n+1)",
    ClosedFormQuantity.B4N: "[(120n+60√3n+6+5√3+(6+7√3)(2−√3)^(4n))(√2+√6)^(4n) + conj] / (24·2^(4n))",
    ClosedFormQuantity.SUM_INV_BETA: "b_4n / det L_S",
    ClosedFormQuantity.KF_ORDER_FACTOR: "(9n+2)·(Σ1/α + Σ1/β)",
    ClosedFormQuantity.KF_PRINTED_FACTOR: "(20n+2)·(Σ1/α + Σ1/β)",
    ClosedFormQuantity.TAU: "[(3+2√3)(√2+√6)^(4n) + (3−2√3)(√2−√6)^(4n)] / 2^(3n+2)",
}


def _require_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"n 必须是正整数，收到 {n!r}")


def _cubic(n: int) -> int:
    return 108 * n**3 + 66 * n**2 + 7 * n + 4


def _pair_sum(x: QuadExt) -> Fraction:
    return conjugate_pair_sum(x, x.conjugate())


# ---- 偶块 ----

def a5n(n: int) -> Fraction:
    """偶块 5n 阶主子式和"""
    _require_n(n)
    return (9 * n + 2) * Fraction(2) ** (n - 1)


def a5n_minus_1(n: int) -> Fraction:
    """偶块 (5n−1) 阶主子式和的发表值，n = 1 时不是整数"""
    _require_n(n)
    return _cubic(n) * Fraction(2) ** (n - 3)


def sum_inv_alpha(n: int) -> Fraction:
    _require_n(n)
    return Fraction(_cubic(n), 36 * n + 8)


# ---- 奇块 ----

def m_closed(s: int) -> Fraction:
    """发表奇块的 s 阶顺序主子式，闭式；m_0 = 1"""
    if s < 0:
        raise DomainError(f"s 必须非负，收到 {s}")
    if s == 0:
        return Fraction(1)
    k, odd = divmod(s, 2)
    coefficient = ODD_M_COEFFICIENT if odd else EVEN_M_COEFFICIENT
    return _pair_sum(coefficient * quad_pow(HALF_ROOT_SQUARED, k))


def m_recurrence(s: int) -> Fraction:
    """m_s = 2m_{s−1} − m_{s−2}（s 偶）或 3m_{s−1} − m_{s−2}（s 奇），m_0 = 1，m_1 = 3"""
    if s < 0:
        raise DomainError(f"s 必须非负，收到 {s}")
    return m_sequence(s)[s] if s else Fraction(1)


def m_sequence(count: int) -> List[Fraction]:
    """[m_0, m_1, …, m_count]"""
    values = [Fraction(1), Fraction(3)]
    for s in range(2, count + 1):
        factor = 2 if s % 2 == 0 else 3
        values.append(factor * values[-1] - values[-2])
    return values[:count + 1]


def m_four_step(s: int) -> Fraction:
    """m_s = 4m_{s−2} − m_{s−4}（s ≥ 5），种子 3, 5, 12, 19"""
    if s < 0:
        raise DomainError(f"s 必须非负，收到 {s}")
    values = [Fraction(v) for v in (1, 3, 5, 12, 19)]
    for t in range(5, s + 1):
        values.append(4 * values[t - 2] - values[t - 4])
    return values[s]


def det_odd_block(n: int) -> Fraction:
    """发表奇块的行列式"""
    _require_n(n)
    power = quad_pow(ROOT_SQUARED, 2 * n)  # (√2+√6)^(4n)
    return _pair_sum(TAU_COEFFICIENT * power) / 2 ** (4 * n + 1)


def b4n(n: int) -> Fraction:
    """发表奇块的 4n 阶主子式和"""
    _require_n(n)
    power = quad_pow(ROOT_SQUARED, 2 * n)
    bracket = (
        QuadExt(Fraction(120 * n + 6), Fraction(60 * n + 5), 3)
        + B4N_TAIL * quad_pow(HALF_ROOT_SQUARED.conjugate(), 4 * n)
    )
    return _pair_sum(bracket * power) / (24 * 2 ** (4 * n))


def odd_block_minor_sum_from_m(n: int) -> Fraction:
    """Σ_{s=1}^{4n+1} m_{s−1}·m_{4n+1−s}"""
    _require_n(n)
    size = 4 * n + 1
    m = m_sequence(size)
    return sum((m[s - 1] * m[size - s] for s in range(1, size + 1)), Fraction(0))


def sum_inv_beta(n: int) -> Fraction:
    return b4n(n) / det_odd_block(n)


# ---- 图不变量 ----

def kirchhoff_index(n: int) -> Fraction:
    """(9n+2)·(Σ1/α + Σ1/β)"""
    _require_n(n)
    return (9 * n + 2) * (sum_inv_alpha(n) + sum_inv_beta(n))


def kirchhoff_index_printed_factor(n: int) -> Fraction:
    """同一括号配发表的前置因子 (20n+2)"""
    _require_n(n)
    return (20 * n + 2) * (sum_inv_alpha(n) + sum_inv_beta(n))


def spanning_tree_count(n: int) -> int:
    """生成树数的闭式，值必为正整数"""
    _require_n(n)
    power = quad_pow(ROOT_SQUARED, 2 * n)
    value = _pair_sum(TAU_COEFFICIENT * power) / 2 ** (3 * n + 2)
    if value.denominator != 1 or value <= 0:
        raise DomainError(f"τ(H_{n}) 的闭式值 {value} 不是正整数")
    return value.numerator


def evaluate_all(n: int) -> List[ClosedFormValue]:
    """按 ClosedFormQuantity 的顺序给出全部闭式值"""
    _require_n(n)
    values = {
        ClosedFormQuantity.A5N: a5n(n),
        ClosedFormQuantity.A5N_MINUS_1: a5n_minus_1(n),
        ClosedFormQuantity.SUM_INV_ALPHA: sum_inv_alpha(n),
        ClosedFormQuantity.M_SEQUENCE: m_closed(4 * n),
        ClosedFormQuantity.DET_ODD: det_odd_block(n),
        ClosedFormQuantity.B4N: b4n(n),
        ClosedFormQuantity.SUM_INV_BETA: sum_inv_beta(n),
        ClosedFormQuantity.KF_ORDER_FACTOR: kirchhoff_index(n),
        ClosedFormQuantity.KF_PRINTED_FACTOR: kirchhoff_index_printed_factor(n),
        ClosedFormQuantity.TAU: Fraction(spanning_tree_count(n)),
    }
    return [
        ClosedFormValue(quantity=q, value=values[q], formula_source=FORMULA_SOURCES[q])
        for q in ClosedFormQuantity
    ]
