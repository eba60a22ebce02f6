"""
发表的 Kirchhoff 指数表与生成树数表
Kirchhoff 表按两位小数比较；生成树表的大数被印成 6 位有效数字，按 6 位有效数字比较
"""

import math
from fractions import Fraction
from typing import Dict, Optional

from exact_arith import format_decimal

PUBLISHED_KIRCHHOFF: Dict[int, str] = {
    1: "79.25", 2: "404.17", 3: "1138.09", 4: "2442.97", 5: "4480.81",
    6: "7413.61", 7: "11403.37", 8: "16612.10", 9: "23201.79", 10: "31334.44",
    11: "41172.05", 12: "52876.62", 13: "66610.15", 14: "82534.64", 15: "100812.10",
    16: "121604.52", 17: "145073.90", 18: "171382.24", 19: "200691.54", 20: "233163.80",
    21: "268961.03", 22: "308245.21", 23: "351178.36", 24: "397922.47", 25: "448639.54",
    26: "503491.58", 27: "562640.57", 28: "626248.53", 29: "694477.44", 30: "767489.32",
    31: "845446.16", 32: "928509.96", 33: "1016842.73", 34: "1110606.45", 35: "1209979.64",
    36: "1315074.79", 37: "1426103.39", 38: "1543210.96", 39: "1666559.50", 40: "1796310.99",
    41: "1932627.45", 42: "2075670.87", 43: "2225603.25", 44: "2382586.59", 45: "2546782.89",
    46: "2718354.15", 47: "2897462.38", 48: "3084269.56", 49: "3278937.71", 50: "3481628.82",
}

PUBLISHED_COMPLEXITY: Dict[int, int] = {
    1: 45,
    2: 1254,
    3: 34932,
    4: 973080,
    5: 27106500,
    6: 755090000,
    7: 21034100000,
    8: 585934000000,
    9: 16322000000000,
    10: 454673000000000,
    11: 12665600000000000,
    12: 352817000000000000,
}

SIGNIFICANT_DIGITS = 6

# 表中与闭式不符的行：typo 为排印错误，truncated 为截断而非四舍五入
KIRCHHOFF_TABLE_DEVIATIONS: Dict[int, str] = {
    35: "typo",
    37: "truncated",
    38: "truncated",
}


def published_kirchhoff(n: int) -> Optional[str]:
    return PUBLISHED_KIRCHHOFF.get(n)


def published_complexity(n: int) -> Optional[int]:
    return PUBLISHED_COMPLEXITY.get(n)


def round_significant(value: int, digits: int = SIGNIFICANT_DIGITS) -> int:
    """整数保留 digits 位有效数字，五成双"""
    width = len(str(abs(value)))
    if width <= digits:
        return value
    scale = 10 ** (width - digits)
    return round(Fraction(value, scale)) * scale


def kirchhoff_matches_published(n: int, value: Fraction) -> Optional[bool]:
    """两位小数是否与表中一致；表中无此 n 时为 None"""
    printed = published_kirchhoff(n)
    if printed is None:
        return None
    return format_decimal(value, 2) == printed


def complexity_matches_published(n: int, value: int) -> Optional[bool]:
    """6 位有效数字是否与表中一致；表中无此 n 时为 None"""
    printed = published_complexity(n)
    if printed is None:
        return None
    return round_significant(value) == printed


def truncate_decimal(value: Fraction, places: int = 2) -> str:
    """正数截断到 places 位小数"""
    scaled = math.floor(value * 10 ** places)
    whole, frac = divmod(scaled, 10 ** places)
    return f"{whole}.{frac:0{places}d}"


def kirchhoff_table_deviation(n: int) -> Optional[str]:
    """已知不符行的原因；其余行为 None"""
    return KIRCHHOFF_TABLE_DEVIATIONS.get(n)


def classify_kirchhoff_deviation(n: int, value: Fraction) -> Optional[str]:
    """闭式值与表不符时判断原因：截断能对上为 truncated，否则为 typo"""
    match = kirchhoff_matches_published(n, value)
    if match is None or match:
        return None
    return "truncated" if truncate_decimal(value, 2) == published_kirchhoff(n) else "typo"
