"""
精确算术
任意精度有理数（fractions.Fraction）与实二次域 ℚ(√d)，d ∈ {2, 3}
所有闭式公式都在这里求值，不使用浮点
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Union

from errors import DomainError

# 有理数直接使用标准库 Fraction：约分、分母为正、0 规范为 0/1
Rational = Fraction

SUPPORTED_RADICANDS = (2, 3)


def as_fraction(value: "Scalar") -> Fraction:
    """把 int / Fraction / 有理的 QuadExt 转成 Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, QuadExt):
        if value.b != 0:
            raise DomainError(f"{value} 不是有理数")
        return value.a
    raise DomainError(f"无法转换为有理数: {value!r}")


def _make(a: Fraction, b: Fraction, d: int) -> "QuadExt":
    """跳过校验的内部构造，只给算术运算用"""
    obj = object.__new__(QuadExt)
    object.__setattr__(obj, "a", a)
    object.__setattr__(obj, "b", b)
    object.__setattr__(obj, "d", d)
    return obj


@dataclass(frozen=True, slots=True)
class QuadExt:
    """ℚ(√d) 中的元素 a + b·√d"""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self) -> None:
        if self.d not in SUPPORTED_RADICANDS:
            raise DomainError(f"只支持 √2 与 √3，收到 d={self.d}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def from_rational(cls, value: Union[int, Fraction], d: int) -> "QuadExt":
        return cls(Fraction(value), Fraction(0), d)

    @classmethod
    def sqrt(cls, d: int) -> "QuadExt":
        """√d 本身"""
        return cls(Fraction(0), Fraction(1), d)

    def _parts(self, other: object) -> tuple[Fraction, Fraction] | None:
        if isinstance(other, QuadExt):
            if other.d != self.d:
                if other.b == 0:
                    return other.a, Fraction(0)
                if self.b == 0:
                    # 自身是有理数时允许与另一个域相加，结果落在对方的域里
                    return None
                raise DomainError(f"不同根式域混合运算: √{self.d} 与 √{other.d}")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    # ---- 环运算 ----

    def __add__(self, other: object) -> "QuadExt":
        parts = self._parts(other)
        if parts is None:
            if isinstance(other, QuadExt):
                return other + self.a
            return NotImplemented
        return _make(self.a + parts[0], self.b + parts[1], self.d)

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return _make(-self.a, -self.b, self.d)

    def __pos__(self) -> "QuadExt":
        return self

    def __sub__(self, other: object) -> "QuadExt":
        parts = self._parts(other)
        if parts is None:
            if isinstance(other, QuadExt):
                return (-other) + self.a
            return NotImplemented
        return _make(self.a - parts[0], self.b - parts[1], self.d)

    def __rsub__(self, other: object) -> "QuadExt":
        return (-self) + other

    def __mul__(self, other: object) -> "QuadExt":
        parts = self._parts(other)
        if parts is None:
            if isinstance(other, QuadExt):
                return other * self.a
            return NotImplemented
        c, e = parts
        if e == 0:
            return _make(self.a * c, self.b * c, self.d)
        return _make(self.a * c + self.d * self.b * e, self.a * e + self.b * c, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "QuadExt":
        parts = self._parts(other)
        if parts is None:
            if isinstance(other, QuadExt):
                return self * other.inverse()
            return NotImplemented
        c, e = parts
        if e == 0:
            if c == 0:
                raise ZeroDivisionError("除以零")
            return _make(self.a / c, self.b / c, self.d)
        return self * _make(c, e, self.d).inverse()

    def __rtruediv__(self, other: object) -> "QuadExt":
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int) -> "QuadExt":
        if k < 0:
            return quad_pow(self.inverse(), -k)
        return quad_pow(self, k)

    # ---- 域结构 ----

    def conjugate(self) -> "QuadExt":
        """a + b√d → a − b√d"""
        return _make(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """x·conj(x) = a² − d·b²"""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError(f"{self} 不可逆")
        return _make(self.a / n, -self.b / n, self.d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        return as_fraction(self)

    # ---- 比较与转换 ----

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadExt):
            if other.d == self.d:
                return self.a == other.a and self.b == other.b
            return self.b == 0 and other.b == 0 and self.a == other.a
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __float__(self) -> float:
        if self.b == 0:
            return float(self.a)
        if (self.a > 0) != (self.b > 0) and self.a != 0:
            # a 与 b√d 异号时改用 norm/(a − b√d)，避免相消
            return float(self.norm()) / (float(self.a) - float(self.b) * math.sqrt(self.d))
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def to_decimal(self, digits: int = 30) -> Decimal:
        """按给定有效位数渲染为 Decimal"""
        magnitude = max(self.a.numerator.bit_length(), self.b.numerator.bit_length())
        with localcontext() as ctx:
            ctx.prec = digits + magnitude * 31 // 100 + 10
            root = Decimal(self.d).sqrt()
            a = Decimal(self.a.numerator) / Decimal(self.a.denominator)
            b = Decimal(self.b.numerator) / Decimal(self.b.denominator)
            if self.b != 0 and self.a != 0 and (self.a > 0) != (self.b > 0):
                n = self.norm()
                value = (Decimal(n.numerator) / Decimal(n.denominator)) / (a - b * root)
            else:
                value = a + b * root
            ctx.prec = digits
            return +value

    def __str__(self) -> str:
        if self.b == 0:
            return format_exact(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{format_exact(self.a)} {sign} {format_exact(abs(self.b))}*sqrt({self.d})"

    def __repr__(self) -> str:
        return f"QuadExt({self.a!s}, {self.b!s}, d={self.d})"


Scalar = Union[int, Fraction, QuadExt]


def quad_pow(x: QuadExt, k: int) -> QuadExt:
    """二进制快速幂，k ≥ 0"""
    if k < 0:
        raise DomainError(f"指数必须非负，收到 {k}")
    result = _make(Fraction(1), Fraction(0), x.d)
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def conjugate_pair_sum(p: Scalar, q: Scalar) -> Fraction:
    """计算 p + conj(p)，要求 q 恰好是 p 的共轭，无理部分必须精确抵消"""
    if not isinstance(p, QuadExt) and not isinstance(q, QuadExt):
        p_rat, q_rat = as_fraction(p), as_fraction(q)
        if p_rat != q_rat:
            raise DomainError(f"{p_rat} 与 {q_rat} 不是共轭对")
        return p_rat + q_rat
    if not isinstance(p, QuadExt):
        p = QuadExt.from_rational(p, q.d)
    if not isinstance(q, QuadExt):
        q = QuadExt.from_rational(q, p.d)
    if p.d != q.d or q != p.conjugate():
        raise DomainError(f"{p} 与 {q} 不是共轭对")
    total = p + q
    assert total.b == 0, "共轭和的无理部分没有抵消"
    return total.a


def format_exact(value: Scalar) -> str:
    """精确字符串：整数、'p/q' 或 'a + b*sqrt(d)'"""
    if isinstance(value, bool):
        raise DomainError("布尔值不是标量")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, QuadExt):
        return str(value)
    raise DomainError(f"不支持的标量类型: {type(value).__name__}")


def parse_exact(text: str) -> Fraction:
    """把 format_exact 的有理数输出解析回 Fraction"""
    return Fraction(text.strip())


def format_decimal(value: Scalar, places: int = 2) -> str:
    """四舍六入五成双地渲染到 places 位小数"""
    if isinstance(value, QuadExt) and value.b != 0:
        exact = value.to_decimal(places + 40)
        quantum = Decimal(1).scaleb(-places)
        with localcontext() as ctx:
            ctx.prec = max(len(exact.as_tuple().digits), 1) + places + 5
            return str(exact.quantize(quantum, rounding=ROUND_HALF_EVEN))
    q = as_fraction(value)
    scaled = round(q, places) * 10**places
    scaled_int = int(scaled)
    sign = "-" if scaled_int < 0 else ""
    scaled_int = abs(scaled_int)
    if places == 0:
        return f"{sign}{scaled_int}"
    whole, frac = divmod(scaled_int, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"
