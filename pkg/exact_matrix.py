"""
精确矩阵
以 numpy object 数组承载整数 / Fraction / QuadExt 元素的稠密矩阵
乘法按非零元展开，块结构的变换矩阵可以在大 n 上精确校验
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from errors import DomainError
from exact_arith import QuadExt, Scalar, format_exact


class ExactMatrix:
    """精确标量上的稠密矩阵，构造后不可变"""

    __slots__ = ("_data",)

    def __init__(self, rows: Iterable[Sequence[Scalar]] | np.ndarray):
        data = np.array(rows, dtype=object)
        if data.ndim == 1 and data.size == 0:
            data = data.reshape(0, 0)
        if data.ndim != 2:
            raise DomainError(f"矩阵必须是二维的，收到 ndim={data.ndim}")
        data.setflags(write=False)
        self._data = data

    # ---- 构造 ----

    @classmethod
    def _wrap(cls, data: np.ndarray) -> "ExactMatrix":
        obj = object.__new__(cls)
        data.setflags(write=False)
        obj._data = data
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        data = np.empty((rows, cols), dtype=object)
        data.fill(0)
        return cls._wrap(data)

    @classmethod
    def identity(cls, size: int, one: Scalar = 1) -> "ExactMatrix":
        data = np.empty((size, size), dtype=object)
        data.fill(0)
        for i in range(size):
            data[i, i] = one
        return cls._wrap(data)

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> "ExactMatrix":
        size = len(values)
        data = np.empty((size, size), dtype=object)
        data.fill(0)
        for i, value in enumerate(values):
            data[i, i] = value
        return cls._wrap(data)

    @classmethod
    def tridiagonal(cls, diag: Sequence[Scalar], off: Sequence[Scalar]) -> "ExactMatrix":
        if len(off) != max(len(diag) - 1, 0):
            raise DomainError("次对角线长度必须比对角线少 1")
        data = cls.diagonal(diag).to_array()
        for i, value in enumerate(off):
            data[i, i + 1] = value
            data[i + 1, i] = value
        return cls._wrap(data)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["ExactMatrix"]]) -> "ExactMatrix":
        return cls._wrap(np.block([[b.to_array() for b in row] for row in blocks]))

    # ---- 访问 ----

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def size(self) -> int:
        """方阵阶数"""
        self.require_square()
        return self._data.shape[0]

    @property
    def is_square(self) -> bool:
        return self._data.shape[0] == self._data.shape[1]

    def require_square(self) -> None:
        if not self.is_square:
            raise DomainError(f"需要方阵，收到 {self.shape[0]}×{self.shape[1]}")

    def __getitem__(self, key):
        item = self._data[key]
        if isinstance(item, np.ndarray):
            if item.ndim == 2:
                return ExactMatrix._wrap(item.copy())
            return list(item)
        return item

    def to_array(self) -> np.ndarray:
        """可写的 object 数组副本"""
        return self._data.copy()

    def rows(self) -> list[list[Scalar]]:
        return [list(row) for row in self._data]

    def diagonal_entries(self) -> list[Scalar]:
        return [self._data[i, i] for i in range(min(self.shape))]

    def nonzero_pattern(self) -> list[list[int]]:
        """每行非零列下标"""
        return [[j for j, v in enumerate(row) if v != 0] for row in self._data]

    # ---- 代数运算 ----

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self._data.T.copy())

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_shape(other)
        return ExactMatrix._wrap(self._data + other._data)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_shape(other)
        return ExactMatrix._wrap(self._data - other._data)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._wrap(-self._data)

    def scale(self, factor: Scalar) -> "ExactMatrix":
        data = np.empty(self.shape, dtype=object)
        for (i, j), value in np.ndenumerate(self._data):
            data[i, j] = factor * value if value != 0 else 0
        return ExactMatrix._wrap(data)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape[1] != other.shape[0]:
            raise DomainError(f"形状不匹配: {self.shape} @ {other.shape}")
        left = self.nonzero_pattern()
        right = other.nonzero_pattern()
        data = np.empty((self.shape[0], other.shape[1]), dtype=object)
        data.fill(0)
        for i, cols in enumerate(left):
            for k in cols:
                a = self._data[i, k]
                for j in right[k]:
                    data[i, j] = data[i, j] + a * other._data[k, j]
        return ExactMatrix._wrap(data)

    def delete(self, indices: Iterable[int]) -> "ExactMatrix":
        """删去给定的行及对应列（主子式用）"""
        drop = set(indices)
        keep = [i for i in range(self.size) if i not in drop]
        return self.principal_submatrix(keep)

    def principal_submatrix(self, keep: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._wrap(self._data[np.ix_(keep, keep)].copy())

    def permuted(self, order: Sequence[int]) -> "ExactMatrix":
        """P·M·Pᵀ，order[k] 给出新第 k 行对应的旧下标"""
        return self.principal_submatrix(list(order))

    def is_symmetric(self) -> bool:
        return self.is_square and bool(np.all(self._data == self._data.T))

    def is_tridiagonal(self) -> bool:
        self.require_square()
        for i, cols in enumerate(self.nonzero_pattern()):
            if any(abs(j - i) > 1 for j in cols):
                return False
        return True

    def to_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self._data], dtype=np.float64)

    def to_integer(self) -> "ExactMatrix":
        """确认全部元素为整数并转成 int"""
        data = np.empty(self.shape, dtype=object)
        for (i, j), value in np.ndenumerate(self._data):
            if isinstance(value, QuadExt):
                value = value.to_fraction()
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise DomainError(f"({i},{j}) 处元素 {value} 不是整数")
                value = value.numerator
            data[i, j] = int(value)
        return ExactMatrix._wrap(data)

    def trace(self) -> Scalar:
        total: Scalar = 0
        for value in self.diagonal_entries():
            total = total + value
        return total

    # ---- 比较与导出 ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._data == other._data))

    __hash__ = None  # type: ignore[assignment]

    def _require_same_shape(self, other: "ExactMatrix") -> None:
        if self.shape != other.shape:
            raise DomainError(f"形状不匹配: {self.shape} 与 {other.shape}")

    def to_csv(self) -> str:
        """稠密 CSV，元素为精确字符串，LF 换行"""
        lines = [",".join(format_exact(v) for v in row) for row in self._data]
        return "\n".join(lines) + "\n"

    def to_coordinates(self) -> str:
        """坐标格式：每个非零元一行 'row col value'，下标从 1 开始"""
        lines = [
            f"{i + 1} {j + 1} {format_exact(v)}"
            for (i, j), v in np.ndenumerate(self._data)
            if v != 0
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self) -> str:
        return f"ExactMatrix({self.shape[0]}×{self.shape[1]})"
