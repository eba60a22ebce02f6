"""
核心数据模型
顶点标识、闭式量、审计报告与表格行
"""

from enum import Enum
from fractions import Fraction
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, computed_field

from errors import DomainError


class VertexKind(str, Enum):
    """顶点类别，值即规范名前缀"""
    BAR = "bar"
    TOP = "top"
    BOTTOM = "bot"


class VertexId(BaseModel):
    """H_n 的顶点：Bar(s)、Top(i) 或 Bottom(i)"""
    model_config = ConfigDict(frozen=True)

    kind: VertexKind = Field(..., description="顶点类别")
    index: int = Field(..., ge=1, description="类别内下标，从 1 开始")

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.index}"

    def __repr__(self) -> str:
        return f"VertexId({self})"

    @classmethod
    def parse(cls, name: str) -> "VertexId":
        """解析 'bar:s' / 'top:i' / 'bot:i'"""
        try:
            kind, index = name.strip().split(":")
            return cls(kind=VertexKind(kind), index=int(index))
        except ValueError as e:
            raise DomainError(f"无法解析顶点名 {name!r}") from e

    def mirrored(self) -> "VertexId":
        """Top(i) ↔ Bottom(i)，Bar 不动"""
        if self.kind == VertexKind.TOP:
            return VertexId(kind=VertexKind.BOTTOM, index=self.index)
        if self.kind == VertexKind.BOTTOM:
            return VertexId(kind=VertexKind.TOP, index=self.index)
        return self


def bar(s: int) -> VertexId:
    return VertexId(kind=VertexKind.BAR, index=s)


def top(i: int) -> VertexId:
    return VertexId(kind=VertexKind.TOP, index=i)


def bottom(i: int) -> VertexId:
    return VertexId(kind=VertexKind.BOTTOM, index=i)


class ClosedFormQuantity(str, Enum):
    """可审计的闭式量"""
    A5N = "a5n"
    A5N_MINUS_1 = "a5n_minus_1"
    SUM_INV_ALPHA = "sum_inv_alpha"
    M_SEQUENCE = "m_sequence"
    DET_ODD = "det_odd"
    B4N = "b4n"
    SUM_INV_BETA = "sum_inv_beta"
    KF_ORDER_FACTOR = "kf_order_factor"
    KF_PRINTED_FACTOR = "kf_printed_factor"
    TAU = "tau"


class Erratum(str, Enum):
    """已知的发表值缺陷"""
    EVEN_TOP_LEFT = "even_block_top_left"
    PAIR_MINOR_SUM = "pair_minor_sum"
    KIRCHHOFF_PREFACTOR = "kirchhoff_prefactor"
    ODD_RUNG_DIAGONAL = "odd_block_rung_diagonal"
    PUBLISHED_TABLE_TYPO = "published_table_typo"

    @property
    def description(self) -> str:
        return {
            Erratum.EVEN_TOP_LEFT: "even block printed with top-left I_n; the transform forces 2·I_n",
            Erratum.PAIR_MINOR_SUM: "published sum of (5n-1)-minors of the even block is not the exact integer value",
            Erratum.KIRCHHOFF_PREFACTOR: "Kirchhoff formula printed with prefactor 20n+2 instead of the vertex count 9n+2",
            Erratum.ODD_RUNG_DIAGONAL: "printed odd block has 3 where interior rung vertices give 4 on the diagonal",
            Erratum.PUBLISHED_TABLE_TYPO: "Kirchhoff table rows for n = 35 (typo) and n = 37, 38 (truncated, not rounded)",
        }[self]


class TableKind(str, Enum):
    KIRCHHOFF = "kirchhoff"
    COMPLEXITY = "complexity"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    MD = "md"


class KirchhoffMethod(str, Enum):
    CLOSED = "closed"
    EIGEN = "eigen"
    RESISTANCE = "resistance"


class ComplexityMethod(str, Enum):
    CLOSED = "closed"
    MATRIX_TREE = "matrix-tree"
    ENUMERATE = "enumerate"


class ClosedFormValue(BaseModel):
    """按发表公式精确求值的结果"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    quantity: ClosedFormQuantity
    value: Fraction = Field(..., description="精确有理值")
    formula_source: str = Field(..., description="公式出处说明")


class SpectralSummary(BaseModel):
    """浮点谱摘要"""
    eigenvalues: List[float] = Field(default_factory=list, description="升序特征值")
    reciprocal_sum_nonzero: float = Field(default=0.0, description="非零特征值倒数和")
    max_residual: float = Field(default=0.0, description="抽样特征对的最大残差")

    @property
    def zero_count(self) -> int:
        return sum(1 for v in self.eigenvalues if abs(v) < 1e-9)


class MinorAudit(BaseModel):
    """一个删除主子式的发表公式与精确值对比"""
    deleted: List[int] = Field(..., description="删去的下标（1 起）")
    case: str = Field(..., description="公式分支")
    formula_value: Optional[str] = Field(default=None, description="公式值，无对应分支时为空")
    exact_value: str
    match: bool


class VerificationEntry(BaseModel):
    """单个闭式量的审计记录"""
    quantity: ClosedFormQuantity
    closed_form_value: str = Field(..., description="闭式精确值")
    oracle_value: str = Field(default="", description="独立计算值（精确串或浮点）")
    match: bool = False
    relative_deviation: float = 0.0
    erratum: Optional[Erratum] = Field(default=None, description="不一致时对应的已知勘误")
    skipped: bool = Field(default=False, description="因规模上限未计算")
    note: str = ""

    @computed_field
    @property
    def ok(self) -> bool:
        return self.match or self.skipped or self.erratum is not None


class StructuralCheck(BaseModel):
    """结构性校验（变换正交、谱并集、Foster 和等）"""
    name: str
    passed: bool
    detail: str = ""
    erratum: Optional[Erratum] = None
    skipped: bool = False

    @computed_field
    @property
    def ok(self) -> bool:
        return self.passed or self.skipped or self.erratum is not None


class VerificationReport(BaseModel):
    """verify 子命令的完整报告"""
    n: int = Field(..., ge=1)
    deep: bool = False
    entries: List[VerificationEntry] = Field(default_factory=list)
    checks: List[StructuralCheck] = Field(default_factory=list)
    published_kirchhoff: Optional[str] = Field(default=None, description="发表表格中的 Kf(H_n)")
    published_complexity: Optional[str] = Field(default=None, description="发表表格中的 τ(H_n)")

    @computed_field
    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries) and all(c.ok for c in self.checks)

    def entry(self, quantity: ClosedFormQuantity) -> VerificationEntry:
        for e in self.entries:
            if e.quantity == quantity:
                return e
        raise KeyError(quantity)

    def check(self, name: str) -> StructuralCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


SKIPPED_SIZE = "skipped (size)"


class TableRow(BaseModel):
    """复现表格的一行"""
    n: int = Field(..., ge=1)
    kf_closed: Optional[str] = Field(default=None, description="闭式 Kf，两位小数")
    kf_oracle: Optional[str] = Field(default=None, description="电阻法 Kf，两位小数或 skipped")
    kf_published: Optional[str] = None
    tau_closed: Optional[int] = None
    tau_oracle: Optional[Union[int, str]] = None
    tau_published: Optional[str] = None
    matches_published: Optional[bool] = None
    erratum: Optional[Erratum] = Field(default=None, description="与表不符且属已知勘误时的标签")
