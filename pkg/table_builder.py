"""
表格复现
按 n 区间并发计算闭式值与预言机值，对照发表表格，输出 csv / json / md
"""

import asyncio
import json
import logging
from enum import Enum
from typing import List, Optional

from chain_graph import build_chain
from closed_forms import kirchhoff_index, spanning_tree_count
from errors import DomainError
from exact_arith import format_decimal
from hepta_config import HeptaConfig
from models import SKIPPED_SIZE, Erratum, OutputFormat, TableKind, TableRow
from oracles import kirchhoff_resistance, spanning_trees_matrix_tree
from published_tables import (
    complexity_matches_published,
    kirchhoff_matches_published,
    kirchhoff_table_deviation,
    published_complexity,
    published_kirchhoff,
)

KIRCHHOFF_COLUMNS = ["n", "kf_closed", "kf_oracle", "kf_published", "matches_published", "erratum"]
COMPLEXITY_COLUMNS = ["n", "tau_closed", "tau_oracle", "tau_published", "matches_published"]


class TableBuilder:
    """Kirchhoff 表与生成树数表的生成器"""

    def __init__(self, config: Optional[HeptaConfig] = None):
        self.config = config or HeptaConfig.load_config()

    async def build(self, kind: TableKind, start: int, stop: int) -> List[TableRow]:
        """n ∈ [start, stop]，每个 n 一个线程任务，结果按 n 升序"""
        if start < 1 or stop < start:
            raise DomainError(f"区间非法: [{start}, {stop}]")
        logging.info(f"📊 生成 {kind.value} 表: n = {start}..{stop}")
        row_fn = self._kirchhoff_row if kind == TableKind.KIRCHHOFF else self._complexity_row
        tasks = [asyncio.to_thread(row_fn, n) for n in range(start, stop + 1)]
        rows = await asyncio.gather(*tasks)
        return list(rows)

    def build_sync(self, kind: TableKind, start: int, stop: int) -> List[TableRow]:
        return asyncio.run(self.build(kind, start, stop))

    def _kirchhoff_row(self, n: int) -> TableRow:
        closed = format_decimal(kirchhoff_index(n), 2)
        if n <= self.config.max_exact_n:
            oracle = format_decimal(kirchhoff_resistance(build_chain(n)), 2)
        else:
            oracle = SKIPPED_SIZE
        matches = kirchhoff_matches_published(n, kirchhoff_index(n))
        deviation = kirchhoff_table_deviation(n)
        if matches is False:
            logging.warning(f"⚠️ n={n}: 闭式 {closed} 与表 {published_kirchhoff(n)} 不符（{deviation or '未登记'}）")
        return TableRow(
            n=n,
            kf_closed=closed,
            kf_oracle=oracle,
            kf_published=published_kirchhoff(n),
            matches_published=matches,
            erratum=Erratum.PUBLISHED_TABLE_TYPO if matches is False and deviation else None,
        )

    def _complexity_row(self, n: int) -> TableRow:
        closed = spanning_tree_count(n)
        oracle = spanning_trees_matrix_tree(build_chain(n)) if n <= self.config.max_exact_n else SKIPPED_SIZE
        printed = published_complexity(n)
        return TableRow(
            n=n,
            tau_closed=closed,
            tau_oracle=oracle,
            tau_published=None if printed is None else str(printed),
            matches_published=complexity_matches_published(n, closed),
        )


def _columns(kind: TableKind) -> List[str]:
    return KIRCHHOFF_COLUMNS if kind == TableKind.KIRCHHOFF else COMPLEXITY_COLUMNS


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return value.value
    return str(value)


def render_table(rows: List[TableRow], kind: TableKind, fmt: OutputFormat) -> str:
    """渲染为文本；csv 带表头，换行为 LF"""
    columns = _columns(kind)
    if fmt == OutputFormat.JSON:
        payload = [row.model_dump(mode="json", include=set(columns)) for row in rows]
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"

    records = [[_cell(getattr(row, c)) for c in columns] for row in rows]
    if fmt == OutputFormat.CSV:
        return "\n".join([",".join(columns)] + [",".join(r) for r in records]) + "\n"

    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    lines.extend("| " + " | ".join(r) + " |" for r in records)
    return "\n".join(lines) + "\n"


def parse_table_json(text: str) -> List[TableRow]:
    """render_table(JSON) 的逆"""
    return [TableRow(**item) for item in json.loads(text)]
