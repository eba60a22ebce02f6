"""
线性七边形网络 H_n 的命令行入口
构造图、分解拉普拉斯矩阵、计算 Kirchhoff 指数与生成树数、复现并审计发表表格
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional

from chain_graph import build_chain, laplacian
from charpoly_engine import charpoly
from closed_forms import kirchhoff_index, spanning_tree_count
from errors import HeptaError, ResourceGuardError
from exact_arith import format_decimal, format_exact
from hepta_config import HeptaConfig
from models import ComplexityMethod, KirchhoffMethod, OutputFormat, TableKind
from oracles import (
    kirchhoff_resistance,
    kirchhoff_spectral,
    spanning_trees_enumerate,
    spanning_trees_matrix_tree,
)
from report_engine import VerificationEngine, format_summary
from symmetry_decomposition import decompose, extract_blocks, integerize_even_block, published_odd_block
from table_builder import TableBuilder, render_table

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要正整数，收到 {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"需要正整数，收到 {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heptaspec", description="线性七边形网络的 Kirchhoff 指数与生成树数")
    parser.add_argument("--max-exact-n", type=_positive_int, default=None, help="精确预言机的 n 上限（覆盖 HEPTASPEC_MAX_EXACT_N）")
    parser.add_argument("--out", type=Path, default=None, help="输出到文件而非 stdout")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v 输出 INFO，-vv 输出 DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="输出 H_n 的顶点与边")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--format", choices=["edges", "json"], default="edges")

    p = sub.add_parser("laplacian", help="输出 H_n 的拉普拉斯矩阵")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--format", choices=["csv", "coo"], default="csv")

    p = sub.add_parser("decompose", help="输出对称分解后的块")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--block", choices=["even", "odd", "even-int", "published-odd"], default="even")
    p.add_argument("--format", choices=["csv", "coo"], default="csv")

    p = sub.add_parser("charpoly", help="精确特征多项式：L 整体、A 偶块、S 奇块")
    p.add_argument("which", choices=["L", "A", "S"])
    p.add_argument("n", type=_positive_int)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("kirchhoff", help="Kirchhoff 指数")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--method", choices=[m.value for m in KirchhoffMethod], default=KirchhoffMethod.CLOSED.value)

    p = sub.add_parser("complexity", help="生成树数")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--method", choices=[m.value for m in ComplexityMethod], default=ComplexityMethod.CLOSED.value)

    p = sub.add_parser("table", help="复现发表表格")
    p.add_argument("kind", choices=[k.value for k in TableKind])
    p.add_argument("start", type=_positive_int)
    p.add_argument("stop", type=_positive_int)
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)

    p = sub.add_parser("verify", help="闭式公式对预言机的审计报告")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--deep", action="store_true", help="加做特征多项式乘积、删除主子式与枚举审计")
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=[logging.StreamHandler(sys.stderr)], force=True)


def _cmd_build(args, config: HeptaConfig) -> str:
    chain = build_chain(args.n)
    return chain.to_json() if args.format == "json" else chain.to_edge_list()


def _render_matrix(matrix, fmt: str) -> str:
    return matrix.to_coordinates() if fmt == "coo" else matrix.to_csv()


def _cmd_laplacian(args, config: HeptaConfig) -> str:
    return _render_matrix(laplacian(build_chain(args.n)), args.format)


def _cmd_decompose(args, config: HeptaConfig) -> str:
    if args.block == "published-odd":
        return _render_matrix(published_odd_block(args.n), args.format)
    pair = decompose(extract_blocks(build_chain(args.n)), config)
    if args.block == "even-int":
        return _render_matrix(integerize_even_block(pair), args.format)
    return _render_matrix(pair.even if args.block == "even" else pair.odd, args.format)


def _cmd_charpoly(args, config: HeptaConfig) -> str:
    chain = build_chain(args.n)
    if args.which == "L":
        matrix = laplacian(chain)
    else:
        pair = decompose(extract_blocks(chain), config)
        matrix = integerize_even_block(pair) if args.which == "A" else pair.odd
    poly = charpoly(matrix)
    return poly.to_json() if args.format == "json" else f"{poly}\n"


def _exact_line(value) -> str:
    return f"{format_exact(value)} ≈ {format_decimal(value, 2)}\n"


def _cmd_kirchhoff(args, config: HeptaConfig) -> str:
    method = KirchhoffMethod(args.method)
    if method == KirchhoffMethod.CLOSED:
        return _exact_line(kirchhoff_index(args.n))
    _require_exact(args.n, config)
    chain = build_chain(args.n)
    if method == KirchhoffMethod.EIGEN:
        return f"{kirchhoff_spectral(chain):.10f}\n"
    return _exact_line(kirchhoff_resistance(chain))


def _cmd_complexity(args, config: HeptaConfig) -> str:
    method = ComplexityMethod(args.method)
    if method == ComplexityMethod.CLOSED:
        return f"{spanning_tree_count(args.n)}\n"
    _require_exact(args.n, config)
    chain = build_chain(args.n)
    if method == ComplexityMethod.MATRIX_TREE:
        return f"{spanning_trees_matrix_tree(chain)}\n"
    return f"{spanning_trees_enumerate(chain, config.enumerate_max_edges)}\n"


def _require_exact(n: int, config: HeptaConfig) -> None:
    if n > config.max_exact_n:
        raise ResourceGuardError(f"n={n} 超过精确计算上限 {config.max_exact_n}（--max-exact-n 可调整）")


def _cmd_table(args, config: HeptaConfig) -> str:
    if args.stop < args.start:
        raise argparse.ArgumentTypeError(f"区间非法: {args.start} > {args.stop}")
    kind = TableKind(args.kind)
    rows = asyncio.run(TableBuilder(config).build(kind, args.start, args.stop))
    return render_table(rows, kind, OutputFormat(args.format))


COMMANDS = {
    "build": _cmd_build,
    "laplacian": _cmd_laplacian,
    "decompose": _cmd_decompose,
    "charpoly": _cmd_charpoly,
    "kirchhoff": _cmd_kirchhoff,
    "complexity": _cmd_complexity,
    "table": _cmd_table,
}


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


def run_cli(argv: Optional[List[str]] = None) -> int:
    """运行命令并返回退出码：0 成功，1 审计未通过，2 参数或规模错误"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    _configure_logging(args.verbose)
    sys.set_int_max_str_digits(0)

    try:
        config = HeptaConfig.load_config(max_exact_n=args.max_exact_n)
        if args.command == "verify":
            report = VerificationEngine(config).verify(args.n, deep=args.deep)
            text = report.model_dump_json(indent=2) + "\n" if args.format == "json" else format_summary(report)
            _emit(text, args.out)
            return 0 if report.passed else 1
        _emit(COMMANDS[args.command](args, config), args.out)
        return 0
    except (HeptaError, argparse.ArgumentTypeError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
