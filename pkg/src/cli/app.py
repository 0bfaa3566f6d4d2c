"""
luckypark 命令行入口

子命令:
    simulate   模拟一次停车过程
    table      输出 q_n(i, j)、单调变体、列和或幸运数分布
    verify     运行恒等式验证套件
    bijection  Dyck 路径双射演示
    fit        列和猜想的精确拟合
    export     导出整数序列 (b-file / CSV)

退出码: 0 成功；1 否定结果（不是停车函数、验证失败、交叉检查不一致）；2 用法错误；130 中断
"""

import argparse
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from config.logging import setup_logging
from src.cli.render import (
    render_bfile,
    render_fit,
    render_grid_as,
    render_outcome,
    render_path,
    render_peaks,
    render_report,
)
from src.cli.sequences import known_sequence_names, sequence_terms
from src.cli.tables import SOURCES, TABLE_KINDS, build_grid
from src.core import dyck
from src.core.errors import (
    CacheError,
    DomainError,
    InvariantViolation,
    LimitExceededError,
    LuckyParkError,
)
from src.core.models import OutputFormat, Variant
from src.core.parking import park
from src.lab.conjecture import collect_samples, default_sample_range, fit_conjecture
from src.oracle.cache import OracleCache
from src.verify.context import VerifyContext
from src.verify.loader import load_all_suites
from src.verify.registry import suite_registry

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130

BIJECTION_DIRECTIONS = ("inc2path", "path2inc", "dec2path", "path2dec", "split", "merge", "reflect", "peaks")


# --- 参数解析 ---
def _oracle_options() -> argparse.ArgumentParser:
    """需要 oracle 的子命令共用的选项"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--workers", type=int, default=None, help="oracle process count (default: physical cores)")
    parent.add_argument("--allow-long", action="store_true", help="raise the full-variant limit to ORACLE_LONG_MAX_N")
    parent.add_argument("--no-cache", action="store_true", help="neither read nor write the oracle cache")
    parent.add_argument("--cache-dir", type=Path, default=None, help="override LUCKYPARK_CACHE_DIR")
    parent.add_argument("--progress", action="store_true", help="stream oracle progress to stderr")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="luckypark",
        description="Lucky cars and lucky spots of parking functions: exact tables, identities and bijections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    oracle_opts = _oracle_options()
    formats = [f.value for f in OutputFormat]

    p = sub.add_parser("simulate", help="run the parking process on one preference list")
    p.add_argument("prefs", nargs="+", type=int, metavar="PREF")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("table", parents=[oracle_opts], help="print q_n(i, j), its variants, column sums or c_k")
    p.add_argument("kind", choices=TABLE_KINDS)
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=formats, default=OutputFormat.TEXT.value)
    p.add_argument("--source", choices=SOURCES, default="both",
                   help="both (default) cross-checks oracle against closed forms")
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.ALL.value,
                   help="preference order for the distribution table")
    p.add_argument("--provenance", action="store_true", help="mark the source of every number")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("verify", parents=[oracle_opts], help="run an identity suite against the oracle")
    p.add_argument("suite", nargs="?", help="suite name, or 'all'")
    p.add_argument("nmax", nargs="?", type=int, default=None)
    p.add_argument("--list", action="store_true", help="list the available suites")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("bijection", help="Dyck path bijections")
    p.add_argument("direction", choices=BIJECTION_DIRECTIONS)
    p.add_argument("values", nargs="+", help="preferences, or one or two path strings")
    p.add_argument("--column", type=int, default=None, help="column j for split / merge")
    p.add_argument("--grid", action="store_true", help="also draw the path as a text grid")
    p.set_defaults(handler=cmd_bijection)

    p = sub.add_parser("fit", parents=[oracle_opts], help="fit f_j(n) of the column-sum conjecture exactly")
    p.add_argument("j", type=int)
    p.add_argument("--source", choices=("auto", "closed-form", "oracle", "published"), default="auto")
    p.add_argument("--n-values", type=int, nargs="+", default=None,
                   help="sample sizes (default: from n = j, with held-out points for j <= 5)")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("export", parents=[oracle_opts], help="write an integer sequence as a b-file or CSV")
    p.add_argument("name", nargs="?", help="sequence name, e.g. subdiagonal, column-3, c-2, narayana-7")
    p.add_argument("nmax", nargs="?", type=int, default=None)
    p.add_argument("--format", choices=(OutputFormat.BFILE.value, OutputFormat.CSV.value),
                   default=OutputFormat.BFILE.value)
    p.add_argument("--provenance", action="store_true", help="add a provenance column (CSV only)")
    p.add_argument("--output", type=Path, default=None, help="write to a file instead of stdout")
    p.add_argument("--list", action="store_true", help="list the available sequences")
    p.set_defaults(handler=cmd_export)

    return parser


def _context(args: argparse.Namespace) -> VerifyContext:
    cache = None if getattr(args, "no_cache", False) else OracleCache(getattr(args, "cache_dir", None))
    return VerifyContext(cache=cache, workers=getattr(args, "workers", None),
                         allow_long=getattr(args, "allow_long", False))


# --- 子命令 ---
def cmd_simulate(args: argparse.Namespace) -> int:
    outcome = park(args.prefs)
    sys.stdout.write(render_outcome(outcome))
    return EXIT_OK if outcome.success else EXIT_NEGATIVE


def cmd_table(args: argparse.Namespace) -> int:
    grid = build_grid(args.kind, args.n, args.source, _context(args), Variant(args.variant))
    sys.stdout.write(render_grid_as(grid, OutputFormat(args.format), args.provenance))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    load_all_suites()
    if args.list or not args.suite:
        for suite in suite_registry.get_all():
            sys.stdout.write(f"{suite.name:<14} (nmax {suite.default_nmax:>2})  {suite.description}\n")
        return EXIT_OK

    suites = suite_registry.get_all() if args.suite == "all" else [suite_registry.require(args.suite)]
    if args.nmax is not None and args.nmax < 1:
        raise DomainError(f"nmax must be positive, got {args.nmax}")
    ctx = _context(args)
    failed = []
    for suite in suites:
        nmax = args.nmax if args.nmax is not None else suite.default_nmax
        logger.info(f"Running suite {suite.name} up to nmax={nmax}")
        result = suite.run(nmax, ctx)
        sys.stdout.write(render_report(result))
        if not result.passed:
            failed.append(suite.name)
    if failed:
        sys.stdout.write(f"FAILED: {', '.join(failed)}\n")
        return EXIT_NEGATIVE
    return EXIT_OK


def _ints(values: Sequence[str]) -> List[int]:
    try:
        return [int(v) for v in values]
    except ValueError:
        raise DomainError(f"expected integer preferences, got {' '.join(values)}") from None


def _one_path(values: Sequence[str]) -> dyck.DyckPath:
    if len(values) != 1:
        raise DomainError(f"expected one path string, got {len(values)} arguments")
    return dyck.DyckPath.parse(values[0])


def _require_column(args: argparse.Namespace) -> int:
    if args.column is None:
        raise DomainError(f"{args.direction} needs --column")
    return args.column


def _confirm(ok: bool, what: str) -> str:
    if not ok:
        raise InvariantViolation(f"round trip failed: {what}")
    return f"round trip: ok ({what})\n"


def cmd_bijection(args: argparse.Namespace) -> int:
    direction = args.direction
    out = []
    if direction in ("inc2path", "dec2path"):
        prefs = tuple(_ints(args.values))
        to_path, from_path = ((dyck.increasing_to_dyck, dyck.dyck_to_increasing) if direction == "inc2path"
                              else (dyck.decreasing_to_dyck, dyck.dyck_to_decreasing))
        path = to_path(prefs)
        out.append(render_path(path, args.grid))
        out.append(_confirm(from_path(path) == prefs, "path back to preferences"))
    elif direction in ("path2inc", "path2dec"):
        path = _one_path(args.values)
        to_prefs, from_prefs = ((dyck.dyck_to_increasing, dyck.increasing_to_dyck) if direction == "path2inc"
                                else (dyck.dyck_to_decreasing, dyck.decreasing_to_dyck))
        prefs = to_prefs(path)
        out.append(" ".join(map(str, prefs)) + "\n")
        out.append(_confirm(from_prefs(prefs) == path, "preferences back to path"))
    elif direction == "split":
        path = _one_path(args.values)
        j = _require_column(args)
        big, small, k = dyck.split_at_column(path, j)
        out.append(f"big: {big.steps}\nsmall: {small.steps}\nk: {k}\n")
        out.append(_confirm(dyck.merge(big, small, j) == path, "merge of the parts"))
    elif direction == "merge":
        if len(args.values) != 2:
            raise DomainError("merge needs two path strings: BIG SMALL")
        big, small = (dyck.DyckPath.parse(v) for v in args.values)
        j = _require_column(args)
        merged = dyck.merge(big, small, j)
        out.append(render_path(merged, args.grid))
        out.append(_confirm(dyck.split_at_column(merged, j) == (big, small, small.size), "split of the result"))
    elif direction == "reflect":
        path = _one_path(args.values)
        reflected = dyck.reflect_antidiagonal(path)
        out.append(render_path(reflected, args.grid))
        out.append(_confirm(dyck.reflect_antidiagonal(reflected) == path, "reflection is an involution"))
    else:
        path = _one_path(args.values)
        if args.grid:
            out.append(dyck.render_grid(path) + "\n")
        out.append(render_peaks(path))
    sys.stdout.write("".join(out))
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    if args.j < 1:
        raise DomainError(f"j must be positive, got {args.j}")
    ctx = _context(args)
    n_values = args.n_values or default_sample_range(args.j)
    samples = collect_samples(args.j, n_values, source=args.source, cache=ctx.cache, workers=ctx.workers)
    fit = fit_conjecture(args.j, samples)
    sys.stdout.write(render_fit(fit))
    return EXIT_NEGATIVE if fit.degree_claim_holds is False else EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    if args.list or not args.name:
        sys.stdout.write("\n".join(known_sequence_names()) + "\n")
        return EXIT_OK
    if args.nmax is None:
        raise DomainError("export needs NMAX")
    terms = sequence_terms(args.name, args.nmax, _context(args))
    if args.format == OutputFormat.CSV.value:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\r\n")
        writer.writerow(["index", "value"] + (["provenance"] if args.provenance else []))
        for index, value, prov in terms:
            writer.writerow([index, value] + ([prov.value] if args.provenance else []))
        text = buffer.getvalue()
    else:
        text = render_bfile([(index, value) for index, value, _ in terms])

    if args.output is not None:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        # newline="" 保留 CSV 的 CRLF 原样
        with args.output.open("w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info(f"Wrote {len(terms)} terms to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- 入口 ---
def _fail(code: int, message: str) -> int:
    sys.stderr.write(f"luckypark: {message}\n")
    return code


def run(argv: Optional[Sequence[str]] = None, configure_logging: bool = True) -> int:
    """解析参数、执行子命令并把异常映射为退出码"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if configure_logging:
        setup_logging(show_progress=getattr(args, "progress", False))

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except KeyboardInterrupt:
        # oracle 只在完整结束后写缓存，这里不会留下部分条目
        return _fail(EXIT_INTERRUPTED, "interrupted")
    except LimitExceededError as e:
        return _fail(EXIT_USAGE, str(e))
    except DomainError as e:
        return _fail(EXIT_USAGE, str(e))
    except InvariantViolation as e:
        logger.error(f"Cross-check failed: {e}")
        return _fail(EXIT_NEGATIVE, f"cross-check failed: {e}")
    except CacheError as e:
        return _fail(EXIT_NEGATIVE, f"cache error: {e}")
    except LuckyParkError as e:
        logger.exception("Unexpected error")
        return _fail(EXIT_NEGATIVE, str(e))
