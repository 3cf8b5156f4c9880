"""
可选性工具箱命令行入口

每个输入图产出一条 JSON 记录（标准输出），日志写到标准错误。
退出码：0 成立 / 可选，1 不成立 / 不可选，2 预算内无结论，64 用法或输入格式错误。
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import aiofiles

from core.budget import Budget, _clamp_float, _clamp_int
from core.choosability import is_d_r_choosable, is_f_choosable
from core.classification import family_join, predict
from core.defaults import (
    DEFAULT_R,
    EXIT_FAIL,
    EXIT_INDETERMINATE,
    EXIT_OK,
    EXIT_USAGE,
    JSON_SCHEMA,
    MAX_PARALLELISM,
    MULE_CATALOG,
    SWEEP_FAMILIES,
    SWEEP_MAX_ORDER,
)
from core.errors import BudgetExhausted, GraphError, PreconditionError, ReductionFailure
from core.graph import Graph
from core.graph_io import Record, iter_records, to_graph6
from core.invariants import borodin_kostochka_bound, brooks_bound, contains_clique_join, invariants
from core.list_coloring import Outcome, d_r_sizes
from core.logger import logger, setup_logging
from core.mules import CatalogChecksumError, mule, verify_catalog_checksums, verify_mule
from core.reduction import reduce_chain, reduce_delta
from core.sweeps import SweepRow, run_sweep

OK = "ok"
FAIL = "fail"
INDETERMINATE = "indeterminate"
ERROR = "error"


# ============================================================================
# 配置：命令行 > --config JSON > 环境变量（仅预算）> 默认值
# ============================================================================

@dataclass
class Settings:
    budget_seconds: float
    budget_nodes: int
    parallelism: int = 1
    symmetry: bool = True
    log_level: str = "WARNING"
    pretty: bool = False
    fmt: str = "auto"

    def budget(self) -> Budget:
        return Budget(max_nodes=self.budget_nodes, max_seconds=self.budget_seconds)

    def apply(self, values: dict[str, Any]) -> None:
        if "budget_seconds" in values:
            self.budget_seconds = _clamp_float(
                values["budget_seconds"], default=self.budget_seconds, min_value=0.001, max_value=10**7
            )
        if "budget_nodes" in values:
            self.budget_nodes = _clamp_int(values["budget_nodes"], default=self.budget_nodes, min_value=1, max_value=10**15)
        if "parallelism" in values:
            self.parallelism = _clamp_int(values["parallelism"], default=self.parallelism, min_value=1, max_value=MAX_PARALLELISM)
        if isinstance(values.get("symmetry"), bool):
            self.symmetry = values["symmetry"]
        if isinstance(values.get("pretty"), bool):
            self.pretty = values["pretty"]
        if isinstance(values.get("log_level"), str):
            self.log_level = values["log_level"]
        if values.get("format") in ("auto", "graph6", "edgelist"):
            self.fmt = values["format"]


async def load_settings(args: argparse.Namespace) -> Settings:
    env_budget = Budget.from_env()
    settings = Settings(budget_seconds=env_budget.max_seconds, budget_nodes=env_budget.max_nodes)
    if args.config:
        try:
            async with aiofiles.open(args.config, "r", encoding="utf-8") as f:
                data = json.loads(await f.read())
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"[CLI] 无法读取配置文件 {args.config}: {e}; 使用默认值")
            data = {}
        if not isinstance(data, dict):
            logger.warning(f"[CLI] 配置文件类型错误 {type(data).__name__}; 使用默认值")
            data = {}
        settings.apply(data)
    cli_values = {
        "budget_seconds": args.budget_seconds,
        "budget_nodes": args.budget_nodes,
        "parallelism": args.parallelism,
        "symmetry": args.symmetry,
        "pretty": args.pretty or None,
        "log_level": args.log_level,
        "format": args.format,
    }
    settings.apply({key: value for key, value in cli_values.items() if value is not None})
    return settings


# ============================================================================
# 单条记录的处理（在工作进程中执行）
# ============================================================================

def _status_of(outcome: Outcome) -> str:
    if outcome is Outcome.CHOOSABLE:
        return OK
    if outcome is Outcome.NOT_CHOOSABLE:
        return FAIL
    return INDETERMINATE


def _cmd_invariants(g: Graph, opts: dict[str, Any], budget: Budget) -> tuple[str, dict[str, Any]]:
    inv = invariants(g, budget)
    return OK, {"invariants": inv.to_json(), "min_degree": g.min_degree}


def _cmd_choosable(g: Graph, opts: dict[str, Any], budget: Budget) -> tuple[str, dict[str, Any]]:
    r = None
    if opts.get("f") is not None:
        f = list(opts["f"])
        verdict = is_f_choosable(g, f, budget, symmetry=opts["symmetry"])
    else:
        r = DEFAULT_R if opts.get("r") is None else opts["r"]
        f = list(d_r_sizes(g, r))
        verdict = is_d_r_choosable(g, r, budget, symmetry=opts["symmetry"])
    result = {"f": f, "r": r}
    result.update(verdict.to_json())
    return _status_of(verdict.outcome), result


def _cmd_classify(g: Graph, opts: dict[str, Any], budget: Budget) -> tuple[str, dict[str, Any]]:
    family, t = opts["family"], opts.get("t")
    prediction = predict(family, g, t)
    result: dict[str, Any] = {"family": family, "t": t, "prediction": prediction.to_json()}
    if not opts.get("check"):
        return (OK if prediction.predicted_choosable else FAIL), result
    verdict = is_d_r_choosable(family_join(family, g, t), 1, budget, symmetry=opts["symmetry"])
    row = SweepRow(to_graph6(g), g.order, g.size, prediction, verdict)
    result["checker"] = verdict.to_json()
    result["agrees"] = row.agrees
    if row.agrees is None:
        return INDETERMINATE, result
    if not row.agrees:
        logger.error(f"[CLI] 分类预测与检查器不符: B={row.graph6}")
        return FAIL, result
    return (OK if verdict.choosable else FAIL), result


def _cmd_mule(g: Graph, opts: dict[str, Any], budget: Budget) -> tuple[str, dict[str, Any]]:
    k = opts.get("k") or g.max_degree
    report = verify_mule(g, k, budget, name=opts.get("name") or "")
    status = OK if report.in_class(k) and not report.alarms else FAIL
    return status, report.to_json()


def _cmd_reduce(g: Graph, opts: dict[str, Any], budget: Budget) -> tuple[str, dict[str, Any]]:
    k = opts.get("k") or g.max_degree
    j = opts.get("j") or 0
    if opts.get("chain"):
        steps = reduce_chain(g, k, j, budget)
    else:
        steps = [reduce_delta(g, k, j, budget)]
    return OK, {"k": k, "j": j, "steps": [step.to_json() for step in steps]}


def _cmd_bk_check(g: Graph, opts: dict[str, Any], budget: Budget) -> tuple[str, dict[str, Any]]:
    inv = invariants(g, budget)
    bound = borodin_kostochka_bound(inv)
    holds = inv.chromatic_number <= bound
    result = {
        "chi": inv.chromatic_number,
        "omega": inv.clique_number,
        "delta": inv.max_degree,
        "bound": bound,
        "holds": holds,
        "brooks_holds": inv.chromatic_number <= brooks_bound(inv),
    }
    return (OK if holds else FAIL), result


def _cmd_contains_join(g: Graph, opts: dict[str, Any], budget: Budget) -> tuple[str, dict[str, Any]]:
    s = opts.get("s", 3)
    t = opts.get("t")
    if t is None:
        t = max(0, g.max_degree - s)
    witness = contains_clique_join(g, s, t)
    result: dict[str, Any] = {"s": s, "t": t, "holds": witness is not None}
    if witness is not None:
        result["clique"] = list(witness.clique)
        result["common"] = list(witness.common)
    return (OK if witness is not None else FAIL), result


HANDLERS: dict[str, Callable[[Graph, dict[str, Any], Budget], tuple[str, dict[str, Any]]]] = {
    "invariants": _cmd_invariants,
    "choosable": _cmd_choosable,
    "classify": _cmd_classify,
    "mule": _cmd_mule,
    "reduce": _cmd_reduce,
    "bk-check": _cmd_bk_check,
    "contains-join": _cmd_contains_join,
}


def run_record(verb: str, opts: dict[str, Any], g: Graph) -> dict[str, Any]:
    """执行一条记录；库异常在这里转换为状态"""
    budget = Budget(max_nodes=opts["budget_nodes"], max_seconds=opts["budget_seconds"]).start()
    try:
        status, result = HANDLERS[verb](g, opts, budget)
    except BudgetExhausted as e:
        logger.warning(f"[CLI] {verb} 预算耗尽: {e}")
        return {"status": INDETERMINATE, "result": {"reason": str(e), "stats": e.stats}}
    except ReductionFailure as e:
        logger.error(f"[CLI] 约化失败: {e}")
        return {"status": FAIL, "result": {"error": str(e), "diagnosis": e.diagnosis}}
    except (PreconditionError, GraphError, ValueError) as e:
        return {"status": ERROR, "result": {"error": str(e)}}
    return {"status": status, "result": result}


# ============================================================================
# 异步调度
# ============================================================================

async def _read_input(path: str) -> str:
    if path == "-":
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(None, sys.stdin.read)
    async with aiofiles.open(path, "r", encoding="utf-8") as f:
        return await f.read()


async def run_records(
    verb: str,
    opts: dict[str, Any],
    records: Sequence[Record],
    parallelism: int,
    emit: Callable[[Record, dict[str, Any]], None] | None = None,
) -> list[dict[str, Any]]:
    """
    按输入顺序返回结果；并行度由信号量限制

    给出 emit 时，第 i 条记录在它及之前的记录全部完成后立即回调，输出顺序仍等于输入顺序。
    """
    loop = asyncio.get_running_loop()
    semaphore = asyncio.Semaphore(parallelism)

    with ProcessPoolExecutor(max_workers=parallelism) as pool:

        async def one(record: Record) -> dict[str, Any]:
            if record.error is not None:
                return {"status": ERROR, "result": {"error": str(record.error), "line": record.error.line}}
            async with semaphore:
                return await loop.run_in_executor(pool, run_record, verb, opts, record.graph)

        tasks = [asyncio.ensure_future(one(record)) for record in records]
        results: list[dict[str, Any]] = []
        try:
            for record, task in zip(records, tasks):
                outcome = await task
                if emit is not None:
                    emit(record, outcome)
                results.append(outcome)
        except BaseException:
            for task in tasks:
                task.cancel()
            raise
        return results


def exit_code(statuses: Sequence[str]) -> int:
    if ERROR in statuses:
        return EXIT_USAGE
    if INDETERMINATE in statuses:
        return EXIT_INDETERMINATE
    if FAIL in statuses:
        return EXIT_FAIL
    return EXIT_OK


def _dump(data: dict[str, Any], pretty: bool) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2 if pretty else None)


async def _emit(text: str, output: str | None) -> None:
    if output:
        async with aiofiles.open(output, "w", encoding="utf-8") as f:
            await f.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
        sys.stdout.flush()


async def _run_sweep(args: argparse.Namespace, settings: Settings) -> int:
    loop = asyncio.get_running_loop()
    table = await loop.run_in_executor(
        None,
        lambda: run_sweep(
            args.family,
            args.max_order,
            args.t,
            settings.budget(),
            settings.parallelism,
            settings.symmetry,
        ),
    )
    await _emit(_dump(table.to_json(), settings.pretty), args.output)
    if table.disagreements:
        return EXIT_FAIL
    if table.indeterminate:
        return EXIT_INDETERMINATE
    return EXIT_OK


async def _load_records(args: argparse.Namespace, settings: Settings) -> list[Record]:
    if getattr(args, "name", None):
        if args.verify_checksums:
            verify_catalog_checksums()
        return [Record(0, 0, mule(args.name), None)]
    text = await _read_input(args.input)
    return list(iter_records(text, settings.fmt))


def _record_options(args: argparse.Namespace, settings: Settings) -> dict[str, Any]:
    opts: dict[str, Any] = {
        "budget_seconds": settings.budget_seconds,
        "budget_nodes": settings.budget_nodes,
        "symmetry": settings.symmetry,
    }
    for key in ("r", "f", "family", "t", "s", "k", "j", "chain", "check", "name"):
        if hasattr(args, key):
            opts[key] = getattr(args, key)
    if args.verb == "mule" and opts.get("name") and not opts.get("k"):
        opts["k"] = MULE_CATALOG[opts["name"]]["k"]
    return opts


async def run(args: argparse.Namespace) -> int:
    settings = await load_settings(args)
    setup_logging(settings.log_level)
    if args.verb == "sweep":
        return await _run_sweep(args, settings)
    try:
        records = await _load_records(args, settings)
    except (OSError, GraphError, CatalogChecksumError) as e:
        logger.error(f"[CLI] 读取输入失败: {e}")
        return EXIT_USAGE
    if not records:
        logger.warning("[CLI] 输入中没有图")
        return EXIT_OK
    opts = _record_options(args, settings)
    limits = settings.budget().limits()

    def emit(record: Record, outcome: dict[str, Any]) -> None:
        data = {
            "schema": JSON_SCHEMA,
            "verb": args.verb,
            "index": record.index,
            "line": record.line,
            "budget": limits,
            "status": outcome["status"],
            "result": outcome["result"],
        }
        if record.graph is not None:
            data["graph6"] = to_graph6(record.graph)
        sys.stdout.write(_dump(data, settings.pretty) + "\n")
        sys.stdout.flush()

    results = await run_records(args.verb, opts, records, settings.parallelism, emit)
    code = exit_code([outcome["status"] for outcome in results])
    logger.info(f"[CLI] {args.verb}: {len(records)} 条记录, 退出码 {code}")
    return code


# ============================================================================
# 参数解析
# ============================================================================

class _Parser(argparse.ArgumentParser):
    """用法错误统一以 64 退出"""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的整数: {text!r}")


def _mule_name(text: str) -> str:
    key = text.upper().replace("_", "").replace(",", "")
    if key not in MULE_CATALOG:
        raise argparse.ArgumentTypeError(f"未知骡子 {text!r}（可选 {', '.join(MULE_CATALOG)}）")
    return key


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON 配置文件")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None)
    common.add_argument("--symmetry", action=argparse.BooleanOptionalAction, default=None, help="孪生点对称性约简")
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--budget-nodes", type=int, default=None)
    common.add_argument("--parallelism", type=int, default=None)
    common.add_argument("--pretty", action="store_true")
    common.add_argument("--format", choices=["auto", "graph6", "edgelist"], default=None)

    parser = _Parser(prog="choosability", description="f-可选性与骡子实验工具箱")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(verb: str, help_text: str, *, graph_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(verb, help=help_text, parents=[common])
        if graph_input:
            p.add_argument("input", nargs="?", default="-", help="输入文件（graph6 或边表），默认标准输入")
        return p

    add("invariants", "Δ、ω、χ、α")

    p = add("choosable", "f-可选性 / d_r-可选性")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--r", type=int, default=None, help=f"f(v) = d(v) − r，默认 r = {DEFAULT_R}")
    group.add_argument("--f", type=_int_list, default=None, help="逗号分隔的 f 向量")

    p = add("classify", "联图 A ∨ B 的闭式分类（输入为 B）")
    p.add_argument("--family", choices=SWEEP_FAMILIES, required=True)
    p.add_argument("--t", type=int, default=None, help="K_t 的 t（仅 kt 族）")
    p.add_argument("--check", action="store_true", help="同时运行穷举检查器")

    for verb, help_text in (("mule", "C(k, j) 成员资格报告"), ("reduce", "Δ 约化")):
        p = add(verb, help_text)
        p.add_argument("--name", type=_mule_name, default=None, help="直接使用目录中的骡子")
        p.add_argument("--verify-checksums", action="store_true")
        p.add_argument("--k", type=int, default=None, help="默认取 Δ")
        if verb == "reduce":
            p.add_argument("--j", type=int, default=0)
            p.add_argument("--chain", action="store_true", help="反复约化直到 k < 3j + 6")

    add("bk-check", "χ ≤ max{ω, Δ − 1}")

    p = add("contains-join", "是否含 K_s ∨ E_t 子图")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--t", type=int, default=None, help="默认 Δ − s")

    p = add("sweep", "联图分类与检查器的全量比对", graph_input=False)
    p.add_argument("--family", choices=SWEEP_FAMILIES, required=True)
    p.add_argument("--max-order", type=int, default=SWEEP_MAX_ORDER)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--output", default=None, help="输出文件，默认标准输出")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return asyncio.run(run(args))
    except KeyboardInterrupt:
        return EXIT_INDETERMINATE
    except Exception:
        logger.exception("[CLI] 未预期的错误")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
