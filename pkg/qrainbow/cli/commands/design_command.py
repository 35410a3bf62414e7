"""
设计命令

读取设计目标 JSON，输出设计好的链参数与其模拟报告。
"""

from __future__ import annotations

from pathlib import Path

import click

from ...core.simulator import design as run_design
from ...core.simulator import simulate as run_simulation
from ...design.designer import DesignTarget
from ...model.chain import ChainSpec
from ...serialization.schemas import DesignReport
from .common import comparison_table
from .common import get_console
from .common import handle_errors
from .common import load_json_object
from .common import write_json


@click.command()
@click.argument("target_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "-o", default=".", show_default=True, help="输出目录")
@click.option(
    "--simulate/--no-simulate",
    "with_simulation",
    default=True,
    help="是否对设计结果做精确模拟",
)
@click.pass_context
@handle_errors
def design(ctx: click.Context, target_path: str, out: str, with_simulation: bool) -> None:
    """
    🎯 由目标纠缠谱设计磁场分布

    \b
    目标文件格式:
        {"targets": {"eps": [3.2, 2.2, 1.4]}, "J": [1, 0.01, 0.0001]}
        {"targets": {"S": [0.2, 0.6]}, "J": [1, 0.1], "branch": "optimal"}

    \b
    输出文件:
        <名称>_spec.json            设计得到的链参数
        <名称>_design.json          设计报告（排列、目标与实现值）
        <名称>_report.json          设计链的模拟报告
    """
    target = DesignTarget.from_dict(load_json_object(target_path, "DesignTarget"))
    _, report = run_design(target)
    write_design_outputs(ctx, Path(out), Path(target_path).stem, report, with_simulation)


def write_design_outputs(
    ctx: click.Context,
    directory: Path,
    stem: str,
    report: DesignReport,
    with_simulation: bool,
) -> None:
    """写出设计结果并打印对照表"""
    console = get_console(ctx)
    directory.mkdir(parents=True, exist_ok=True)

    spec_path = directory / f"{stem}_spec.json"
    write_json(spec_path, report.spec)
    write_json(directory / f"{stem}_design.json", report)

    console.print(comparison_table("设计结果", report.targets, report.achieved))
    console.print(f"排列: {report.permutation}")

    if with_simulation:
        simulation = run_simulation(ChainSpec.from_dict(report.spec))
        write_json(directory / f"{stem}_report.json", simulation)
        console.print(f"保真度: {simulation.ansatz.fidelity:.12f}")

    console.print(f"✅ 设计结果已写入 {directory}")
