"""
模拟命令

读取链参数 JSON，输出精确解、拟设态、纠缠与自由费米子的完整报告。
"""

from __future__ import annotations

import click
from rich.table import Table

from ...core.simulator import simulate as run_simulation
from ...model.chain import ChainSpec
from ...serialization.schemas import SimulationReport
from .common import get_console
from .common import handle_errors
from .common import load_json_object
from .common import report_path
from .common import write_json


def summary_table(report: SimulationReport) -> Table:
    """报告摘要"""
    table = Table(title="模拟结果")
    table.add_column("量")
    table.add_column("值", justify="right")
    table.add_row("精确基态能量", f"{report.exact.energy:.12g}")
    table.add_row("能隙", f"{report.exact.gap:.6g}")
    table.add_row("简并度", str(report.exact.degeneracy))
    table.add_row("拟设态能量", f"{report.ansatz.energy:.12g}")
    table.add_row("保真度", f"{report.ansatz.fidelity:.12f}")
    table.add_row("纠缠熵（精确）", f"{report.entanglement.exact.vn_entropy:.10g}")
    table.add_row("纠缠熵（拟设）", f"{report.entanglement.ansatz.vn_entropy:.10g}")
    return table


@click.command()
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "-o", default=None, help="报告输出路径（默认 <配置名>_report.json，'-' 为标准输出）")
@click.pass_context
@handle_errors
def simulate(ctx: click.Context, config_path: str, out: str | None) -> None:
    """
    🔬 模拟彩虹链

    \b
    配置文件格式:
        {"pairs": 2, "J": [1.0, 0.01], "h": [0.0, 0.0]}

    \b
    示例:
        qrainbow simulate chain.json
        qrainbow simulate chain.json --out report.json
    """
    spec = ChainSpec.from_dict(load_json_object(config_path, "ChainSpec"))
    report = run_simulation(spec)

    path = report_path(out, config_path, "_report.json")
    write_json(path, report)

    console = get_console(ctx)
    console.print(summary_table(report))
    if path != "-":
        console.print(f"✅ 报告已写入 {path}")
