"""
均匀 q 命令

构造每对形变参数均为 q 的链并输出其模拟报告。
"""

from __future__ import annotations

import click

from ...core.simulator import simulate as run_simulation
from ...design.designer import uniform_q_fields
from ...model.qalgebra import QParam
from ...model.qalgebra import pair_entropy
from .common import get_console
from .common import handle_errors
from .common import write_json


@click.command(name="uniform-q")
@click.option("--q", "q", type=float, required=True, help="形变参数 q (> 0)")
@click.option(
    "--coupling",
    "-J",
    "couplings",
    type=float,
    multiple=True,
    required=True,
    help="耦合 J_i（可重复）",
)
@click.option("--out", "-o", default=None, help="报告输出路径（默认 uniform_q<q>_report.json）")
@click.pass_context
@handle_errors
def uniform_q(
    ctx: click.Context, q: float, couplings: tuple[float, ...], out: str | None
) -> None:
    """
    🌈 均匀 q 设计

    \b
    示例:
        qrainbow uniform-q --q 2 -J 1 -J 0.01
    """
    spec = uniform_q_fields(q, list(couplings))
    report = run_simulation(spec)

    path = out or f"uniform_q{q:g}_report.json"
    write_json(path, report)

    console = get_console(ctx)
    console.print(f"h = {list(spec.h)}")
    console.print(f"单对熵 S = {pair_entropy(QParam.from_q(q)):.12g}")
    console.print(f"保真度 = {report.ansatz.fidelity:.12f}")
    if path != "-":
        console.print(f"✅ 报告已写入 {path}")
