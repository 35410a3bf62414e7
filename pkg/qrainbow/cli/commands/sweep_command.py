"""
扫描命令

读取扫描网格 JSON，逐点计算并按网格顺序输出 CSV。
"""

from __future__ import annotations

import click

from ...sweep.engine import SweepConfig
from ...sweep.engine import SweepEngine
from ...sweep.grid import SweepGrid
from .common import get_console
from .common import handle_errors
from .common import load_json_object
from .common import report_path
from .common import write_text


@click.command()
@click.argument("grid_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "-o", default=None, help="CSV 输出路径（默认 <网格名>.csv，'-' 为标准输出）")
@click.pass_context
@handle_errors
def sweep(ctx: click.Context, grid_path: str, out: str | None) -> None:
    """
    📈 参数扫描

    \b
    网格文件格式:
        {
          "experiment": "uniform_q",
          "axes": [{"name": "q", "min": 1, "max": 10, "count": 10}],
          "fixed": {"J": [1.0, 0.01]},
          "columns": ["q", "S", "fidelity"]
        }

    \b
    可用实验: chain, uniform_q, target_entropy, pair_renyi
    """
    grid = SweepGrid.from_dict(load_json_object(grid_path, "SweepGrid"))
    console = get_console(ctx)

    config = SweepConfig()
    result = SweepEngine(config).run(grid)

    path = report_path(out, grid_path, ".csv")
    write_text(path, result.to_csv(config.significant_digits))
    if path != "-":
        console.print(f"✅ {len(result.rows)} 行已写入 {path}")
